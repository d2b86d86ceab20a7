"""Command-line entry point: run verification scenarios, emit reports.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 bad
configuration (unknown scenario or check, invalid prime, corrupted
data).
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import ConfigError, run_scenario


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Verify the 40-nodal quartic-quadric surface in P^4, its "
                    "(Z/2)^3 covering data, and the 48-nodal quadric complete "
                    "intersection in P^6.")
    parser.add_argument("--scenario", choices=["x40", "y48", "all"], default="all",
                        help="which scenario to run (default: all)")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="force exact arithmetic over the number-field tower")
    mode.add_argument("--modp", metavar="P1,P2,...",
                      help="run modulo the given primes (comma separated), "
                           "or 'auto' to scan for valid primes")
    parser.add_argument("--primes", type=int, default=3, metavar="N",
                        help="number of primes to auto-select in mod-p mode "
                             "(default: 3)")
    parser.add_argument("--prime-floor", type=int, default=1000, metavar="F",
                        help="scan for valid primes starting at F (default: 1000)")
    parser.add_argument("--report", metavar="FILE",
                        help="write the JSON report to FILE ('-' for stdout)")
    parser.add_argument("--check", action="append", metavar="ID", default=[],
                        help="run only the named check (repeatable)")
    parser.add_argument("--all-partitions", action="store_true",
                        help="enumerate every branch assignment in check X8")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    mode = None
    primes = None
    if args.exact:
        mode = "exact"
    elif args.modp:
        mode = "modp"
        if args.modp != "auto":
            try:
                primes = [int(p) for p in args.modp.split(",") if p]
            except ValueError:
                print(f"error: bad prime list {args.modp!r}", file=sys.stderr)
                return 2
    scenarios = ["x40", "y48"] if args.scenario == "all" else [args.scenario]
    reports = []
    try:
        for name in scenarios:
            check_ids = [c for c in args.check if c.startswith(name[0].upper())]
            if args.check and not check_ids:
                continue
            report = run_scenario(name, mode=mode, primes=primes,
                                  prime_count=args.primes,
                                  prime_floor=args.prime_floor,
                                  check_ids=check_ids or None,
                                  all_partitions=args.all_partitions)
            reports.append(report)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    for report in reports:
        header = f"scenario {report.scenario} [{report.mode}"
        if report.primes:
            header += f", primes {', '.join(map(str, report.primes))}"
        header += "]"
        print(header)
        for c in report.checks:
            status = "pass" if c.passed else "FAIL"
            print(f"  {c.check_id:<4} {status}  ({c.seconds:6.2f}s)  {c.description}")
        print(f"  => {'all checks pass' if report.passed else 'FAILURES'} "
              f"in {report.seconds:.2f}s")
    if args.report:
        payload = (reports[0].to_json() if len(reports) == 1 else
                   "[" + ",\n".join(r.to_json() for r in reports) + "]")
        if args.report == "-":
            print(payload)
        else:
            with open(args.report, "w") as fh:
                fh.write(payload + "\n")
    if not reports:
        print("error: no scenario matched the requested checks", file=sys.stderr)
        return 2
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
