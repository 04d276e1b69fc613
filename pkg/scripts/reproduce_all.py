"""Run every reproduction step and print a one-line result for each.

    python scripts/reproduce_all.py [--quick] [--json out.json]
"""

import argparse
import json
import sys

from framecover.errors import default_budget
from framecover.pipeline import pipeline_demo


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="only the first four steps")
    ap.add_argument("--json", help="write step details here")
    args = ap.parse_args()

    def log(step):
        print(f"{'PASS' if step.passed else 'FAIL'}  {step.seconds:7.3f}s  {step.name}")
        for k, v in step.detail.items():
            print(f"        {k}: {v}")

    steps = pipeline_demo(quick=args.quick, budget=default_budget(), log=log)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([{"name": s.name, "passed": s.passed, "seconds": s.seconds, "detail": s.detail}
                       for s in steps], fh, indent=1, default=str)
    return 0 if all(s.passed for s in steps) else 1


if __name__ == "__main__":
    sys.exit(main())
