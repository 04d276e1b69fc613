"""Compare the random-halving upper bound on r-SFPC length with covers actually built.

For each t the table lists the bound, the greedy halving cover, the best
random cover over the given trials, and (for small graphs) the exact optimum.

    python scripts/bound_vs_achieved.py --r 2 --tmax 12 --trials 30
"""

import argparse

from framecover.combinatorics import kneser_edge_count, kneser_graph
from framecover.constructors import RandomTrialConfig, exact_bc, greedy_cover, random_cover, sfpc_bound
from framecover.errors import Budget, BudgetExceeded


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--tmax", type=int, default=12)
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exact-edges", type=int, default=80, help="run the exact solver up to this many edges")
    args = ap.parse_args()

    print(f"{'t':>3} {'edges':>6} {'bound':>9} {'greedy':>7} {'random':>7} {'exact':>6}")
    for t in range(2 * args.r + 1, args.tmax + 1):
        b = sfpc_bound(t, args.r)
        gr = greedy_cover(t, args.r).size
        rc = random_cover(t, args.r, RandomTrialConfig(seed=args.seed, trials=args.trials)).best.size
        m = kneser_edge_count(t, args.r)
        exact = "-"
        if m <= args.exact_edges:
            try:
                exact = exact_bc(kneser_graph(t, args.r), 1, Budget(max_edges=args.exact_edges)).size
            except BudgetExceeded:
                exact = "?"
        print(f"{t:>3} {m:>6} {b.value:>9.3f} {gr:>7} {rc:>7} {exact:>6}")


if __name__ == "__main__":
    main()
