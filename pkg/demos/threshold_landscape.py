"""How far the new edge and vertex thresholds sit below the earlier ones.

For fixed minimum degree and girth, sweep the order n from the first value
where every row applies and print each threshold on mu together with the
ratio new / prior.  Ratios below one mean the new condition certifies more
graphs.

    python demos/threshold_landscape.py --delta 3 --girth 5 -k 2
"""

import argparse

import numpy as np

from spectral_connectivity.bounds import ParamSet, moore_bound
from spectral_connectivity.certify import compare_thresholds


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--delta", type=int, default=3)
    parser.add_argument("--girth", type=int, default=5)
    parser.add_argument("-k", type=int, default=2)
    parser.add_argument("--points", type=int, default=12)
    args = parser.parse_args()

    N = moore_bound(args.delta, args.girth)
    orders = np.unique(np.geomspace(2 * N, 40 * N, args.points).astype(int))
    names = ["edge_girth", "prior_f", "prior_four_ninths", "vertex_girth", "prior_nu"]
    print(f"N({args.delta},{args.girth}) = {N}, k = {args.k}")
    print(f"{'n':>6}" + "".join(f"{name:>19}" for name in names) + f"{'edge ratio':>12}{'vertex ratio':>14}")
    for n in orders.tolist():
        rows = {r.theorem: r for r in compare_thresholds(
            ParamSet(n, args.delta, args.delta, args.girth, 2, args.k)).rows}
        cells = [rows[name].rhs if rows[name].applicable else np.nan for name in names]
        edge_ratio = cells[0] / cells[1]
        vertex_ratio = cells[3] / cells[4]
        print(f"{n:>6}" + "".join(f"{c:>19.6g}" for c in cells) + f"{edge_ratio:>12.4f}{vertex_ratio:>14.4f}")


if __name__ == "__main__":
    main()
