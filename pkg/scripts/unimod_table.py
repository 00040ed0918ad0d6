"""Solution counts of prod a_j = prod (v - a_j) with the proven predictions alongside."""
import argparse

from pgon_lattices.diophantine import solve_explained


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vmin", type=int, default=3)
    ap.add_argument("--vmax", type=int, default=33)
    ap.add_argument("--k", type=int, nargs="+", default=[3, 5])
    args = ap.parse_args()
    print("v," + ",".join(f"k={k} count,k={k} label" for k in args.k))
    for v in range(args.vmin, args.vmax + 1):
        cells = []
        for k in args.k:
            ex = solve_explained(v, k, "count")
            cells += [str(ex.result.count), ex.label]
        print(f"{v}," + ",".join(cells))


if __name__ == "__main__":
    main()
