"""Verdicts over a (p, v, g) grid, optionally verifying a witness for each Exists."""
import argparse
import time
from collections import Counter
from itertools import product

from pgon_lattices.decision import EXISTS, decide, verify_cog, witness_for


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[5, 6, 8, 12, 13])
    ap.add_argument("--v", type=int, nargs="+", default=[2, 3, 4, 5, 9, 15, 21, 33])
    ap.add_argument("--g", type=int, nargs="+", default=[2, 3, 4, 7, 10])
    ap.add_argument("--witness", action="store_true", help="build and verify witnesses")
    args = ap.parse_args()
    tally = Counter()
    t0 = time.perf_counter()
    print("p,v,g,F,outcome,reason,witness")
    for p, v, g in product(args.p, args.v, args.g):
        verdict = decide(p, v, g)
        tally[verdict.reason] += 1
        ok = ""
        if args.witness and verdict.outcome == EXISTS:
            ok = str(verify_cog(witness_for(verdict, p, v).cog, v).ok)
        print(f"{p},{v},{g},{verdict.data.get('F')},{verdict.outcome},{verdict.reason},{ok}")
    print(f"# {sum(tally.values())} triples in {time.perf_counter() - t0:.1f}s")
    for reason, n in sorted(tally.items()):
        print(f"# {reason}: {n}")


if __name__ == "__main__":
    main()
