"""For each buildable (p, F): genus, geodesic count, and which coefficient certificates exist."""
import argparse
import time

from pgon_lattices.builders import build_any
from pgon_lattices.homology import SearchTruncated, find_nonzero_coeffs, find_sign_coeffs
from pgon_lattices.surface import extract_geodesics


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=13)
    ap.add_argument("--fmax", type=int, default=16)
    args = ap.parse_args()
    print("p,F,genus,construction,geodesics,signs,nonzero,seconds")
    for p in range(5, args.pmax + 1):
        for F in range(1, args.fmax + 1):
            if F * (p - 4) % 8:
                continue
            t = time.perf_counter()
            bt = build_any(p, F)
            ts = bt.surface
            signs = find_sign_coeffs(ts)
            signs = "truncated" if isinstance(signs, SearchTruncated) else ("yes" if signs else "no")
            nz = find_nonzero_coeffs(ts)
            nz = "no" if nz is None else "max |c| = %d" % max(map(abs, nz.coefficients))
            print(f"{p},{F},{ts.genus},{bt.construction},{len(extract_geodesics(ts))},{signs},{nz},"
                  f"{time.perf_counter() - t:.2f}")


if __name__ == "__main__":
    main()
