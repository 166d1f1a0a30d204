"""Count exceptional classes pairing to -1 with the standard canonical class.

Usage: python scripts/exceptional_counts.py [max_l]
"""
import sys
import time

from conelab.canonical import standard_canonical
from conelab.exceptional import exceptional_K_set
from conelab.lattice import ManifoldModel


def main(max_l=8):
    print(f"{'l':>2} {'count':>6} {'complete':>8} {'max a':>6} {'secs':>6}")
    for l in range(1, max_l + 1):
        M = ManifoldModel.rational(l)
        t = time.perf_counter()
        ek = exceptional_K_set(M, standard_canonical(M))
        dt = time.perf_counter() - t
        top = max(E[0] for E in ek)
        print(f"{l:>2} {len(ek):>6} {str(ek.complete):>8} {top:>6} {dt:>6.2f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
