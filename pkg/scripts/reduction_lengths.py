"""Histogram of reduction trace lengths for random positive classes.

Usage: python scripts/reduction_lengths.py [samples] [seed]
"""
import random
import sys
from collections import Counter

from conelab.lattice import ManifoldModel
from conelab.transform import Cremona, reduce


def random_positive(rng, M, cmax=50):
    while True:
        e = tuple(rng.randint(-cmax, cmax) for _ in range(M.rank))
        if M.pair(e, e) > 0:
            return e


def main(samples=2000, seed=0):
    rng = random.Random(seed)
    for l in (3, 6, 9):
        M = ManifoldModel.rational(l)
        hist = Counter()
        for _ in range(samples):
            _, trace, _ = reduce(M, random_positive(rng, M))
            hist[sum(isinstance(m, Cremona) for m in trace.moves)] += 1
        print(f"l = {l}: cremona steps -> count")
        for k in sorted(hist):
            print(f"  {k:>3} {hist[k]}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
