"""ASCII slice of the symplectic cone of the two-point blowup of CP^2.

Fixes a = A and prints membership of A*H - b1*F1 - b2*F2 over a grid of
(b1, b2): '#' inside, '.' positive square but on a wall, ' ' otherwise.
Usage: python scripts/cone_slice.py [A]
"""
import sys

from conelab.cones import ConeStatus, in_symplectic_cone
from conelab.lattice import ManifoldModel


def main(a=12):
    M = ManifoldModel.rational(2)
    rows = []
    for b2 in range(a, -a - 1, -1):
        row = []
        for b1 in range(-a, a + 1):
            e = (a, -b1, -b2)
            if M.pair(e, e) <= 0:
                row.append(" ")
            elif in_symplectic_cone(M, e).status == ConeStatus.IN:
                row.append("#")
            else:
                row.append(".")
        rows.append("".join(row))
    print(f"a = {a}; horizontal b1 in [{-a}, {a}], vertical b2 from {a} down to {-a}")
    print("\n".join(rows))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 12)
