"""Genus bookkeeping for eigenvalue curves over the projective line.

For an n x n polynomial Lax matrix with s simple poles and residue sum
zero, the generic eigenvalue curve is an n-sheeted cover of the line with
n(n-1)(s-2) simple branch points, and its genus follows from the
Riemann-Hurwitz count.  The table below recomputes each genus from an
actual random instance (discriminant, squarefreeness, branch count) and
compares it with the closed form.
"""

import random
from fractions import Fraction

from logahoric.higgs import build_field, spectral_curve, spectral_genus
from logahoric.rootsys import GroupTag


def random_regular_field(rng, n, s):
    points = sorted(rng.sample(range(-8, 9), s))
    residues = []
    running = [[Fraction(0)] * n for _ in range(n)]
    for _ in range(s - 1):
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        trace = sum(m[i][i] for i in range(n))
        m[n - 1][n - 1] -= trace
        residues.append(m)
        for i in range(n):
            for j in range(n):
                running[i][j] += m[i][j]
    residues.append([[-running[i][j] for j in range(n)] for i in range(n)])
    return build_field(points, residues, GroupTag("A", n - 1, "SL"))


def main():
    rng = random.Random(7)
    print(f"{'n':>3} {'s':>3} {'branch':>7} {'genus':>6} {'closed form':>12}")
    for n, s in ((2, 3), (2, 4), (2, 5), (3, 3), (3, 4)):
        sc = None
        while sc is None or not sc.is_squarefree:
            sc = spectral_curve(random_regular_field(rng, n, s))
        predicted = spectral_genus(n, s)
        print(
            f"{n:>3} {s:>3} {sc.branch_count:>7} {sc.genus:>6} {predicted:>12}"
        )
        assert sc.genus == predicted

    print()
    print("one concrete curve, in full:")
    field = build_field(
        [0, 1, 2],
        [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, -1], [-1, 0]]],
        GroupTag("A", 1, "SL"),
    )
    sc = spectral_curve(field)
    print(f"  det-side coefficient of lambda^0: {[str(c) for c in sc.char_coeffs[0]]}")
    print(f"  discriminant in z: {[str(c) for c in sc.discriminant]}")
    print(f"  squarefree: {sc.is_squarefree}, branch points: {sc.branch_count}")
    print(f"  genus: {sc.genus}")


if __name__ == "__main__":
    main()
