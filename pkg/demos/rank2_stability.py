"""Weighted slope stability for rank-2 split bundles on the line, by brute
enumeration of line subbundles.

The checker enumerates every line-subbundle degree that can occur inside
O(a1) + O(a2), tracks which flag directions each candidate is forced to
hit, adds the corresponding weight pairings to its degree, and compares
weighted slopes.  A single marked point with weights (1/4, 0) and the flag
aligned with the top summand is already enough to destabilize the balanced
split bundle.
"""

from fractions import Fraction

from logahoric.parahoric import rank2_semistability


def describe(report, title):
    print(f"== {title} ==")
    print(f"  total weighted degree: {report.total_weighted_degree}")
    print(f"  total slope:           {report.total_slope}")
    print(f"  verdict:               {report.verdict}")
    print("  candidates (degree, incidences, weighted degree, verdict):")
    for c in report.candidates:
        marker = "  <- witness" if c is report.witness else ""
        print(
            f"    {c.degree:>3}  {str(c.incidences):>8}  "
            f"{str(c.weighted_degree):>6}  {c.verdict}{marker}"
        )
    print()


def main():
    describe(rank2_semistability((0, 0)), "O + O, no weights")

    describe(
        rank2_semistability(
            (0, 0),
            flags=[(1, 0)],
            weights=[(Fraction(1, 4), 0)],
            points=[0],
        ),
        "O + O, one marked point, weights (1/4, 0), flag along the first summand",
    )

    # moving the flag off the summand does not rescue O + O: every fiber
    # direction is realized by a constant line subbundle, so some degree-0
    # candidate always collects the big weight
    describe(
        rank2_semistability(
            (0, 0),
            flags=[(1, 1)],
            weights=[(Fraction(1, 4), 0)],
            points=[0],
        ),
        "same weights, flag in general position (still fails)",
    )

    describe(rank2_semistability((0, -1)), "O + O(-1), no weights")


if __name__ == "__main__":
    main()
