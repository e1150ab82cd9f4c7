"""Exact classification of lattice points against the linear region.

The linear region is 1/59 < p/q < 59 in the positive quadrant.  Inside
it, a narrow strip around the bisector p = q (union of the two
theorem-covered half-strips) is excluded from cuboid candidacy:

    q - q/97 <= p          (below the bisector)
    p <= q + min(q/97, cbrt(q/74))  with the cube-root branch strict
                           (above the bisector)

All comparisons are exact integer arithmetic; the cube root never gets
evaluated numerically (74*(p-q)^3 < q decides it).
"""

from __future__ import annotations

import enum

__all__ = [
    "RegionClass",
    "classify",
    "covering_theorems",
    "subregion_p_range",
    "theorem_71_applicable",
    "theorem_81_applicable",
]


class RegionClass(enum.Enum):
    OUTSIDE_LINEAR = "outside_linear"
    BISECTOR = "bisector"
    EXCLUDED_SUBREGION = "excluded_subregion"
    REMAINING_LINEAR = "remaining_linear"


def classify(p: int, q: int) -> RegionClass:
    """Exact region class of a positive lattice point."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if not (q < 59 * p and p < 59 * q):
        return RegionClass.OUTSIDE_LINEAR
    if p == q:
        return RegionClass.BISECTOR
    if p > q:
        # strictness split: the q/97 branch is non-strict, the cube-root
        # branch strict
        if 97 * p <= 98 * q and 74 * (p - q) ** 3 < q:
            return RegionClass.EXCLUDED_SUBREGION
    else:
        if 97 * p >= 96 * q:
            return RegionClass.EXCLUDED_SUBREGION
    return RegionClass.REMAINING_LINEAR


def theorem_71_applicable(p_tilde: int, q_tilde: int) -> bool:
    """Integer-point exclusion for the real interval: qt >= 97|pt| != 0 and
    qt > 74|pt|^3."""
    a = abs(p_tilde)
    return a != 0 and q_tilde >= 97 * a and q_tilde > 74 * a**3


def theorem_81_applicable(p_tilde: int, q_tilde: int) -> bool:
    """Cuboid exclusion below the bisector: qt >= 97|pt| and pt < 0."""
    return p_tilde < 0 and q_tilde >= 97 * abs(p_tilde)


def covering_theorems(p: int, q: int) -> list[str]:
    """Which exclusion theorems cover the point, in bisector coordinates
    pt = p - q, qt = q."""
    pt, qt = p - q, q
    out = []
    if theorem_71_applicable(pt, qt):
        out.append("7.1")
    if theorem_81_applicable(pt, qt):
        out.append("8.1")
    return out


def subregion_p_range(q: int) -> range:
    """Smallest p-range containing every excluded-subregion point at this q."""
    lo = -(-96 * q // 97)  # ceil(96q/97)
    r = 0
    while 74 * (r + 1) ** 3 < q:
        r += 1
    hi = q + min(q // 97, r)
    return range(max(lo, 1), hi + 1)
