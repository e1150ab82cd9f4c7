"""The degree-10 cuboid characteristic polynomial family.

Builds Q(t; p, q) exactly, applies unimodular parameter changes
(p, q) = S (pt, qt) with det S = 1, and exposes the Newton-polygon
upper-boundary node coefficients together with the induced leading
coefficient equation for the asymptotic expansions t ~ C * qt^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactpoly import MultiPoly, PolyError

__all__ = [
    "NewtonUpperCoeffs",
    "TransitionMatrix",
    "char_poly",
    "coefficient_equation",
    "newton_upper_coeffs",
    "shear_matrix",
    "transformed_char_poly",
    "uni_coeffs",
    "uni_coeffs_shifted",
    "unimodular_pair",
]

VARS_PQ = ("t", "p", "q")
VARS_SHIFTED = ("t", "pt", "qt")

# Upper Newton-boundary nodes (t-exponent, joint pt/qt-exponent) of the
# transformed polynomial; the family is quasi-homogeneous of weight 20
# with t carrying weight 2.
UPPER_NODES = ((10, 0), (8, 4), (6, 8), (4, 12), (2, 16), (0, 20))


@dataclass(frozen=True)
class TransitionMatrix:
    """Integer 2x2 matrix with unit determinant used to rotate the (p, q) lattice.

    Columns follow (p, q) = (a11*pt + a12*qt, a21*pt + a22*qt); a12 and a22
    are the positive coprime direction of interest.
    """

    a11: int
    a12: int
    a21: int
    a22: int

    def __post_init__(self):
        if self.a11 * self.a22 - self.a21 * self.a12 != 1:
            raise ValueError("determinant must be exactly 1")
        # a12 = 0 is allowed so the identity matrix remains usable; every
        # genuine direction has positive coprime (a12, a22).
        if self.a12 < 0 or self.a22 <= 0:
            raise ValueError("need a12 >= 0 and a22 > 0")
        if math.gcd(self.a12, self.a22) != 1:
            raise ValueError("a12 and a22 must be coprime")

    def forward(self, pt: int, qt: int) -> tuple[int, int]:
        """(pt, qt) -> (p, q)."""
        return self.a11 * pt + self.a12 * qt, self.a21 * pt + self.a22 * qt

    def inverse(self, p: int, q: int) -> tuple[int, int]:
        """(p, q) -> (pt, qt)."""
        return self.a22 * p - self.a12 * q, -self.a21 * p + self.a11 * q


def unimodular_pair(a12: int, a22: int) -> tuple[int, int]:
    """Complete coprime positive (a12, a22) to a unit-determinant matrix.

    Returns the canonical (a11, a21) with a11*a22 - a21*a12 = 1 and the
    smallest non-negative a21 (solutions differ by multiples of a22 in a21).
    """
    if a12 <= 0 or a22 <= 0:
        raise ValueError("inputs must be positive")
    g, x, y = _ext_gcd(a22, a12)
    if g != 1:
        raise ValueError(f"gcd({a12}, {a22}) = {g} != 1")
    # x*a22 + y*a12 = 1, so (a11, a21) = (x, -y) is one solution.
    a21 = (-y) % a22
    a11 = (1 + a21 * a12) // a22
    return a11, a21


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def shear_matrix() -> TransitionMatrix:
    """The bisector-direction change of variables p = pt + qt, q = qt."""
    return TransitionMatrix(1, 1, 0, 1)


def char_poly() -> MultiPoly:
    """Q(t; p, q): monic, even in t, with the constant term -p^10 q^10."""
    t = MultiPoly.var("t", VARS_PQ)
    p = MultiPoly.var("p", VARS_PQ)
    q = MultiPoly.var("q", VARS_PQ)
    p2, q2 = p * p, q * q
    c8 = (2 * q2 + p2) * (3 * q2 - 2 * p2)
    c6 = q2**4 + 10 * p2 * q2**3 + 4 * p2**2 * q2**2 - 14 * p2**3 * q2 + p2**4
    c4 = -p2 * q2 * (q2**4 - 14 * p2 * q2**3 + 4 * p2**2 * q2**2 + 10 * p2**3 * q2 + p2**4)
    c2 = -(p2 * q2)**3 * (q2 + 2 * p2) * (3 * p2 - 2 * q2)
    c0 = -(q2 * p2)**5
    return t**10 + c8 * t**8 + c6 * t**6 + c4 * t**4 + c2 * t**2 + c0


def transformed_char_poly(m: TransitionMatrix) -> MultiPoly:
    """Q after the exact substitution p = a11*pt + a12*qt, q = a21*pt + a22*qt."""
    pt = MultiPoly.var("pt", ("pt", "qt"))
    qt = MultiPoly.var("qt", ("pt", "qt"))
    out = char_poly()
    out = out.substitute("p", m.a11 * pt + m.a12 * qt)
    out = out.substitute("q", m.a21 * pt + m.a22 * qt)
    return out.with_variables(VARS_SHIFTED)


@dataclass(frozen=True)
class NewtonUpperCoeffs:
    """Node coefficients along the upper Newton-polygon boundary.

    Field k_j holds the coefficient of t^j at the node monomial t^j qt^(20-2j);
    the leading one is always 1 and the expansion exponent is always 2.
    """

    k10: int
    k8: int
    k6: int
    k4: int
    k2: int
    k0: int

    EXPANSION_EXPONENT = 2

    def as_tuple(self) -> tuple[int, ...]:
        return (self.k10, self.k8, self.k6, self.k4, self.k2, self.k0)


def newton_upper_coeffs(a12: int, a22: int) -> NewtonUpperCoeffs:
    """The six exact node coefficients for the direction (a12, a22)."""
    if a12 <= 0 or a22 <= 0 or math.gcd(a12, a22) != 1:
        raise ValueError("inputs must be positive coprime")
    b, d = a12, a22
    return NewtonUpperCoeffs(
        k10=1,
        k8=6 * d**4 - 2 * b**4 - b**2 * d**2,
        k6=10 * b**2 * d**6 + b**8 + d**8 + 4 * b**4 * d**4 - 14 * b**6 * d**2,
        k4=14 * b**4 * d**8 - 4 * b**6 * d**6 - b**2 * d**10 - 10 * b**8 * d**4 - b**10 * d**2,
        k2=b**8 * d**8 - 6 * b**10 * d**6 + 2 * b**6 * d**10,
        k0=-(b**10) * d**10,
    )


def coefficient_equation(a12: int, a22: int) -> MultiPoly:
    """Degree-10 even monic polynomial in C whose roots are the leading
    expansion coefficients; identical to Q(C; a12, a22)."""
    if a12 <= 0 or a22 <= 0 or math.gcd(a12, a22) != 1:
        raise ValueError("inputs must be positive coprime")
    spec = char_poly().substitute("p", a12).substitute("q", a22)
    c = MultiPoly.var("C")
    return spec.substitute("t", c).with_variables(("C",))


def uni_coeffs(p: int, q: int) -> tuple[int, ...]:
    """Coefficients (ascending, length 11) of Q(t; p, q) at fixed integers.

    Fast closed-form specialization; agrees with substituting into
    :func:`char_poly` exactly.
    """
    p2, q2 = p * p, q * q
    c8 = (2 * q2 + p2) * (3 * q2 - 2 * p2)
    c6 = q2**4 + 10 * p2 * q2**3 + 4 * p2**2 * q2**2 - 14 * p2**3 * q2 + p2**4
    c4 = -p2 * q2 * (q2**4 - 14 * p2 * q2**3 + 4 * p2**2 * q2**2 + 10 * p2**3 * q2 + p2**4)
    c2 = -(p2 * q2)**3 * (q2 + 2 * p2) * (3 * p2 - 2 * q2)
    c0 = -(p2 * q2)**5
    return (c0, 0, c2, 0, c4, 0, c6, 0, c8, 0, 1)


def uni_coeffs_shifted(pt: int, qt: int) -> tuple[int, ...]:
    """Coefficients of the transformed polynomial at fixed (pt, qt); the
    bisector change of variables gives p = pt + qt, q = qt."""
    return uni_coeffs(pt + qt, qt)


def collect_by_t(poly: MultiPoly) -> dict[int, MultiPoly]:
    """Split a polynomial in (t, pt, qt) into {t-exponent: coefficient poly}."""
    i = poly.variables.index("t")
    rest = tuple(v for v in poly.variables if v != "t")
    groups: dict[int, dict] = {}
    for exps, c in poly.terms.items():
        groups.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
    return {e: MultiPoly(rest, terms, poly.domain) for e, terms in groups.items()}
