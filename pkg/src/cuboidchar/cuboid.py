"""Cuboid construction from characteristic-equation solutions.

A coprime triple (p, q, t) with p != q, Q(t; p, q) = 0 and the four
side conditions

    t > p^2,  t > p*q,  t > q^2,  (p^2 + t)(p*q + t) > 2*t^2

produces a perfect cuboid: three exact rationals (alpha, beta, upsilon)
feed a rational z, six edge/diagonal ratios follow, and scaling by the
least common denominator yields integer edges x1..x3, face diagonals
d1..d3 and space diagonal L satisfying the four cuboid equations.  The
first two of those equations are parametric identities; the last two
hold exactly when t is a root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .charpoly import uni_coeffs
from .roots import poly_eval

__all__ = [
    "ConditionReport",
    "Cuboid",
    "CuboidEquationsError",
    "RationalTriple",
    "SingularParameterError",
    "Triple",
    "abv",
    "assemble",
    "check_conditions",
    "ratios",
    "try_build_cuboid",
    "z_value",
]


class CuboidEquationsError(ValueError):
    """The assembled integers violate some of the cuboid equations (the
    normal outcome for non-root t)."""

    def __init__(self, failed: list[int]):
        super().__init__(f"cuboid equations failed: {failed}")
        self.failed = failed


class SingularParameterError(ZeroDivisionError):
    """alpha * upsilon = +/-1 makes the z formula singular."""


@dataclass(frozen=True)
class Triple:
    """Candidate (p, q, t), all positive."""

    p: int
    q: int
    t: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.t < 1:
            raise ValueError("p, q, t must be positive")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.p, self.q) == 1


@dataclass(frozen=True)
class RationalTriple:
    alpha: Fraction
    beta: Fraction
    upsilon: Fraction
    variant: int  # 1: alpha = p^2/t; 2: alpha = p*q/t


@dataclass(frozen=True)
class ConditionReport:
    is_root: bool
    inequalities: tuple[bool, bool, bool, bool]

    @property
    def all_pass(self) -> bool:
        return self.is_root and all(self.inequalities)


@dataclass(frozen=True)
class Cuboid:
    x1: int
    x2: int
    x3: int
    d1: int
    d2: int
    d3: int
    L: int
    signs: tuple[int, ...] = (1,) * 6  # signs the ratio formulas produced

    def as_dict(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "x3": self.x3,
                "d1": self.d1, "d2": self.d2, "d3": self.d3, "L": self.L}


def check_conditions(tr: Triple) -> ConditionReport:
    """Exact root test and the four side inequalities."""
    value = poly_eval(uni_coeffs(tr.p, tr.q), tr.t)
    p2, pq, q2, t = tr.p * tr.p, tr.p * tr.q, tr.q * tr.q, tr.t
    ineqs = (t > p2, t > pq, t > q2, (p2 + t) * (pq + t) > 2 * t * t)
    return ConditionReport(value == 0, ineqs)


def abv(tr: Triple, variant: int = 1) -> RationalTriple:
    """The exact rational parameters; both variants are acceptable."""
    p2 = Fraction(tr.p * tr.p, tr.t)
    pq = Fraction(tr.p * tr.q, tr.t)
    up = Fraction(tr.q * tr.q, tr.t)
    if variant == 1:
        return RationalTriple(p2, pq, up, 1)
    if variant == 2:
        return RationalTriple(pq, p2, up, 2)
    raise ValueError("variant must be 1 or 2")


def z_value(rt: RationalTriple) -> Fraction:
    """z from the rational parameters; singular when alpha*upsilon = +/-1."""
    a2, b2, u2 = rt.alpha**2, rt.beta**2, rt.upsilon**2
    denom = 2 * (1 + b2) * (1 - a2 * u2)
    if denom == 0:
        raise SingularParameterError("alpha^2 * upsilon^2 = 1")
    return (1 + u2) * (1 - b2) * (1 + a2) / denom


def ratios(rt: RationalTriple, z: Fraction) -> tuple[Fraction, ...]:
    """The six exact edge and diagonal ratios (x1, x2, x3, d1, d2, d3)/L."""
    u, a, b = rt.upsilon, rt.alpha, rt.beta
    u2, z2 = u * u, z * z
    du = 1 + u2
    dz = 1 + z2
    if du == 0 or dz == 0:
        raise ZeroDivisionError("degenerate parameters")
    x1 = 2 * u / du
    d1 = (1 - u2) / du
    x2 = 2 * z * (1 - u2) / (du * dz)
    x3 = (1 - u2) * (1 - z2) / (du * dz)
    d2 = (du * dz + 2 * z * (1 - u2)) / (du * dz) * b
    d3 = 2 * (u2 * z2 + 1) / (du * dz) * a
    return (x1, x2, x3, d1, d2, d3)


def assemble(rs: tuple[Fraction, ...]) -> Cuboid:
    """Scale the six ratios to integers and verify the cuboid equations.

    The ratio formulas can produce negative values; entries are stored as
    absolute values (the equations involve squares only) with the signs
    kept for diagnostics.  Raises :class:`CuboidEquationsError` listing
    the violated equations when t was not a genuine root.
    """
    fracs = [Fraction(r) for r in rs]
    signs = tuple(-1 if f < 0 else 1 for f in fracs)
    L = 1
    for f in fracs:
        L = L * f.denominator // math.gcd(L, f.denominator)
    x1, x2, x3, d1, d2, d3 = (abs(int(f * L)) for f in fracs)
    eqs = [
        x1 * x1 + x2 * x2 + x3 * x3 == L * L,
        x2 * x2 + x3 * x3 == d1 * d1,
        x3 * x3 + x1 * x1 == d2 * d2,
        x1 * x1 + x2 * x2 == d3 * d3,
    ]
    failed = [i + 1 for i, ok in enumerate(eqs) if not ok]
    if failed:
        raise CuboidEquationsError(failed)
    return Cuboid(x1, x2, x3, d1, d2, d3, L, signs)


def try_build_cuboid(tr: Triple) -> tuple[ConditionReport, Cuboid | None, list[str]]:
    """Full pipeline: conditions, both parameter variants, assembly.

    Returns the condition report, the first cuboid that satisfies all four
    equations (or None), and per-variant failure notes.
    """
    report = check_conditions(tr)
    notes = []
    if not report.all_pass:
        notes.append("conditions not met")
        return report, None, notes
    for variant in (1, 2):
        rt = abv(tr, variant)
        try:
            cub = assemble(ratios(rt, z_value(rt)))
            return report, cub, notes
        except (CuboidEquationsError, SingularParameterError, ZeroDivisionError) as e:
            notes.append(f"variant {variant}: {e}")
    return report, None, notes
