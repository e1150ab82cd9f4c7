"""Asymptotic sites and root localization.

For qt >= 97|pt| the ten roots of the transformed polynomial split into
five representative sites: one real interval of width 74|pt|^3/qt hanging
off t = qt^2 + 5*pt*qt + 10*pt^2, and four complex disks of radius
51|pt|^3/qt around i*qt^2 + u_i*pt*qt - (u_i + i*u_i^2)/2 * pt^2.  This
module builds the sites exactly (rational interval endpoints and radii),
checks pairwise disjointness and real-axis separation with the published
margin constants, and assigns certified roots to sites one-to-one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .roots import (
    DEFAULT_BITS,
    MAX_BITS,
    CertifiedRoot,
    PrecisionError,
    QuarticRoots,
    complex_roots,
    solve_site_quartic,
)
from .charpoly import uni_coeffs_shifted

__all__ = [
    "ComplexSite",
    "DisjointReport",
    "LocateResult",
    "RealSite",
    "SeparationReport",
    "SiteSet",
    "Z_REGIME",
    "build_sites",
    "check_disjoint",
    "check_real_axis_separation",
    "locate",
    "locate_lattice_point",
]

Z_REGIME = 97
REAL_REMAINDER_FACTOR = 74
COMPLEX_REMAINDER_FACTOR = 51
# Published regime margins: center distances and axis clearance in units
# of pt^2.
MIN_REAL_COMPLEX_DISTANCE = 12480
MIN_COMPLEX_PAIR_DISTANCE = 87
MIN_AXIS_CLEARANCE = 9013 - 1


@dataclass(frozen=True)
class RealSite:
    """Open real interval (or exact point when pt = 0) holding one real root.

    ``anchor`` is the closed endpoint qt^2 + 5*pt*qt + 10*pt^2; the proof
    convention encloses the interval in a disk of radius ``radius`` around
    it for distance checks.
    """

    lower: Fraction
    upper: Fraction
    anchor: Fraction
    radius: Fraction

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def contains_interval(self, lo: Fraction, hi: Fraction) -> bool:
        if self.is_point:
            return lo == hi == self.anchor
        return self.lower < lo and hi < self.upper


@dataclass(frozen=True)
class ComplexSite:
    """Open disk (or point when pt = 0) holding one complex root."""

    center: mp.mpc
    radius: Fraction
    u_index: int

    @property
    def is_point(self) -> bool:
        return self.radius == 0


@dataclass(frozen=True)
class SiteSet:
    p_tilde: int
    q_tilde: int
    real: RealSite
    complex_sites: tuple[ComplexSite, ...]
    regime_ok: bool
    bits: int


def build_sites(p_tilde: int, q_tilde: int, u: QuarticRoots) -> SiteSet:
    """Exact site geometry at one lattice direction."""
    if q_tilde <= 0:
        raise ValueError("q_tilde must be positive")
    pt, qt = p_tilde, q_tilde
    anchor = Fraction(qt * qt + 5 * pt * qt + 10 * pt * pt)
    r_real = Fraction(REAL_REMAINDER_FACTOR * abs(pt) ** 3, qt)
    if pt > 0:
        lower, upper = anchor - r_real, anchor
    elif pt < 0:
        lower, upper = anchor, anchor + r_real
    else:
        lower = upper = anchor
    real = RealSite(lower, upper, anchor, r_real)
    r_c = Fraction(COMPLEX_REMAINDER_FACTOR * abs(pt) ** 3, qt)
    prec = u.bits + 16
    with mp.workprec(prec):
        sites = []
        for i, ui in u.items():
            center = (mp.mpc(0, qt * qt) + ui * (pt * qt)
                      - (ui + mp.mpc(0, 1) * ui * ui) / 2 * (pt * pt))
            sites.append(ComplexSite(center, r_c, i))
    return SiteSet(pt, qt, real, tuple(sites),
                   q_tilde >= Z_REGIME * abs(p_tilde), u.bits)


@dataclass(frozen=True)
class DisjointReport:
    distances: dict[tuple[int, int], float]  # (1, i) real-to-disk, (i, j) disk pairs
    radii_sums: dict[tuple[int, int], float]
    min_margin: float
    passed: bool


def check_disjoint(s: SiteSet) -> DisjointReport:
    """Pairwise site separation, including the published lower bounds.

    Distances between centers must exceed radii sums, real-to-disk
    distances must reach 12480*pt^2 and disk-pair distances 87*pt^2.
    """
    if s.p_tilde == 0 or not s.regime_ok:
        raise ValueError("disjointness applies for p_tilde != 0 inside the regime")
    pt2 = s.p_tilde * s.p_tilde
    distances: dict[tuple[int, int], float] = {}
    radii_sums: dict[tuple[int, int], float] = {}
    margins = []
    with mp.workprec(s.bits + 16):
        anchor = mp.mpf(s.real.anchor.numerator) / s.real.anchor.denominator
        for site in s.complex_sites:
            d = abs(mp.mpc(anchor) - site.center)
            rr = _f(s.real.radius + site.radius)
            distances[(1, site.u_index)] = float(d)
            radii_sums[(1, site.u_index)] = float(rr)
            margins.append(float(d - rr))
            margins.append(float(d - MIN_REAL_COMPLEX_DISTANCE * pt2))
        for a in range(len(s.complex_sites)):
            for b in range(a + 1, len(s.complex_sites)):
                sa, sb = s.complex_sites[a], s.complex_sites[b]
                d = abs(sa.center - sb.center)
                rr = _f(sa.radius + sb.radius)
                distances[(sa.u_index, sb.u_index)] = float(d)
                radii_sums[(sa.u_index, sb.u_index)] = float(rr)
                margins.append(float(d - rr))
                margins.append(float(d - MIN_COMPLEX_PAIR_DISTANCE * pt2))
    # Regime guarantee on radii sums alone: (74+51)/97 < 2 in units of pt^2.
    assert s.real.radius + s.complex_sites[0].radius < 2 * pt2
    return DisjointReport(distances, radii_sums, min(margins), min(margins) > 0)


@dataclass(frozen=True)
class SeparationReport:
    clearances: dict[int, float]  # u_index -> Im(center) - radius
    min_clearance: float
    passed: bool


def check_real_axis_separation(s: SiteSet) -> SeparationReport:
    """Disks must sit strictly above the real axis with the regime margin."""
    if s.p_tilde == 0:
        c = float(s.q_tilde**2)
        return SeparationReport({i: c for i in (2, 3, 4, 5)}, c, True)
    if not s.regime_ok:
        raise ValueError("separation margin applies inside the regime")
    pt2 = s.p_tilde * s.p_tilde
    clearances = {}
    with mp.workprec(s.bits + 16):
        for site in s.complex_sites:
            clearances[site.u_index] = float(site.center.imag - _f(site.radius))
    worst = min(clearances.values())
    return SeparationReport(clearances, worst,
                            worst > 0 and worst >= MIN_AXIS_CLEARANCE * pt2)


@dataclass(frozen=True)
class LocateResult:
    """Outcome of assigning the five representative roots to the five sites."""

    assignment: dict  # "real" or u_index -> CertifiedRoot
    bijection: bool
    unassigned: tuple[CertifiedRoot, ...]
    real_remainder: float        # |t1 - anchor|
    complex_remainder_max: float  # max_i |t_i - center_i|
    remainders_ok: bool

    def min_margin(self, s: SiteSet) -> float:
        out = float("inf")
        if not self.bijection:
            return float("-inf")
        r = self.assignment["real"]
        if not s.real.is_point:
            out = min(out, float(_f(s.real.radius)) - self.real_remainder)
        for site in s.complex_sites:
            if site.u_index in self.assignment and not site.is_point:
                root = self.assignment[site.u_index]
                with mp.workprec(s.bits + 16):
                    d = abs(root.center - site.center)
                    out = min(out, float(_f(site.radius) - d))
        return out


def _f(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def _representatives(roots: list[CertifiedRoot]) -> list[CertifiedRoot]:
    out = []
    for r in roots:
        if r.kind == "real":
            if r.interval is not None and r.interval[0] > 0:
                out.append(r)
            elif r.interval is None and r.center.real > 0:
                out.append(r)
        elif r.center.imag > 0:
            out.append(r)
    return out


def locate(roots: list[CertifiedRoot], s: SiteSet) -> LocateResult:
    """Map the Im >= 0 representatives onto the sites, one per site.

    Raises :class:`PrecisionError` when a certified radius is too large to
    decide membership at an open-interval or disk boundary; callers retry
    at higher precision.
    """
    reps = _representatives(roots)
    assignment: dict = {}
    unassigned: list[CertifiedRoot] = []
    real_rem = 0.0
    complex_rem = 0.0
    with mp.workprec(s.bits + 16):
        slack = mp.mpf(2) ** (-s.bits + 8) * (1 + mp.mpf(s.q_tilde)) ** 2
        for r in reps:
            if r.kind == "real":
                if "real" in assignment:
                    unassigned.append(r)
                    continue
                lo, hi = r.interval
                if s.real.is_point:
                    ok = (lo == hi == s.real.anchor or
                          abs(r.center - _f(s.real.anchor)) <= r.radius + slack)
                else:
                    ok = s.real.contains_interval(lo, hi)
                    boundary = min(abs(_f(lo - s.real.lower)), abs(_f(s.real.upper - hi)))
                    if not ok and boundary <= r.radius + slack:
                        raise PrecisionError("real root undecidable at interval endpoint")
                if ok:
                    assignment["real"] = r
                    real_rem = float(abs(r.center - _f(s.real.anchor)))
                else:
                    unassigned.append(r)
            else:
                site = min(s.complex_sites, key=lambda c: abs(r.center - c.center))
                d = abs(r.center - site.center)
                if site.is_point:
                    ok = d <= r.radius + slack
                else:
                    ok = d + r.radius + slack < _f(site.radius)
                    if not ok and d - r.radius - slack <= _f(site.radius):
                        raise PrecisionError("complex root undecidable at disk boundary")
                if ok and site.u_index not in assignment:
                    assignment[site.u_index] = r
                    complex_rem = max(complex_rem, float(d))
                else:
                    unassigned.append(r)
    covered = len(assignment)
    total_mult = sum(r.multiplicity for r in assignment.values())
    if s.p_tilde != 0:
        bijection = covered == 5 and not unassigned and total_mult == 5
        rem_ok = (real_rem < float(_f(s.real.radius))
                  and complex_rem < float(_f(s.complex_sites[0].radius)))
    else:
        # Degenerate direction: the four disks collapse onto one point
        # holding a multiplicity-4 root, and both remainders are exactly
        # zero up to the certification radii.
        bijection = covered == 2 and not unassigned and total_mult == 5
        tol = max((float(r.radius) for r in assignment.values()), default=0.0)
        rem_ok = real_rem <= tol and complex_rem <= tol
    return LocateResult(assignment, bijection, tuple(unassigned),
                        real_rem, complex_rem, rem_ok)


def locate_lattice_point(p_tilde: int, q_tilde: int,
                         bits: int = DEFAULT_BITS) -> tuple[SiteSet, LocateResult]:
    """Solve, build sites and locate at one (pt, qt), escalating precision
    until membership is decidable."""
    b = bits
    while True:
        try:
            u = solve_site_quartic(b)
            s = build_sites(p_tilde, q_tilde, u)
            roots = complex_roots(uni_coeffs_shifted(p_tilde, q_tilde), b)
            return s, locate(roots, s)
        except PrecisionError:
            if b >= MAX_BITS:
                raise
            b = min(2 * b, MAX_BITS)
