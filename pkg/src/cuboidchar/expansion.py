"""Symbolic re-derivation of the asymptotic remainder equations.

Substituting the real expansion head

    t = qt^2 + 5*pt*qt + 10*pt^2 + c/qt

into the transformed characteristic polynomial, rewriting qt = 1/z and
clearing denominators yields an exact polynomial identity in (pt, c, z)
whose z-free face is 1216*pt^3 + 32*c after normalization; everything
else is collected in the ``tail`` polynomial, which vanishes identically
at pt = 0.  The complex expansion head

    t = i*qt^2 + u*pt*qt - (u + i*u^2)/2 * pt^2 + c/qt

is treated the same way over the quotient ring in u, where the z-free
face is the degree-6 block (212992i - 598016u - 446464i u^2 + 110592 u^3)
* pt^6 minus 352256*pt^3*c.

Bound verification is by seeded grid-plus-random sampling over the stated
(c, z) domains, with a term-sum interval envelope reported alongside the
sampled maximum (the envelope is rigorous but not sharp).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .charpoly import collect_by_t, shear_matrix, transformed_char_poly
from .exactpoly import GAUSS, RAT, UQUOT, Gauss, MultiPoly, UQuot
from .roots import QuarticRoots

__all__ = [
    "BoundReport",
    "COMPLEX_BLOCK",
    "COMPLEX_C_COEFF",
    "ComplexRemainderEq",
    "DISK_RADIUS_FACTOR",
    "DerivationError",
    "INTERVAL_FACTOR",
    "LHS_BOUNDS",
    "REAL_C_COEFF",
    "REAL_CUBIC_COEFF",
    "REAL_TAIL_BOUND",
    "RHS_BOUNDARY_MODULUS",
    "RealRemainderEq",
    "Z_REGIME_FACTOR",
    "check_complex_consistency",
    "check_real_consistency",
    "derive_complex_remainder",
    "derive_real_remainder",
    "rouche_margins",
    "sample_complex_bound",
    "sample_real_bound",
]


class DerivationError(RuntimeError):
    """The cleared remainder equation does not have the expected shape."""


# Normalized z-free face of the real remainder equation.
REAL_CUBIC_COEFF = 1216
REAL_C_COEFF = 32
# Normalized z-free face of the complex remainder equation: u-powers of the
# pt^6 block, and the pt^3*c coefficient on the right-hand side.
COMPLEX_BLOCK = UQuot(Gauss(0, 212992), Gauss(-598016, 0), Gauss(0, -446464), Gauss(110592, 0))
COMPLEX_C_COEFF = 352256

# Domains and published bound constants.
INTERVAL_FACTOR = 74          # real c runs over (0, 74|pt|^3) on one side of 0
DISK_RADIUS_FACTOR = 51       # complex c runs over |c| < 51|pt|^3
Z_REGIME_FACTOR = 97          # |z| <= 1/(97|pt|) in the regime qt >= 97|pt|
REAL_TAIL_BOUND = 1142        # |tail| < 1142|pt|^3 on the real domain
PHI_BOUND_U2 = 1174818        # |tail at u2| bound, for reference
LHS_BOUNDS = {2: 1189840, 3: 16504669, 4: 2513770, 5: 2513770}
RHS_BOUNDARY_MODULUS = COMPLEX_C_COEFF * DISK_RADIUS_FACTOR  # 17965056

VARS_PCZ = ("pt", "c", "z")


@dataclass(frozen=True)
class RealRemainderEq:
    """Cleared real remainder equation scaled * normalizer = full.

    ``scaled`` has integer coefficients and decomposes exactly as

        scaled = 1216*pt^3 + 32*c + axis_terms + tail

    where ``axis_terms`` is the pt-free slice beyond the linear c face
    (at pt = 0 the equation factors as c*(2w + c)*((w + c)^2 + w^2)^4
    with w = qt^3, so these are nonzero but all vanish at c = 0) and
    ``tail`` carries every pt-dependent remainder term, vanishing
    identically at pt = 0.  The published modulus bound concerns
    ``remainder`` = axis_terms + tail.
    """

    full: MultiPoly
    normalizer: Fraction
    scaled: MultiPoly
    tail: MultiPoly
    axis_terms: MultiPoly
    clearing_power: int  # z-power that cleared all denominators

    @property
    def weight(self) -> int:
        return 3

    @property
    def remainder(self) -> MultiPoly:
        """Everything beyond the two faces; the object bounded by
        1142|pt|^3 on the sampling domain."""
        return self.tail + self.axis_terms


@dataclass(frozen=True)
class ComplexRemainderEq:
    """Cleared complex remainder equation over the u-quotient ring.

    ``scaled`` equals block*pt^6 - 352256*pt^3*c + axis_terms + tail with
    the same split as the real case (axis_terms = pt-free slice, tail
    vanishing at pt = 0).  ``normalizer`` is the invertible quotient-ring
    element dividing the raw cleared polynomial (the raw c face is not a
    scalar, so a plain Gaussian normalizer cannot exist).
    """

    full: MultiPoly
    normalizer: UQuot
    scaled: MultiPoly
    tail: MultiPoly
    axis_terms: MultiPoly
    clearing_power: int

    @property
    def weight(self) -> int:
        return 6

    @property
    def remainder(self) -> MultiPoly:
        return self.tail + self.axis_terms


def _clear_denominators(r0: MultiPoly) -> tuple[MultiPoly, int]:
    """Rewrite qt = 1/z and multiply by the minimal clearing power of z."""
    i = r0.variables.index("qt")
    clearing = max(e[i] for e in r0.terms)
    terms = {}
    for exps, coeff in r0.terms.items():
        vec = list(exps)
        vec[i] = clearing - exps[i]
        terms[tuple(vec)] = coeff
    renamed = tuple("z" if v == "qt" else v for v in r0.variables)
    return MultiPoly(renamed, terms, r0.domain).with_variables(VARS_PCZ), clearing


def _check_weight(poly: MultiPoly, weight: int) -> None:
    # Quasi-homogeneity of the cleared equation: with c of weight 3 and z of
    # weight -1, every term must sit at the stated weight.
    for (a, b, d) in poly.terms:
        if a + 3 * b - d != weight:
            raise DerivationError(f"term pt^{a} c^{b} z^{d} off weight {weight}")


def derive_real_remainder() -> RealRemainderEq:
    """Re-derive the real remainder equation from scratch, exactly."""
    by_t = collect_by_t(transformed_char_poly(shear_matrix()))
    pt = MultiPoly.var("pt", VARS_PCZ[:2] + ("qt",))
    qt = MultiPoly.var("qt", VARS_PCZ[:2] + ("qt",))
    c = MultiPoly.var("c", VARS_PCZ[:2] + ("qt",))
    # qt * (expansion head): keeps everything polynomial.
    head = qt**3 + 5 * pt * qt**2 + 10 * pt**2 * qt + c
    power = MultiPoly.constant(1, head.variables)
    head_pows = [power]
    for _ in range(10):
        power = power * head
        head_pows.append(power)
    r0 = MultiPoly.zero(head.variables)
    for j, a_j in by_t.items():
        r0 = r0 + a_j.with_variables(("pt", "qt")) * head_pows[j] * qt**(10 - j)
    full, clearing = _clear_denominators(r0)
    gamma = full.coefficient_of({"c": 1})
    if gamma == 0:
        raise DerivationError("cleared equation has no z-free linear c term")
    normalizer = Fraction(gamma, REAL_C_COEFF)
    scaled = full.scale(1 / normalizer)
    if any(not isinstance(k, int) and k.denominator != 1 for k in scaled.terms.values()):
        raise DerivationError("normalized equation is not integral")
    scaled = MultiPoly(scaled.variables, {e: int(k) for e, k in scaled.terms.items()})
    if scaled.coefficient_of({"pt": 3}) != REAL_CUBIC_COEFF:
        raise DerivationError(
            f"pt^3 face is {scaled.coefficient_of({'pt': 3})}, expected {REAL_CUBIC_COEFF}")
    _check_weight(scaled, 3)
    remainder = (scaled
                 - MultiPoly.var("pt", VARS_PCZ)**3 * REAL_CUBIC_COEFF
                 - MultiPoly.var("c", VARS_PCZ) * REAL_C_COEFF)
    axis = _pt_free_slice(remainder)
    tail = remainder - axis
    if not tail.substitute("pt", 0).is_zero():
        raise DerivationError("pt-dependent tail does not vanish at pt = 0")
    return RealRemainderEq(full, normalizer, scaled, tail, axis, clearing)


def _pt_free_slice(poly: MultiPoly) -> MultiPoly:
    i = poly.variables.index("pt")
    return MultiPoly(poly.variables,
                     {e: k for e, k in poly.terms.items() if e[i] == 0},
                     poly.domain)


def derive_complex_remainder() -> ComplexRemainderEq:
    """Re-derive the complex remainder equation over the u-quotient ring."""
    by_t = collect_by_t(transformed_char_poly(shear_matrix()))
    uvars = ("pt", "c", "qt")
    pt = MultiPoly.var("pt", uvars, UQUOT)
    qt = MultiPoly.var("qt", uvars, UQUOT)
    c = MultiPoly.var("c", uvars, UQUOT)
    two_i = UQuot(Gauss(0, 2))
    two_u = UQuot(0, 2)
    head_quad = UQuot(0, -1, Gauss(0, -1))  # -(u + i u^2)
    # 2*qt*(expansion head): the factor 2 clears the half-integer term.
    head = (qt**3).scale(two_i) + (pt * qt**2).scale(two_u) \
        + (pt**2 * qt).scale(head_quad) + c.scale(2)
    power = MultiPoly.constant(1, uvars, UQUOT)
    head_pows = [power]
    for _ in range(10):
        power = power * head
        head_pows.append(power)
    r0 = MultiPoly.zero(uvars, UQUOT)
    for j, a_j in by_t.items():
        a = a_j.with_variables(("pt", "qt")).promote(UQUOT)
        r0 = r0 + a * head_pows[j] * (qt**(10 - j)).scale(2**(10 - j))
    full, clearing = _clear_denominators(r0)
    gamma = full.coefficient_of({"pt": 3, "c": 1})
    if not isinstance(gamma, UQuot) or not gamma:
        raise DerivationError(f"pt^3*c face vanished: {gamma}")
    # The quotient ring is a field; the normalizer is the ring element that
    # moves the c face to -352256*pt^3*c (right-hand side +352256*pt^3*c).
    normalizer = gamma * UQuot(Fraction(-1, COMPLEX_C_COEFF))
    inv = normalizer.inverse()
    block_raw = full.coefficient_of({"pt": 6})
    if block_raw * inv != COMPLEX_BLOCK:
        raise DerivationError(
            f"pt^6 block after normalization is {block_raw * inv}, "
            f"expected {COMPLEX_BLOCK}")
    scaled = MultiPoly(full.variables,
                       {e: k * inv for e, k in full.terms.items()}, UQUOT)
    if any(not k.is_integral() for k in scaled.terms.values()):
        raise DerivationError("normalized equation is not integral")
    if scaled.coefficient_of({"pt": 3, "c": 1}) != UQuot(-COMPLEX_C_COEFF):
        raise DerivationError("c face is not -352256*pt^3 after normalization")
    _check_weight(scaled, 6)
    pt6 = MultiPoly.var("pt", VARS_PCZ, UQUOT)**6
    pc = (MultiPoly.var("pt", VARS_PCZ, UQUOT)**3
          * MultiPoly.var("c", VARS_PCZ, UQUOT)).scale(COMPLEX_C_COEFF)
    remainder = scaled - pt6.scale(COMPLEX_BLOCK) + pc
    axis = _pt_free_slice(remainder)
    tail = remainder - axis
    if not tail.substitute("pt", MultiPoly.constant(0, (), UQUOT)).is_zero():
        raise DerivationError("pt-dependent tail does not vanish at pt = 0")
    return ComplexRemainderEq(full, normalizer, scaled, tail, axis, clearing)


# ---------------------------------------------------------------------------
# Exact consistency oracles.
# ---------------------------------------------------------------------------

def check_real_consistency(rem: RealRemainderEq, pt: int, qt: int, c: Fraction) -> bool:
    """The cleared equation evaluates to the original polynomial exactly."""
    cf = Fraction(c)
    t = Fraction(qt)**2 + 5 * pt * qt + 10 * pt * pt + cf / qt
    lhs = transformed_char_poly(shear_matrix()).eval_exact({"t": t, "pt": pt, "qt": qt})
    rhs = rem.full.eval_exact({"pt": pt, "c": cf, "z": Fraction(1, qt)})
    return lhs == rhs * Fraction(qt)**(rem.clearing_power - 10)


def check_complex_consistency(rem: ComplexRemainderEq, u_value: mp.mpc,
                              pt: int, qt: int, c: complex) -> float:
    """Relative residual of the cleared identity at a numeric u root."""
    c = mp.mpc(c)
    u2 = u_value * u_value
    t = mp.mpc(0, 1) * qt**2 + u_value * pt * qt \
        - (u_value + mp.mpc(0, 1) * u2) / 2 * pt**2 + c / qt
    poly = transformed_char_poly(shear_matrix())
    lhs = mp.mpc(0)
    for (et, ep, eq), k in poly.terms.items():
        lhs += int(k) * t**et * mp.mpf(pt)**ep * mp.mpf(qt)**eq
    z = 1 / mp.mpf(qt)
    rhs = mp.mpc(0)
    u3 = u2 * u_value
    for (a, b, d), coeff in rem.full.terms.items():
        cval = _uquot_to_mpc(coeff, u_value, u2, u3)
        rhs += cval * mp.mpf(pt)**a * c**b * z**d
    lhs = lhs * mp.mpf(2)**10 * mp.mpf(qt)**(10 - rem.clearing_power)
    scale = max(abs(lhs), abs(rhs), mp.mpf(1))
    return float(abs(lhs - rhs) / scale)


def _uquot_to_mpc(k: UQuot, u, u2, u3) -> mp.mpc:
    parts = [mp.mpc(_fr(g.re), _fr(g.im)) for g in k.c]
    return parts[0] + parts[1] * u + parts[2] * u2 + parts[3] * u3


def _fr(x) -> mp.mpf:
    f = Fraction(x)
    return mp.mpf(f.numerator) / mp.mpf(f.denominator)


# ---------------------------------------------------------------------------
# Sampled bound verification.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Sampled maximum of a remainder quantity against its published bound.

    ``margin`` is paper_bound - sampled_max (positive means the bound
    held); ``envelope`` is the rigorous but non-sharp sum of term moduli
    over the domain, reported separately since it may exceed the bound.
    """

    suite: str
    u_index: int | None
    p_tilde: int
    sampled_max: float
    paper_bound: float
    margin: float
    envelope: float
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.margin > 0

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "u_index": self.u_index,
            "p_tilde": self.p_tilde,
            "sampled_max": self.sampled_max,
            "paper_bound": self.paper_bound,
            "margin": self.margin,
            "envelope": self.envelope,
            "samples": self.samples,
            "seed": self.seed,
        }


def _term_arrays(poly: MultiPoly, coeff_to_complex) -> list[tuple[complex, int, int, int]]:
    return [(coeff_to_complex(k), a, b, d) for (a, b, d), k in poly.terms.items()]


def _eval_terms(terms, p_tilde: int, cs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    total = np.zeros(cs.shape, dtype=complex)
    cpow: dict[int, np.ndarray] = {0: np.ones_like(cs)}
    zpow: dict[int, np.ndarray] = {0: np.ones_like(zs)}
    for coeff, a, b, d in terms:
        if b not in cpow:
            cpow[b] = cs**b
        if d not in zpow:
            zpow[d] = zs**d
        total += (coeff * float(p_tilde)**a) * cpow[b] * zpow[d]
    return total


def _envelope(terms, p_tilde: int, c_bound: float, z_bound: float) -> float:
    return float(sum(abs(coeff) * abs(p_tilde)**a * c_bound**b * z_bound**d
                     for coeff, a, b, d in terms))


def sample_real_bound(rem: RealRemainderEq, p_tilde: int,
                      samples: int = 10_000, seed: int = 0) -> BoundReport:
    """Grid plus seeded random sampling of |tail| over the stated domain."""
    if p_tilde == 0:
        raise ValueError("p_tilde must be nonzero")
    rng = np.random.default_rng(seed)
    c_max = float(INTERVAL_FACTOR * abs(p_tilde)**3)
    z_max = 1.0 / (Z_REGIME_FACTOR * abs(p_tilde))
    side = max(int(np.sqrt(samples // 2)), 2)
    grid_c, grid_z = np.meshgrid(
        np.linspace(0.0, c_max, side) * (-1 if p_tilde > 0 else 1),
        np.linspace(-z_max, z_max, side))
    n_rand = max(samples - grid_c.size, 0)
    rand_c = rng.uniform(0.0, c_max, n_rand) * (-1 if p_tilde > 0 else 1)
    rand_z = rng.uniform(-z_max, z_max, n_rand)
    cs = np.concatenate([grid_c.ravel(), rand_c])
    zs = np.concatenate([grid_z.ravel(), rand_z])
    terms = _term_arrays(rem.remainder, lambda k: complex(int(k), 0))
    sampled = float(np.max(np.abs(_eval_terms(terms, p_tilde, cs, zs))))
    bound = float(REAL_TAIL_BOUND * abs(p_tilde)**3)
    return BoundReport("bounds-real", None, p_tilde, sampled, bound,
                       bound - sampled, _envelope(terms, p_tilde, c_max, z_max),
                       int(cs.size), seed)


def sample_complex_bound(rem: ComplexRemainderEq, u: QuarticRoots, u_index: int,
                         p_tilde: int, samples: int = 10_000, seed: int = 0) -> BoundReport:
    """Sampled maximum of the full left-hand side modulus at one u root.

    c runs over the closed disk of radius 51|pt|^3 (boundary emphasized),
    z over the disk |z| <= 1/(97|pt|); compared against the per-root
    published bound on |block*pt^6 + tail|.
    """
    if p_tilde == 0:
        raise ValueError("p_tilde must be nonzero")
    rng = np.random.default_rng(seed)
    u_val = complex(u[u_index])
    u_pows = (1.0, u_val, u_val**2, u_val**3)

    def coeff_val(k: UQuot) -> complex:
        return sum((float(g.re) + 1j * float(g.im)) * u_pows[i]
                   for i, g in enumerate(k.c))

    c_max = float(DISK_RADIUS_FACTOR * abs(p_tilde)**3)
    z_max = 1.0 / (Z_REGIME_FACTOR * abs(p_tilde))
    n_boundary = samples // 2
    n_inner = samples - n_boundary
    theta_b = np.concatenate([
        np.linspace(0.0, 2 * np.pi, max(n_boundary // 2, 2), endpoint=False),
        rng.uniform(0.0, 2 * np.pi, n_boundary - max(n_boundary // 2, 2))])
    cs_b = c_max * np.exp(1j * theta_b)
    cs_i = (c_max * np.sqrt(rng.uniform(0.0, 1.0, n_inner))
            * np.exp(1j * rng.uniform(0.0, 2 * np.pi, n_inner)))
    cs = np.concatenate([cs_b, cs_i])
    zs = (z_max * np.sqrt(rng.uniform(0.0, 1.0, cs.size))
          * np.exp(1j * rng.uniform(0.0, 2 * np.pi, cs.size)))
    terms = _term_arrays(rem.remainder, coeff_val)
    block = coeff_val(COMPLEX_BLOCK) * float(p_tilde)**6
    values = np.abs(block + _eval_terms(terms, p_tilde, cs, zs))
    bound = float(LHS_BOUNDS[u_index] * abs(p_tilde)**6)
    sampled = float(np.max(values))
    env = abs(block) + _envelope(terms, p_tilde, c_max, z_max)
    return BoundReport("bounds-complex", u_index, p_tilde, sampled, bound,
                       bound - sampled, float(env), int(cs.size), seed)


def rouche_margins() -> dict[int, Fraction]:
    """Boundary modulus of the right-hand side over each per-root bound.

    Every ratio must exceed 1 for the disk root count to transfer.
    """
    return {i: Fraction(RHS_BOUNDARY_MODULUS, b) for i, b in LHS_BOUNDS.items()}
