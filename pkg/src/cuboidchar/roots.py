"""Certified root finding for specialized characteristic polynomials.

Real roots are isolated with exact Sturm-sequence bisection over rationals
and refined to arbitrary width; complex roots use Ehrlich-Aberth
simultaneous iteration in arbitrary-precision arithmetic with a posteriori
inclusion radii (deg * |f(z)/f'(z)| bounds the distance to the nearest
root).  The even symmetry of the family is exploited by solving in s = t^2
and the +/- pairing is exact by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .charpoly import uni_coeffs, uni_coeffs_shifted

__all__ = [
    "CertifiedRoot",
    "ConvergenceError",
    "PrecisionError",
    "QuarticRoots",
    "aberth_roots",
    "char_integer_roots",
    "complex_roots",
    "integer_roots",
    "isolate_real_roots",
    "refine_root",
    "site_quartic_value",
    "solve_site_quartic",
    "squarefree_decomposition",
    "sturm_chain",
]

DEFAULT_BITS = 128
MAX_BITS = 1024
_GUARD = 24


class ConvergenceError(RuntimeError):
    """Root iteration failed to converge at the maximum working precision."""


class PrecisionError(RuntimeError):
    """Certified radii are too large to decide; retry at higher precision."""


# ---------------------------------------------------------------------------
# Exact univariate polynomial helpers (ascending coefficient lists over Q).
# ---------------------------------------------------------------------------

def _norm(coeffs: Sequence) -> list[Fraction]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_deriv(coeffs: Sequence) -> list:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _divmod(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = a[:]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _monic(f: list[Fraction]) -> list[Fraction]:
    inv = 1 / f[-1]
    return [c * inv for c in f]


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = a[:], b[:]
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a) if a else a


def squarefree_part(coeffs: Sequence) -> list[Fraction]:
    f = _norm(coeffs)
    if len(f) <= 1:
        return f
    g = _gcd(f, _norm(poly_deriv(f)))
    if len(g) <= 1:
        return _monic(f)
    q, r = _divmod(f, g)
    assert not r
    return _monic(q)


def squarefree_decomposition(coeffs: Sequence) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: monic pairwise-coprime squarefree factors with
    multiplicities, f = lc * prod g_i^i."""
    f = _norm(coeffs)
    if len(f) <= 1:
        return []
    f = _monic(f)
    df = _norm(poly_deriv(f))
    a = _gcd(f, df)
    if len(a) <= 1:
        return [(f, 1)]
    b, _ = _divmod(f, a)
    c, _ = _divmod(df, a)
    d = _sub(c, _norm(poly_deriv(b)))
    out = []
    i = 1
    while len(b) > 1:
        g = _gcd(b, d) if d else _monic(b)
        if len(g) > 1:
            out.append((g, i))
        b, _ = _divmod(b, g)
        c, _ = _divmod(d, g)
        d = _sub(c, _norm(poly_deriv(b)))
        i += 1
    return out


def _sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def sturm_chain(coeffs: Sequence) -> list[list[Fraction]]:
    """Sturm sequence of a squarefree polynomial."""
    f = _norm(coeffs)
    chain = [f, _norm(poly_deriv(f))]
    while chain[-1]:
        _, r = _divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations_at(chain, x) -> int:
    signs = [s for s in (_sign(poly_eval(g, x)) for g in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _cauchy_bound(f: list[Fraction]) -> Fraction:
    lead = abs(f[-1])
    return 1 + max((abs(c) for c in f[:-1]), default=Fraction(0)) / lead


def isolate_real_roots(coeffs: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root.

    Exact rational roots come back as degenerate [r, r] intervals; open
    intervals (lo, hi) contain exactly one simple root of the squarefree
    part strictly inside.  Intervals are sorted ascending.
    """
    f = _norm(coeffs)
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return []
    g = squarefree_part(f)
    if len(g) == 2:
        r = -g[0] / g[1]
        return [(r, r)]
    chain = sturm_chain(g)
    bound = _cauchy_bound(g)
    out: list[tuple[Fraction, Fraction]] = []
    lo, hi = -bound, bound
    stack = [(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            if poly_eval(g, b) == 0:
                out.append((b, b))
            else:
                out.append((a, b))
            continue
        m = (a + b) / 2
        if poly_eval(g, m) != 0:
            vm = _variations_at(chain, m)
            stack.append((a, m, va, vm))
            stack.append((m, b, vm, vb))
        else:
            out.append((m, m))
            vm = _variations_at(chain, m)
            h = (b - a) / 4
            while True:
                lm, rm = m - h, m + h
                if (poly_eval(g, lm) != 0 and poly_eval(g, rm) != 0):
                    vlm, vrm = _variations_at(chain, lm), _variations_at(chain, rm)
                    # shrink h until (lm, m] holds only m and (m, rm] is empty
                    if vlm - vm == 1 and vm - vrm == 0:
                        break
                h /= 2
            stack.append((a, lm, va, vlm))
            stack.append((rm, b, vrm, vb))
    return sorted(out)


def refine_root(coeffs: Sequence, interval: tuple, bits: int) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval to width <= 2^-bits by exact bisection."""
    f = _norm(coeffs)
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo == hi:
        return lo, hi
    flo, fhi = poly_eval(f, lo), poly_eval(f, hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if _sign(flo) == _sign(fhi):
        raise ValueError("interval does not bracket a sign change")
    width = Fraction(1, 2**bits)
    while hi - lo > width:
        m = (lo + hi) / 2
        fm = poly_eval(f, m)
        if fm == 0:
            return m, m
        if _sign(fm) == _sign(flo):
            lo, flo = m, fm
        else:
            hi = m
    return lo, hi


def integer_roots(coeffs: Sequence) -> list[int]:
    """All integers r with f(r) = 0, by isolation plus exact adjacent tests."""
    f = _norm(coeffs)
    if not f:
        raise ValueError("zero polynomial")
    g = squarefree_part(f)
    out = []
    for lo, hi in isolate_real_roots(f):
        if lo == hi:
            if lo.denominator == 1:
                out.append(int(lo))
            continue
        lo, hi = refine_root(g, (lo, hi), 2)
        if lo == hi:
            if lo.denominator == 1:
                out.append(int(lo))
            continue
        for n in range(math.floor(lo), math.floor(hi) + 2):
            if lo < n < hi and poly_eval(f, n) == 0:
                out.append(n)
    return sorted(set(out))


# Prime moduli for the integer-root prefilter, ordered by observed
# filtering power on this family (composite moduli reject nothing here).
_FILTER_PRIMES = (61, 59, 67, 71, 73, 79, 83, 89, 101, 103)


def _square_root_mod(s_poly: Sequence[int], m: int) -> bool:
    """Whether t^2 = s solves the reduced polynomial mod m for some t."""
    cs = [c % m for c in s_poly]
    seen = set()
    for t in range(m // 2 + 1):
        s = (t * t) % m
        if s in seen:
            continue
        seen.add(s)
        acc = 0
        for c in reversed(cs):
            acc = (acc * s + c) % m
        if acc == 0:
            return True
    return False


def char_integer_roots(p: int, q: int, shifted: bool = False) -> list[int]:
    """Integer roots of the (transformed) characteristic polynomial at a
    lattice point, via the degree-5 even reduction s = t^2.

    A modular necessary condition (an integer root survives reduction mod
    every prime) rejects almost all cells before the exact Sturm path.
    """
    coeffs = uni_coeffs_shifted(p, q) if shifted else uni_coeffs(p, q)
    s_poly = list(coeffs[::2])
    for m in _FILTER_PRIMES:
        if not _square_root_mod(s_poly, m):
            return []
    out = []
    for s0 in integer_roots(s_poly):
        if s0 < 0:
            continue
        t = math.isqrt(s0)
        if t * t == s0:
            out.extend([-t, t] if t else [0])
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Complex roots: Ehrlich-Aberth simultaneous iteration with certified radii.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifiedRoot:
    """Numeric root with a rigorous inclusion radius.

    The underlying polynomial has exactly ``multiplicity`` roots within
    ``radius`` of ``center``; real-kind roots additionally carry an exact
    rational isolating interval.
    """

    center: mp.mpc
    radius: mp.mpf
    kind: str  # "real" | "complex"
    multiplicity: int = 1
    interval: tuple[Fraction, Fraction] | None = None

    @property
    def re(self) -> mp.mpf:
        return self.center.real

    @property
    def im(self) -> mp.mpf:
        return self.center.imag

    def as_dict(self) -> dict:
        return {
            "re": float(self.center.real),
            "im": float(self.center.imag),
            "radius": float(self.radius),
            "kind": self.kind,
            "multiplicity": self.multiplicity,
        }


def _to_mpc(c) -> mp.mpc:
    if isinstance(c, Fraction):
        return mp.mpc(mp.mpf(c.numerator) / mp.mpf(c.denominator))
    return mp.mpc(c)


def _horner2(cs, x):
    """Value and derivative in one pass."""
    p = cs[-1]
    dp = mp.mpc(0)
    for c in reversed(cs[:-1]):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def aberth_roots(coeffs: Sequence, prec: int, maxiter: int = 400) -> list[mp.mpc]:
    """All roots of a squarefree polynomial by Ehrlich-Aberth iteration.

    ``coeffs`` ascending, any exact or floating numeric type; works at
    binary precision ``prec`` and raises :class:`ConvergenceError` if the
    corrections do not settle.
    """
    with mp.workprec(prec + _GUARD):
        cs = [_to_mpc(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        n = len(cs) - 1
        if n < 1:
            raise ValueError("degree must be >= 1")
        lead = cs[-1]
        cs = [c / lead for c in cs]
        radius = 1 + max(abs(c) for c in cs[:-1])
        z = [radius * mp.expjpi(mp.mpf(2 * k) / n + mp.mpf("0.35")) for k in range(n)]
        eps = mp.mpf(2) ** (-prec)
        # Corrections bottom out at the evaluation noise floor, which for
        # badly scaled coefficients can sit above eps; stagnation after
        # locking on counts as converged (radii are certified a posteriori).
        locked = mp.mpf(2) ** (-16)
        best = mp.inf
        stale = 0
        for _ in range(maxiter):
            worst = mp.mpf(0)
            for i in range(n):
                p, dp = _horner2(cs, z[i])
                if p == 0:
                    continue
                if dp == 0:
                    z[i] = z[i] * (1 + mp.mpf("1e-3")) + mp.mpf("1e-3")
                    worst = mp.inf
                    continue
                w = p / dp
                s = mp.mpc(0)
                for j in range(n):
                    if j != i:
                        d = z[i] - z[j]
                        if d == 0:
                            d = eps
                        s += 1 / d
                denom = 1 - w * s
                corr = w if denom == 0 else w / denom
                z[i] = z[i] - corr
                rel = abs(corr) / (1 + abs(z[i]))
                if rel > worst:
                    worst = rel
            if worst <= eps:
                return z
            if worst < locked:
                if worst >= best / 2:
                    stale += 1
                    if stale >= 4:
                        return z
                else:
                    stale = 0
            if worst < best:
                best = worst
        raise ConvergenceError(f"Aberth iteration stalled at prec={prec}")


def _sqrt_fraction_exact(s: Fraction) -> Fraction | None:
    if s < 0:
        return None
    a, b = s.numerator, s.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _frac_to_mpf(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def complex_roots(coeffs: Sequence, bits: int = DEFAULT_BITS) -> list[CertifiedRoot]:
    """All roots of an even polynomial as certified +/- pairs.

    Solves the degree-halved polynomial in s = t^2, takes the branch with
    Im(t) >= 0 (positive real axis for real roots) as representatives and
    mirrors them, so opposite roots are exact negations.  Multiple roots
    (exact rational clusters) come back as a single root with a
    multiplicity field.  Working precision doubles on certification
    failure up to a hard cap.
    """
    f = _norm(coeffs)
    if len(f) < 2:
        raise ValueError("degree must be >= 1")
    if any(c != 0 for c in f[1::2]):
        raise ValueError("even polynomial expected")
    prec = max(bits, 53)
    while True:
        try:
            return _complex_roots_attempt(f, prec, bits)
        except PrecisionError:
            if prec >= MAX_BITS:
                raise ConvergenceError(
                    f"could not certify disjoint root disks below {MAX_BITS} bits")
            prec = min(2 * prec, MAX_BITS)


def _complex_roots_attempt(f, prec, bits) -> list[CertifiedRoot]:
    with mp.workprec(prec + _GUARD):
        reps: list[CertifiedRoot] = []
        # Real roots: exact isolation in t keeps rational intervals attached.
        for g, mult in squarefree_decomposition(f):
            for lo, hi in isolate_real_roots(g):
                lo, hi = refine_root(g, (lo, hi), bits + 8)
                if hi <= 0 and lo != hi:
                    continue
                if lo == hi and lo < 0:
                    continue
                if lo == hi and lo == 0:
                    reps.append(CertifiedRoot(mp.mpc(0), mp.mpf(0), "real", mult, (lo, hi)))
                    continue
                mid = (lo + hi) / 2
                reps.append(CertifiedRoot(
                    mp.mpc(_frac_to_mpf(mid)),
                    _frac_to_mpf((hi - lo) / 2) if lo != hi else mp.mpf(0),
                    "real", mult, (lo, hi)))
        # Non-real roots via the even reduction.
        s_poly = _norm(f[::2])
        for g, mult in squarefree_decomposition(s_poly):
            real_ivs = [refine_root(g, iv, prec + 8) for iv in isolate_real_roots(g)]
            n_complex = (len(g) - 1) - len(real_ivs)
            s_complex: list[mp.mpc] = []
            if n_complex:
                numeric = aberth_roots(g, prec)
                used = set()
                for lo, hi in real_ivs:
                    mid = _frac_to_mpf((lo + hi) / 2)
                    j = min((k for k in range(len(numeric)) if k not in used),
                            key=lambda k: abs(numeric[k] - mid))
                    used.add(j)
                s_complex = [numeric[k] for k in range(len(numeric)) if k not in used]
            for lo, hi in real_ivs:
                mid = (lo + hi) / 2
                if mid >= 0 and lo != hi:
                    continue  # positive s handled via direct t isolation
                if lo == hi:
                    if lo >= 0:
                        continue
                    rt = _sqrt_fraction_exact(-lo)
                    if rt is not None:
                        reps.append(CertifiedRoot(
                            mp.mpc(0, _frac_to_mpf(rt)), mp.mpf(0), "complex", mult))
                        continue
                    center = mp.mpc(0, mp.sqrt(_frac_to_mpf(-lo)))
                    reps.append(CertifiedRoot(
                        center, 4 * mp.eps * abs(center), "complex", mult))
                    continue
                # negative real s: purely imaginary t
                center = mp.mpc(0, mp.sqrt(_frac_to_mpf(-mid)))
                halfw = _frac_to_mpf((hi - lo) / 2)
                rad = halfw / (2 * abs(center)) + 4 * mp.eps * abs(center)
                reps.append(CertifiedRoot(center, rad, "complex", mult))
            for s in s_complex:
                t = mp.sqrt(s)
                if t.imag < 0:
                    t = -t
                reps.append(CertifiedRoot(t, _inclusion_radius(f, t), "complex", mult))
        # Tighten radii a posteriori where the simple-root bound applies.
        reps = [
            r if r.multiplicity > 1 or r.radius == 0 else
            CertifiedRoot(r.center, _inclusion_radius(f, r.center), r.kind,
                          r.multiplicity, r.interval)
            for r in reps
        ]
        if sum(r.multiplicity for r in reps) != (len(f) - 1) // 2:
            raise PrecisionError("representative count does not match degree")
        mirrored = reps + [
            CertifiedRoot(-r.center, r.radius, r.kind, r.multiplicity,
                          (-r.interval[1], -r.interval[0]) if r.interval else None)
            for r in reps
        ]
        for i in range(len(mirrored)):
            for j in range(i + 1, len(mirrored)):
                a, b = mirrored[i], mirrored[j]
                if abs(a.center - b.center) <= a.radius + b.radius:
                    raise PrecisionError("certified disks overlap")
        return sorted(mirrored, key=lambda r: (r.center.real, r.center.imag))


def _inclusion_radius(f, z) -> mp.mpf:
    """deg * |f(z)/f'(z)|: the nearest root lies within this distance."""
    cs = [_to_mpc(c) for c in f]
    p, dp = _horner2(cs, z)
    if dp == 0:
        return mp.inf
    return (len(f) - 1) * abs(p / dp)


# ---------------------------------------------------------------------------
# The site quartic u^4 + 8u^2 - 12iu - 4 = 0.
# ---------------------------------------------------------------------------

# Substituting u = i*y turns the site quartic into this real quartic in y;
# its two real roots give the purely imaginary u's.
_Y_QUARTIC = (-4, 12, -8, 0, 1)


@dataclass(frozen=True)
class QuarticRoots:
    """The four slope coefficients of the complex-site expansions, indexed
    2..5: two purely imaginary, and a mirror pair +/-a + bi."""

    u2: mp.mpc
    u3: mp.mpc
    u4: mp.mpc
    u5: mp.mpc
    bits: int = DEFAULT_BITS

    def __getitem__(self, index: int) -> mp.mpc:
        return {2: self.u2, 3: self.u3, 4: self.u4, 5: self.u5}[index]

    def items(self):
        return [(i, self[i]) for i in (2, 3, 4, 5)]


def site_quartic_value(u) -> mp.mpc:
    return ((u * u + 8) * u - 12j) * u - 4


def solve_site_quartic(bits: int = DEFAULT_BITS) -> QuarticRoots:
    """Solve the site quartic with exact handling of its imaginary pair."""
    prec = bits + _GUARD
    with mp.workprec(prec):
        ivs = [refine_root(_Y_QUARTIC, iv, bits + 8)
               for iv in isolate_real_roots(_Y_QUARTIC)]
        if len(ivs) != 2:
            raise ConvergenceError("expected exactly two real roots of the y-quartic")
        ys = sorted(_frac_to_mpf((lo + hi) / 2) for lo, hi in ivs)
        u3 = mp.mpc(0, ys[0])
        u2 = mp.mpc(0, ys[1])
        numeric = aberth_roots(_Y_QUARTIC, prec)
        y4 = min((z for z in numeric if z.imag < -mp.mpf("0.1")),
                 key=lambda z: z.imag, default=None)
        if y4 is None:
            raise ConvergenceError("missing complex pair of the y-quartic")
        u4 = mp.mpc(0, 1) * y4
        u5 = -mp.conj(u4)
        roots = QuarticRoots(u2, u3, u4, u5, bits)
        tol = mp.mpf(2) ** (-bits // 2)
        for i, u in roots.items():
            if abs(site_quartic_value(u)) > tol:
                raise ConvergenceError(f"u{i} residual above tolerance")
        return roots
