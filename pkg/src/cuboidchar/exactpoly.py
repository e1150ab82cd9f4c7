"""Exact sparse multivariate polynomial arithmetic.

Three coefficient domains, ordered by explicit promotion:

  RAT    arbitrary-precision rationals (Python int / Fraction),
  GAUSS  Gaussian rationals re + im*i with i^2 = -1,
  UQUOT  the quotient ring GAUSS[u] / (u^4 + 8 u^2 - 12 i u - 4),

all with exact arithmetic and canonical zero.  Polynomials are stored
sparsely as {exponent vector: coefficient}; operations never introduce
rounding.  Values are immutable after construction, so instances are safe
to share across threads and processes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "DomainMismatchError",
    "Gauss",
    "MissingAssignmentError",
    "MultiPoly",
    "PolyError",
    "RAT",
    "GAUSS",
    "UQUOT",
    "UQuot",
    "UnknownVariableError",
]


class PolyError(Exception):
    """Base class for polynomial-layer errors."""


class DomainMismatchError(PolyError):
    """Operands live in different coefficient domains; promote explicitly."""


class UnknownVariableError(PolyError):
    """A named variable is not part of the polynomial."""


class MissingAssignmentError(PolyError):
    """eval_exact was called without a value for some variable."""


def _as_scalar(x) -> Scalar:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x if x.denominator != 1 else int(x)
    raise TypeError(f"not a rational scalar: {x!r}")


def _scalar_str(x: Scalar) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_scalar(s: str) -> Scalar:
    return _as_scalar(Fraction(s))


class Gauss:
    """Gaussian rational re + im*i, exact."""

    __slots__ = ("re", "im")

    def __init__(self, re: Scalar = 0, im: Scalar = 0):
        object.__setattr__(self, "re", _as_scalar(re))
        object.__setattr__(self, "im", _as_scalar(im))

    def __setattr__(self, *a):
        raise AttributeError("Gauss is immutable")

    @staticmethod
    def coerce(x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        return Gauss(_as_scalar(x), 0)

    def __add__(self, other):
        o = Gauss.coerce(other)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Gauss.coerce(other)
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Gauss.coerce(other) - self

    def __mul__(self, other):
        o = Gauss.coerce(other)
        return Gauss(self.re * o.re - self.im * o.im,
                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def conjugate(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def norm(self) -> Scalar:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Gauss":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of Gaussian zero")
        return Gauss(Fraction(self.re, 1) / n, Fraction(-self.im, 1) / n)

    def __truediv__(self, other):
        return self * Gauss.coerce(other).inverse()

    def __eq__(self, other):
        try:
            o = Gauss.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_integral(self) -> bool:
        return isinstance(self.re, int) and isinstance(self.im, int)

    def __repr__(self):
        return f"Gauss({self.re!r}, {self.im!r})"

    def __str__(self):
        return f"{_scalar_str(self.re)},{_scalar_str(self.im)}"

    @staticmethod
    def parse(s: str) -> "Gauss":
        re, im = s.split(",")
        return Gauss(_parse_scalar(re), _parse_scalar(im))


GAUSS_I = Gauss(0, 1)

# u^4 = -8 u^2 + 12 i u + 4, the reduction rule of the quotient ring.
_U4 = (Gauss(4), Gauss(0, 12), Gauss(-8), Gauss(0))


class UQuot:
    """Element c0 + c1*u + c2*u^2 + c3*u^3 of GAUSS[u]/(u^4 + 8u^2 - 12iu - 4)."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(
            self, "c",
            (Gauss.coerce(c0), Gauss.coerce(c1), Gauss.coerce(c2), Gauss.coerce(c3)),
        )

    def __setattr__(self, *a):
        raise AttributeError("UQuot is immutable")

    @staticmethod
    def coerce(x) -> "UQuot":
        if isinstance(x, UQuot):
            return x
        return UQuot(Gauss.coerce(x))

    @staticmethod
    def from_u_powers(coeffs: Sequence) -> "UQuot":
        """Build from an arbitrary-length u-power list, reducing mod the quartic."""
        work = [Gauss.coerce(c) for c in coeffs]
        while len(work) > 4:
            top = work.pop()
            k = len(work) - 4  # top was the u^(k+4) coefficient
            for j in range(4):
                work[k + j] = work[k + j] + top * _U4[j]
        while len(work) < 4:
            work.append(Gauss(0))
        return UQuot(*work)

    def __add__(self, other):
        o = UQuot.coerce(other)
        return UQuot(*(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = UQuot.coerce(other)
        return UQuot(*(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return UQuot.coerce(other) - self

    def __mul__(self, other):
        o = UQuot.coerce(other)
        prod = [Gauss(0)] * 7
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    prod[i + j] = prod[i + j] + a * b
        return UQuot.from_u_powers(prod)

    __rmul__ = __mul__

    def __neg__(self):
        return UQuot(*(-a for a in self.c))

    def scale(self, g: Gauss) -> "UQuot":
        return UQuot(*(a * g for a in self.c))

    def __eq__(self, other):
        try:
            o = UQuot.coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_scalar(self) -> bool:
        return not any(self.c[1:])

    def is_integral(self) -> bool:
        return all(g.is_integral() for g in self.c)

    def inverse(self) -> "UQuot":
        """Field inverse: the quartic is irreducible over the Gaussian
        rationals, so every nonzero element is invertible (extended Euclid
        against the modulus)."""
        if not self:
            raise ZeroDivisionError("inverse of zero in the quotient ring")
        modulus = [-_U4[0], -_U4[1], -_U4[2], -_U4[3], Gauss(1)]
        r0, r1 = modulus, _gtrim(list(self.c))
        t0, t1 = [], [Gauss(1)]
        while len(r1) > 1:
            q, r = _gdivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _gsub(t0, _gmul(q, t1))
        if not r1:
            raise ZeroDivisionError("element shares a factor with the modulus")
        scale = r1[0].inverse()
        inv = [g * scale for g in t1]
        return UQuot.from_u_powers(inv)

    def __truediv__(self, other):
        return self * UQuot.coerce(other).inverse()

    def __repr__(self):
        return f"UQuot({', '.join(repr(g) for g in self.c)})"

    def __str__(self):
        return ";".join(str(g) for g in self.c)

    @staticmethod
    def parse(s: str) -> "UQuot":
        return UQuot(*(Gauss.parse(p) for p in s.split(";")))


def _gtrim(p: list[Gauss]) -> list[Gauss]:
    while p and not p[-1]:
        p.pop()
    return p


def _gsub(a: list[Gauss], b: list[Gauss]) -> list[Gauss]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Gauss(0)) - (b[i] if i < len(b) else Gauss(0))
           for i in range(n)]
    return _gtrim(out)


def _gmul(a: list[Gauss], b: list[Gauss]) -> list[Gauss]:
    if not a or not b:
        return []
    out = [Gauss(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _gtrim(out)


def _gdivmod(a: list[Gauss], b: list[Gauss]) -> tuple[list[Gauss], list[Gauss]]:
    a = a[:]
    q = [Gauss(0)] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] = a[k + i] - f * c
        _gtrim(a)
    return _gtrim(q), a


class _Domain:
    def __init__(self, name: str, rank: int, coerce, parse):
        self.name = name
        self.rank = rank
        self.coerce = coerce
        self.parse = parse

    def __repr__(self):
        return f"<domain {self.name}>"


RAT = _Domain("rat", 0, _as_scalar, _parse_scalar)
GAUSS = _Domain("gauss", 1, Gauss.coerce, Gauss.parse)
UQUOT = _Domain("uquot", 2, UQuot.coerce, UQuot.parse)
_DOMAINS = {d.name: d for d in (RAT, GAUSS, UQUOT)}


def _coeff_str(domain: _Domain, c) -> str:
    return _scalar_str(c) if domain is RAT else str(c)


def _promote_coeff(c, src: _Domain, dst: _Domain):
    if src is dst:
        return c
    if src.rank > dst.rank:
        raise DomainMismatchError(f"cannot demote {src.name} to {dst.name}")
    return dst.coerce(c)


class MultiPoly:
    """Immutable sparse multivariate polynomial over one coefficient domain.

    ``terms`` maps exponent tuples (one entry per variable, in order) to
    nonzero coefficients.  Arithmetic auto-unifies variable lists by name
    but raises :class:`DomainMismatchError` for mixed domains; use
    :meth:`promote` first.
    """

    __slots__ = ("variables", "terms", "domain")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object],
                 domain: _Domain = RAT):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolyError(f"duplicate variable names: {variables}")
        canon = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise PolyError(f"exponent arity {len(exps)} != {len(variables)} variables")
            if any(e < 0 for e in exps):
                raise PolyError(f"negative exponent in {exps}")
            c = domain.coerce(c)
            if not self._is_zero_coeff(c):
                if exps in canon:
                    raise PolyError(f"duplicate exponent vector {exps}")
                canon[exps] = c
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def _is_zero_coeff(c) -> bool:
        return c == 0 if isinstance(c, (int, Fraction)) else not c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = (), domain: _Domain = RAT) -> "MultiPoly":
        return cls(variables, {}, domain)

    @classmethod
    def constant(cls, value, variables: Sequence[str] = (), domain: _Domain = RAT) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value}, domain)

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None,
            domain: _Domain = RAT) -> "MultiPoly":
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            raise UnknownVariableError(name)
        exps = tuple(1 if v == name else 0 for v in variables)
        one = 1 if domain is RAT else domain.coerce(1)
        return cls(variables, {exps: one}, domain)

    @classmethod
    def from_terms(cls, variables: Sequence[str], term_list: Iterable[tuple],
                   domain: _Domain = RAT) -> "MultiPoly":
        """Build from (coefficient, exponents) pairs, summing duplicates."""
        acc: dict = {}
        for c, exps in term_list:
            exps = tuple(int(e) for e in exps)
            acc[exps] = acc.get(exps, 0) + domain.coerce(c)
        return cls(variables, acc, domain)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending graded-lexicographic order (canonical)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def coefficient_of(self, exps) -> object:
        """Exact coefficient at an exponent vector or {var: exp} mapping (0 if absent)."""
        if isinstance(exps, Mapping):
            vec = [0] * len(self.variables)
            for name, e in exps.items():
                vec[self._index(name)] = int(e)
            exps = tuple(vec)
        else:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise PolyError("exponent arity mismatch")
        return self.terms.get(exps, self.domain.coerce(0))

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset/reordering of the current variables."""
        variables = tuple(variables)
        idx = []
        for v in self.variables:
            if v not in variables:
                raise UnknownVariableError(v)
            idx.append(variables.index(v))
        terms = {}
        for exps, c in self.terms.items():
            vec = [0] * len(variables)
            for j, e in zip(idx, exps):
                vec[j] = e
            terms[tuple(vec)] = c
        return MultiPoly(variables, terms, self.domain)

    def promote(self, domain: _Domain) -> "MultiPoly":
        if domain is self.domain:
            return self
        terms = {e: _promote_coeff(c, self.domain, domain) for e, c in self.terms.items()}
        return MultiPoly(self.variables, terms, domain)

    # -- arithmetic --------------------------------------------------------

    def _unified(self, other: "MultiPoly"):
        if self.domain is not other.domain:
            raise DomainMismatchError(
                f"{self.domain.name} vs {other.domain.name}; promote explicitly")
        if self.variables == other.variables:
            return self, other
        union = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(union), other.with_variables(union)

    def _wrap(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(other, self.variables, self.domain)

    def __add__(self, other):
        a, b = self._unified(self._wrap(other))
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c if a.domain is RAT else terms.get(e, a.domain.coerce(0)) + c
            if self._is_zero_coeff(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(a.variables, terms, a.domain)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.domain)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        a, b = self._unified(self._wrap(other))
        zero = a.domain.coerce(0)
        acc: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, zero) + c1 * c2
        return MultiPoly(a.variables, acc, a.domain)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = MultiPoly.constant(1, self.variables, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, scalar) -> "MultiPoly":
        c = self.domain.coerce(scalar)
        if self._is_zero_coeff(c):
            return MultiPoly.zero(self.variables, self.domain)
        return MultiPoly(self.variables, {e: k * c for e, k in self.terms.items()}, self.domain)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if self.domain is RAT and isinstance(other, (int, Fraction)):
                other = self._wrap(other)
            else:
                return NotImplemented
        if self.domain is not other.domain:
            return False
        a, b = self._unified(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, self.domain.name, frozenset(self.terms.items())))

    # -- substitution and evaluation ---------------------------------------

    def substitute(self, name: str, replacement) -> "MultiPoly":
        """Exact composition: replace ``name`` by a polynomial or scalar.

        The result is expanded and canonicalized; its variable list is the
        union of the remaining variables and the replacement's variables.
        """
        i = self._index(name)
        if not isinstance(replacement, MultiPoly):
            replacement = MultiPoly.constant(replacement, (), self.domain)
        if replacement.domain is not self.domain:
            raise DomainMismatchError(
                f"replacement domain {replacement.domain.name} != {self.domain.name}")
        rest_vars = tuple(v for v in self.variables if v != name)
        # Group terms by the exponent of the substituted variable.
        groups: dict[int, dict] = {}
        for exps, c in self.terms.items():
            rest = exps[:i] + exps[i + 1:]
            groups.setdefault(exps[i], {})[rest] = c
        if not groups:
            return MultiPoly.zero(rest_vars, self.domain)
        # Horner over descending powers of the substituted variable.
        out_vars = rest_vars + tuple(v for v in replacement.variables if v not in rest_vars)
        result = MultiPoly.zero(out_vars, self.domain)
        for e in range(max(groups), -1, -1):
            result = result * replacement
            if e in groups:
                result = result + MultiPoly(rest_vars, groups[e], self.domain)
        return result

    def eval_exact(self, assignment: Mapping[str, object]):
        """Exact value at a full variable assignment (Horner-style).

        Rational polynomials accept int/Fraction values and return a scalar;
        Gaussian/quotient polynomials additionally accept Gauss values and
        return an element of their coefficient domain.
        """
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise MissingAssignmentError(f"no value for {missing}")
        values = [self.domain.coerce(assignment[v]) for v in self.variables]
        if not self.variables:
            return self.coefficient_of(())
        return self._horner(self.terms, 0, values)

    def _horner(self, terms: Mapping[tuple, object], depth: int, values: list):
        zero = self.domain.coerce(0)
        if depth == len(self.variables):
            # terms is {(): coeff}
            return terms.get((), zero)
        groups: dict[int, dict] = {}
        for exps, c in terms.items():
            groups.setdefault(exps[0], {})[exps[1:]] = c
        x = values[depth]
        acc = zero
        for e in range(max(groups), -1, -1):
            acc = acc * x
            if e in groups:
                acc = acc + self._horner(groups[e], depth + 1, values)
        return acc

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Line-oriented canonical form: header, then one `coeff e1 .. ek` per line."""
        lines = [f"vars: {' '.join(self.variables)}".rstrip(), f"domain: {self.domain.name}"]
        for exps, c in self.sorted_terms():
            lines.append(" ".join([_coeff_str(self.domain, c), *[str(e) for e in exps]]))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "MultiPoly":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines or not lines[0].startswith("vars:"):
            raise PolyError("missing 'vars:' header")
        variables = tuple(lines[0][len("vars:"):].split())
        domain = RAT
        body = lines[1:]
        if body and body[0].startswith("domain:"):
            name = body[0][len("domain:"):].strip()
            if name not in _DOMAINS:
                raise PolyError(f"unknown domain {name!r}")
            domain = _DOMAINS[name]
            body = body[1:]
        terms = []
        for ln in body:
            parts = ln.split()
            if len(parts) != 1 + len(variables):
                raise PolyError(f"bad term line: {ln!r}")
            terms.append((domain.parse(parts[0]), tuple(int(e) for e in parts[1:])))
        return MultiPoly.from_terms(variables, terms, domain)

    def __repr__(self):
        n = len(self.terms)
        return f"MultiPoly({'*'.join(self.variables) or 'const'}, {n} term{'s' if n != 1 else ''}, {self.domain.name})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps) if e
            )
            cs = _coeff_str(self.domain, c)
            if self.domain is not RAT:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __iter__(self) -> Iterator[tuple[tuple, object]]:
        return iter(self.sorted_terms())
