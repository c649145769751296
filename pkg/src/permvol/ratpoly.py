"""Exact sparse multivariate polynomials over Q, with one square-root scale.

A :class:`RationalPoly` maps monomials to rational coefficients.  Monomials
are tuples of ``(variable, exponent)`` pairs sorted by variable index, with
variables numbered from 1 (``x1, x2, ...``) and no zero exponents stored.

A :class:`ScaledPoly` is a pair ``(poly, radicand)`` standing for
``poly * sqrt(radicand)`` with ``radicand`` squarefree.  Square factors are
folded into the rational part at construction, so structural equality of
two ``ScaledPoly`` values is equality of the numbers they denote.

Coefficients are ``gmpy2.mpq``; anything ``mpq`` accepts (ints,
``fractions.Fraction``, ``"p/q"`` strings) may be passed in.

>>> x1, x2 = RationalPoly.var(1), RationalPoly.var(2)
>>> p = ScaledPoly(x1, 2) * ScaledPoly(x2, 2)
>>> render(p)
'2*x1*x2'
>>> render(ScaledPoly(x1, 2) * ScaledPoly(x1, 3))
'sqrt(6)*(x1^2)'
"""

from __future__ import annotations

import json
import math
import numbers
import re
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

__all__ = [
    "Rational",
    "Monomial",
    "RationalPoly",
    "ScaledPoly",
    "IncompatibleRadicand",
    "MissingVariable",
    "add",
    "mul",
    "shift",
    "evaluate",
    "evaluate_float",
    "render",
    "from_json",
    "parse_rational",
    "squarefree_split",
]

Rational = type(mpq(0))
Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONOMIAL: Monomial = ()

# Internally a monomial is packed into one int, EXP_BITS per variable with
# x1 in the lowest field: multiplying monomials is integer addition and a
# shift by u is a left shift by u*EXP_BITS.  Exponents must stay below
# 2**EXP_BITS, which __mul__ guards through the total degree.
EXP_BITS = 16
_EXP_MASK = (1 << EXP_BITS) - 1
MAX_DEGREE = _EXP_MASK


class IncompatibleRadicand(ValueError):
    """Adding two nonzero values carrying different square-root factors."""


class MissingVariable(ValueError):
    """Evaluation point does not cover every variable of the polynomial."""


def _q(value) -> Rational:
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return mpq(value)


def _check_monomial(m) -> Monomial:
    m = tuple(sorted((int(v), int(e)) for v, e in m))
    seen = set()
    for var, e in m:
        if var < 1:
            raise ValueError(f"variable index must be >= 1, got {var}")
        if not 1 <= e <= MAX_DEGREE:
            raise ValueError(f"exponent out of range in x{var}^{e}")
        if var in seen:
            raise ValueError(f"repeated variable x{var} in monomial")
        seen.add(var)
    return m


def _pack(m: Monomial) -> int:
    key = 0
    for var, e in m:
        key |= e << (EXP_BITS * (var - 1))
    return key


@lru_cache(maxsize=1 << 16)
def _unpack(key: int) -> Monomial:
    out = []
    var = 1
    while key:
        e = key & _EXP_MASK
        if e:
            out.append((var, e))
        key >>= EXP_BITS
        var += 1
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial, width: int):
    # descending graded-lex: higher degree first, then larger x1 exponent, ...
    dense = [0] * width
    for var, e in m:
        dense[var - 1] = e
    return (-sum(dense), [-e for e in dense])


class RationalPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash", "_degree")

    def __init__(self, terms: Mapping | None = None):
        clean: dict[int, Rational] = {}
        for m, c in (terms or {}).items():
            c = _q(c)
            if c:
                key = _pack(_check_monomial(m))
                s = clean.get(key, 0) + c
                if s:
                    clean[key] = s
                else:
                    del clean[key]
        self._terms = clean
        self._hash = None
        self._degree = None

    @classmethod
    def _raw(cls, packed: dict) -> RationalPoly:
        """Wrap an already-canonical ``packed key -> nonzero mpq`` dict."""
        p = object.__new__(cls)
        p._terms = packed
        p._hash = None
        p._degree = None
        return p

    @classmethod
    def var(cls, index: int, coeff=1) -> RationalPoly:
        """The polynomial ``coeff * x_index``."""
        return cls({((index, 1),): coeff})

    @classmethod
    def const(cls, value) -> RationalPoly:
        return cls({ONE_MONOMIAL: value})

    @classmethod
    def linear(cls, coeffs: Mapping[int, object]) -> RationalPoly:
        """Build ``sum(c * x_j)`` from a map ``j -> c``."""
        return cls({((j, 1),): c for j, c in coeffs.items()})

    @classmethod
    def sum(cls, polys: Iterable[RationalPoly]) -> RationalPoly:
        """Sum many polynomials with a single accumulator."""
        out: dict = {}
        get = out.get
        for p in polys:
            for key, c in p._terms.items():
                out[key] = get(key, 0) + c
        return cls._raw({k: c for k, c in out.items() if c})

    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return MappingProxyType({_unpack(k): c for k, c in self._terms.items()})

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._terms == other._terms
        if isinstance(other, numbers.Rational):
            return self._terms == ({0: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"RationalPoly({render_poly(self)!r})"

    def __reduce__(self):
        return (RationalPoly._raw, (self._terms,))

    def __neg__(self):
        return RationalPoly._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly.const(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return RationalPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            c = _q(other)
            if not c:
                return RationalPoly()
            if c == 1:
                return self
            return RationalPoly._raw({k: v * c for k, v in self._terms.items()})
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError(f"product degree exceeds {MAX_DEGREE}")
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return RationalPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = RationalPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if self._degree is None:
            self._degree = max((_mono_degree(_unpack(k)) for k in self._terms), default=-1)
        return self._degree

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(_unpack(k)) for k in self._terms}) <= 1

    def variables(self) -> set[int]:
        return {var for k in self._terms for var, _ in _unpack(k)}

    def max_var(self) -> int:
        return max(self.variables(), default=0)

    def shift(self, u: int) -> RationalPoly:
        """Substitute ``x_j -> x_{j+u}``."""
        if u < 0:
            raise ValueError("shift amount must be non-negative")
        if u == 0:
            return self
        bits = EXP_BITS * u
        return RationalPoly._raw({k << bits: c for k, c in self._terms.items()})

    def substitute_reversed(self, n: int) -> RationalPoly:
        """Substitute ``x_j -> x_{n+1-j}``; all variables must lie in 1..n."""
        if self.max_var() > n:
            raise ValueError(f"polynomial uses variables beyond x{n}")
        return RationalPoly(
            {tuple((n + 1 - v, e) for v, e in _unpack(k)): c for k, c in self._terms.items()}
        )

    def sorted_terms(self) -> list[tuple[Monomial, Rational]]:
        """Terms in descending graded-lexicographic order (x1 > x2 > ...)."""
        width = self.max_var()
        items = [(_unpack(k), c) for k, c in self._terms.items()]
        return sorted(items, key=lambda t: _grlex_key(t[0], width))

    def coefficient(self, monomial) -> Rational:
        return self._terms.get(_pack(_check_monomial(monomial)), mpq(0))

    def evaluate(self, point: Sequence) -> Rational:
        width = self.max_var()
        if len(point) < width:
            raise MissingVariable(
                f"point has {len(point)} coordinates but x{width} occurs"
            )
        vals = [_q(v) for v in point[:width]]
        total = mpq(0)
        for k, c in self._terms.items():
            t = c
            for var, e in _unpack(k):
                t *= vals[var - 1] ** e
            total += t
        return total


@lru_cache(maxsize=4096)
def squarefree_split(m: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``m == s*s*f`` and ``f`` squarefree."""
    if m < 1:
        raise ValueError(f"radicand must be a positive integer, got {m}")
    s, f = 1, 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * m


class ScaledPoly:
    """The value ``poly * sqrt(radicand)`` in canonical form.

    Any positive integer radicand is accepted and reduced: its square part
    is moved into ``poly``.  The zero value always carries radicand 1.
    """

    __slots__ = ("poly", "radicand")

    def __init__(self, poly: RationalPoly | int | object = 0, radicand: int = 1):
        if not isinstance(poly, RationalPoly):
            poly = RationalPoly.const(poly)
        radicand = int(radicand)
        s, f = squarefree_split(radicand)
        if s != 1:
            poly = poly * s
        if not poly:
            f = 1
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "radicand", f)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledPoly is immutable")

    def __reduce__(self):
        return (ScaledPoly, (self.poly, self.radicand))

    @classmethod
    def sqrt_of(cls, value) -> ScaledPoly:
        """Exact ``sqrt(value)`` for a non-negative rational ``value``."""
        q = _q(value)
        if q < 0:
            raise ValueError("square root of a negative rational")
        p, d = int(q.numerator), int(q.denominator)
        # sqrt(p/d) = sqrt(p*d) / d
        return cls(RationalPoly.const(mpq(1, d)), p * d) if p else cls()

    def __eq__(self, other):
        if not isinstance(other, ScaledPoly):
            return NotImplemented
        return self.radicand == other.radicand and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.radicand))

    def __repr__(self):
        return f"ScaledPoly({render(self)!r})"

    def __bool__(self):
        return bool(self.poly)

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return ScaledPoly(-self.poly, self.radicand)

    def __sub__(self, other):
        return add(self, -other)

    def __mul__(self, other):
        if not isinstance(other, ScaledPoly):
            other = ScaledPoly(other)
        return mul(self, other)

    __rmul__ = __mul__

    def shift(self, u: int) -> ScaledPoly:
        return shift(self, u)

    def degree(self) -> int:
        return self.poly.degree()

    def is_homogeneous(self) -> bool:
        return self.poly.is_homogeneous()


def add(a: ScaledPoly, b: ScaledPoly) -> ScaledPoly:
    if not b.poly:
        return a
    if not a.poly:
        return b
    if a.radicand != b.radicand:
        raise IncompatibleRadicand(
            f"cannot add terms scaled by sqrt({a.radicand}) and sqrt({b.radicand})"
        )
    return ScaledPoly(a.poly + b.poly, a.radicand)


def mul(a: ScaledPoly, b: ScaledPoly) -> ScaledPoly:
    g = math.gcd(a.radicand, b.radicand)
    # sqrt(g*a') * sqrt(g*b') = g * sqrt(a'*b'), and a'*b' is squarefree
    return ScaledPoly(a.poly * b.poly * g, (a.radicand // g) * (b.radicand // g))


def shift(p, u: int):
    """Shift variable indices up by ``u``; accepts either polynomial type."""
    if isinstance(p, ScaledPoly):
        return ScaledPoly(p.poly.shift(u), p.radicand)
    return p.shift(u)


def evaluate(p: ScaledPoly, point: Sequence) -> tuple[Rational, int]:
    """Exact value as ``(rational, radicand)``, meaning ``rational*sqrt(radicand)``."""
    if isinstance(p, RationalPoly):
        p = ScaledPoly(p)
    value = p.poly.evaluate(point)
    return value, (p.radicand if value else 1)


def evaluate_float(p: ScaledPoly, point: Sequence) -> float:
    value, r = evaluate(p, point)
    return float(value) * math.sqrt(r)


# rendering -----------------------------------------------------------------

def _plain_coeff(c: Rational) -> str:
    return str(c)  # mpq prints as "p/q" or "p"


def _plain_monomial(m: Monomial) -> str:
    return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in m)


def render_poly(p: RationalPoly) -> str:
    if not p:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = _plain_coeff(a)
        elif a == 1:
            body = _plain_monomial(m)
        else:
            body = f"{_plain_coeff(a)}*{_plain_monomial(m)}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _tex_group(k: int) -> str:
    s = str(k)
    return s if len(s) == 1 else "{" + s + "}"


def _latex_poly(p: RationalPoly) -> str:
    if not p:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        a = abs(c)
        if a.denominator != 1:
            coeff = f"\\tfrac{{{a.numerator}}}{{{a.denominator}}}"
        elif a != 1 or not m:
            coeff = str(a.numerator)
        else:
            coeff = ""
        mono = "".join(
            f"x_{_tex_group(v)}" + ("" if e == 1 else f"^{_tex_group(e)}") for v, e in m
        )
        body = coeff + mono
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(parts)


def to_json_obj(p: ScaledPoly) -> dict:
    return {
        "radicand": p.radicand,
        "terms": [
            {"coeff": str(c), "exps": {str(v): e for v, e in m}}
            for m, c in p.poly.sorted_terms()
        ],
    }


def render(p, format: str = "plain") -> str:
    """Deterministic text form: ``plain``, ``latex`` or ``json``."""
    if isinstance(p, RationalPoly):
        p = ScaledPoly(p)
    if format == "plain":
        body = render_poly(p.poly)
        return body if p.radicand == 1 else f"sqrt({p.radicand})*({body})"
    if format == "latex":
        body = _latex_poly(p.poly)
        return body if p.radicand == 1 else f"\\sqrt{{{p.radicand}}}\\left({body}\\right)"
    if format == "json":
        return json.dumps(to_json_obj(p), separators=(", ", ": "))
    raise ValueError(f"unknown format {format!r}; expected plain, latex or json")


def from_json(data) -> ScaledPoly:
    """Inverse of ``render(p, "json")``; accepts a string or a decoded dict."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    terms = {}
    for term in data["terms"]:
        m = _check_monomial((int(v), int(e)) for v, e in term["exps"].items())
        if m in terms:
            raise ValueError(f"duplicate monomial {_plain_monomial(m) or '1'} in JSON")
        terms[m] = parse_rational(term["coeff"])
    return ScaledPoly(RationalPoly(terms), int(data.get("radicand", 1)))


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Rational:
    """Parse ``"p/q"`` or an integer; decimals and floats are rejected."""
    if isinstance(text, int):
        return mpq(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ValueError(f"not an exact rational (expected p/q or integer): {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(int(num), int(den) if den else 1)


def parse_rationals(text: str) -> list[Rational]:
    """Comma-separated list of rationals, e.g. ``"1,1/2,3"``."""
    return [parse_rational(t) for t in str(text).split(",") if t.strip()] if text.strip() else []


def product(factors: Iterable[ScaledPoly]) -> ScaledPoly:
    result = ScaledPoly(1)
    for f in factors:
        result = mul(result, f)
    return result
