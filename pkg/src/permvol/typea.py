"""Root data of type A_n realised in the zero-sum hyperplane of Q^{n+1}.

Everything is computed on demand from ``n`` with exact rationals.  Simple
roots are ``e_i - e_{i+1}``; fundamental weights are their dual basis
inside the hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .ratpoly import Rational, parse_rational


class IndexOutOfRange(ValueError):
    pass


class NotInHyperplane(ValueError):
    """Point does not have coordinate sum zero."""


class NotDominant(ValueError):
    """Weight has a negative fundamental-weight coordinate."""


def _exact(values: Iterable) -> tuple[Rational, ...]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("use exact rationals, not floats")
        out.append(parse_rational(v) if isinstance(v, str) else mpq(v))
    return tuple(out)


@dataclass(frozen=True)
class AmbientPoint:
    """A point of the hyperplane E = {sum of coordinates = 0} in Q^{n+1}."""

    coords: tuple

    def __post_init__(self):
        coords = _exact(self.coords)
        if sum(coords, mpq(0)) != 0:
            raise NotInHyperplane(f"coordinate sum of {_fmt(coords)} is not zero")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return _fmt(self.coords)


@dataclass(frozen=True)
class WeightVector:
    """Coordinates ``x`` of ``sum x_i * w_i`` in the fundamental-weight basis."""

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", _exact(self.x))
        if not self.x:
            raise ValueError("a weight vector needs n >= 1 coordinates")

    @property
    def n(self) -> int:
        return len(self.x)

    def is_dominant(self) -> bool:
        return all(v >= 0 for v in self.x)

    def require_dominant(self) -> WeightVector:
        if not self.is_dominant():
            raise NotDominant(f"weight {_fmt(self.x)} has a negative coordinate")
        return self

    def scaled(self, t) -> WeightVector:
        t = mpq(t)
        return WeightVector(tuple(t * v for v in self.x))


@dataclass(frozen=True)
class SimpleSubset:
    """A subset of the simple reflections ``{s_1, ..., s_n}``, by index."""

    n: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        bad = [i for i in members if not 1 <= i <= self.n]
        if bad:
            raise IndexOutOfRange(f"indices {sorted(bad)} outside 1..{self.n}")
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, n: int) -> SimpleSubset:
        return cls(n, frozenset(range(1, n + 1)))

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def _fmt(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _check_index(n: int, *idx: int):
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")


def inverse_cartan_entry(d: int, i: int, j: int) -> Rational:
    """Entry ``(i, j)`` of the inverse Cartan matrix of type A_d: ``min(i,j) - ij/(d+1)``."""
    _check_index(d, i, j)
    return min(i, j) - mpq(i * j, d + 1)


def cartan_matrix(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def inverse_cartan_matrix(n: int) -> list[list[Rational]]:
    return [[inverse_cartan_entry(n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def inner(a: Sequence, b: Sequence) -> Rational:
    if len(a) != len(b):
        raise ValueError("dimension mismatch in inner product")
    return sum((mpq(x) * mpq(y) for x, y in zip(a, b)), mpq(0))


def simple_root_ambient(n: int, i: int) -> AmbientPoint:
    _check_index(n, i)
    coords = [0] * (n + 1)
    coords[i - 1], coords[i] = 1, -1
    return AmbientPoint(tuple(coords))


def fundamental_weight_ambient(n: int, i: int) -> AmbientPoint:
    """First ``i`` coordinates ``1 - i/(n+1)``, remaining ``-i/(n+1)``."""
    _check_index(n, i)
    hi, lo = 1 - mpq(i, n + 1), -mpq(i, n + 1)
    return AmbientPoint((hi,) * i + (lo,) * (n + 1 - i))


def to_ambient(v: WeightVector) -> AmbientPoint:
    n = v.n
    coords = [mpq(0)] * (n + 1)
    for i, xi in enumerate(v.x, start=1):
        if xi:
            for k, c in enumerate(fundamental_weight_ambient(n, i).coords):
                coords[k] += xi * c
    return AmbientPoint(tuple(coords))


def to_weight_coords(p: AmbientPoint | Sequence) -> WeightVector:
    """Pair against the simple roots: ``x_i = p_i - p_{i+1}``."""
    if not isinstance(p, AmbientPoint):
        p = AmbientPoint(tuple(p))
    c = p.coords
    return WeightVector(tuple(c[i] - c[i + 1] for i in range(len(c) - 1)))


def dominant_representative(p: AmbientPoint | Sequence) -> AmbientPoint:
    """The unique dominant point in the permutation orbit (coordinates sorted down)."""
    if not isinstance(p, AmbientPoint):
        p = AmbientPoint(tuple(p))
    return AmbientPoint(tuple(sorted(p.coords, reverse=True)))


def stabilizer(v: WeightVector) -> SimpleSubset:
    """Indices of the simple reflections fixing a dominant weight."""
    v.require_dominant()
    return SimpleSubset(v.n, frozenset(i for i, xi in enumerate(v.x, start=1) if xi == 0))


def connected_components(J: SimpleSubset) -> list[tuple[int, int]]:
    """Maximal runs ``{u+1, ..., u+d}`` of ``J``, reported as ``(d, u)``, left to right."""
    runs: list[tuple[int, int]] = []
    start = prev = None
    for i in sorted(J.members):
        if prev is not None and i == prev + 1:
            prev = i
            continue
        if start is not None:
            runs.append((prev - start + 1, start - 1))
        start = prev = i
    if start is not None:
        runs.append((prev - start + 1, start - 1))
    return runs
