"""Volume polynomial of the type-A permutohedron.

Two exact routes are provided and must agree:

* :func:`volume_dyck` sums one product of linear Gamma factors per Dyck path;
* :func:`volume_recursive` folds the pyramid recursion
  ``V_n = sum_i G'_{n,i} * V_{i-1} * V_{n-i}[i]``.

Here ``G_{d,i}[u] = (1/d) * C(d+1, i) * sum_j c_{d,i,j} x_{j+u}`` and
``G'_{d,i} = G_{d,i} / sqrt(c_{d,i,i})``, with ``c`` the inverse Cartan
entries of type A_d.  The primed factors give the volume directly; the
unprimed ones give it up to the overall factor ``sqrt(n+1)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from gmpy2 import mpq

from . import dyck
from .dyck import DyckPath, catalan, north_step_labels
from .ratpoly import (
    IncompatibleRadicand,
    RationalPoly,
    ScaledPoly,
    evaluate_float,
    mul,
    squarefree_split,
)
from .typea import (
    IndexOutOfRange,
    NotDominant,
    SimpleSubset,
    WeightVector,
    connected_components,
    inverse_cartan_entry,
)


class InvalidIndices(ValueError):
    pass


@dataclass(frozen=True)
class VolumePolynomial:
    n: int
    value: ScaledPoly
    provenance: str  # "dyck-sum" or "recursion"
    addends: int | None = field(default=None, compare=False)

    def evaluate(self, x: Sequence) -> float:
        return evaluate_float(self.value, x)


@lru_cache(maxsize=None)
def gamma(d: int, i: int, u: int = 0, normalized: bool = True) -> ScaledPoly:
    """Linear factor attached to a north-step label ``(d, i, u)``.

    ``normalized=True`` gives the rational factor ``G_{d,i}[u]``;
    ``normalized=False`` gives ``G'_{d,i}[u] = G_{d,i}[u] / sqrt(c_{d,i,i})``.
    """
    if not (1 <= i <= d) or u < 0:
        raise InvalidIndices(f"need 1 <= i <= d and u >= 0, got d={d}, i={i}, u={u}")
    scale = mpq(comb(d + 1, i), d)
    poly = RationalPoly.linear(
        {j + u: scale * inverse_cartan_entry(d, i, j) for j in range(1, d + 1)}
    )
    g = ScaledPoly(poly)
    if normalized:
        return g
    return mul(g, ScaledPoly.sqrt_of(1 / inverse_cartan_entry(d, i, i)))


def gamma_path(path: DyckPath, normalized: bool = True) -> ScaledPoly:
    """Product of the label factors over every north step of ``path``."""
    result = ScaledPoly(1)
    for d, i, u in north_step_labels(path):
        result = mul(result, gamma(d, i, u, normalized))
    return result


def path_constant(path: DyckPath):
    """Product of ``c_{d,i,i}`` over the labels of ``path``."""
    c = mpq(1)
    for d, i, _ in north_step_labels(path):
        c *= inverse_cartan_entry(d, i, i)
    return c


class _SuffixProducts:
    """Per-path products with shared tails.

    The label of a north step depends only on the part of the path from that
    step on (its x-offset is ``n`` minus the east steps still to come), so
    the product over the north steps of a tail is cached on the tail.
    """

    def __init__(self, n: int, normalized: bool):
        self.n = n
        self.normalized = normalized
        self._cache: dict[tuple, ScaledPoly] = {(): ScaledPoly(1)}

    def __call__(self, tail: tuple) -> ScaledPoly:
        hit = self._cache.get(tail)
        if hit is not None:
            return hit
        if tail[0]:
            ks = dyck.return_set(tail)
            u = self.n - (len(tail) - sum(tail))
            value = mul(gamma(ks[-1], ks[0], u, self.normalized), self(tail[1:]))
        else:
            value = self(tail[1:])
        self._cache[tail] = value
        return value


def _fold(n: int, paths, normalized: bool) -> tuple[ScaledPoly, int]:
    products = _SuffixProducts(n, normalized)
    radicands: set[int] = set()
    polys = []
    for path in paths:
        p = products(path.steps)
        if p:
            radicands.add(p.radicand)
            polys.append(p.poly)
    if len(radicands) > 1:
        raise IncompatibleRadicand(f"path products carry radicands {sorted(radicands)}")
    total = ScaledPoly(RationalPoly.sum(polys), radicands.pop() if radicands else 1)
    return total, len(polys)


def _fold_first_return(args) -> tuple[ScaledPoly, int]:
    n, k, normalized, bound = args
    return _fold(n, dyck.enumerate_by_first_return(n, k, bound), normalized)


def volume_dyck(
    n: int,
    normalized: bool = True,
    threads: int = 1,
    bound: int = dyck.DEFAULT_BOUND,
) -> VolumePolynomial:
    """Sum of per-path products over all n-Dyck paths.

    With ``normalized=True`` the rational factors are summed and the total is
    multiplied by ``sqrt(n+1)``; otherwise the primed factors are summed
    directly.  Both give the same canonical value.  With ``threads > 1`` the
    paths are split by first return and folded in worker processes; the
    partial sums are combined in a fixed order.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > bound:
        raise dyck.BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    if threads > 1 and n > 1:
        jobs = [(n, k, normalized, bound) for k in range(1, n + 1)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_fold_first_return, jobs))
        total, count = ScaledPoly(), 0
        for part, c in parts:
            total, count = total + part, count + c
    else:
        total, count = _fold(n, dyck.enumerate_paths(n, bound), normalized)
    if normalized:
        total = mul(total, ScaledPoly(1, n + 1))
    return VolumePolynomial(n, total, "dyck-sum", count)


@lru_cache(maxsize=None)
def _recursive_value(n: int) -> ScaledPoly:
    if n == 0:
        return ScaledPoly(1)
    total = ScaledPoly()
    for i in range(1, n + 1):
        term = mul(gamma(n, i, 0, normalized=False), _recursive_value(i - 1))
        term = mul(term, _recursive_value(n - i).shift(i))
        total = total + term  # radicands agree by construction; add() checks
    return total


def volume_recursive(n: int) -> VolumePolynomial:
    if n < 0:
        raise ValueError("n must be non-negative")
    for m in range(n):  # fill the cache bottom-up, keeping recursion shallow
        _recursive_value(m)
    return VolumePolynomial(n, _recursive_value(n), "recursion")


def volume(n: int, method: str = "recursive", threads: int = 1) -> VolumePolynomial:
    if method == "dyck":
        return volume_dyck(n, threads=threads)
    if method == "recursive":
        return volume_recursive(n)
    raise ValueError(f"unknown method {method!r}; expected dyck or recursive")


def face_volume(n: int, J: SimpleSubset | Sequence[int], method: str = "recursive") -> ScaledPoly:
    """Volume of the face spanned by ``W_J`` acting on the weight, as a polynomial.

    The face factors over the connected runs ``{u+1..u+d}`` of ``J``, each
    contributing the shifted volume ``V_d[u]``.
    """
    if not isinstance(J, SimpleSubset):
        J = SimpleSubset(n, frozenset(J))
    elif J.n != n:
        raise IndexOutOfRange(f"subset is for n={J.n}, not n={n}")
    result = ScaledPoly(1)
    for d, u in connected_components(J):
        result = mul(result, volume(d, method).value.shift(u))
    return result


def pyramid_eval(n: int, x: WeightVector | Sequence, method: str = "recursive") -> float:
    """Floating-point pyramid decomposition of the volume about the origin.

    Sums, over the ``n`` facet classes, the facet count ``C(n+1, i)`` times
    the distance ``(lambda, w_i) / |w_i|`` times the facet volume, and
    divides by ``n``.  The facet norms carry different square roots, which is
    why this is evaluated in floating point.
    """
    if not isinstance(x, WeightVector):
        x = WeightVector(tuple(x))
    if x.n != n:
        raise ValueError(f"weight has {x.n} coordinates, expected {n}")
    x.require_dominant()
    if n == 0:
        return 1.0
    total = 0.0
    for i in range(1, n + 1):
        pairing = sum(xj * inverse_cartan_entry(n, j, i) for j, xj in enumerate(x.x, start=1))
        if not pairing:
            continue
        distance = float(pairing) / math.sqrt(inverse_cartan_entry(n, i, i))
        facet = face_volume(n, [j for j in range(1, n + 1) if j != i], method)
        total += comb(n + 1, i) * distance * evaluate_float(facet, x.x)
    return total / n


def radicand_of(n: int) -> int:
    """Squarefree part of ``n + 1``, the radicand carried by ``V_n``."""
    return squarefree_split(n + 1)[1]


__all__ = [
    "InvalidIndices",
    "NotDominant",
    "VolumePolynomial",
    "catalan",
    "face_volume",
    "gamma",
    "gamma_path",
    "path_constant",
    "pyramid_eval",
    "radicand_of",
    "volume",
    "volume_dyck",
    "volume_recursive",
]
