"""Geometric checks on the permutohedron that never touch the Gamma factors.

The permutohedron of a dominant weight is the convex hull of all coordinate
permutations of its ambient point.  A zero-sum point lies in that hull iff
it is majorized by the weight: for every k the sum of its k largest
coordinates is at most the same sum for the weight.  Areas in dimension two
come from the shoelace formula and volumes in general from Monte Carlo
sampling of a bounding box, both measured in an orthonormal frame of the
hyperplane so they use the same volume normalisation as the formulas.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .ratpoly import evaluate_float
from .typea import AmbientPoint, WeightVector, simple_root_ambient, to_ambient
from .volume import pyramid_eval, volume_dyck, volume_recursive

DEFAULT_SEED = 20240229
CHUNK = 1 << 16  # samples per RNG stream; fixed so results do not depend on threads


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VertexSet:
    n: int
    vertices: frozenset

    def __len__(self):
        return len(self.vertices)

    def as_array(self) -> np.ndarray:
        """Vertices as floats, one row each, in a stable (sorted) order."""
        rows = sorted(v.coords for v in self.vertices)
        return np.array([[float(c) for c in r] for r in rows], dtype=float)


@dataclass(frozen=True)
class VolumeEstimate:
    mean: float
    standard_error: float
    samples: int
    seed: int
    hits: int = 0
    box_volume: float = 0.0


def _weight(x) -> WeightVector:
    w = x if isinstance(x, WeightVector) else WeightVector(tuple(x))
    return w.require_dominant()


def orbit_vertices(x: WeightVector | Sequence) -> VertexSet:
    """Distinct coordinate permutations of the ambient point of ``x``."""
    w = _weight(x)
    lam = to_ambient(w).coords
    verts = frozenset(AmbientPoint(p) for p in set(permutations(lam)))
    return VertexSet(w.n, verts)


def _top_sums(coords) -> list:
    s, out = mpq(0), []
    for c in sorted(coords, reverse=True):
        s += c
        out.append(s)
    return out


def contains(x: WeightVector | Sequence, p: AmbientPoint | Sequence) -> bool:
    """Exact majorization test for membership of ``p`` in the permutohedron."""
    w = _weight(x)
    if not isinstance(p, AmbientPoint):
        p = AmbientPoint(tuple(p))
    if len(p) != w.n + 1:
        raise DimensionMismatch(f"point has {len(p)} coordinates, expected {w.n + 1}")
    bound = _top_sums(to_ambient(w).coords)
    return all(a <= b for a, b in zip(_top_sums(p.coords)[:-1], bound[:-1]))


def orthonormal_frame(n: int) -> np.ndarray:
    """``(n+1) x n`` matrix whose columns are an orthonormal basis of the
    zero-sum hyperplane, from Gram-Schmidt on the simple roots."""
    roots = np.array([[float(c) for c in simple_root_ambient(n, i).coords] for i in range(1, n + 1)]).T
    q, r = np.linalg.qr(roots)
    return q * np.sign(np.diag(r))  # fix the sign convention of the QR factor


def area_2d(x: WeightVector | Sequence) -> float:
    """Shoelace area of the n = 2 permutohedron (a hexagon or triangle)."""
    w = _weight(x)
    if w.n != 2:
        raise DimensionMismatch(f"area_2d needs n = 2, got n = {w.n}")
    pts = orbit_vertices(w).as_array() @ orthonormal_frame(2)
    if len(pts) < 3:
        return 0.0
    centre = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - centre[1], pts[:, 0] - centre[0]))
    xs, ys = pts[order, 0], pts[order, 1]
    return 0.5 * abs(float(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1))))


def _count_hits(args) -> int:
    seed_seq, count, lo, hi, frame, bound = args
    rng = np.random.default_rng(seed_seq)
    y = rng.uniform(lo, hi, size=(count, len(lo)))
    pts = y @ frame.T
    pts.sort(axis=1)
    top = np.cumsum(pts[:, ::-1], axis=1)[:, :-1]
    # boundary has measure zero; the slack only absorbs rounding
    return int(np.count_nonzero(np.all(top <= bound + 1e-12, axis=1)))


def monte_carlo_volume(
    x: WeightVector | Sequence,
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
) -> VolumeEstimate:
    """Hit-or-miss estimate of the n-dimensional volume.

    Points are drawn uniformly from the axis-aligned bounding box of the
    vertices in an orthonormal frame of the hyperplane, and accepted by the
    majorization test.  Samples are cut into fixed chunks, each fed by its own
    stream spawned from ``seed``, so the estimate depends only on
    ``(seed, samples)``; ``threads`` changes speed, not the answer.
    """
    w = _weight(x)
    if samples < 1:
        raise ValueError("samples must be positive")
    n = w.n
    if all(v == 0 for v in w.x):
        return VolumeEstimate(0.0, 0.0, samples, seed)
    frame = orthonormal_frame(n)
    pts = orbit_vertices(w).as_array() @ frame
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    box = float(np.prod(hi - lo))
    lam = np.array([float(c) for c in to_ambient(w).coords])
    bound = np.cumsum(np.sort(lam)[::-1])[:-1]

    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(s, c, lo, hi, frame, bound) for s, c in zip(streams, sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(_count_hits, jobs))
    else:
        hits = sum(map(_count_hits, jobs))
    frac = hits / samples
    se = box * math.sqrt(frac * (1 - frac) / samples)
    return VolumeEstimate(frac * box, se, samples, seed, hits, box)


@dataclass
class Check:
    name: str
    expected: float
    observed: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    n: int
    x: list
    formula_value: float
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _relative_check(name, expected, observed, tol) -> Check:
    dev = abs(observed - expected) / max(1.0, abs(expected))
    return Check(name, expected, observed, tol, dev <= tol, f"relative deviation {dev:.3e}")


def verify(
    n: int,
    x: WeightVector | Sequence,
    samples: int = 200_000,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    sigmas: float = 4.0,
) -> VerificationReport:
    """Compare the exact volume polynomial with the pyramid sum and a geometric oracle."""
    w = _weight(x)
    if w.n != n:
        raise DimensionMismatch(f"weight has {w.n} coordinates, expected {n}")
    dyck_value = evaluate_float(volume_dyck(n).value, w.x)
    rec_value = evaluate_float(volume_recursive(n).value, w.x)
    report = VerificationReport(n, [str(v) for v in w.x], dyck_value)
    report.checks.append(_relative_check("dyck-vs-recursion", dyck_value, rec_value, 1e-12))
    report.checks.append(_relative_check("pyramid", dyck_value, pyramid_eval(n, w), 1e-9))
    if n == 1:
        ends = [v.coords for v in orbit_vertices(w).vertices]
        length = math.dist(*(map(float, e) for e in ends)) if len(ends) == 2 else 0.0
        report.checks.append(_relative_check("segment-length", dyck_value, length, 1e-9))
    elif n == 2:
        report.checks.append(_relative_check("shoelace-area", dyck_value, area_2d(w), 1e-9))
    else:
        est = monte_carlo_volume(w, samples, seed, threads)
        dev = abs(est.mean - dyck_value)
        ok = dev <= sigmas * est.standard_error if est.standard_error else dev == 0
        report.checks.append(
            Check(
                "monte-carlo",
                dyck_value,
                est.mean,
                sigmas * est.standard_error,
                ok,
                f"{est.samples} samples, seed {est.seed}, standard error {est.standard_error:.4g}",
            )
        )
    return report
