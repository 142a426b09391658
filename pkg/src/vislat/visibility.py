"""Visible lattice points and their statistics.

A nonzero point is visible from the origin iff the gcd of its coefficients
is 1. The gcd itself (the *level*) says which scaled copy l*F the point
belongs to; every nonzero point belongs to exactly one of them.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, UsageError
from .lattice import Lattice, box_size, enumerate_box
from .numtheory import gcd_many, inverse_zeta, mobius


def _dim(lat: Lattice | int) -> int:
    return lat if isinstance(lat, int) else lat.dimension


def levels(points: np.ndarray) -> np.ndarray:
    """Row-wise gcd of a (count, n) coefficient array; 0 marks the origin."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim != 2:
        raise UsageError(f"expected a (count, n) array, got shape {pts.shape}")
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.gcd.reduce(pts, axis=1)


def visibility_level(x: Sequence[int]) -> int:
    return gcd_many(x)


def is_visible(x: Sequence[int]) -> bool:
    return gcd_many(x) == 1


def enumerate_visible(lat: Lattice | int, radius: int) -> np.ndarray:
    """Visible points of the coefficient box, in lexicographic order."""
    box = enumerate_box(_dim(lat), radius)
    return box[levels(box) == 1]


@dataclass(frozen=True)
class PartitionReport:
    ok: bool
    counts: dict[int, int]
    unclaimed: int
    multiply_claimed: int


def partition_check(lat: Lattice | int, radius: int, max_level: int | None = None) -> PartitionReport:
    """Check that each nonzero box point lies in exactly one l*F, 1 <= l <= max_level.

    Membership in l*F is tested from scratch for every l (x divisible by l
    and x/l visible) rather than read off the gcd, so the count of claims
    per point is an independent check on the disjoint-union structure.
    With max_level >= radius every nonzero point is claimed.
    """
    n = _dim(lat)
    max_level = radius if max_level is None else int(max_level)
    box = enumerate_box(n, radius)
    nonzero = np.any(box != 0, axis=1)
    pts = box[nonzero]
    claims = np.zeros(len(pts), dtype=np.int64)
    counts: dict[int, int] = {}
    for ell in range(1, max_level + 1):
        divisible = np.all(pts % ell == 0, axis=1)
        member = np.zeros(len(pts), dtype=bool)
        member[divisible] = levels(pts[divisible] // ell) == 1
        c = int(member.sum())
        if c:
            counts[ell] = c
        claims += member
    unclaimed = int(np.sum(claims == 0))
    multi = int(np.sum(claims > 1))
    total_ok = sum(counts.values()) + 1 == box_size(n, radius)
    return PartitionReport(unclaimed == 0 and multi == 0 and total_ok, counts, unclaimed, multi)


def level_counts(lat: Lattice | int, radius: int) -> dict[int, int]:
    """Number of nonzero box points at each gcd level."""
    lv = levels(enumerate_box(_dim(lat), radius))
    vals, cnt = np.unique(lv[lv > 0], return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnt)}


def mobius_indicator(x: Sequence[int]) -> int:
    """sum of mu(l) over l dividing every coefficient of x != 0.

    Equals 1 exactly when x is visible (finite Möbius inversion).
    """
    g = gcd_many(x)
    if g == 0:
        raise DomainError("the origin lies in every l*Lambda; the sum is undefined")
    return sum(mobius(d) for d in range(1, g + 1) if g % d == 0)


@dataclass(frozen=True)
class DensityEstimate:
    dimension: int
    window_radius: int
    visible_count: int
    total_count: int
    empirical: float
    theoretical: float

    def to_dict(self) -> dict:
        return asdict(self)


def theoretical_density(n: int) -> float:
    """1/zeta(n); 0 in dimension 1, where only two points are visible."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 0.0
    return inverse_zeta(n)


def empirical_density(lat: Lattice | int, radius: int) -> DensityEstimate:
    n = _dim(lat)
    if radius < 1:
        raise UsageError(f"radius must be >= 1, got {radius}")
    lv = levels(enumerate_box(n, radius))
    visible = int(np.sum(lv == 1))
    total = box_size(n, radius) - 1
    return DensityEstimate(n, radius, visible, total, visible / total, theoretical_density(n))


def density_curve(max_dimension: int) -> list[tuple[int, float]]:
    if max_dimension < 2:
        raise UsageError(f"max_dimension must be >= 2, got {max_dimension}")
    return [(n, theoretical_density(n)) for n in range(2, max_dimension + 1)]


def visible_from_observers(x: Sequence[int], observers: Sequence[Sequence[int]]) -> bool:
    """True iff no lattice point sits strictly between x and any observer."""
    x = np.asarray(x, dtype=np.int64)
    obs = np.atleast_2d(np.asarray(observers, dtype=np.int64))
    if obs.shape[1] != x.shape[0]:
        raise UsageError("observer and point dimensions differ")
    diff = x[None, :] - obs
    if np.any(np.all(diff == 0, axis=1)):
        raise DomainError("point coincides with an observer")
    return bool(np.all(levels(diff) == 1))


def observer_density(lat: Lattice | int, radius: int, observers: Sequence[Sequence[int]]) -> DensityEstimate:
    """Fraction of box points (observers excluded) visible to all observers.

    No closed form is known, so ``theoretical`` is NaN.
    """
    n = _dim(lat)
    box = enumerate_box(n, radius)
    obs = np.atleast_2d(np.asarray(observers, dtype=np.int64))
    ok = np.ones(len(box), dtype=bool)
    not_observer = np.ones(len(box), dtype=bool)
    for o in obs:
        d = box - o
        at_o = np.all(d == 0, axis=1)
        not_observer &= ~at_o
        ok &= levels(d) == 1
    total = int(not_observer.sum())
    visible = int((ok & not_observer).sum())
    return DensityEstimate(n, radius, visible, total, visible / total, float("nan"))
