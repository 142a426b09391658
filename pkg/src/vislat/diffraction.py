"""Bragg part of the Fourier transform of the visible points.

Peaks sit at k = 2 pi sum_i (p_i/q_i) b_i* and their amplitude, relative
to the lattice Bragg peaks, depends only on a = lcm(q_1, ..., q_n):

    H = f(n, a) = sum_{l >= 1} mu(l a) / (l a)^n
      = (1/zeta(n)) * mu(a) / prod_{p | a} (p^n - 1).

Both the truncated series and the finite product are implemented, plus a
brute-force structure factor over finite patches to check them against.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceError, UnsupportedDimensionError, UsageError
from .lattice import Lattice, UnimodularMatrix, box_size, square_lattice
from .numtheory import (
    MobiusTable,
    factorize,
    inverse_zeta,
    lcm_many,
    sieve_mobius,
)
from .visibility import enumerate_visible

DEFAULT_TRUNCATION = 10**6

# Largest number of entries bragg_map will produce.
MAX_MAP_ENTRIES = 2 * 10**6


@dataclass(frozen=True)
class RationalWaveVector:
    """k = 2 pi sum_i (numerators[i]/denominators[i]) b_i*, in lowest terms."""

    numerators: tuple[int, ...]
    denominators: tuple[int, ...]
    lattice: Lattice | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.numerators) != len(self.denominators):
            raise UsageError("numerators and denominators differ in length")
        for p, q in zip(self.numerators, self.denominators):
            if q < 1 or math.gcd(p, q) != 1:
                raise DomainError(f"{p}/{q} is not in lowest terms with q > 0")
        if self.lattice is not None and self.lattice.dimension != len(self.numerators):
            raise UsageError("wave vector and lattice dimensions differ")

    @property
    def dimension(self) -> int:
        return len(self.numerators)

    @property
    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(p, q) for p, q in zip(self.numerators, self.denominators))

    @property
    def lcm(self) -> int:
        return lcm_many(self.denominators)

    def dual_coords(self) -> np.ndarray:
        return np.array([p / q for p, q in zip(self.numerators, self.denominators)])

    def cartesian(self) -> np.ndarray:
        lat = self.lattice or square_lattice(self.dimension)
        return lat.wavevector(self.dual_coords())

    def __str__(self) -> str:
        return ",".join(f"{p}/{q}" for p, q in zip(self.numerators, self.denominators))


def reduce_wavevector(rationals: Iterable, lat: Lattice | None = None) -> RationalWaveVector:
    """Build a wave vector from (p, q) pairs or Fractions, reducing each to lowest terms."""
    nums, dens = [], []
    for r in rationals:
        if isinstance(r, Fraction):
            fr = r
        else:
            p, q = r
            if int(q) == 0:
                raise DomainError(f"zero denominator in {p}/{q}")
            fr = Fraction(int(p), int(q))
        nums.append(fr.numerator)
        dens.append(fr.denominator)
    return RationalWaveVector(tuple(nums), tuple(dens), lat)


def fold_to_cell(k: RationalWaveVector) -> RationalWaveVector:
    """Shift every numerator into [0, q_i); the denominators are unchanged."""
    return RationalWaveVector(
        tuple(p % q for p, q in zip(k.numerators, k.denominators)), k.denominators, k.lattice
    )


def parse_wavevector(text: str, lat: Lattice | None = None) -> RationalWaveVector:
    """Parse ``"p1/q1,p2/q2,..."``; each coordinate must be written as p/q."""
    pairs = []
    for part in text.split(","):
        part = part.strip()
        if part.count("/") != 1:
            raise UsageError(f"coordinate {part!r} is not of the form p/q")
        p, q = part.split("/")
        try:
            pairs.append((int(p), int(q)))
        except ValueError:
            raise UsageError(f"coordinate {part!r} is not of the form p/q") from None
    k = reduce_wavevector(pairs, lat)
    if lat is not None and k.dimension != lat.dimension:
        raise UsageError(f"wave vector has {k.dimension} coordinates, lattice dimension is {lat.dimension}")
    return k


def _check_n(n: int) -> None:
    if n < 2:
        raise DomainError(f"the Dirichlet series needs n >= 2, got {n}")


def dirichlet_f(n: int, a: int, truncation: int = DEFAULT_TRUNCATION,
                table: MobiusTable | None = None) -> float:
    """sum_{l=1}^{truncation} mu(l a) / (l a)^n.

    ``table`` may be a shared sieve covering truncation*a; otherwise one is
    built. Terms are added smallest first.
    """
    _check_n(n)
    if a < 1 or truncation < 1:
        raise UsageError(f"need a >= 1 and truncation >= 1, got a={a}, truncation={truncation}")
    if table is None or table.limit < a * truncation:
        table = sieve_mobius(a * truncation)
    mu = table.multiples(a, truncation)
    nz = np.flatnonzero(mu)
    if nz.size == 0:
        return 0.0
    m = (nz + 1).astype(np.float64) * a
    terms = mu[nz].astype(np.float64) * m ** (-float(n))
    return float(np.sum(terms[::-1]))


def dirichlet_tail_bound(n: int, a: int, truncation: int) -> float:
    """Bound on the omitted tail: integral_{truncation}^inf (x a)^-n dx."""
    _check_n(n)
    return a ** (-float(n)) * truncation ** (1.0 - n) / (n - 1)


def closed_f_exact(n: int, a: int) -> Fraction:
    """zeta(n) * f(n, a) as an exact rational: mu(a) / prod_{p | a} (p^n - 1)."""
    _check_n(n)
    if a < 1:
        raise UsageError(f"a must be >= 1, got {a}")
    fac = factorize(a)
    if any(e > 1 for _, e in fac.prime_powers):
        return Fraction(0)
    sign = -1 if len(fac.prime_powers) % 2 else 1
    return Fraction(sign, math.prod(p**n - 1 for p in fac.primes))


def closed_f(n: int, a: int) -> float:
    ratio = closed_f_exact(n, a)
    if ratio == 0:
        return 0.0
    return inverse_zeta(n) * float(ratio)


@dataclass(frozen=True)
class BraggAmplitude:
    k: RationalWaveVector
    a: int
    value: float
    method: str  # "closedForm" or "series"
    tail_bound: float = 0.0


def bragg_amplitude(k: RationalWaveVector, method: str = "closedForm",
                    truncation: int = DEFAULT_TRUNCATION,
                    table: MobiusTable | None = None) -> BraggAmplitude:
    """Amplitude of the Bragg peak at k relative to the lattice peaks.

    Only the denominators matter. In dimension 1 there is no Bragg part at
    all (two visible points, transform 2 cos(kx)), so n = 1 is refused.
    """
    n = k.dimension
    if n == 1:
        raise UnsupportedDimensionError(
            "no Bragg part in dimension 1: the visible set is {+1, -1} and its transform is 2 cos(kx)"
        )
    a = k.lcm
    if method == "closedForm":
        return BraggAmplitude(k, a, closed_f(n, a), method)
    if method == "series":
        value = dirichlet_f(n, a, truncation, table)
        return BraggAmplitude(k, a, value, method, dirichlet_tail_bound(n, a, truncation))
    raise UsageError(f"unknown method {method!r}")


def reduced_fractions(max_denominator: int) -> list[tuple[int, int]]:
    """(p, q) with 0 <= p < q <= max_denominator, gcd(p, q) = 1, sorted by (q, p)."""
    return [(p, q) for q in range(1, max_denominator + 1) for p in range(q) if math.gcd(p, q) == 1]


def bragg_map(lat: Lattice | int, max_denominator: int,
              max_entries: int | None = None) -> list[BraggAmplitude]:
    """Amplitudes at every reduced rational point of [0, 1)^n with all q_i <= Q.

    Zero amplitudes are kept. Entries are sorted by (q_1..q_n, p_1..p_n).
    """
    if isinstance(lat, int):
        lat = square_lattice(lat)
    n = lat.dimension
    if n == 1:
        raise UnsupportedDimensionError("no Bragg part in dimension 1")
    if max_denominator < 1:
        raise UsageError(f"max_denominator must be >= 1, got {max_denominator}")
    fracs = reduced_fractions(max_denominator)
    size = len(fracs) ** n
    cap = MAX_MAP_ENTRIES if max_entries is None else max_entries
    if size > cap:
        raise ResourceError(f"Bragg map would have {size} entries (cap {cap})")
    combos = sorted(
        product(fracs, repeat=n),
        key=lambda c: (tuple(q for _, q in c), tuple(p for p, _ in c)),
    )
    cache: dict[int, float] = {}
    out = []
    for combo in combos:
        k = RationalWaveVector(tuple(p for p, _ in combo), tuple(q for _, q in combo), lat)
        a = k.lcm
        if a not in cache:
            cache[a] = closed_f(n, a)
        out.append(BraggAmplitude(k, a, cache[a], "closedForm"))
    return out


def transform_wavevector(M: UnimodularMatrix, k: RationalWaveVector) -> RationalWaveVector:
    """Fold(M^T r): the action of a lattice automorphism on dual coordinates."""
    r = k.fractions
    mt = M.entries.T
    image = [sum((int(mt[i, j]) * r[j] for j in range(len(r))), Fraction(0)) for i in range(len(r))]
    return fold_to_cell(reduce_wavevector(image, k.lattice))


@dataclass(frozen=True)
class PatchSum:
    k: tuple[float, ...]
    patch_radius: int
    sum: complex
    per_site: complex
    point_count: int
    normalization: str

    def to_dict(self) -> dict:
        return {
            "k": list(self.k),
            "patchRadius": self.patch_radius,
            "pointCount": self.point_count,
            "normalization": self.normalization,
            "sum": [self.sum.real, self.sum.imag],
            "perSite": [self.per_site.real, self.per_site.imag],
        }


def structure_factor_patch(points, lat: Lattice, k, patch_radius: int,
                           normalization: str = "sites", threads: int = 1) -> PatchSum:
    """Direct sum of exp(-i k.x) over the Cartesian positions of ``points``.

    With ``normalization="sites"`` the sum is divided by the number of
    lattice sites in the patch, (2R+1)^n, which puts it on the same scale
    as the lattice Bragg peaks. ``"points"`` divides by len(points) instead.
    """
    pts = np.asarray(points, dtype=np.int64).reshape(-1, lat.dimension)
    if pts.size and np.abs(pts).max() > patch_radius:
        raise UsageError(f"points fall outside the patch of radius {patch_radius}")
    kvec = np.asarray(k, dtype=np.float64)
    if kvec.shape != (lat.dimension,):
        raise UsageError(f"k must have {lat.dimension} components")
    phases_of = lambda chunk: np.sum(np.exp(-1j * (lat.positions(chunk) @ kvec)))

    if threads > 1 and len(pts) > threads:
        chunks = np.array_split(pts, threads)
        with ThreadPoolExecutor(threads) as pool:
            partial = list(pool.map(phases_of, chunks))
        total = complex(sum(partial))
    else:
        total = complex(phases_of(pts)) if len(pts) else 0j

    if normalization == "sites":
        denom = box_size(lat.dimension, patch_radius)
    elif normalization == "points":
        denom = max(len(pts), 1)
    else:
        raise UsageError(f"unknown normalization {normalization!r}")
    return PatchSum(tuple(kvec.tolist()), patch_radius, total, total / denom, len(pts), normalization)


def visible_patch_sums(k: RationalWaveVector, radii: Sequence[int],
                       threads: int = 1) -> list[PatchSum]:
    """Per-site structure factor of the visible points at k, one patch per radius."""
    radii = [int(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise UsageError(f"radii must be strictly increasing, got {radii}")
    lat = k.lattice or square_lattice(k.dimension)
    kvec = lat.wavevector(k.dual_coords())
    return [
        structure_factor_patch(enumerate_visible(lat, r), lat, kvec, r, threads=threads)
        for r in radii
    ]


def convergence_study(k: RationalWaveVector, radii: Sequence[int],
                      threads: int = 1) -> list[tuple[int, float]]:
    """|per-site structure factor of the visible points - H| at each radius.

    Deviations are reported as they come; nothing is assumed about
    monotonicity.
    """
    h = bragg_amplitude(k).value
    return [(ps.patch_radius, abs(ps.per_site - h)) for ps in visible_patch_sums(k, radii, threads)]
