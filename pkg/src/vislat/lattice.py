"""Lattice geometry: bases, dual bases, GL(n, Z) action, coefficient boxes.

Points are handled as integer coefficient vectors in the lattice basis.
Batches of points are ``(count, n)`` int64 arrays; single points are any
integer sequence.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    InvalidAutomorphismError,
    ResourceError,
    SingularBasisError,
    UsageError,
)

DET_TOLERANCE = 1e-12
DUAL_TOLERANCE = 1e-10

# Largest number of points enumerate_box will materialize.
MAX_BOX_POINTS = 5 * 10**7


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice spanned by the rows of ``basis``.

    ``dual_basis`` rows satisfy ``dual_basis[i] @ basis[j] == delta_ij``.
    """

    basis: np.ndarray
    dual_basis: np.ndarray = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def positions(self, coeffs) -> np.ndarray:
        """Cartesian positions sum_i m_i b_i for one point or a batch."""
        return np.asarray(coeffs, dtype=np.float64) @ self.basis

    def wavevector(self, dual_coeffs) -> np.ndarray:
        """Cartesian k = 2 pi sum_i r_i b_i* for real dual coordinates r."""
        return 2 * np.pi * np.asarray(dual_coeffs, dtype=np.float64) @ self.dual_basis

    def dual(self) -> Lattice:
        return make_lattice(self.dual_basis)

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "basis": self.basis.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return np.array_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash(self.basis.tobytes())


def make_lattice(basis) -> Lattice:
    b = np.array(basis, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 1:
        raise UsageError(f"basis must be a nonempty square matrix, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise UsageError("basis has non-finite entries")
    if abs(np.linalg.det(b)) <= DET_TOLERANCE:
        raise SingularBasisError("basis vectors are (numerically) linearly dependent")
    dual = np.linalg.inv(b).T
    residual = np.abs(dual @ b.T - np.eye(b.shape[0])).max()
    if residual > DUAL_TOLERANCE:
        raise SingularBasisError(f"basis too ill-conditioned, dual residual {residual:.3g}")
    b.flags.writeable = False
    dual.flags.writeable = False
    return Lattice(b, dual)


def square_lattice(n: int = 2) -> Lattice:
    """The hypercubic lattice Z^n (identity basis)."""
    return make_lattice(np.eye(n))


def lattice_from_dict(data: dict) -> Lattice:
    unknown = set(data) - {"dimension", "basis"}
    if unknown:
        raise UsageError(f"unknown lattice keys: {sorted(unknown)}")
    if "basis" not in data:
        if "dimension" not in data:
            raise UsageError("lattice needs 'basis' or 'dimension'")
        return square_lattice(int(data["dimension"]))
    lat = make_lattice(data["basis"])
    if "dimension" in data and int(data["dimension"]) != lat.dimension:
        raise UsageError(
            f"dimension {data['dimension']} does not match a {lat.dimension}x{lat.dimension} basis"
        )
    return lat


def lattice_from_json(text: str) -> Lattice:
    return lattice_from_dict(json.loads(text))


def box_size(n: int, radius: int) -> int:
    return (2 * radius + 1) ** n


def enumerate_box(lat: Lattice | int, radius: int, max_points: int | None = None) -> np.ndarray:
    """All coefficient vectors in [-radius, radius]^n, lexicographic order.

    ``lat`` may be a Lattice or just the dimension.
    """
    n = lat if isinstance(lat, int) else lat.dimension
    radius = int(radius)
    if radius < 0:
        raise UsageError(f"radius must be >= 0, got {radius}")
    cap = MAX_BOX_POINTS if max_points is None else max_points
    count = box_size(n, radius)
    if count > cap:
        raise ResourceError(f"box of radius {radius} in dimension {n} has {count} points (cap {cap})")
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


@dataclass(frozen=True, eq=False)
class UnimodularMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidAutomorphismError(f"automorphism must be square, got shape {m.shape}")
        det = integer_det(m)
        if det not in (1, -1):
            raise InvalidAutomorphismError(f"determinant {det} is not +-1")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def determinant(self) -> int:
        return integer_det(self.entries)

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        return UnimodularMatrix(self.entries @ other.entries)

    @property
    def T(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.entries.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnimodularMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())


def integer_det(m) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [[int(x) for x in row] for row in np.asarray(m)]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def apply_automorphism(M: UnimodularMatrix | Sequence, x) -> np.ndarray:
    """Coefficient vector(s) M @ x; ``x`` may be one point or a (count, n) batch."""
    if not isinstance(M, UnimodularMatrix):
        M = UnimodularMatrix(M)
    pts = np.asarray(x, dtype=np.int64)
    if pts.shape[-1] != M.dimension:
        raise UsageError(f"point dimension {pts.shape[-1]} does not match matrix {M.dimension}")
    return pts @ M.entries.T


def gl2_generators() -> list[UnimodularMatrix]:
    """Rotation by 90 degrees, the elementary shear, and a reflection."""
    return [
        UnimodularMatrix([[0, -1], [1, 0]]),
        UnimodularMatrix([[1, 1], [0, 1]]),
        UnimodularMatrix([[1, 0], [0, -1]]),
    ]


def signed_permutations(n: int) -> list[UnimodularMatrix]:
    """The 2^n n! signed permutation matrices (point group of Z^n)."""
    from itertools import permutations, product

    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            m = np.zeros((n, n), dtype=np.int64)
            for row, (col, s) in enumerate(zip(perm, signs)):
                m[row, col] = s
            out.append(UnimodularMatrix(m))
    return out


def random_unimodular(n: int, rng: np.random.Generator, steps: int = 6) -> UnimodularMatrix:
    """Random product of signed permutations and elementary shears."""
    m = np.eye(n, dtype=np.int64)
    perms = signed_permutations(n) if n <= 4 else None
    for _ in range(steps):
        if perms is not None and rng.random() < 0.5:
            m = perms[rng.integers(len(perms))].entries @ m
        elif n > 1:
            i, j = rng.choice(n, size=2, replace=False)
            e = np.eye(n, dtype=np.int64)
            e[i, j] = rng.choice([-1, 1])
            m = e @ m
    return UnimodularMatrix(m)
