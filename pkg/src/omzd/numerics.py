"""Dense real matrix arithmetic and a symmetric eigensolver.

Scalars are double precision throughout; radical entries are evaluated
numerically at construction time and checked against tolerances scaled
by the matrix order and its certified scale constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonSymmetricInput

__all__ = [
    "RealMatrix",
    "Spectrum",
    "gram",
    "residual_scaled_identity",
    "jacobi_spectrum",
    "cluster_eigenvalues",
]


def _frozen_array(values, dtype) -> np.ndarray:
    a = np.array(values, dtype=dtype)
    if a.ndim != 2:
        raise ValueError(f"matrix data must be 2-dimensional, got ndim={a.ndim}")
    if dtype == np.float64:
        a = a + 0.0  # normalizes -0.0 so serialization is sign-stable
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RealMatrix:
    """Dense float64 matrix; ``scale_c`` holds c once MMᵀ = cI is certified."""

    data: np.ndarray
    scale_c: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "data", _frozen_array(self.data, np.float64))
        if self.scale_c is not None:
            c = float(self.scale_c)
            if not (c > 0.0):
                raise ValueError(f"scale_c must be strictly positive, got {c}")
            object.__setattr__(self, "scale_c", c)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def order(self) -> int:
        if not self.is_square:
            raise ValueError(f"order undefined for {self.rows}x{self.cols} matrix")
        return self.rows

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def __repr__(self):
        return f"RealMatrix({self.rows}x{self.cols}, scale_c={self.scale_c})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset (ascending) plus the sweep tolerance that produced it."""

    values: tuple[float, ...]
    tol_used: float


def gram(m: RealMatrix) -> RealMatrix:
    """MMᵀ with each off-diagonal entry computed once and mirrored.

    The result is exactly symmetric by construction regardless of
    floating-point evaluation order inside the matrix product.
    """
    g = m.data @ m.data.T
    g = np.triu(g) + np.triu(g, 1).T
    return RealMatrix(g)


def residual_scaled_identity(m: RealMatrix) -> tuple[float, float]:
    """Recover c and the worst deviation of MMᵀ from cI.

    c is the mean of the gram diagonal (averages rounding noise);
    max_residual is max |gram - cI| over all entries.  Both are returned
    even when the residual is large.
    """
    if not m.is_square:
        raise ValueError("residual against a scaled identity needs a square matrix")
    g = gram(m).data
    n = m.order
    c = float(np.mean(np.diag(g)))
    res = g - c * np.eye(n)
    return c, float(np.max(np.abs(res)))


def _max_offdiag(a: np.ndarray) -> float:
    if a.shape[0] < 2:
        return 0.0
    off = np.abs(a).copy()
    np.fill_diagonal(off, 0.0)
    return float(np.max(off))


_MAX_SWEEPS = 60


def jacobi_spectrum(m: RealMatrix, sweep_tol: float | None = None) -> Spectrum:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run in row-major order over the upper triangle until every
    off-diagonal magnitude drops below ``sweep_tol`` (default
    1e-11 * max|entry|).  Raises NonSymmetricInput when max |M - Mᵀ|
    exceeds the tolerance.
    """
    if not m.is_square:
        raise ValueError("eigensolver needs a square matrix")
    a = np.array(m.data, dtype=np.float64)
    n = a.shape[0]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    tol = 1e-11 * scale if sweep_tol is None else float(sweep_tol)

    asym = float(np.max(np.abs(a - a.T))) if n else 0.0
    if asym > tol:
        raise NonSymmetricInput(
            f"max |M - M^T| = {asym:.3e} exceeds sweep tolerance {tol:.3e}"
        )
    a = (a + a.T) / 2.0  # exact no-op on already-symmetric input

    sweeps = 0
    while _max_offdiag(a) > tol:
        sweeps += 1
        if sweeps > _MAX_SWEEPS:
            raise ArithmeticError("Jacobi iteration failed to converge")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0

    values = tuple(sorted(float(x) for x in np.diag(a)))
    return Spectrum(values=values, tol_used=tol)


def cluster_eigenvalues(s: Spectrum, cluster_tol: float | None = None) -> int:
    """Count distinct eigenvalues by greedy left-to-right gap clustering.

    Two consecutive sorted values share a cluster iff their gap is at
    most ``cluster_tol`` (default 1e-6 * max|eigenvalue|).
    """
    values = s.values
    if not values:
        return 0
    if cluster_tol is None:
        cluster_tol = 1e-6 * max(abs(v) for v in values)
    clusters = 1
    for prev, cur in zip(values, values[1:]):
        if cur - prev > cluster_tol:
            clusters += 1
    return clusters
