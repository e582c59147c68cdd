"""Eigenvalue machinery for the nearness computations.

Provides a dense symmetric eigensolver (cyclic Jacobi with a threshold
strategy), the closed-form spectra of tridiagonal Toeplitz matrices, the
generating symbol of a symmetric banded Toeplitz matrix with nonnegativity
testing, and the spectral radius of zero-diagonal symmetric tridiagonal
Toeplitz matrices.

All functions are pure; the Jacobi sweep mutates only a private working
copy of its input.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .core import BandedToeplitz, DenseSymmetric, to_dense

__all__ = [
    "DEFAULT_EIG_TOL",
    "EIG_TOL_ENV",
    "JacobiConvergenceError",
    "Spectrum",
    "Symbol",
    "eig_tolerance",
    "eigen_symmetric",
    "spectral_radius_tridiag",
    "symbol_min",
    "symbol_of",
    "tridiag_cosines",
    "tridiag_toeplitz_eigenvalues",
]

EIG_TOL_ENV = "TNEAR_EIG_TOL"
DEFAULT_EIG_TOL = 1e-12

# Convergence and effort limits of the Jacobi sweep.  Convergence is
# declared when the off-diagonal Frobenius mass drops below
# OFF_DIAGONAL_TOL times the Frobenius norm of the input; hitting the
# sweep cap first signals pathological input and raises.
OFF_DIAGONAL_TOL = 1e-14
MAX_JACOBI_SWEEPS = 30


class JacobiConvergenceError(RuntimeError):
    """Eigensolver failed to converge within the sweep cap."""


def eig_tolerance(frobenius_norm: float) -> float:
    """Threshold separating negative eigenvalues from roundoff zeros.

    An eigenvalue below ``-eig_tolerance(norm)`` counts as negative in the
    distance formulas; anything in ``[-tol, tol]`` counts as zero, so that
    roundoff cannot flip a semidefinite matrix into the penalized set.
    The coefficient (default 1e-12) can be overridden through the
    ``TNEAR_EIG_TOL`` environment variable.
    """
    coeff = float(os.environ.get(EIG_TOL_ENV, DEFAULT_EIG_TOL))
    return coeff * max(1.0, float(frobenius_norm))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real eigenvalues sorted nonincreasingly (lambda_1 >= ... >= lambda_n)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def order(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size


def _off_mass(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part.

    Sums off-diagonal squares directly; subtracting the diagonal mass from
    the total sum would cancel catastrophically once the off-part is tiny.
    """
    sq = a * a
    np.fill_diagonal(sq, 0.0)
    return math.sqrt(float(sq.sum()))


def _jacobi(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi with threshold strategy on a working copy of ``a``."""
    n = a.shape[0]
    z = np.eye(n)
    if n == 1:
        return np.diag(a).copy(), z
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), z
    target = OFF_DIAGONAL_TOL * norm

    for sweep in range(max_sweeps):
        off = _off_mass(a)
        if off <= target:
            return np.diag(a).copy(), z
        # Threshold: early sweeps skip rotations on elements too small to
        # matter; later sweeps rotate everything nonzero.
        upper = np.abs(np.triu(a, 1))
        thresh = 0.2 * float(upper.sum()) / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                small = 1e-20 * (abs(a[p, p]) + abs(a[q, q]))
                if sweep > 3 and abs(apq) <= small:
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                if abs(apq) <= thresh:
                    continue
                # Symmetric Schur 2x2: choose c, s zeroing a[p, q].
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                # Exact update of the 2x2 block hit by the rotation.
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0

                zp = z[:, p].copy()
                zq = z[:, q].copy()
                z[:, p] = c * zp - s * zq
                z[:, q] = s * zp + c * zq

    if _off_mass(a) <= target:
        return np.diag(a).copy(), z
    raise JacobiConvergenceError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {_off_mass(a):.3e}, target {target:.3e})"
    )


def eigen_symmetric(
    m: DenseSymmetric | np.ndarray, max_sweeps: int = MAX_JACOBI_SWEEPS
) -> tuple[Spectrum, np.ndarray]:
    """Full spectral factorization of a symmetric matrix.

    Returns the spectrum sorted nonincreasingly and the orthogonal matrix
    ``Z`` whose columns are the matching eigenvectors, so that
    ``Z @ diag(values) @ Z.T`` reconstructs the input.  When ``m`` is a
    :class:`DenseSymmetric`, the factorization is cached on the instance.

    Raises :class:`JacobiConvergenceError` after ``max_sweeps`` full
    sweeps without reaching the off-diagonal target.
    """
    if not isinstance(m, DenseSymmetric):
        m = DenseSymmetric(m)
    if m.eigenvalues is not None and max_sweeps == MAX_JACOBI_SWEEPS:
        return Spectrum(m.eigenvalues), m.eigenvectors

    w, z = _jacobi(m.entries.copy(), max_sweeps)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    z = np.ascontiguousarray(z[:, order])
    w.flags.writeable = False
    z.flags.writeable = False
    m._eigenvalues = w
    m._eigenvectors = z
    return Spectrum(w), z


def tridiag_cosines(n: int) -> np.ndarray:
    """cos(i*pi/(n+1)) for i = 1..n, decreasing, exactly antisymmetric.

    The grid is built from its first half and mirrored, so that
    ``grid[i] + grid[n-1-i] == 0`` holds exactly in floating point; the
    zero-diagonal tridiagonal spectra built on it are then exactly
    symmetric about the origin.
    """
    half = n // 2
    first = np.cos(np.arange(1, half + 1) * (np.pi / (n + 1)))
    if n % 2:
        return np.concatenate([first, [0.0], -first[::-1]])
    return np.concatenate([first, -first[::-1]])


def tridiag_toeplitz_eigenvalues(t: BandedToeplitz) -> Spectrum:
    """Closed-form spectrum of a tridiagonal Toeplitz matrix.

    The eigenvalues of ``(n; 1; sigma, delta, tau)`` are
    ``delta + 2*sqrt(sigma*tau)*cos(i*pi/(n+1))``.  Requires
    ``sigma_1 * tau_1 >= 0``; a negative product leaves the reals and is
    rejected.
    """
    if t.k != 1:
        raise ValueError(f"closed-form tridiagonal spectrum needs k=1, got k={t.k}")
    prod = float(t.sigma[0] * t.tau[0])
    if prod < 0.0:
        raise ValueError(
            "sigma_1*tau_1 < 0: the closed-form spectrum is complex; refusing"
        )
    amp = 2.0 * math.sqrt(prod)
    return Spectrum(t.delta + amp * tridiag_cosines(t.n))


@dataclass(frozen=True, eq=False)
class Symbol:
    """Generating symbol g(theta) = delta + 2*sum_j sigma_j cos(j*theta).

    Describes the spectrum of the symmetric banded Toeplitz matrix with
    diagonal ``delta`` and off-diagonal coefficients ``sigma``; ``g`` is
    even in theta, so [0, pi] covers its range.  If g is nonnegative on
    (-pi, pi), the matrix is positive semidefinite (positive definite when
    the zeros of g are isolated).
    """

    delta: float
    sigma: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.sigma, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "sigma", arr)

    @property
    def k(self) -> int:
        return self.sigma.size

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.k == 0:
            return np.full(theta.shape, self.delta) if theta.shape else float(self.delta)
        j = np.arange(1, self.k + 1)
        vals = self.delta + 2.0 * np.cos(np.multiply.outer(theta, j)) @ self.sigma
        return float(vals) if vals.ndim == 0 else vals


def symbol_of(t: BandedToeplitz, require_symmetric: bool = True) -> Symbol:
    """Symbol of a banded Toeplitz matrix, from its subdiagonal coefficients.

    With ``require_symmetric`` (the default) the input must satisfy
    ``sigma == tau``, since the symbol describes symmetric matrices; pass
    ``False`` to take the subdiagonal coefficients verbatim anyway.
    """
    if require_symmetric and not t.is_symmetric:
        raise ValueError("symbol requested for a nonsymmetric matrix (sigma != tau)")
    return Symbol(t.delta, t.sigma)


def _golden_section(g, lo: float, hi: float, xtol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = g(x1), g(x2)
    while (b - a) > xtol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = g(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = g(x2)
    return 0.5 * (a + b)


def symbol_min(g: Symbol, grid_points: int = 4096) -> tuple[float, float]:
    """Minimum of the symbol over [0, pi] (evenness makes this global).

    Scans a uniform grid, then refines the winning cell by golden-section
    search to 1e-12 absolute in theta.  Returns ``(theta_min, g_min)``.
    """
    if grid_points < 2 * g.k + 2:
        raise ValueError(f"grid_points must be >= 2k+2 = {2 * g.k + 2}, got {grid_points}")
    thetas = np.linspace(0.0, np.pi, grid_points)
    vals = g(thetas)
    i = int(np.argmin(vals))
    lo = thetas[max(0, i - 1)]
    hi = thetas[min(grid_points - 1, i + 1)]
    theta_star = _golden_section(g, lo, hi, 1e-12)
    candidates = [(float(vals[i]), float(thetas[i])), (float(g(theta_star)), theta_star)]
    g_min, theta_min = min(candidates)
    return theta_min, g_min


def spectral_radius_tridiag(t: BandedToeplitz) -> float:
    """Spectral radius |2 sigma_1| cos(pi/(n+1)) of (n; 1; sigma, 0, sigma)."""
    if t.k != 1:
        raise ValueError(f"spectral radius formula needs k=1, got k={t.k}")
    if not t.is_symmetric:
        raise ValueError("spectral radius formula needs sigma == tau")
    if t.delta != 0.0:
        raise ValueError("spectral radius formula is for zero diagonal only")
    return abs(2.0 * float(t.sigma[0])) * float(tridiag_cosines(t.n)[0])
