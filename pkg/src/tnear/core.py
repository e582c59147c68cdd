"""Banded Toeplitz value types and their exact Frobenius geometry.

A real banded Toeplitz matrix is parameterized as ``(n; k; sigma, delta,
tau)``: order ``n``, half-bandwidth ``k``, subdiagonal values
``sigma_1..sigma_k``, diagonal value ``delta``, and superdiagonal values
``tau_1..tau_k``.  The dense realization places ``sigma_h`` on subdiagonal
``h``, ``tau_h`` on superdiagonal ``h``, zeros outside the band.

All types are immutable values; every operation is a pure function, so
concurrent reads are safe without locking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BandedToeplitz",
    "DenseSymmetric",
    "MatrixFormatError",
    "band_weights",
    "frobenius_norm_squared",
    "from_text",
    "make_banded_toeplitz",
    "matvec",
    "skew_part",
    "symmetric_part",
    "to_dense",
    "to_text",
]


class MatrixFormatError(ValueError):
    """Raised when a matrix text file cannot be parsed."""


def _as_band(values, k: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        arr = np.atleast_1d(arr.squeeze())
    if arr.ndim != 1 or arr.size != k:
        raise ValueError(f"{name} must have exactly k={k} entries, got shape {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class BandedToeplitz:
    """Banded Toeplitz matrix ``(n; k; sigma, delta, tau)``.

    ``k`` may be zero (a multiple of the identity, with empty band
    vectors).  Band entries may vanish: the declared bandwidth is kept
    even when ``sigma_k`` or ``tau_k`` is zero.  ``k`` must not exceed
    ``n // 2``; larger half-bandwidths are rejected rather than given
    meaning the distance formulas do not cover.
    """

    n: int
    k: int
    sigma: np.ndarray
    delta: float
    tau: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        k = int(self.k)
        if n < 1:
            raise ValueError(f"order n must be positive, got {n}")
        if k < 0 or k > n // 2:
            raise ValueError(f"half-bandwidth k must satisfy 0 <= k <= n//2 = {n // 2}, got {k}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "sigma", _as_band(self.sigma, k, "sigma"))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "tau", _as_band(self.tau, k, "tau"))

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.sigma, self.tau))

    def params(self) -> tuple:
        """Hashable parameter tuple (n, k, sigma, delta, tau)."""
        return (self.n, self.k, tuple(self.sigma), self.delta, tuple(self.tau))

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Product ``T @ x`` in O(nk) time, without densification."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"vector has shape {x.shape}, expected ({self.n},)")
        y = self.delta * x
        for h in range(1, self.k + 1):
            y[h:] += self.sigma[h - 1] * x[:-h]
            y[:-h] += self.tau[h - 1] * x[h:]
        return y


def make_banded_toeplitz(n: int, k: int, sigma, delta: float, tau) -> BandedToeplitz:
    """Construct ``(n; k; sigma, delta, tau)``, validating the parameters."""
    return BandedToeplitz(n, k, sigma, delta, tau)


def band_weights(n: int, k: int) -> np.ndarray:
    """Entry counts (n-1, n-2, ..., n-k) of the first k off-diagonals."""
    return np.arange(n - 1, n - k - 1, -1, dtype=float)


def to_dense(t: BandedToeplitz) -> np.ndarray:
    """Dense realization: delta on the diagonal, sigma_h / tau_h on band h."""
    a = np.zeros((t.n, t.n))
    np.fill_diagonal(a, t.delta)
    for h in range(1, t.k + 1):
        rows = np.arange(h, t.n)
        a[rows, rows - h] = t.sigma[h - 1]
        a[rows - h, rows] = t.tau[h - 1]
    return a


def frobenius_norm_squared(t: BandedToeplitz) -> float:
    """Squared Frobenius norm, in closed form: sum (n-h)(sigma_h^2+tau_h^2) + n delta^2."""
    w = band_weights(t.n, t.k)
    return float(w @ (t.sigma**2 + t.tau**2) + t.n * t.delta**2)


def symmetric_part(t: BandedToeplitz) -> BandedToeplitz:
    """Closest symmetric banded Toeplitz matrix: (n; k; (sigma+tau)/2, delta, (sigma+tau)/2)."""
    avg = (t.sigma + t.tau) / 2.0
    return BandedToeplitz(t.n, t.k, avg, t.delta, avg)


def skew_part(t: BandedToeplitz) -> BandedToeplitz:
    """Closest skew-symmetric matrix: (n; k; (sigma-tau)/2, 0, (tau-sigma)/2)."""
    half = (t.sigma - t.tau) / 2.0
    return BandedToeplitz(t.n, t.k, half, 0.0, -half)


def matvec(t: BandedToeplitz, x: np.ndarray) -> np.ndarray:
    """Product ``T @ x``; see :meth:`BandedToeplitz.matvec`."""
    return t.matvec(x)


class DenseSymmetric:
    """Dense symmetric matrix, symmetrized exactly at construction.

    Carries an optional spectral cache (eigenvalues sorted nonincreasingly
    and the matching orthogonal eigenvector matrix) filled on first use by
    the eigensolver; the cache is written once and only read afterwards.
    """

    __slots__ = ("entries", "_eigenvalues", "_eigenvectors")

    def __init__(self, entries):
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        sym = (a + a.T) / 2.0
        sym.flags.writeable = False
        self.entries = sym
        self._eigenvalues = None
        self._eigenvectors = None

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def eigenvalues(self):
        """Cached spectrum (sorted nonincreasingly), or None if not yet computed."""
        return self._eigenvalues

    @property
    def eigenvectors(self):
        return self._eigenvectors

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __repr__(self) -> str:  # pragma: no cover
        return f"DenseSymmetric(order={self.order})"


# --- text serialization --------------------------------------------------
#
# Four lines: "n k", the k sigma values, delta, the k tau values.  Floats
# are written with repr() so parsing recovers them bit-exactly.


def to_text(t: BandedToeplitz) -> str:
    lines = [
        f"{t.n} {t.k}",
        " ".join(repr(float(v)) for v in t.sigma),
        repr(float(t.delta)),
        " ".join(repr(float(v)) for v in t.tau),
    ]
    return "\n".join(lines) + "\n"


def _parse_floats(line: str, count: int, lineno: int, label: str) -> np.ndarray:
    parts = line.split()
    if len(parts) != count:
        raise MatrixFormatError(
            f"line {lineno}: expected {count} {label} value(s), got {len(parts)}"
        )
    out = np.empty(count)
    for i, p in enumerate(parts):
        try:
            out[i] = float(p)
        except ValueError:
            raise MatrixFormatError(
                f"line {lineno}, field {i + 1}: not a number: {p!r}"
            ) from None
    return out


def from_text(text: str) -> BandedToeplitz:
    lines = text.splitlines()
    if not lines or not lines[0].split():
        raise MatrixFormatError("line 1: expected header 'n k'")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixFormatError(f"line 1: expected two integers 'n k', got {len(head)} field(s)")
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError:
        raise MatrixFormatError(f"line 1: expected two integers 'n k', got {lines[0]!r}") from None
    # k == 0 rows may legitimately be empty lines, possibly dropped at EOF.
    while len(lines) < 4:
        lines.append("")
    sigma = _parse_floats(lines[1], k, 2, "sigma")
    delta = _parse_floats(lines[2], 1, 3, "delta")[0]
    tau = _parse_floats(lines[3], k, 4, "tau")
    try:
        return BandedToeplitz(n, k, sigma, delta, tau)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None
