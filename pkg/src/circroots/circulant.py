"""Circulant and g-circulant matrices with spectral shortcuts and dense oracles.

A circulant is diagonalized by the Fourier matrix, so its eigenvalues are the
forward transform of the first row and, by normality, its singular values are
the eigenvalue moduli.  A g-circulant factors as Q_g @ C where Q_g is the
g-circulant with first row (1, 0, ..., 0); Q_g is unitary exactly when
gcd(n, g) = 1, in which case C's singular values carry over.

The dense one-sided Jacobi SVD and the characteristic-polynomial eigenvalue
oracle exist for verification at small n; they stay out of any hot path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._jacobi import jacobi_singular_values
from .dft import dft_forward, dft_inverse
from .errors import NumericalError, SizeError, UnsupportedError
from .roots import aberth_roots

DENSIFY_CAP = 4096
SVD_ORACLE_CAP = 64
EIG_ORACLE_CAP = 16
SINGULAR_FLAG_RATIO = 1e-14


@dataclass(eq=False)
class Circulant:
    first_row: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.first_row)
        if r.ndim != 1 or r.size < 1:
            raise ValueError("first_row must be a nonempty vector")
        if not np.all(np.isfinite(r)):
            raise ValueError("first_row entries must be finite")
        self.first_row = r

    @property
    def n(self) -> int:
        return self.first_row.shape[0]


@dataclass(eq=False)
class GCirculant:
    first_row: np.ndarray
    g: int

    def __post_init__(self):
        r = np.asarray(self.first_row)
        if r.ndim != 1 or r.size < 1:
            raise ValueError("first_row must be a nonempty vector")
        if not np.all(np.isfinite(r)):
            raise ValueError("first_row entries must be finite")
        if self.g < 1:
            raise ValueError("g must be a positive integer")
        self.first_row = r
        self.g = (self.g - 1) % r.size + 1   # reduced mod n into 1..n

    @property
    def n(self) -> int:
        return self.first_row.shape[0]


@dataclass(eq=False)
class SpectralSummary:
    """Extreme singular values, with eigenvalues when they are available."""

    eigenvalues: np.ndarray | None
    s_min: float
    s_max: float
    argmin_k: int | None
    numerically_singular: bool


def eigenvalues(c: Circulant) -> np.ndarray:
    """Eigenvalues as the unnormalized forward transform of the first row."""
    return dft_forward(c.first_row)


def extreme_singular_values(c: Circulant) -> SpectralSummary:
    """s_min / s_max of a circulant via the eigenvalue moduli (normality)."""
    lam = eigenvalues(c)
    mods = np.abs(lam)
    kmin = int(np.argmin(mods))
    s_min = float(mods[kmin])
    s_max = float(mods.max())
    return SpectralSummary(lam, s_min, s_max, kmin,
                           s_min <= SINGULAR_FLAG_RATIO * s_max)


def densify(c) -> np.ndarray:
    """Explicit dense matrix; entry (j, l) = first_row[(l - j*g) mod n]."""
    n = c.n
    if n > DENSIFY_CAP:
        raise SizeError(f"densify capped at n <= {DENSIFY_CAP}")
    g = c.g if isinstance(c, GCirculant) else 1
    j = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    return c.first_row[(l - j * g) % n]


def circ_matvec(c: Circulant, x) -> np.ndarray:
    """Circulant times vector through the diagonalization (O(n log n))."""
    return dft_forward(eigenvalues(c) * dft_inverse(np.asarray(x)))


def q_factor(n: int, g: int) -> np.ndarray:
    """The 0/1 factor Q with first row (1, 0, ..., 0): row j has its 1 in
    column j*g mod n, so Q @ circulant(row) densifies the g-circulant exactly."""
    if n > DENSIFY_CAP:
        raise SizeError(f"q_factor capped at n <= {DENSIFY_CAP}")
    q = np.zeros((n, n), dtype=np.int64)
    j = np.arange(n)
    q[j, (j * g) % n] = 1
    return q


def dense_svd_oracle(m, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Singular values by one-sided Jacobi sweeps, sorted non-increasing.

    Independent of the transform path on purpose: no Fourier identity is
    used anywhere in it.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    if max(a.shape) > SVD_ORACLE_CAP:
        raise SizeError(f"dense_svd_oracle capped at n <= {SVD_ORACLE_CAP}")
    sv, _, converged = jacobi_singular_values(a, tol, max_sweeps)
    if not converged:
        raise NumericalError(f"Jacobi sweeps did not converge in {max_sweeps}")
    return sv


def _char_poly_desc(a: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients (descending, monic) via the
    Faddeev--LeVerrier recurrence."""
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    mk = np.array(a)
    for k in range(1, n + 1):
        ck = -np.trace(mk) / k
        coeffs[k] = ck
        if k < n:
            mk = a @ (mk + ck * np.eye(n))
    return coeffs


def dense_eig_oracle(m, residual_tol: float = 1e-6) -> np.ndarray:
    """Eigenvalues from the characteristic polynomial, refined and certified.

    Each root of the Faddeev--LeVerrier polynomial is polished by inverse
    iteration with a Rayleigh-quotient update until the residual
    ||(M - lambda I) v|| falls below residual_tol * ||M||_F.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    n = a.shape[0]
    if n > EIG_ORACLE_CAP:
        raise SizeError(f"dense_eig_oracle capped at n <= {EIG_ORACLE_CAP}")
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n, dtype=np.complex128)
    coeffs_desc = _char_poly_desc(a)
    roots, _ = aberth_roots(coeffs_desc[::-1])
    eye = np.eye(n)
    out = np.empty(n, dtype=np.complex128)
    # generic start vector: never parallel or orthogonal to an eigenvector
    # of structured inputs (the all-ones vector would be, for circulants)
    k = np.arange(n)
    v0 = np.exp(1j * (0.7548776662 * k * k + 0.56984029 * k)) + 0.5
    v0 = v0 / np.linalg.norm(v0)
    for i, lam in enumerate(roots):
        v = v0.copy()
        best = lam
        best_res = np.linalg.norm(a @ v - lam * v)
        for _ in range(8):
            shift = lam + 1e-9 * norm   # keep the solve off exact singularity
            try:
                v = np.linalg.solve(a - shift * eye, v)
            except np.linalg.LinAlgError:
                v = np.linalg.solve(a - (shift + 1e-6 * norm) * eye, v)
            v = v / np.linalg.norm(v)
            lam = complex(np.vdot(v, a @ v))
            res = float(np.linalg.norm(a @ v - lam * v))
            if res < best_res:
                best, best_res = lam, res
            if best_res <= residual_tol * norm:
                break
        if best_res > residual_tol * norm:
            raise NumericalError(
                f"eigenvalue residual {best_res:.2e} above {residual_tol:.0e} * ||M||")
        out[i] = best
    return out


def gcirc_spectral(gc: GCirculant) -> SpectralSummary:
    """Spectral summary of a g-circulant.

    For gcd(n, g) = 1 the factor Q is unitary, so the singular values equal
    those of the underlying circulant and come from the transform path.
    Otherwise a dense SVD fallback runs when n is within the oracle cap.
    Eigenvalues are populated only when n is within the eigen-oracle cap.
    """
    n = gc.n
    coprime = math.gcd(n, gc.g) == 1
    eig = dense_eig_oracle(densify(gc)) if n <= EIG_ORACLE_CAP else None
    if coprime:
        base = extreme_singular_values(Circulant(gc.first_row))
        return SpectralSummary(eig, base.s_min, base.s_max, base.argmin_k,
                               base.numerically_singular)
    if n > SVD_ORACLE_CAP:
        raise UnsupportedError(
            "non-coprime g-circulant beyond the dense oracle cap "
            f"(n <= {SVD_ORACLE_CAP})")
    sv = dense_svd_oracle(densify(gc))
    s_min, s_max = float(sv[-1]), float(sv[0])
    return SpectralSummary(eig, s_min, s_max, None,
                           s_min <= SINGULAR_FLAG_RATIO * s_max)


def matrix_csv(m, path) -> None:
    """Row-major CSV dump of a dense matrix (complex entries as 're+imj')."""
    a = np.asarray(m)
    with open(path, "w", encoding="utf-8") as fh:
        for row in a:
            fh.write(",".join(str(complex(v)) if np.iscomplexobj(a) else str(v)
                              for v in row))
            fh.write("\n")
