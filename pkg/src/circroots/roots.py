"""Simultaneous root finding and root-localization statistics.

The finder is Aberth--Ehrlich iteration from points on a circle of radius
(|c_0|/|c_top|)^(1/deg), followed by one Newton polish per root.  Residuals
|p(root)| / ||coeffs||_1 serve as the convergence certificate; repeated roots
are not clustered explicitly (random polynomials have simple roots almost
surely).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .polynomial import RandomPoly

CORRECTION_TOL = 1e-13


@dataclass(eq=False)
class RootSet:
    """Roots with backward-error residuals |p(z)| / sum_k |c_k| |z|^k.

    The denominator is the evaluation magnitude at the root itself, so the
    certificate stays meaningful for roots far outside the unit circle
    (where any fixed normalization would drown in the |z|^deg growth).
    """

    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    iterations: int


@dataclass(eq=False)
class AnnulusStats:
    """Localization summary of a root multiset of a length-n polynomial."""

    n: int
    frac_within: dict
    min_scaled_dist: float      # n^2 * min ||z| - 1|
    ks_uniform: float


def _horner(coeffs_desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full_like(z, coeffs_desc[0])
    for c in coeffs_desc[1:]:
        out = out * z + c
    return out


def _newton_ratio(c_asc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z) / p'(z), overflow-safe at any radius.

    Inside the closed unit disk this is plain Horner.  Outside, p(z) =
    z^d q(1/z) with q the reversed polynomial, giving
    p/p' = z q(w) / (d q(w) - w q'(w)) at w = 1/z; every intermediate stays
    bounded, where direct Horner at |z|^d would overflow for high degrees.
    Zero derivative denominators yield a fixed kick of 0.1.
    """
    d = c_asc.size - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0
    if inside.any():
        zi = z[inside]
        p = _horner(c_asc[::-1], zi)
        dp = _horner((c_asc[1:] * np.arange(1, d + 1))[::-1], zi)
        ok = dp != 0
        out[inside] = np.where(ok, p / np.where(ok, dp, 1.0), 0.1)
    if not inside.all():
        w = 1.0 / z[~inside]
        q_asc = c_asc[::-1]
        qv = _horner(c_asc, w)          # ascending c read backwards = q desc
        qp = _horner((q_asc[1:] * np.arange(1, d + 1))[::-1], w)
        den = d * qv - w * qp
        ok = den != 0
        out[~inside] = np.where(ok, z[~inside] * qv / np.where(ok, den, 1.0), 0.1)
    return out


def aberth_roots(coeffs_asc, max_iter: int = 120,
                 tol: float = CORRECTION_TOL) -> tuple[np.ndarray, int]:
    """All roots of a polynomial given by ascending coefficients.

    Returns (roots, iterations).  The caller is responsible for deflating
    exact zero leading/trailing coefficients.
    """
    c = np.asarray(coeffs_asc, dtype=np.complex128)
    deg = c.size - 1
    if deg < 1:
        raise DomainError("polynomial has no roots (degree 0)")
    if deg == 1:
        return np.array([-c[0] / c[1]]), 0
    r0 = 1.0
    if c[0] != 0 and c[-1] != 0:
        t = (abs(c[0]) / abs(c[-1])) ** (1.0 / deg)
        if np.isfinite(t) and t > 0:
            r0 = t
    # distinct angles with an asymmetric offset so conjugate-symmetric
    # start configurations cannot stall on symmetric polynomials
    ang = 2.0 * np.pi * np.arange(deg) / deg + np.pi / (2.0 * deg) + 0.3
    z = r0 * np.exp(1j * ang)
    its = 0
    for its in range(1, max_iter + 1):
        newton = _newton_ratio(c, z)
        diff = z[:, None] - z[None, :]
        diff[diff == 0] = np.inf    # diagonal, plus accidental collisions
        s = (1.0 / diff).sum(axis=1)
        w = newton / (1.0 - newton * s)
        z = z - w
        if np.all(np.abs(w) < tol * (1.0 + np.abs(z))):
            break
    z = z - _newton_ratio(c, z)
    return z, its


def find_roots(p: RandomPoly, max_iter: int = 120,
               residual_tol: float = 1e-10) -> RootSet:
    """Roots of ``p`` with residual certificates.

    Exact zero leading coefficients are deflated; exact zero trailing
    coefficients contribute explicit roots at 0.
    """
    c = np.asarray(p.coeffs, dtype=np.complex128)
    if not np.all(np.isfinite(c)):
        raise DomainError("non-finite coefficients")
    nz = np.nonzero(c)[0]
    if nz.size == 0 or nz[-1] == 0:
        raise DomainError("polynomial has no roots (effective degree 0)")
    lead = nz[-1]
    trail = nz[0]
    core, its = (np.zeros(0, dtype=np.complex128), 0) if lead == trail \
        else aberth_roots(c[trail:lead + 1], max_iter=max_iter)
    roots = np.concatenate([np.zeros(trail, dtype=np.complex128), core])
    residuals = _backward_residuals(c, roots)
    converged = bool(np.all(np.isfinite(roots))
                     and np.all(residuals <= residual_tol))
    return RootSet(roots, residuals, converged, its)


def _backward_residuals(c: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """|p(z)| / sum_k |c_k| |z|^k, evaluated in reversed form outside the
    unit disk so the common |z|^deg factor cancels instead of overflowing."""
    res = np.empty(roots.size)
    inside = np.abs(roots) <= 1.0
    if inside.any():
        zi = roots[inside]
        num = np.abs(_horner(c[::-1], zi))
        den = _horner(np.abs(c)[::-1], np.abs(zi))
        res[inside] = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    if not inside.all():
        w = 1.0 / roots[~inside]
        num = np.abs(_horner(c, w))
        den = _horner(np.abs(c), np.abs(w))
        res[~inside] = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return res


def ks_uniform(arguments) -> float:
    """Kolmogorov--Smirnov distance of angles in [0, 2 pi) from uniformity.

    Sorted-sample formula: max over i of max(i/m - u_i, u_i - (i-1)/m) with
    u_i the sorted angles divided by 2 pi.
    """
    a = np.asarray(arguments, dtype=float)
    if a.size < 1:
        raise DomainError("need at least one argument")
    u = np.sort(a) / (2.0 * np.pi)
    m = u.size
    i = np.arange(1, m + 1)
    return float(np.maximum(i / m - u, u - (i - 1) / m).max())


def default_widths(n: int, eps: float = 1.0) -> list[float]:
    """Annulus widths spanning the n^-2 repulsion scale and the 1/n
    clustering scale."""
    ws = {eps * k / n ** 2 for k in (1, 2, 4)}
    ws |= {c / n for c in (1, 2, 5, 10)}
    ws |= {0.05, 0.1}
    return sorted(ws)


def annulus_stats(rs: RootSet, n: int, widths=None) -> AnnulusStats:
    """Clustering fractions, scaled nearest distance and argument uniformity."""
    if not rs.converged:
        raise DomainError("root set did not converge; statistics unreliable")
    if rs.roots.size == 0:
        raise DomainError("empty root set")
    if widths is None:
        widths = default_widths(n)
    d = np.abs(np.abs(rs.roots) - 1.0)
    frac = {float(w): float((d <= w).mean()) for w in widths}
    args = np.mod(np.angle(rs.roots), 2.0 * np.pi)
    return AnnulusStats(int(n), frac, float(n ** 2 * d.min()), ks_uniform(args))
