"""Lattice-distance geometry of the 2 x n cosine/sine matrices, plus the
exact number theory feeding the gcd-threshold counting bound.

For 0 <= k < n the matrix V_k has column j equal to
(cos(2 pi k j / n), sin(2 pi k j / n)); applied to a coefficient vector it
returns the real and imaginary part of the k-th circulant eigenvalue.  The
least-denominator search scans theta = (t cos a, t sin a) over a polar grid
and reports the smallest radius at which V_k^T theta comes abnormally close
to the integer lattice; absence of violations on the grid is a certificate
for the scanned radii only, not a proof of the continuous infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import DomainError, SizeError

FACTORIZATION_CAP = 10 ** 12
_GRID_MIN = 64
_CHUNK_BUDGET = 4_000_000   # floats per t-chunk


@dataclass(frozen=True)
class VkMatrix:
    n: int
    k: int

    @property
    def matrix(self) -> np.ndarray:
        ang = 2.0 * np.pi * self.k * np.arange(self.n) / self.n
        return np.vstack([np.cos(ang), np.sin(ang)])


def vk(n: int, k: int) -> VkMatrix:
    if n < 2:
        raise DomainError("n must be >= 2")
    if not 0 <= k < n:
        raise DomainError("k must satisfy 0 <= k < n")
    return VkMatrix(int(n), int(k))


def vk_apply(v: VkMatrix, x) -> np.ndarray:
    """V_k @ x: the (Re, Im) pair of the k-th eigenvalue of circ(x)."""
    return v.matrix @ np.asarray(x, dtype=float)


def dist_to_lattice(v) -> float:
    """Euclidean distance to the nearest integer vector (ties round to even)."""
    a = np.asarray(v, dtype=float)
    return float(np.linalg.norm(a - np.round(a)))


@dataclass(frozen=True)
class LcdCertificate:
    n: int
    k: int
    L: float
    t_range: tuple[float, float]
    grid: tuple[int, int]
    min_ratio: float
    certified_lower_bound: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["t_range"] = list(self.t_range)
        d["grid"] = list(self.grid)
        return d


def lcd_search(v: VkMatrix, L: float, t_min: float, t_max: float,
               n_t: int, n_alpha: int) -> LcdCertificate:
    """Scan ||theta|| over a polar grid for least-denominator violations.

    A grid point violates when dist(V^T theta, Z^n) < L sqrt(log_+ ||V^T
    theta|| / L).  ``certified_lower_bound`` is the smallest violating
    radius, or t_max when the whole grid is clean.  ``min_ratio`` is the
    smallest dist/threshold over points with positive threshold.
    """
    if not (0 < t_min < t_max):
        raise DomainError("need 0 < t_min < t_max")
    if n_t < _GRID_MIN or n_alpha < _GRID_MIN:
        raise DomainError(f"grids must be >= {_GRID_MIN}")
    if L <= 0:
        raise DomainError("L must be positive")
    ts = np.geomspace(t_min, t_max, int(n_t))
    alphas = np.linspace(0.0, np.pi, int(n_alpha), endpoint=False)
    ang = 2.0 * np.pi * v.k * np.arange(v.n) / v.n
    # rows of base are cos(2 pi k j/n - alpha) for each alpha
    base = np.column_stack([np.cos(alphas), np.sin(alphas)]) @ \
        np.vstack([np.cos(ang), np.sin(ang)])
    row_norm2 = (base * base).sum(axis=1)
    min_ratio = math.inf
    bound = float(t_max)
    found = False
    chunk = max(1, _CHUNK_BUDGET // (int(n_alpha) * v.n))
    for lo in range(0, int(n_t), chunk):
        tv = ts[lo:lo + chunk]
        w = tv[:, None, None] * base[None, :, :]
        d = w - np.round(w)
        dist = np.sqrt((d * d).sum(axis=2))
        norms = tv[:, None] * np.sqrt(row_norm2)[None, :]
        logplus = np.log(np.maximum(norms / L, 1.0))
        thr = L * np.sqrt(logplus)
        active = thr > 0
        if active.any():
            r = np.where(active, dist / np.where(active, thr, 1.0), math.inf)
            min_ratio = min(min_ratio, float(r.min()))
        viol = dist < thr
        if not found and viol.any():
            bound = float(tv[np.nonzero(viol.any(axis=1))[0][0]])
            found = True
    return LcdCertificate(v.n, v.k, float(L), (float(t_min), float(t_max)),
                          (int(n_t), int(n_alpha)), min_ratio, bound)


# -- exact number theory ------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    if n > FACTORIZATION_CAP:
        raise SizeError(f"factorization capped at {FACTORIZATION_CAP}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    """Euler's totient via trial-division factorization."""
    if n < 1:
        raise DomainError("totient needs n >= 1")
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def divisor_count(m: int) -> int:
    """Number of positive divisors."""
    if m < 1:
        raise DomainError("divisor_count needs m >= 1")
    out = 1
    for e in _factorize(m).values():
        out *= e + 1
    return out


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError("divisors needs n >= 1")
    ds = [1]
    for p, e in _factorize(n).items():
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


def gcd_class_counts(n: int) -> dict[int, int]:
    """Exact partition #{0 <= k < n : gcd(k, n) = d} = totient(n / d), d | n.

    gcd(0, n) = n, so k = 0 sits in the class d = n.
    """
    if n < 1:
        raise DomainError("gcd_class_counts needs n >= 1")
    return {d: totient(n // d) for d in divisors(n)}


def gcd_threshold_count(n: int, nu: float) -> tuple[int, int]:
    """(#{k : gcd(k, n) > n^nu}, divisor-sum upper bound with the floor cut).

    The exact count uses the strict threshold n^nu; the bound sums
    totient(n/d) over divisors d >= floor(n^nu), so exact <= bound always
    (the gap comes from the floor versus strict-inequality boundary).
    """
    if n < 1:
        raise DomainError("gcd_threshold_count needs n >= 1")
    if not 0.0 < nu < 1.0:
        raise DomainError("nu must lie in (0, 1)")
    thr = n ** nu
    counts = gcd_class_counts(n)
    exact = sum(c for d, c in counts.items() if d > thr)
    bound = sum(c for d, c in counts.items() if d >= math.floor(thr))
    return exact, bound
