"""Zero-mean coefficient distributions with analytic moments and samplers.

Four laws are supported: Rademacher, standard Gaussian, symmetric uniform on
[-a, a], and Laplace with scale b.  They span bounded, sub-Gaussian and
exponential-tail behaviour while keeping closed-form moment generating
functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InsufficientDataError
from .rng import RngState, stream_block, u64_to_unit

_U63 = np.uint64(63)

RADEMACHER = "rademacher"
GAUSSIAN = "gaussian"
UNIFORM = "uniform"
LAPLACE = "laplace"


@dataclass(frozen=True)
class CoeffDistribution:
    """A coefficient law: kind tag, shape parameter, and analytic moments."""

    kind: str
    param: float
    variance: float
    mgf_radius: float
    mean: float = 0.0

    def spec(self) -> str:
        if self.kind == UNIFORM:
            return f"uniform:a={self.param}"
        if self.kind == LAPLACE:
            return f"laplace:b={self.param}"
        return self.kind


def rademacher() -> CoeffDistribution:
    return CoeffDistribution(RADEMACHER, 1.0, 1.0, math.inf)


def standard_gaussian() -> CoeffDistribution:
    return CoeffDistribution(GAUSSIAN, 1.0, 1.0, math.inf)


def uniform_sym(a: float) -> CoeffDistribution:
    if not a > 0:
        raise DomainError("uniform half-width a must be > 0 (non-degenerate)")
    return CoeffDistribution(UNIFORM, float(a), a * a / 3.0, math.inf)


def laplace(b: float) -> CoeffDistribution:
    if not b > 0:
        raise DomainError("laplace scale b must be > 0 (non-degenerate)")
    return CoeffDistribution(LAPLACE, float(b), 2.0 * b * b, 1.0 / b)


def parse_dist(spec: str) -> CoeffDistribution:
    """Parse a distribution spec string.

    Accepted forms: ``rademacher``, ``gaussian``, ``uniform:a=1.0``,
    ``laplace:b=1.0``.
    """
    head, _, tail = spec.strip().partition(":")
    head = head.lower()
    if head == RADEMACHER and not tail:
        return rademacher()
    if head == GAUSSIAN and not tail:
        return standard_gaussian()
    if head == UNIFORM:
        key, _, val = tail.partition("=")
        if key == "a" and val:
            return uniform_sym(float(val))
    if head == LAPLACE:
        key, _, val = tail.partition("=")
        if key == "b" and val:
            return laplace(float(val))
    raise DomainError(f"unrecognized distribution spec {spec!r}")


def abs_mean(dist: CoeffDistribution) -> float:
    """E|xi| in closed form (used by Markov-type bound reports)."""
    if dist.kind == RADEMACHER:
        return 1.0
    if dist.kind == GAUSSIAN:
        return math.sqrt(2.0 / math.pi)
    if dist.kind == UNIFORM:
        return dist.param / 2.0
    return dist.param  # laplace


def _transform_raw(dist: CoeffDistribution, raw: np.ndarray) -> np.ndarray:
    """Map raw uint64 words (last axis holds the per-variate words) to variates."""
    if dist.kind == RADEMACHER:
        return (raw[..., 0] >> _U63).astype(np.float64) * 2.0 - 1.0
    if dist.kind == GAUSSIAN:
        u1 = u64_to_unit(raw[..., 0])
        u2 = u64_to_unit(raw[..., 1])
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    if dist.kind == UNIFORM:
        return dist.param * (2.0 * u64_to_unit(raw[..., 0]) - 1.0)
    # laplace: inverse CDF on u in (0,1); u never hits 0 or 1 by construction
    v = u64_to_unit(raw[..., 0]) - 0.5
    return -dist.param * np.sign(v) * np.log1p(-2.0 * np.abs(v))


def words_per_sample(dist: CoeffDistribution) -> int:
    return 2 if dist.kind == GAUSSIAN else 1


def sample(dist: CoeffDistribution, state: RngState, size: int | None = None):
    """Draw variates from ``state``, advancing it deterministically.

    Scalar draw when ``size`` is None, else a float64 array of that length.
    The stream consumption per variate is fixed per kind, so the values at a
    given counter position never depend on batching.
    """
    w = words_per_sample(dist)
    n = 1 if size is None else int(size)
    raw = np.asarray(state.raw(n * w)).reshape(n, w)
    out = _transform_raw(dist, raw)
    return float(out[0]) if size is None else out


def sample_streams(dist: CoeffDistribution, seeds: np.ndarray) -> np.ndarray:
    """One variate from each of many streams (first counter positions).

    Equivalent to ``sample(dist, RngState(s))`` for each seed ``s``, but
    vectorized; bitwise identical to the scalar path.
    """
    seeds = np.asarray(seeds, dtype=np.uint64)
    raw = stream_block(seeds, 0, words_per_sample(dist))
    return _transform_raw(dist, raw)


def mgf(dist: CoeffDistribution, t: float) -> float:
    """Analytic moment generating function M(t) = E exp(t xi)."""
    if not abs(t) < dist.mgf_radius:
        raise DomainError(f"|t|={abs(t)} outside MGF domain (radius {dist.mgf_radius})")
    if dist.kind == RADEMACHER:
        return math.cosh(t)
    if dist.kind == GAUSSIAN:
        return math.exp(t * t / 2.0)
    if dist.kind == UNIFORM:
        at = dist.param * t
        if abs(at) < 1e-8:
            return 1.0 + at * at / 6.0
        return math.sinh(at) / at
    bt = dist.param * t
    return 1.0 / (1.0 - bt * bt)


@dataclass(frozen=True)
class MgfEstimate:
    """Empirical MGF values on a symmetric t-grid."""

    t_grid: np.ndarray
    values: np.ndarray
    n_samples: int
    seed: int

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        if t.size < 1 or np.any(np.diff(t) <= 0):
            raise DomainError("t_grid must be strictly increasing")
        if not np.allclose(t + t[::-1], 0.0, atol=1e-12):
            raise DomainError("t_grid must be symmetric about 0")
        if np.any(np.asarray(self.values) <= 0):
            raise DomainError("MGF estimates must be strictly positive")


def empirical_mgf(dist: CoeffDistribution, t_grid, n_samples: int,
                  seed: int) -> MgfEstimate:
    """Monte Carlo estimate of M(t) on a grid, from a single seeded stream."""
    t = np.asarray(t_grid, dtype=float)
    state = RngState(seed)
    acc = np.zeros(t.size)
    chunk = 1 << 16
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        x = sample(dist, state, m)
        acc += np.exp(np.outer(t, x)).sum(axis=1)
        done += m
    return MgfEstimate(t, acc / n_samples, int(n_samples), int(seed))


def local_subgaussian_gamma(dist: CoeffDistribution, delta: float,
                            grid_points: int) -> float:
    """Smallest gamma with M(t) <= exp(gamma t^2 / 2) on a grid over |t| <= delta.

    Computed as the grid maximum of 2 log M(t) / t^2 over nonzero t; by
    construction M(t) <= exp(gamma t^2/2) holds at every grid point.
    """
    if not (0 < delta < dist.mgf_radius):
        raise DomainError("delta must satisfy 0 < delta < mgf_radius")
    if grid_points < 3:
        raise DomainError("grid_points must be >= 3")
    ts = np.linspace(-delta, delta, int(grid_points))
    vals = [2.0 * math.log(mgf(dist, t)) / (t * t) for t in ts if t != 0.0]
    return max(vals)


def exp_tail_fit(dist: CoeffDistribution, x_grid, n_samples: int,
                 seed: int) -> tuple[float, float]:
    """Fit Pr(|xi| >= x) ~ b exp(-c x) from seeded samples.

    Grid points with fewer than 50 exceedances are discarded (their log
    survival is noise).  Bounded-support laws where the whole grid sees zero
    exceedances return the sentinel (1.0, inf).
    """
    x = np.asarray(x_grid, dtype=float)
    if x.size < 1 or np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise DomainError("x_grid must be positive and increasing")
    if n_samples < 10_000:
        raise DomainError("n_samples must be >= 10^4")
    state = RngState(seed)
    counts = np.zeros(x.size, dtype=np.int64)
    chunk = 1 << 16
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        ax = np.abs(sample(dist, state, m))
        counts += (ax[None, :] >= x[:, None]).sum(axis=1)
        done += m
    if np.all(counts == 0):
        return 1.0, math.inf
    usable = counts >= 50
    if usable.sum() < 2:
        raise InsufficientDataError(
            f"only {int(usable.sum())} grid points with >= 50 exceedances")
    logs = np.log(counts[usable] / n_samples)
    slope, intercept = np.polyfit(x[usable], logs, 1)
    return float(math.exp(intercept)), float(-slope)
