"""Weighted random polynomials and their unit-circle evaluation machinery.

A polynomial here is p(z) = sum_j xi_j * phi(j/n) * z^j with i.i.d. zero-mean
coefficients xi_j and a Hoelder weight phi normalized to unit C^sigma norm.
Restricted to the circle it is the trigonometric polynomial
t(x) = p(e^{ix}).  The module provides certified sup-norm brackets and a
pathwise lower estimate of the minimum modulus over a thin annulus around
the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeff_dist import CoeffDistribution, sample_streams
from .dft import _dft_last, dft_kernel
from .errors import CertificationError, DomainError, ResolutionError
from .rng import mix_array

HOLDER_FINE_GRID = 100_001
HOLDER_PAIR_GRID = 1_001
ANNULUS_GRID_CAP = 1 << 24

CONST = "const"
LINEAR = "linear"
POWER = "power"


def _raw_weight(kind: str, sigma: float, x: np.ndarray) -> np.ndarray:
    if kind == CONST:
        return np.ones_like(x)
    if kind == LINEAR:
        return np.asarray(x, dtype=float)
    return np.asarray(x, dtype=float) ** sigma


def holder_norm(f, sigma: float) -> float:
    """Grid estimate of max|f| plus the order-sigma Hoelder quotient on [0,1].

    The quotient is maximized over all pairs of a coarse grid plus all
    adjacent pairs of the fine grid; for the monotone weight family in this
    module the supremum is attained at pairs anchored at 0, which both grids
    contain, so the estimate is exact up to rounding.
    """
    xf = np.linspace(0.0, 1.0, HOLDER_FINE_GRID)
    vf = f(xf)
    sup = float(np.abs(vf).max())
    adj = np.abs(np.diff(vf)) / np.diff(xf) ** sigma
    xc = np.linspace(0.0, 1.0, HOLDER_PAIR_GRID)
    vc = f(xc)
    dv = np.abs(vc[:, None] - vc[None, :])
    dx = np.abs(xc[:, None] - xc[None, :])
    iu = np.triu_indices(HOLDER_PAIR_GRID, k=1)
    quot = max(float((dv[iu] / dx[iu] ** sigma).max()), float(adj.max()))
    return sup + quot


@dataclass(frozen=True)
class WeightFn:
    """A weight on [0,1], rescaled so its C^sigma norm equals 1."""

    kind: str
    holder_order: float
    scale: float

    def __call__(self, x):
        return self.scale * _raw_weight(self.kind, self.holder_order, np.asarray(x, dtype=float))

    def spec(self) -> str:
        if self.kind == POWER:
            return f"power:sigma={self.holder_order}"
        return self.kind


def _normalized(kind: str, sigma: float) -> WeightFn:
    norm = holder_norm(lambda x: _raw_weight(kind, sigma, x), sigma)
    return WeightFn(kind, sigma, 1.0 / norm)


def constant_weight() -> WeightFn:
    return _normalized(CONST, 1.0)


def linear_weight() -> WeightFn:
    return _normalized(LINEAR, 1.0)


def power_weight(sigma: float) -> WeightFn:
    if not 0.5 < sigma < 1.0:
        raise DomainError("power weight needs sigma in (1/2, 1)")
    return _normalized(POWER, float(sigma))


def parse_weight(spec: str) -> WeightFn:
    """Parse a weight spec: ``const``, ``linear`` or ``power:sigma=0.6``."""
    head, _, tail = spec.strip().partition(":")
    head = head.lower()
    if head == CONST and not tail:
        return constant_weight()
    if head == LINEAR and not tail:
        return linear_weight()
    if head == POWER:
        key, _, val = tail.partition("=")
        if key == "sigma" and val:
            return power_weight(float(val))
    raise DomainError(f"unrecognized weight spec {spec!r}")


@dataclass(eq=False)
class RandomPoly:
    """Degree n-1 polynomial with coefficients xi_j * phi(j/n).

    Coefficient j is drawn from the stream mix(seed, j), so the vector is
    reproducible from (dist_tag, weight_tag, n, seed) and independent of
    evaluation order.
    """

    n: int
    coeffs: np.ndarray
    dist_tag: str
    weight_tag: str
    seed: int


def build_poly(dist: CoeffDistribution, phi: WeightFn, n: int, seed: int) -> RandomPoly:
    if n < 2:
        raise DomainError("polynomial length n must be >= 2")
    j = np.arange(n)
    xi = sample_streams(dist, mix_array(int(seed), j))
    return RandomPoly(n, xi * phi(j / n), dist.spec(), phi.spec(), int(seed))


def eval_poly(p: RandomPoly, z):
    """Horner evaluation at a scalar or array of points."""
    z = np.asarray(z, dtype=np.complex128)
    out = np.full(z.shape, p.coeffs[-1], dtype=np.complex128)
    for c in p.coeffs[-2::-1]:
        out = out * z + c
    return complex(out) if out.ndim == 0 else out


def _deriv_poly(p: RandomPoly, coeffs: np.ndarray) -> RandomPoly:
    c = coeffs if coeffs.size else np.zeros(1)
    return RandomPoly(p.n, c, p.dist_tag, p.weight_tag, p.seed)


def eval_derivatives(p: RandomPoly, z, order: int = 2) -> list:
    """[p(z), p'(z), p''(z)] truncated to ``order`` (each by Horner)."""
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    j = np.arange(p.n)
    out = [eval_poly(p, z)]
    if order >= 1:
        out.append(eval_poly(_deriv_poly(p, (j * p.coeffs)[1:]), z))
    if order == 2:
        out.append(eval_poly(_deriv_poly(p, (j * (j - 1) * p.coeffs)[2:]), z))
    return out


def trig_eval(p: RandomPoly, x: float) -> complex:
    """p evaluated at e^{ix}."""
    return eval_poly(p, np.exp(1j * float(x)))


# -- uniform circle grids ----------------------------------------------------

_PRUNED_MATMUL_CAP = 1024
_twist_cache: dict[tuple[int, int], np.ndarray] = {}


def _twist(n: int, m: int) -> np.ndarray:
    key = (n, m)
    t = _twist_cache.get(key)
    if t is None:
        s = m // n
        t = np.exp(2j * np.pi * np.outer(np.arange(s), np.arange(n)) / m)
        _twist_cache[key] = t
    return t


def _pruned_blocks(c: np.ndarray, m: int) -> np.ndarray:
    """Grid values in block layout: out[..., b, a] is the value at index
    s*a + b of the natural grid, with s = m / n blocks."""
    n = c.shape[-1]
    kernel = c[..., :, None] * dft_kernel(n)    # (..., n, n), small
    return _twist(n, m) @ kernel                # (..., s, n)


def circle_values(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Values of sum_j c_j e^{i j x} at the m-point uniform grid x = 2 pi k / m.

    When m is a multiple of len(coeffs) the transform splits into m/n twisted
    length-n transforms evaluated as one kernel-matrix product; otherwise the
    coefficients are zero-padded and handed to the generic transform.  Accepts
    a leading batch axis.
    """
    c = np.asarray(coeffs)
    n = c.shape[-1]
    if m == n:
        return _dft_last(c.astype(np.complex128, copy=False))
    if m % n == 0 and n <= _PRUNED_MATMUL_CAP:
        out = _pruned_blocks(c, m)
        return np.swapaxes(out, -1, -2).reshape(*c.shape[:-1], m)
    padded = np.zeros(c.shape[:-1] + (m,), dtype=np.complex128)
    padded[..., :n] = c
    return _dft_last(padded)


def _abs_sum_diff_blocks(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(|z + conj(zrev)| / 2, |z - conj(zrev)| / 2) in block layout, where
    zrev holds the value at grid index m - k.

    Index m = s*a + b maps under reversal to (b', a') = (0, (n-a) mod n) when
    b = 0 and to (s-b, n-1-a) when b >= 1, so the permutation is expressible
    with reversed views and the conjugation folds into sign flips on the
    imaginary parts; no complex temporaries are formed.
    """
    zr, zi = z.real, z.imag
    out_plus = np.empty(z.shape, dtype=np.float64)
    out_minus = np.empty(z.shape, dtype=np.float64)
    vr = zr[..., :0:-1, ::-1]
    vi = zi[..., :0:-1, ::-1]
    np.hypot(zr[..., 1:, :] + vr, zi[..., 1:, :] - vi, out=out_plus[..., 1:, :])
    np.hypot(zr[..., 1:, :] - vr, zi[..., 1:, :] + vi, out=out_minus[..., 1:, :])
    t0r = np.roll(zr[..., 0, ::-1], 1, axis=-1)
    t0i = np.roll(zi[..., 0, ::-1], 1, axis=-1)
    np.hypot(zr[..., 0, :] + t0r, zi[..., 0, :] - t0i, out=out_plus[..., 0, :])
    np.hypot(zr[..., 0, :] - t0r, zi[..., 0, :] + t0i, out=out_minus[..., 0, :])
    out_plus *= 0.5
    out_minus *= 0.5
    return out_plus, out_minus


def circle_abs_val_deriv(coeffs: np.ndarray, m: int,
                         ordered: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """(|t(x)|, |t'(x)|) on the m-point grid, for real coefficient vectors.

    Packs c and its derivative weights j*c into one complex transform and
    unpacks through the conjugate-reversal identity of real-input transforms.
    With ``ordered=False`` the grid order is unspecified (block layout); use
    that only for order-independent reductions such as min or max.
    """
    c = np.asarray(coeffs)
    n = c.shape[-1]
    if np.iscomplexobj(c):
        vals = circle_values(c, m)
        dvals = circle_values(np.arange(n) * c, m)
        return np.abs(vals), np.abs(dvals)
    packed = c + 1j * (np.arange(n) * c)
    if not ordered and m % n == 0 and m != n and n <= _PRUNED_MATMUL_CAP:
        z = _pruned_blocks(packed, m)
        abs_t, abs_tp = _abs_sum_diff_blocks(z)
        shape = c.shape[:-1] + (m,)
        return abs_t.reshape(shape), abs_tp.reshape(shape)
    z = circle_values(packed, m)
    zrev = np.conj(np.concatenate([z[..., :1], z[..., :0:-1]], axis=-1))
    return np.abs(z + zrev) / 2.0, np.abs(z - zrev) / 2.0


# -- certified sup norm and annulus minimum ----------------------------------

def sup_norm_certified(p: RandomPoly, grid_size: int) -> tuple[float, float]:
    """Bracket sup_x |t(x)| between a grid maximum and its Bernstein inflation.

    The derivative of a trigonometric polynomial of degree < n is bounded by
    n times its sup norm, so the sup exceeds the max over a grid of spacing
    h by at most h*n*sup; solving gives upper = lower / (1 - 2 pi n / M).
    """
    if grid_size < 8 * p.n:
        raise CertificationError("grid_size must be >= 8n for a valid bracket")
    lower = float(np.abs(circle_values(p.coeffs, int(grid_size))).max())
    return lower, lower / (1.0 - 2.0 * np.pi * p.n / grid_size)


def second_deriv_majorant(coeffs: np.ndarray, n: int, exponent_shift: int = 0):
    """sum_j j(j-1) |c_j| (1 + n^-2)^(j + exponent_shift), a sup bound on |p''|
    over the annulus ||z|-1| < n^-2 (pathwise, no expectation).  Batched over
    any leading axes of ``coeffs``."""
    j = np.arange(np.asarray(coeffs).shape[-1])
    out = np.sum(j * (j - 1) * np.abs(coeffs)
                 * (1.0 + 1.0 / n ** 2) ** (j + exponent_shift), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def annulus_grid_points(n: int, eps: float) -> int:
    """Circle grid size with spacing <= eps * n^-2, as a multiple of n."""
    s = max(1, math.ceil(2.0 * math.pi * n / eps))
    m = s * n
    if m > ANNULUS_GRID_CAP:
        raise ResolutionError(
            f"annulus grid needs {m} points (cap {ANNULUS_GRID_CAP}); "
            "lower n or raise eps")
    return m


def annulus_min_from_values(abs_t: np.ndarray, abs_tp: np.ndarray,
                            eps: float, n: int, m2):
    """Combine grid values into the annulus minimum-modulus estimate.

    Batched over leading axes (``m2`` then holds one majorant per row).
    """
    w = 2.0 * eps / n ** 2
    r = 2.0 * (eps / n ** 2) ** 2 * np.asarray(m2)
    out = np.maximum(0.0, (abs_t - w * abs_tp).min(axis=-1) - r)
    return float(out) if np.ndim(out) == 0 else out


def annulus_min_modulus(p: RandomPoly, eps: float, n: int) -> float:
    """Estimate of inf |p(z)| over the annulus ||z|-1| < eps * n^-2.

    Evaluates |t| and |t'| on a circle grid of spacing <= eps*n^-2 and pushes
    into the annulus with the order-two Taylor step: every annulus point lies
    within 2 eps n^-2 of a grid point, so

        |p(z)| >= |t(x_a)| - 2 eps n^-2 |t'(x_a)| - R,

    with R = 2 (eps n^-2)^2 * M2 and M2 the second-derivative majorant.  The
    returned value is a pathwise lower bound of the true infimum (hence at
    most infimum + R).
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if n != p.n:
        raise DomainError("n must equal p.n")
    m = annulus_grid_points(n, eps)
    abs_t, abs_tp = circle_abs_val_deriv(p.coeffs, m)
    m2 = second_deriv_majorant(p.coeffs, n)
    return annulus_min_from_values(abs_t, abs_tp, eps, n, m2)
