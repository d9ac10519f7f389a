"""Discrete Fourier transforms of arbitrary length.

The forward transform uses the POSITIVE exponent convention,

    out[k] = sum_j v[j] * exp(+i 2 pi j k / n),

unnormalized; the inverse carries the 1/n factor.  Power-of-two lengths run
an iterative radix-2 kernel, every other length goes through the Bluestein
chirp-z reduction to a power of two.  Twiddle, bit-reversal and chirp tables
are cached per length and immutable after construction, so all entry points
are safe for concurrent use.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeError

_rev_cache: dict[int, np.ndarray] = {}
_tw_cache: dict[tuple[int, int], np.ndarray] = {}
_chirp_cache: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
_kernel_cache: dict[int, np.ndarray] = {}

FOURIER_MATRIX_CAP = 2048


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _bit_reversal(n: int) -> np.ndarray:
    rev = _rev_cache.get(n)
    if rev is None:
        idx = np.arange(n)
        rev = np.zeros(n, dtype=np.intp)
        for _ in range(n.bit_length() - 1):
            rev = (rev << 1) | (idx & 1)
            idx >>= 1
        _rev_cache[n] = rev
    return rev


def _twiddles(n: int, sign: int) -> np.ndarray:
    key = (n, sign)
    w = _tw_cache.get(key)
    if w is None:
        w = np.exp(sign * 2j * np.pi * np.arange(n // 2) / n)
        _tw_cache[key] = w
    return w


def _fft_pow2(a: np.ndarray, sign: int) -> np.ndarray:
    """Radix-2 transform along the last axis; length must be a power of two."""
    n = a.shape[-1]
    if n == 1:
        return np.array(a, dtype=np.complex128, copy=True)
    out = np.ascontiguousarray(a[..., _bit_reversal(n)], dtype=np.complex128)
    w = _twiddles(n, sign)
    size = 2
    while size <= n:
        half = size // 2
        tw = w[:: n // size][:half]
        v = out.reshape(*out.shape[:-1], n // size, size)
        t = v[..., half:] * tw
        v[..., half:] = v[..., :half] - t
        v[..., :half] += t
        size *= 2
    return out


def _bluestein_tables(n: int, sign: int):
    key = (n, sign)
    tabs = _chirp_cache.get(key)
    if tabs is None:
        m = 1 << (2 * n - 1).bit_length() if not _is_pow2(2 * n - 1) else 2 * n - 1
        # j^2 reduced mod 2n before the division keeps the chirp angle exact
        q = (np.arange(n, dtype=np.int64) ** 2) % (2 * n)
        w = np.exp(sign * 1j * np.pi * q / n)
        b = np.zeros(m, dtype=np.complex128)
        b[:n] = np.conj(w)
        b[m - n + 1:] = np.conj(w[1:])[::-1]
        tabs = (w, _fft_pow2(b, +1))
        _chirp_cache[key] = tabs
    return tabs


def _bluestein(a: np.ndarray, sign: int) -> np.ndarray:
    n = a.shape[-1]
    w, bhat = _bluestein_tables(n, sign)
    m = bhat.shape[0]
    a2 = np.zeros(a.shape[:-1] + (m,), dtype=np.complex128)
    a2[..., :n] = a * w
    conv = _fft_pow2(_fft_pow2(a2, +1) * bhat, -1) / m
    return conv[..., :n] * w


def _dft_last(a: np.ndarray, sign: int = +1) -> np.ndarray:
    """Transform along the last axis of an arbitrary-shape complex array."""
    a = np.asarray(a)
    n = a.shape[-1]
    if n == 1:
        return a.astype(np.complex128, copy=True)
    if _is_pow2(n):
        return _fft_pow2(a, sign)
    return _bluestein(a, sign)


def dft_forward(v) -> np.ndarray:
    """Unnormalized forward transform, out[k] = sum_j v[j] e^{+2 pi i jk/n}."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError("dft_forward expects a nonempty 1-D vector")
    return _dft_last(v, +1)


def dft_inverse(v) -> np.ndarray:
    """Inverse of :func:`dft_forward`, including the 1/n normalization."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError("dft_inverse expects a nonempty 1-D vector")
    n = v.shape[0]
    return np.conj(_dft_last(np.conj(v), +1)) / n


def dft_kernel(n: int) -> np.ndarray:
    """Cached unnormalized kernel matrix K[j, k] = e^{+2 pi i jk/n}."""
    k = _kernel_cache.get(n)
    if k is None:
        j = np.arange(n)
        k = np.exp(2j * np.pi * np.outer(j, j) / n)
        _kernel_cache[n] = k
    return k


def fourier_matrix(n: int) -> np.ndarray:
    """The unitary Fourier matrix F with entries omega^{-jk} / sqrt(n).

    The negative exponent pairs with the positive-exponent eigenvalue
    transform so that a circulant with first row c diagonalizes as
    F* diag(dft_forward(c)) F; the opposite sign choice lands on the
    transposed (column-shift) circulant layout instead.
    """
    if not 1 <= n <= FOURIER_MATRIX_CAP:
        raise SizeError(f"fourier_matrix supports 1 <= n <= {FOURIER_MATRIX_CAP}")
    return np.conj(dft_kernel(n)) / np.sqrt(n)
