"""Counter-based deterministic random streams.

Every random quantity in this package is derived from a 64-bit stream seed
through the splitmix64 output function.  A stream is a pure function of
(seed, counter), so results never depend on evaluation order, chunking, or
thread count.  Seeds for sub-streams are derived with :func:`mix`, never by
consuming values from a parent stream.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_K1 = 0xBF58476D1CE4E5B9
_K2 = 0x94D049BB133111EB

_U_GOLDEN = np.uint64(GOLDEN)
_U_K1 = np.uint64(_K1)
_U_K2 = np.uint64(_K2)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)

# (0,1) mapping: (mantissa + 1/2) * 2^-53 keeps both endpoints strictly out.
_INV53 = 2.0 ** -53
_U11 = np.uint64(11)


def mix64(x: int) -> int:
    """splitmix64 step applied to a python integer (mod 2^64)."""
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _K1) & MASK64
    z = ((z ^ (z >> 27)) * _K2) & MASK64
    return z ^ (z >> 31)


def mix(*parts: int) -> int:
    """Fold integers into a single 64-bit stream seed.

    Used to key independent sub-streams, e.g. ``mix(base_seed, n, 0, trial)``
    for Monte Carlo trials or ``mix(poly_seed, j)`` for coefficient j.
    """
    acc = 0
    for p in parts:
        acc = mix64(acc ^ (int(p) & MASK64))
    return acc


def _finalize_u64(z: np.ndarray) -> np.ndarray:
    # modular wraparound is the point; silence numpy's scalar-overflow warning
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U30)) * _U_K1
        z = (z ^ (z >> _U27)) * _U_K2
        return z ^ (z >> _U31)


def mix_array(*parts) -> np.ndarray:
    """Broadcasting version of :func:`mix` over uint64 arrays or ints."""
    acc = np.uint64(0)
    with np.errstate(over="ignore"):
        for p in parts:
            p = np.asarray(p).astype(np.uint64, copy=False)
            acc = _finalize_u64((acc ^ p) + _U_GOLDEN)
    return acc


def stream_block(seed, start: int, count: int) -> np.ndarray:
    """Raw uint64 outputs ``start .. start+count-1`` of the stream(s) ``seed``.

    ``seed`` may be a scalar or a uint64 array; a trailing axis of length
    ``count`` is appended.
    """
    with np.errstate(over="ignore"):
        ks = (np.arange(start + 1, start + count + 1, dtype=np.uint64)) * _U_GOLDEN
        seed = np.asarray(seed).astype(np.uint64, copy=False)
        return _finalize_u64(seed[..., None] + ks)


def u64_to_unit(u: np.ndarray) -> np.ndarray:
    """Map raw uint64 words to floats in the open interval (0, 1)."""
    return ((u >> _U11).astype(np.float64) + 0.5) * _INV53


class RngState:
    """Mutable cursor into one counter-based stream.

    Distinct instances may be used concurrently; a single instance must not
    be shared across concurrent callers.
    """

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def raw(self, size: int | None = None) -> np.ndarray | int:
        n = 1 if size is None else int(size)
        out = stream_block(np.uint64(self.seed), self.counter, n)
        self.counter += n
        return int(out[0]) if size is None else out

    def unit(self, size: int | None = None):
        out = u64_to_unit(stream_block(np.uint64(self.seed), self.counter,
                                       1 if size is None else int(size)))
        self.counter += 1 if size is None else int(size)
        return float(out[0]) if size is None else out

    def __repr__(self):  # pragma: no cover
        return f"RngState(seed={self.seed:#x}, counter={self.counter})"
