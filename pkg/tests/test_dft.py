import numpy as np
import pytest

from circroots.dft import (_bluestein, _fft_pow2, dft_forward, dft_inverse,
                           fourier_matrix)
from circroots.errors import SizeError

RNG = np.random.default_rng(20240811)


def naive_dft(v):
    """O(n^2) reference sum with the positive exponent convention."""
    v = np.asarray(v, dtype=complex)
    n = v.size
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) @ v


def rand_vec(n):
    return RNG.normal(size=n) + 1j * RNG.normal(size=n)


def test_delta_transforms_to_ones():
    v = np.zeros(8, dtype=complex)
    v[0] = 1.0
    assert np.allclose(dft_forward(v), np.ones(8), atol=1e-14)


def test_ones_transform_to_scaled_delta():
    out = dft_forward(np.ones(8, dtype=complex))
    expect = np.zeros(8, dtype=complex)
    expect[0] = 8.0
    assert np.allclose(out, expect, atol=1e-13)


def test_prime_length_matches_naive():
    v = rand_vec(7)
    assert np.max(np.abs(dft_forward(v) - naive_dft(v))) < 1e-10


@pytest.mark.parametrize("n", list(range(1, 65)) + [127, 128, 251, 1000])
def test_forward_matches_naive_all_sizes(n):
    v = rand_vec(n)
    assert np.max(np.abs(dft_forward(v) - naive_dft(v))) < 1e-10 * np.abs(v).sum()


def test_inverse_round_trip():
    v = rand_vec(16)
    assert np.max(np.abs(dft_inverse(dft_forward(v)) - v)) < 1e-10 * np.abs(v).max()
    w = np.zeros(8, dtype=complex)
    w[0] = 8.0
    assert np.allclose(dft_inverse(w), np.ones(8), atol=1e-13)


def test_round_trip_odd_length():
    v = rand_vec(13)
    assert np.max(np.abs(dft_inverse(dft_forward(v)) - v)) < 1e-10


@pytest.mark.parametrize("n", list(range(1, 65)) + [127, 128, 1000])
def test_parseval_unnormalized(n):
    v = rand_vec(n)
    lhs = np.abs(dft_forward(v)) ** 2
    assert lhs.sum() == pytest.approx(n * (np.abs(v) ** 2).sum(), rel=1e-9)


def test_bluestein_agrees_with_radix2_on_powers_of_two():
    for n in (4, 16, 64, 256):
        v = rand_vec(n)
        a = _fft_pow2(v, +1)
        b = _bluestein(v, +1)
        assert np.max(np.abs(a - b)) < 1e-11 * max(1.0, np.abs(a).max())


def test_linearity():
    u, v = rand_vec(24), rand_vec(24)
    a, b = 1.7 - 0.3j, -0.8 + 2.1j
    lhs = dft_forward(a * u + b * v)
    rhs = a * dft_forward(u) + b * dft_forward(v)
    assert np.max(np.abs(lhs - rhs)) < 1e-10 * np.abs(lhs).max()


def test_batch_axis_matches_rowwise():
    rows = RNG.normal(size=(5, 48)) + 1j * RNG.normal(size=(5, 48))
    from circroots.dft import _dft_last
    batch = _dft_last(rows)
    for i in range(5):
        assert np.allclose(batch[i], dft_forward(rows[i]), atol=1e-12)


def test_fourier_matrix_small():
    assert np.allclose(fourier_matrix(1), [[1.0]])
    f2 = fourier_matrix(2)
    assert np.allclose(f2, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


def test_fourier_matrix_unitary():
    f = fourier_matrix(16)
    gap = np.abs(f @ f.conj().T - np.eye(16)).max()
    assert gap < 1e-12


def test_fourier_matrix_size_cap():
    with pytest.raises(SizeError):
        fourier_matrix(2049)
    with pytest.raises(SizeError):
        fourier_matrix(0)


def test_vector_input_validation():
    with pytest.raises(ValueError):
        dft_forward(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        dft_inverse(np.zeros(0))
