import math

import numpy as np
import pytest

from circroots.circulant import (Circulant, GCirculant, circ_matvec,
                                 dense_eig_oracle, dense_svd_oracle, densify,
                                 eigenvalues, extreme_singular_values,
                                 gcirc_spectral, q_factor)
from circroots.coeff_dist import rademacher, standard_gaussian
from circroots.dft import fourier_matrix
from circroots.errors import SizeError, UnsupportedError
from circroots.montecarlo import trial_seed_block, xi_rows

RNG = np.random.default_rng(42)


def pairing_error(a, b):
    d = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    return max(d.min(axis=0).max(), d.min(axis=1).max())


def test_eigenvalue_examples():
    assert np.allclose(eigenvalues(Circulant(np.array([1.0, 0, 0, 0]))),
                       np.ones(4), atol=1e-14)
    assert np.allclose(eigenvalues(Circulant(np.array([0.0, 1.0]))),
                       [1.0, -1.0], atol=1e-14)
    assert np.allclose(eigenvalues(Circulant(np.array([1.0, 1.0]))),
                       [2.0, 0.0], atol=1e-14)


def test_extreme_singular_values_examples():
    s = extreme_singular_values(Circulant(np.array([1.0, 0, 0, 0])))
    assert s.s_min == pytest.approx(1.0) and s.s_max == pytest.approx(1.0)
    s = extreme_singular_values(Circulant(np.array([1.0, 1.0])))
    assert s.s_min == 0.0 and s.numerically_singular


def test_smin_matches_dense_oracle():
    row = RNG.normal(size=16)
    s = extreme_singular_values(Circulant(row))
    sv = dense_svd_oracle(densify(Circulant(row)))
    assert s.s_min == pytest.approx(sv[-1], rel=1e-9)
    assert s.s_max == pytest.approx(sv[0], rel=1e-9)


def test_densify_layout():
    g = GCirculant(np.array([1.0, 2.0, 3.0, 4.0]), 2)
    m = densify(g)
    assert np.array_equal(m[0], [1, 2, 3, 4])
    assert np.array_equal(m[1], [3, 4, 1, 2])
    c = Circulant(np.array([1.0, 2.0, 3.0]))
    assert np.array_equal(densify(c)[1], [3, 1, 2])
    assert np.array_equal(densify(GCirculant(c.first_row, 1)), densify(c))


def test_densify_cap():
    with pytest.raises(SizeError):
        densify(Circulant(np.ones(4097)))


def test_matvec_matches_dense_multiply():
    row = RNG.normal(size=32)
    x = RNG.normal(size=32) + 1j * RNG.normal(size=32)
    c = Circulant(row)
    direct = densify(c) @ x
    assert np.max(np.abs(circ_matvec(c, x) - direct)) < 1e-10 * np.abs(direct).max()


def test_q_factor_identity_for_g1():
    assert np.array_equal(q_factor(5, 1), np.eye(5, dtype=np.int64))


def test_q_factor_unitarity_iff_coprime():
    q = q_factor(4, 2)
    assert np.abs(q @ q.T - np.eye(4)).max() > 0
    q = q_factor(5, 2)
    assert np.abs(q @ q.T - np.eye(5)).max() == 0


def test_q_factor_reproduces_gcirculant_exactly():
    for n in range(1, 21):
        row = np.arange(1, n + 1, dtype=np.int64)
        dense_c = densify(Circulant(row))
        for g in range(1, n + 1):
            lhs = q_factor(n, g) @ dense_c
            assert np.array_equal(lhs, densify(GCirculant(row, g)))


def test_gcirc_spectral_g1_equals_circulant():
    row = RNG.normal(size=12)
    a = gcirc_spectral(GCirculant(row, 1))
    b = extreme_singular_values(Circulant(row))
    assert a.s_min == b.s_min and a.s_max == b.s_max


def test_gcirc_spectral_coprime_shortcut_matches_oracle():
    row = RNG.normal(size=5)
    g = GCirculant(row, 2)
    s = gcirc_spectral(g)
    base = extreme_singular_values(Circulant(row))
    assert s.s_min == pytest.approx(base.s_min, rel=1e-12)
    sv = dense_svd_oracle(densify(g))
    assert s.s_min == pytest.approx(sv[-1], rel=1e-9)
    assert s.s_max == pytest.approx(sv[0], rel=1e-9)


def test_gcirc_spectral_non_coprime_dense_fallback():
    row = RNG.normal(size=6)
    g = GCirculant(row, 2)
    s = gcirc_spectral(g)
    sv = dense_svd_oracle(densify(g))
    assert s.s_min == pytest.approx(sv[-1], rel=1e-9)
    assert s.argmin_k is None


def test_gcirc_non_coprime_beyond_cap_unsupported():
    with pytest.raises(UnsupportedError):
        gcirc_spectral(GCirculant(np.ones(66), 2))


def test_gcirc_eigenvalues_small_n():
    row = RNG.normal(size=6)
    s = gcirc_spectral(GCirculant(row, 5))
    assert s.eigenvalues is not None
    dense = densify(GCirculant(row, 5))
    vals = np.sort_complex(np.linalg.eigvals(dense))
    assert pairing_error(s.eigenvalues, vals) < 1e-6
    # min |eigenvalue| dominates s_min for any matrix
    assert np.abs(s.eigenvalues).min() >= s.s_min - 1e-9


# -- dense oracles --------------------------------------------------------------

def test_svd_oracle_identity_and_diag():
    assert np.allclose(dense_svd_oracle(np.eye(8)), np.ones(8))
    assert np.allclose(dense_svd_oracle(np.diag([3.0, 2.0, 1.0])), [3, 2, 1])


def test_svd_oracle_frobenius_identity():
    m = RNG.normal(size=(8, 8)) + 1j * RNG.normal(size=(8, 8))
    sv = dense_svd_oracle(m)
    assert (sv ** 2).sum() == pytest.approx(np.linalg.norm(m) ** 2, rel=1e-10)


def test_svd_oracle_matches_lapack():
    for n in (3, 9, 17):
        m = RNG.normal(size=(n, n))
        sv = dense_svd_oracle(m)
        ref = np.linalg.svd(m, compute_uv=False)
        assert np.max(np.abs(sv - ref) / np.maximum(ref, 1e-12)) < 1e-9


def test_svd_oracle_cap():
    with pytest.raises(SizeError):
        dense_svd_oracle(np.ones((65, 65)))


def test_eig_oracle_identity_multiplicity():
    vals = dense_eig_oracle(np.eye(4))
    assert np.max(np.abs(vals - 1.0)) < 1e-6


def test_eig_oracle_shift_circulant():
    vals = dense_eig_oracle(densify(Circulant(np.array([0.0, 1.0, 0.0]))))
    expected = np.exp(2j * np.pi * np.arange(3) / 3)
    assert pairing_error(vals, expected) < 1e-6


def test_eig_oracle_matches_transform_on_circulant():
    row = RNG.normal(size=8)
    vals = dense_eig_oracle(densify(Circulant(row)))
    assert pairing_error(vals, eigenvalues(Circulant(row))) < 1e-6


def test_eig_oracle_cap():
    with pytest.raises(SizeError):
        dense_eig_oracle(np.eye(17))


# -- structure identities ---------------------------------------------------------

def test_trace_identity():
    row = RNG.normal(size=24)
    lam = eigenvalues(Circulant(row))
    assert lam.sum() == pytest.approx(24 * row[0], rel=1e-10, abs=1e-10)


def test_determinant_identity_small_n():
    for n in (2, 5, 8, 16):
        row = RNG.normal(size=n)
        lam = eigenvalues(Circulant(row))
        det = np.linalg.det(densify(Circulant(row)))     # LU-based reference
        assert np.prod(lam) == pytest.approx(det, rel=1e-6)


@pytest.mark.parametrize("n", [2, 3, 8, 31, 64])
def test_diagonalization_identity(n):
    row = RNG.normal(size=n)
    c = Circulant(row)
    f = fourier_matrix(n)
    recon = f.conj().T @ np.diag(eigenvalues(c)) @ f
    gap = np.abs(recon - densify(c)).max()
    assert gap <= 1e-10 * np.abs(row).sum()


def test_smin_below_min_eigenvalue_modulus_generic():
    m = RNG.normal(size=(8, 8))
    sv = dense_svd_oracle(m)
    lam = np.linalg.eigvals(m)
    assert np.abs(lam).min() >= sv[-1] - 1e-9


def test_sampled_rows_match_experiment_streams():
    seeds = trial_seed_block(7, 16, 0, 3)
    rows = xi_rows(rademacher(), seeds, 16)
    assert set(np.unique(rows)) <= {-1.0, 1.0}
    rows2 = xi_rows(rademacher(), trial_seed_block(7, 16, 0, 3), 16)
    assert np.array_equal(rows, rows2)
