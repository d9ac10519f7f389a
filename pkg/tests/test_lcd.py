import math

import numpy as np
import pytest

from circroots.circulant import Circulant, eigenvalues
from circroots.errors import DomainError
from circroots.lcd import (dist_to_lattice, divisor_count, divisors,
                           gcd_class_counts, gcd_threshold_count, lcd_search,
                           totient, vk, vk_apply)


def test_vk_rows_k0():
    v = vk(8, 0).matrix
    assert np.allclose(v[0], np.ones(8))
    assert np.allclose(v[1], np.zeros(8))


def test_vk_rows_half():
    v = vk(8, 4).matrix
    assert np.allclose(v[0], [1, -1] * 4, atol=1e-12)
    assert np.allclose(v[1], np.zeros(8), atol=1e-12)


def test_vk_columns_unit_norm():
    v = vk(17, 5).matrix
    assert np.allclose((v ** 2).sum(axis=0), np.ones(17), atol=1e-14)


def test_vk_matches_eigenvalue_parts():
    x = np.random.default_rng(3).normal(size=8)
    lam = eigenvalues(Circulant(x))[3]
    out = vk_apply(vk(8, 3), x)
    assert abs(out[0] - lam.real) < 1e-10
    assert abs(out[1] - lam.imag) < 1e-10


def test_vk_range_errors():
    with pytest.raises(DomainError):
        vk(8, 8)
    with pytest.raises(DomainError):
        vk(1, 0)


def test_norm_identity_prime_n():
    # ||V_k^T theta||^2 = n ||theta||^2 / 2 for k outside {0, n/2}
    for n in (7, 31, 61):
        for k in (1, 2, n - 1):
            m = vk(n, k).matrix
            for ang in (0.0, 0.7, 2.1):
                theta = 1.3 * np.array([math.cos(ang), math.sin(ang)])
                lhs = ((m.T @ theta) ** 2).sum()
                rhs = n * (theta ** 2).sum() / 2.0
                assert abs(lhs - rhs) < 1e-9 * rhs


def test_norm_identity_composite_n_nonhalf_k():
    m = vk(12, 5).matrix
    theta = np.array([0.8, -0.6])
    lhs = ((m.T @ theta) ** 2).sum()
    assert lhs == pytest.approx(12 * 1.0 / 2.0, rel=1e-12)


def test_successive_column_difference_bound():
    # adjacent entries of the first cosine row differ by at most 2 pi / n
    for n in (16, 127):
        for alpha in (0.0, 0.3, 1.2):
            vals = np.cos(2 * np.pi * np.arange(n + 1) / n - alpha)
            assert np.abs(np.diff(vals)).max() <= 2 * np.pi / n + 1e-12


def test_dist_to_lattice():
    assert dist_to_lattice([1.0, -3.0, 7.0]) == 0.0
    assert dist_to_lattice([0.5] * 9) == pytest.approx(1.5)
    v = np.random.default_rng(1).normal(size=50) * 3
    assert dist_to_lattice(v) <= math.sqrt(50) / 2


def test_lcd_search_below_half_returns_tmax():
    # every coordinate of V^T theta stays within [-1/2, 1/2], so the lattice
    # distance equals the full norm and can never dip below the threshold
    cert = lcd_search(vk(31, 1), 2.0, 0.1, 0.45, 64, 64)
    assert cert.certified_lower_bound == 0.45
    cert = lcd_search(vk(12, 5), 2.0, 0.1, 0.49, 64, 64)
    assert cert.certified_lower_bound == 0.49


def test_lcd_search_k0_violation_at_radius_one():
    cert = lcd_search(vk(8, 0), 2.0, 0.5, 2.0, 129, 64)
    assert cert.certified_lower_bound < 1.01
    assert cert.min_ratio < 1.0


def test_lcd_search_grid_refinement_monotone():
    v = vk(31, 1)
    coarse = lcd_search(v, 2.0, 0.5, 3.1, 128, 128)
    fine = lcd_search(v, 2.0, 0.5, 3.1, 255, 256)   # nested t grid
    ts = np.geomspace(0.5, 3.1, 128)
    step = ts[1] / ts[0]
    assert fine.certified_lower_bound <= coarse.certified_lower_bound * step


def test_lcd_search_parameter_errors():
    with pytest.raises(DomainError):
        lcd_search(vk(8, 1), 2.0, 1.0, 0.5, 64, 64)
    with pytest.raises(DomainError):
        lcd_search(vk(8, 1), 2.0, 0.5, 1.0, 32, 64)
    with pytest.raises(DomainError):
        lcd_search(vk(8, 1), 0.0, 0.5, 1.0, 64, 64)


def test_lcd_certificate_serialization():
    cert = lcd_search(vk(8, 1), 2.0, 0.5, 1.0, 64, 64)
    d = cert.to_dict()
    assert set(d) == {"n", "k", "L", "t_range", "grid", "min_ratio",
                      "certified_lower_bound"}


# -- number theory ----------------------------------------------------------------

def test_totient_examples():
    assert totient(7) == 6
    assert totient(1) == 1
    assert totient(12) == 4
    with pytest.raises(DomainError):
        totient(0)


def test_totient_brute_force():
    for n in range(1, 300):
        brute = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert totient(n) == brute


def test_totient_multiplicative_on_coprime_pairs():
    rng = np.random.default_rng(5)
    done = 0
    while done < 500:
        a = int(rng.integers(2, 10 ** 3))
        b = int(rng.integers(2, 10 ** 3))
        if math.gcd(a, b) != 1:
            continue
        assert totient(a * b) == totient(a) * totient(b)
        done += 1


def test_divisor_count_examples():
    assert divisor_count(1) == 1
    assert divisor_count(13) == 2
    assert divisor_count(360) == 24
    brute = sum(1 for d in range(1, 361) if 360 % d == 0)
    assert brute == 24


def test_totient_minus_sqrt_inequality_composites_only():
    # T(m) <= m - sqrt(m) fails at m = 1 and at every prime (T(p) = p - 1
    # exceeds p - sqrt(p)); for composite m the smallest prime factor is at
    # most sqrt(m), which forces the inequality.  Exhaustive check to 5000.
    def is_prime(m):
        return m >= 2 and all(m % f for f in range(2, int(m ** 0.5) + 1))

    for m in range(1, 5001):
        holds = totient(m) <= m - math.sqrt(m) + 1e-9
        assert holds == (m > 1 and not is_prime(m))


def test_gcd_class_counts_examples():
    counts = gcd_class_counts(12)
    assert counts[4] == 2            # k in {4, 8}
    assert sum(counts.values()) == 12
    prime = gcd_class_counts(13)
    assert prime == {1: 12, 13: 1}


def test_partition_identity():
    for n in list(range(1, 400)) + [997, 2048, 9973]:
        assert sum(totient(n // d) for d in divisors(n)) == n


def test_gcd_threshold_count_prime():
    exact, bound = gcd_threshold_count(13, 0.5)
    assert exact == 1                # only k = 0 has gcd 13 > sqrt(13)
    assert exact <= bound


def test_gcd_threshold_count_enumeration():
    # independent oracle: enumerate gcd(k, n) directly
    for n in (12, 30, 64, 97, 360):
        for nu in (0.3, 0.5, 0.9):
            thr = n ** nu
            brute = sum(1 for k in range(n) if math.gcd(k, n) > thr)
            exact, bound = gcd_threshold_count(n, nu)
            assert exact == brute
            assert exact <= bound


def test_gcd_threshold_count_validation():
    with pytest.raises(DomainError):
        gcd_threshold_count(12, 1.5)
    with pytest.raises(DomainError):
        gcd_threshold_count(0, 0.5)
