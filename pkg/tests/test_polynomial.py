import math

import numpy as np
import pytest

from circroots.coeff_dist import rademacher, standard_gaussian
from circroots.dft import dft_forward
from circroots.errors import CertificationError, DomainError, ResolutionError
from circroots.polynomial import (RandomPoly, annulus_min_modulus, build_poly,
                                  circle_values, constant_weight,
                                  eval_derivatives, eval_poly, holder_norm,
                                  linear_weight, parse_weight, power_weight,
                                  second_deriv_majorant, sup_norm_certified,
                                  trig_eval)


def as_poly(coeffs):
    c = np.asarray(coeffs, dtype=float)
    return RandomPoly(c.size, c, "fixed", "const", 0)


# -- weights ------------------------------------------------------------------

@pytest.mark.parametrize("phi", [constant_weight(), linear_weight(),
                                 power_weight(0.6), power_weight(0.9)],
                         ids=["const", "linear", "pow06", "pow09"])
def test_weight_normalized_to_unit_holder_norm(phi):
    assert holder_norm(phi, phi.holder_order) == pytest.approx(1.0, abs=1e-6)


def test_weight_values():
    assert constant_weight()(0.3) == 1.0          # norm of the constant 1 is already 1
    assert linear_weight()(1.0) == pytest.approx(0.5)
    assert power_weight(0.6)(0.0) == 0.0


def test_parse_weight():
    assert parse_weight("const").kind == "const"
    assert parse_weight("linear").kind == "linear"
    w = parse_weight("power:sigma=0.6")
    assert w.kind == "power" and w.holder_order == 0.6
    with pytest.raises(DomainError):
        parse_weight("cubic")
    with pytest.raises(DomainError):
        power_weight(0.4)


# -- construction and evaluation ----------------------------------------------

def test_build_poly_rademacher_support():
    p = build_poly(rademacher(), constant_weight(), 16, seed=3)
    assert set(np.unique(p.coeffs)) <= {-1.0, 1.0}


def test_build_poly_power_weight_kills_constant_term():
    p = build_poly(rademacher(), power_weight(0.6), 8, seed=3)
    assert p.coeffs[0] == 0.0


def test_build_poly_deterministic():
    a = build_poly(standard_gaussian(), linear_weight(), 32, seed=9)
    b = build_poly(standard_gaussian(), linear_weight(), 32, seed=9)
    assert np.array_equal(a.coeffs, b.coeffs)


def test_eval_examples():
    assert eval_poly(as_poly([1.0, 0.0, 1.0]), 1j) == pytest.approx(0.0, abs=1e-15)
    assert eval_poly(as_poly(np.ones(8)), 1.0) == pytest.approx(8.0)


def test_eval_matches_dft_at_roots_of_unity():
    p = build_poly(standard_gaussian(), constant_weight(), 24, seed=5)
    lam = dft_forward(p.coeffs)
    z = np.exp(2j * np.pi * np.arange(24) / 24)
    vals = eval_poly(p, z)
    assert np.max(np.abs(vals - lam)) < 1e-10 * np.abs(lam).max()


def test_eval_derivatives_monomial():
    vals = eval_derivatives(as_poly([0.0, 0.0, 1.0]), 3.0, 2)
    assert vals == [pytest.approx(9.0), pytest.approx(6.0), pytest.approx(2.0)]


def test_eval_derivatives_constant():
    vals = eval_derivatives(as_poly([4.0, 0.0]), 2.0 + 1j, 2)
    assert vals[0] == pytest.approx(4.0)
    assert vals[1] == 0.0 and vals[2] == 0.0


def test_eval_derivatives_finite_difference():
    p = build_poly(standard_gaussian(), constant_weight(), 20, seed=8)
    z = 0.9 * np.exp(0.7j)
    d1 = eval_derivatives(p, z, 1)[1]
    h = 1e-6
    fd = (eval_poly(p, z + h) - eval_poly(p, z - h)) / (2 * h)
    assert abs(d1 - fd) < 1e-5 * (1.0 + abs(d1))


def test_eval_derivatives_order_validation():
    with pytest.raises(DomainError):
        eval_derivatives(as_poly([1.0, 1.0]), 0.0, 3)


def test_trig_eval_identities():
    p = build_poly(rademacher(), constant_weight(), 12, seed=2)
    assert trig_eval(p, 0.0) == pytest.approx(p.coeffs.sum())
    q = as_poly(np.ones(4))
    assert trig_eval(q, math.pi) == pytest.approx(0.0, abs=1e-14)
    for x in (0.3, 2.2, 5.9):
        lhs = trig_eval(p, x)
        rhs = eval_poly(p, np.exp(1j * x))
        assert abs(lhs - rhs) <= 1e-12 * np.abs(p.coeffs).sum()


def test_circle_values_matches_direct_eval():
    p = build_poly(standard_gaussian(), linear_weight(), 20, seed=4)
    for m in (20, 60, 150):   # same length, multiple, and zero-pad paths
        vals = circle_values(p.coeffs, m)
        xs = 2 * np.pi * np.arange(m) / m
        direct = eval_poly(p, np.exp(1j * xs))
        assert np.max(np.abs(vals - direct)) < 1e-10


# -- certified sup norm ---------------------------------------------------------

def test_sup_norm_constant_poly():
    p = as_poly([3.0, 0.0])
    lower, upper = sup_norm_certified(p, 64)
    assert lower == pytest.approx(3.0, abs=1e-12)
    assert lower == pytest.approx(upper * (1 - 2 * np.pi * p.n / 64), abs=1e-9)
    assert lower <= 3.0 <= upper


def test_sup_norm_top_monomial():
    c = np.zeros(8)
    c[-1] = 1.0
    lower, upper = sup_norm_certified(as_poly(c), 64)
    assert lower <= 1.0 + 1e-12 and 1.0 <= upper
    assert lower == pytest.approx(1.0, abs=1e-12)


def test_sup_norm_bracket_contains_fine_grid_max():
    p = build_poly(rademacher(), constant_weight(), 64, seed=13)
    lower, upper = sup_norm_certified(p, 1 << 12)
    assert (upper - lower) <= 0.12 * lower
    brute = np.abs(circle_values(p.coeffs, 1 << 16)).max()
    assert lower <= brute <= upper


def test_sup_norm_monotone_in_grid():
    p = build_poly(standard_gaussian(), constant_weight(), 32, seed=6)
    lo1, up1 = sup_norm_certified(p, 512)
    lo2, up2 = sup_norm_certified(p, 1024)
    assert lo2 >= lo1 - 1e-12
    assert up2 <= up1 + 1e-12


def test_sup_norm_grid_too_small():
    p = build_poly(rademacher(), constant_weight(), 64, seed=1)
    with pytest.raises(CertificationError):
        sup_norm_certified(p, 8 * 64 - 1)


# -- annulus minimum modulus ----------------------------------------------------

def test_annulus_constant_poly():
    p = as_poly([1.0, 0.0])
    # second-derivative majorant vanishes, so the estimate is exactly 1
    assert annulus_min_modulus(p, 0.5, 2) == pytest.approx(1.0, abs=1e-12)


def test_annulus_top_monomial_brackets_infimum():
    n, eps = 16, 0.5
    c = np.zeros(n)
    c[-1] = 1.0
    p = as_poly(c)
    est = annulus_min_modulus(p, eps, n)
    exact_inf = (1.0 - eps / n ** 2) ** (n - 1)
    # |t| = 1 and |t'| = n-1 on the circle, so the estimate equals
    # 1 - 2 eps n^-2 (n-1) - R; it must lower-bound the true infimum
    r = 2.0 * (eps / n ** 2) ** 2 * second_deriv_majorant(c, n)
    assert est == pytest.approx(1.0 - 2 * eps / n ** 2 * (n - 1) - r, abs=1e-12)
    assert est <= exact_inf


def test_annulus_lower_bounds_sampled_infimum():
    n, eps = 32, 0.5
    p = build_poly(standard_gaussian(), constant_weight(), n, seed=21)
    est = annulus_min_modulus(p, eps, n)
    rng = np.random.default_rng(99)
    radii = 1.0 + (2.0 * rng.random(10 ** 6) - 1.0) * eps / n ** 2
    angles = 2.0 * np.pi * rng.random(10 ** 6)
    sampled = np.abs(eval_poly(p, radii * np.exp(1j * angles))).min()
    assert est <= sampled
    # derivable bracket: the estimator gives away at most the first-order
    # grid budget plus twice the Taylor remainder
    from circroots.polynomial import annulus_grid_points, circle_abs_val_deriv
    m = annulus_grid_points(n, eps)
    _, abs_tp = circle_abs_val_deriv(p.coeffs, m)
    r = 2.0 * (eps / n ** 2) ** 2 * second_deriv_majorant(p.coeffs, n)
    slack = 2.0 * (2.0 * eps / n ** 2) * abs_tp.max() + 2.0 * r
    assert sampled - est <= slack


def test_annulus_nonincreasing_in_eps():
    n = 24
    p = build_poly(rademacher(), constant_weight(), n, seed=17)
    eps_grid = [0.25, 0.5, 1.0, 2.0]
    ests = [annulus_min_modulus(p, e, n) for e in eps_grid]
    for (e1, v1), (e2, v2) in zip(zip(eps_grid, ests), zip(eps_grid[1:], ests[1:])):
        r1 = 2.0 * (e1 / n ** 2) ** 2 * second_deriv_majorant(p.coeffs, n)
        r2 = 2.0 * (e2 / n ** 2) ** 2 * second_deriv_majorant(p.coeffs, n)
        assert v2 <= v1 + r1 + r2


def test_annulus_argument_validation():
    p = as_poly([1.0, 1.0])
    with pytest.raises(DomainError):
        annulus_min_modulus(p, -1.0, 2)
    with pytest.raises(DomainError):
        annulus_min_modulus(p, 0.5, 3)
    big = RandomPoly(1024, np.ones(1024), "fixed", "const", 0)
    with pytest.raises(ResolutionError):
        annulus_min_modulus(big, 0.25, 1024)
