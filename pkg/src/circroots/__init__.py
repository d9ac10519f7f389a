"""circroots: random circulant spectra and random polynomial root localization.

A numpy-based library for desk-scale, fully reproducible experiments on the
spectral floor of random circulant matrices and the clustering of random
polynomial roots around the unit circle, plus the lattice/number-theoretic
quantities those experiments consume.
"""

__version__ = "0.1.0"

from .coeff_dist import (CoeffDistribution, MgfEstimate, empirical_mgf,
                         exp_tail_fit, laplace, local_subgaussian_gamma, mgf,
                         parse_dist, rademacher, sample, standard_gaussian,
                         uniform_sym)
from .circulant import (Circulant, GCirculant, SpectralSummary, circ_matvec,
                        dense_eig_oracle, dense_svd_oracle, densify,
                        eigenvalues, extreme_singular_values, gcirc_spectral,
                        q_factor)
from .dft import dft_forward, dft_inverse, fourier_matrix
from .lcd import (LcdCertificate, VkMatrix, dist_to_lattice, divisor_count,
                  gcd_class_counts, gcd_threshold_count, lcd_search, totient,
                  vk, vk_apply)
from .montecarlo import (ExperimentConfig, ExperimentResult, TailEstimate,
                         char_fn_product, run_annulus_inf, run_char_fn,
                         run_experiment, run_root_stats, run_salem_zygmund,
                         run_second_deriv, run_small_ball, run_sn_tail_eps,
                         run_sn_tail_rho, scaling_fit, wilson_interval)
from .polynomial import (RandomPoly, WeightFn, annulus_min_modulus, build_poly,
                         constant_weight, eval_derivatives, eval_poly,
                         holder_norm, linear_weight, parse_weight,
                         power_weight, sup_norm_certified, trig_eval)
from .rng import RngState, mix, mix64
from .roots import (AnnulusStats, RootSet, annulus_stats, default_widths,
                    find_roots, ks_uniform)

__all__ = [name for name in dir() if not name.startswith("_")]
