"""How small does a random polynomial get near the unit circle?

The estimator scans the circle at spacing eps/n^2 and pushes the values into
the surrounding annulus with a two-term Taylor budget, producing a pathwise
LOWER bound for the annulus infimum.  We sanity-check it against brute-force
random sampling, then estimate the probability that the infimum dips below
eps/sqrt(n).
"""

import os

import numpy as np

from circroots import (ExperimentConfig, annulus_min_modulus, build_poly,
                       eval_poly, standard_gaussian)
from circroots.montecarlo import run_annulus_inf
from circroots.polynomial import constant_weight

# estimator vs sampled infimum on one draw --------------------------------------
n, eps = 64, 0.5
poly = build_poly(standard_gaussian(), constant_weight(), n, seed=2)
est = annulus_min_modulus(poly, eps, n)

rng = np.random.default_rng(0)
radii = 1.0 + (2.0 * rng.random(200_000) - 1.0) * eps / n ** 2
angles = 2.0 * np.pi * rng.random(200_000)
sampled = np.abs(eval_poly(poly, radii * np.exp(1j * angles))).min()
print(f"n={n}, eps={eps}: estimator {est:.5f} <= sampled infimum {sampled:.5f}")
print("(the estimator is a certificate: it can undershoot, never overshoot)")

# tail of the infimum event ------------------------------------------------------
cfg = ExperimentConfig("AnnulusInf", "gaussian", "const", (64,),
                       (0.25, 0.5, 1.0), 1000, 9, 1)
print("\nPr(annulus infimum estimate < eps n^-1/2), gaussian n=64, 1000 trials:")
for e in run_annulus_inf(cfg):
    print(f"  eps={e.param:4.2f}: p_hat={e.p_hat:.3f} "
          f"[{e.ci_lo:.3f}, {e.ci_hi:.3f}]   p_hat/eps={e.p_hat / e.param:.3f}")
print("shared per-trial seeds couple the three columns: the event set for a"
      "\nsmaller eps is contained in the event set for a larger one, exactly.")
