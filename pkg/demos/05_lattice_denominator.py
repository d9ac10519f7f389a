"""Anti-concentration geometry: cosine frames and the integer lattice.

The 2 x n matrix V_k with columns (cos(2 pi kj/n), sin(2 pi kj/n)) sends a
planar vector theta to the n real/imaginary samples of the k-th circulant
eigenvalue.  Anti-concentration of that eigenvalue is controlled by how far
V_k^T theta stays from the integer lattice as ||theta|| grows: the first
radius where it sneaks close is the least common denominator.  This script
scans for it, and exercises the exact gcd/totient counting that splits the
frequencies by their common factor with n.
"""

from circroots import (dist_to_lattice, gcd_class_counts,
                       gcd_threshold_count, lcd_search, totient, vk, vk_apply)
from circroots.circulant import Circulant, eigenvalues
from circroots.montecarlo import trial_seed_block, xi_rows
from circroots.coeff_dist import parse_dist

import numpy as np

# V_k reproduces the eigenvalue coordinates --------------------------------------
n, k = 31, 1
x = xi_rows(parse_dist("rademacher"), trial_seed_block(4, n, 0, 1), n)[0]
lam = eigenvalues(Circulant(x))[k]
re, im = vk_apply(vk(n, k), x)
print(f"V_k X vs eigenvalue {k}: gap {abs(complex(re, im) - lam):.2e}")

# scan for the least denominator ---------------------------------------------------
for m in (31, 61):
    cert = lcd_search(vk(m, 1), L=2.0, t_min=0.5, t_max=0.1 * m,
                      n_t=512, n_alpha=1024)
    hit = "none (clean up to t_max)" if cert.certified_lower_bound == cert.t_range[1] \
        else f"{cert.certified_lower_bound:.3f}"
    print(f"n={m}: first lattice-close radius on the grid: {hit} "
          f"(min dist/threshold ratio {cert.min_ratio:.3f})")
print("below ||theta|| = 1/2 no violation is possible: every coordinate of"
      "\nV^T theta is under 1/2, so its lattice distance is its own norm.")

# exact frequency bookkeeping -------------------------------------------------------
print("\ngcd classes of n=12:", gcd_class_counts(12))
print("totient sums back to n:", sum(totient(12 // d) for d in (1, 2, 3, 4, 6, 12)))
exact, bound = gcd_threshold_count(360, 0.5)
print(f"frequencies sharing a factor > 360^0.5 with 360: {exact} "
      f"(divisor-sum bound {bound})")
