"""
Sato-Tate angles: Delta against the sampler
===========================================

"""

# %%
import math

import numpy as np

from halfsign import catalog_form, sieve
from halfsign.satotate import form_angles, interval_union, ks_distance, sample_angles, st_cdf

A = form_angles(catalog_form("delta", 100001), sieve(10**5))
print(A.stats()["n"], "angles, K-S", round(A.stats()["ks"], 4))

# a crude text histogram against the density (2/pi) sin^2
edges = np.linspace(0, math.pi, 11)
counts, _ = np.histogram(A.theta, edges)
expect = np.diff(st_cdf(edges)) * len(A.theta)
for a, c, e in zip(edges, counts, expect):
    print(f"{a:5.2f}  {c:5d}  {e:7.1f}  " + "#" * int(40 * c / counts.max()))

# %%
# the sampler is counter based: the angle drawn for a key never depends on the batch
for seed in (1, 2, 3):
    print(seed, round(ks_distance(sample_angles(seed, np.arange(10**5))), 4))

# %%
# I_0 and I'_0 each carry half the mass for every odd nu
for nu in (1, 3, 5, 21):
    U = interval_union(nu)
    print(nu, len(U), U.measure(), interval_union(nu, 0.0, "I'").measure())
