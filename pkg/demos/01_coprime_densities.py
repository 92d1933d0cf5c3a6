# %% [markdown]
# # Coprime pairs and squarefree integers
#
# Draw two integers uniformly from 1..n. How often are they coprime? And how
# often is a single uniform draw squarefree? Both frequencies approach 6/pi^2.

# %%
import math

import numpy as np

from zetalaws.arith import sieve
from zetalaws.densities import coprime_density_exact, mc_coprime_density, mfree_density_exact

table = sieve(10**6)
print(f"6/pi^2 = {6 / math.pi**2:.10f}")

# %%
# exact values via Mobius sums
for n in (10, 100, 10**4, 10**6):
    print(f"n={n:>8}  P_n={coprime_density_exact(n, 2, table):.8f}  Q_n={mfree_density_exact(n, 2, table):.8f}")

# %%
# Monte Carlo check with a binomial error bar
rng = np.random.default_rng(1)
est = mc_coprime_density(10**6, 2, 10**6, rng)
print(f"MC pairs:   {est.value:.5f} +- {est.stderr:.1e}")

# %%
# triples: the limit becomes 1/zeta(3)
print(f"P_n (m=3) at n=1e6: {coprime_density_exact(10**6, 3, table):.8f}")
