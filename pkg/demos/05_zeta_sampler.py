# %% [markdown]
# # Sampling a Zeta law
#
# Two routes to the same law: Devroye's rejection sampler, and assembling X from
# independent geometric prime exponents.

# %%
import numpy as np

from zetalaws.convergence import empirical_pmf, tv_distance
from zetalaws.zeta import ZetaLaw, divisibility_prob, sample, sample_valuations_batch

law = ZetaLaw(2.0)
rng = np.random.default_rng(3)
x = sample(law, rng, 10**6)
print(f"P(X=1) ~ {(x == 1).mean():.4f}   exact {1 / law.zeta_s:.4f}")
for d in (2, 3, 6):
    print(f"P({d} | X) ~ {(x % d == 0).mean():.4f}   exact {divisibility_prob(law, d):.4f}")

# %%
values, overflow = sample_valuations_batch(law, 10**4, 10**5, rng)
print(f"overflowed draws: {overflow.sum()}")
exact = law.truncated_pmf(10**6)
print(f"TV(rejection, exact)  {tv_distance(empirical_pmf(x), exact):.4f}")
print(f"TV(valuations, exact) {tv_distance(empirical_pmf(values[~overflow]), exact):.4f}")

# %%
# near s = 1 the tail is enormous
big = sample(ZetaLaw(1.01), rng, 5)
print(big)
