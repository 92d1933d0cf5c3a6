# %% [markdown]
# # Euler products
#
# The product of (1 - p^-s) over primes is 1/zeta(s). Truncating at a prime
# limit gives an error that shrinks roughly like limit^(1-s).

# %%
from zetalaws.arith import CHI4, MOBIUS, ONE, sieve
from zetalaws.zeta import (dirichlet_beta, dirichlet_series, euler_product_inv_zeta,
                           euler_product_multiplicative, zeta_value)

for limit in (10**2, 10**4, 10**6):
    table = sieve(limit)
    prod = euler_product_inv_zeta(2.0, table)
    print(f"primes <= {limit:>7}: product = {prod:.10f}, product*zeta(2) - 1 = {prod * zeta_value(2.0) - 1:+.2e}")

# %%
# multiplicative functions: the product over primes against the direct series
table = sieve(10**6)
for spec in (ONE, MOBIUS, CHI4):
    e = euler_product_multiplicative(spec, 2.0, table)
    d = dirichlet_series(spec, 2.0, table)
    print(f"{spec.name:>7}: euler {e:.10f}  series {d:.10f}")

print(f"beta(2) (Catalan) = {dirichlet_beta(2.0):.10f}")
