# %% [markdown]
# # Coprime Gaussian integers
#
# Pick two associate classes uniformly among those of norm <= n^2. The chance
# their gcd is a unit tends to 1/(zeta(2) beta(2)).

# %%
from zetalaws.gauss import (GaussInt, ball_class_array, canonicalize, gauss_coprime_experiment, gauss_gcd,
                            zeta_prime_normalizer)
from zetalaws.streams import worker_stream

print(gauss_gcd(5, GaussInt(1, 2)), gauss_gcd(3, 7), canonicalize(GaussInt(-3, -1)))

# %%
target = 1 / zeta_prime_normalizer(2.0)
print(f"limit 1/(zeta(2) beta(2)) = {target:.6f}")
for n in (10, 100, 1000):
    e = gauss_coprime_experiment(n, 10**6, worker_stream(7, 0))
    print(f"n={n:>5}  classes={len(ball_class_array(n)):>7}  unit gcd {e.unit.value:.4f} +- {e.unit.stderr:.1e}")

# %%
# small divisors: P(z | gcd) is close to N(z)^-2
for z, est in e.profile.items():
    print(f"{z!s:>5}  {est.value:.5f}  vs {z.norm() ** -2:.5f}")
