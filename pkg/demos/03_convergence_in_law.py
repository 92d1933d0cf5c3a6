# %% [markdown]
# # gcd of uniforms converges to a Zeta law
#
# gcd(X, Y) for X, Y uniform on 1..n converges in total variation to Zeta(2).
# The largest a with a^2 | X behaves the same way, and the distance between the
# two finite-n laws goes to zero too.

# %%
from zetalaws.arith import sieve
from zetalaws.convergence import divisibility_profile, tension_certificate, tv_distance
from zetalaws.densities import cesaro_gap, gcd_law_exact, radical_law_exact
from zetalaws.zeta import ZetaLaw

table = sieve(10**4)
zeta2 = ZetaLaw(2.0).truncated_pmf(10**6)
print(f"Zeta(2) tracked on 1..1e6, deficiency {zeta2.deficiency:.2e}")

# %%
for n in (10, 100, 1000, 10**4):
    g = gcd_law_exact(n, 2, table)
    r = radical_law_exact(n, 2, table)
    print(f"n={n:>6}  TV(gcd, Zeta)={tv_distance(g, zeta2):.3e}  "
          f"TV(radical, Zeta)={tv_distance(r, zeta2):.3e}  gap={cesaro_gap(n, 2, table):.3e}")

# %%
# divisibility profile: P(N | gcd) = (floor(n/N)/n)^2, close to N^-2
prof = divisibility_profile(gcd_law_exact(100, 2, table), 5)
print({k: round(v, 4) for k, v in prof.items()})

# %%
# tightness: a few hundred points carry all but 1e-3 of the mass
F = tension_certificate(gcd_law_exact(10**4, 2, table), 1e-3)
print(f"{len(F)} support points, max {max(F)}")
