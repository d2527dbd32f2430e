"""
Signs of a(p^2) for the weight 13/2 preimage of Delta
=====================================================

"""

# %%
from fractions import Fraction

from halfsign import DirichletCharacter, LiftContext, build_family, catalog_form, sieve
from halfsign.densities import fiber_densities, oscillation_report
from halfsign.shimura import specialize_prime_power

F = catalog_form("delta", 100001)
ctx = LiftContext(F, DirichletCharacter(4, [0]), t=1)

# a(9) = tau(3) - 3^5 = 9
v = specialize_prime_power(ctx, 1, 3)
print(v.value, v.normalized, v.normalized_float_path)

# %%
P = sieve(10**5)
fam = build_family(ctx, 1, P)
rep = fiber_densities(fam, Fraction(0))
print(f"pi(x)={rep.pi_x}  excluded={rep.excluded}")
print(f"d(>0)={rep.density(rep.n_pos):.4f}  d(<0)={rep.density(rep.n_neg):.4f}")

# %%
# sign changes along ascending p, at a quarter, half and all of x
for row in oscillation_report(fam, [0])[0]["checkpoints"]:
    print(row)

# %%
# nu = 3 needs p^3 inside the table, so only p < 47 survive
fam3 = build_family(ctx, 3, P)
print(len(fam3), "primes;", list(zip(fam3.primes.tolist(), fam3.signs.tolist()))[:10])
