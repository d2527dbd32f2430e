"""
Eta quotients and their Hecke structure
=======================================

"""

# %%
import time

from halfsign import catalog_form, verify_hecke
from halfsign.qseries import EtaQuotient, expand_eta_quotient

# Delta = eta(z)^24, weight 12
t0 = time.perf_counter()
delta = catalog_form("delta", 100001)
print("tau(n), n=1..10:", delta.coeffs[1:11])
print(f"100001 terms in {time.perf_counter() - t0:.2f}s, tau(10^5) has {len(str(abs(delta.A(100000))))} digits")

# %%
# 11a is eta(z)^2 eta(11z)^2; the q^1 shift is implicit in the leading exponent
eq = EtaQuotient(((1, 2), (11, 2)))
print("weight", eq.weight, "leading exponent", eq.leading_exponent)
print(expand_eta_quotient(eq, 20).coeffs)

# %%
# multiplicativity and the prime-power recursion, in exact integers
for label in ("delta", "11a", "5a"):
    print(verify_hecke(catalog_form(label, 10001)))
