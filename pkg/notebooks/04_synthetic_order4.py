"""
Synthetic families over an order 4 character mod 20
===================================================

"""

# %%
from fractions import Fraction

from halfsign import DirichletCharacter
from halfsign.densities import run_synthetic

chi = DirichletCharacter(20, [0, 1])
print(chi, "order", chi.order, "image", [str(z) for z in chi.image])

# %%
# at phi = 0 the fibers i and -i have Re(zeta^nu) = 0: no sign at all there
for nu in (1, 3):
    for phi in (Fraction(0), Fraction(1, 4)):
        rep = run_synthetic(chi, 2, 1, nu, phi, n_primes=10**5, seed=1)
        print(
            f"nu={nu} phi={phi}: zero fibers {[str(z) for z in rep.zero_fibers()]}, "
            f"d(>0)={rep.density(rep.n_pos):.4f} predicted {rep.predicted_pos:.4f}, "
            f"fiber dev {rep.fiber_deviation():.4f}"
        )

# %%
for f in rep.fibers:
    print(f.fiber, f.n_fiber, f.n_pos, f.n_neg, f.rotation_sign)
