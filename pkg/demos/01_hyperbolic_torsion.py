# %% [markdown]
# L2-torsion of odd-dimensional hyperbolic space
#
# For H^n with n odd the fundamental rank is 1, so all L2-Betti numbers vanish
# and the torsion T2 is the only nonzero invariant.  It factors as
# sign * pi * Q_n / vol(S^n) with Q_n a positive rational.

# %%
from l2tor import Hn, dual_volume, format_scalar, q_invariant, resolve, t2

for n in range(3, 16, 2):
    sd = resolve(Hn(n))
    print(f"H^{n:<3} Q = {str(q_invariant(sd)):<22} vol(S^{n}) = {format_scalar(dual_volume(sd)):<18} T2 = {format_scalar(t2(sd))}")

# %% [markdown]
# The decimal values alternate in sign and grow slowly.

# %%
for n in range(3, 16, 2):
    print(f"H^{n:<3}", format_scalar(t2(resolve(Hn(n))), "decimal", 10))

# %% [markdown]
# Q_n is an alternating sum of integrals of the densities p_l.  Each signed
# term is positive, which is what forces the sign of T2.

# %%
from l2tor.invariants import density_polynomials, q_terms

sd = resolve(Hn(7))
for l, p in enumerate(density_polynomials(sd)):
    print(f"p_{l}(y) = {p}")
print("signed terms:", [str(x) for x in q_terms(sd)])
