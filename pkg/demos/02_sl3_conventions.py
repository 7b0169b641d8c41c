# %% [markdown]
# SL(3,R)/SO(3): catalog convention versus the plain construction
#
# The catalog pins two pieces of data for this space: the torsion integrand
# p_0(y) = y^2 and a restricted-root length equal to the root length of sl(3).
# Under the metric "twice the trace form" this gives vol(X^d) = 4 pi^3 and
# T2 = 1/(6 pi^2).  The `generic` switch derives both from the root data
# instead.

# %%
from l2tor import SLnR, format_scalar, resolve
from l2tor.invariants import density_polynomials, dual_volume, q_invariant, t2

pinned = resolve(SLnR(3), "trace2")
plain = resolve(SLnR(3), "trace2", generic=True)

print("pinned density :", density_polynomials(pinned))
print("generic density:", density_polynomials(plain, generic=True))
print("Q pinned / generic:", q_invariant(pinned), "/", q_invariant(plain, generic=True))

# %% [markdown]
# The generic restricted root has squared length 3/4 at this metric, so its
# length sqrt(3)/2 is irrational and the dual volume is rejected rather than
# approximated.

# %%
from l2tor.errors import UnsupportedMetric

print("|alpha0|^2 pinned / generic:", pinned.alpha0_norm_sq, "/", plain.alpha0_norm_sq)
print("vol pinned:", format_scalar(dual_volume(pinned)), " T2 pinned:", format_scalar(t2(pinned)))
try:
    dual_volume(plain)
except UnsupportedMetric as exc:
    print("generic volume:", exc)

# %% [markdown]
# The generic squared length is 3/(2r) at multiplier r, so r = 3/2 makes it
# rational and the generic pipeline runs end to end.

# %%
from fractions import Fraction

plain32 = resolve(SLnR(3), Fraction(3, 2), generic=True)
print("|alpha0|^2 =", plain32.alpha0_norm_sq, " vol =", format_scalar(dual_volume(plain32)))
print("T2 =", format_scalar(t2(plain32, generic=True)))
