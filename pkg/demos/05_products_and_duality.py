# %% [markdown]
# Products and the SO(p,q) family
#
# A product has nonzero torsion only if exactly one factor has fundamental
# rank one.  The flat factors then rescale it by their Euler characteristic
# over volume, with a sign.

# %%
from l2tor import format_scalar, full_report

for desc in ["H^3", "H^3 x H^2", "H^3 x H^2 x H^2", "H^3 x SO(2,4)", "H^3 x H^3"]:
    r = full_report(desc)
    print(f"{desc:<18} m = {r.m}  T2 = {format_scalar(r.T2)}")

# %% [markdown]
# For p, q odd the torsion of SO(p,q) carries the same Q as H^(p+q-1), while
# its M-dual contributes an Euler characteristic 2 * C((p+q-2)/2, (p-1)/2).

# %%
from l2tor import Hn, SOpq, q_invariant, resolve

for p, q in [(1, 5), (3, 3), (3, 5), (5, 5), (3, 9)]:
    sd = resolve(SOpq(p, q))
    print(f"SO({p},{q}): Q = {q_invariant(sd)} (H^{p + q - 1}: {q_invariant(resolve(Hn(p + q - 1)))}), chi_M = {sd.chi_dual_M}")
