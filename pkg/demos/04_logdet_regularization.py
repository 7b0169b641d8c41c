# %% [markdown]
# Regularized log-determinants of Gaussian heat kernels
#
# For k(t) = exp(-c^2 t) * int exp(-t y^2) P(iy) dy the zeta-regularized value
# equals -2 pi * int_0^c P.  The small-t half is continued term by term with
# incomplete gamma functions; the large-t half is computed by quadrature.

# %%
from l2tor import Polynomial
from l2tor.harness import logdet_identity_check

for coeffs, c in [([1], 1), ([0, 0, 1], 1), ([1, 0, -1], 2), ([0, 0, -1, 0, 1], 3)]:
    r = logdet_identity_check(Polynomial(coeffs), c)
    print(f"P = {Polynomial(coeffs)!s:<32} c = {c}  value {r.value:+.12f}  residual {r.residual:.1e}")

# %% [markdown]
# A single Gauss-Legendre panel on the large-t half shows the convergence in
# the node count.

# %%
for q in (16, 24, 32, 48, 64):
    r = logdet_identity_check(Polynomial([0, 0, 1]), 1, q, adaptive=False)
    print(f"{q:>3} nodes  residual {r.residual:.2e}")
