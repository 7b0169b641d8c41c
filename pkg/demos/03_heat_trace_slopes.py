# %% [markdown]
# Novikov-Shubin exponents from heat-trace decay
#
# In the band degree the coclosed heat trace decays like t^(-m/2).  We
# evaluate it by Gauss-Hermite quadrature and fit log-log slopes.

# %%
import numpy as np

from l2tor import resolve_space
from l2tor.harness import fit_slope, heat_trace, ns_density, slope_grid

ts = slope_grid(10, 1e4, 50)
for desc, p in [("H^3", 1), ("H^5", 2), ("SO(3,5)", 7), ("SL(3,R)", 2), ("H^3 x H^2", 2)]:
    sp = resolve_space(desc)
    vals = heat_trace(sp, p, ts)
    print(f"{desc:<10} p={p:<2} density {ns_density(sp)!s:<40} slope {fit_slope(ts, vals):.4f}")

# %% [markdown]
# Local slopes approach -1/2 as t grows; the t^(-3/2) correction is what
# separates the fitted slope from the limit on a finite window.

# %%
sp = resolve_space("SL(3,R)")
grid = np.logspace(0, 6, 7)
vals = heat_trace(sp, 2, grid)
local = np.diff(np.log(vals)) / np.diff(np.log(grid))
for t, s in zip(grid[1:], local):
    print(f"t = {t:>9.0f}  local slope {s:.5f}")
