"""
Projected resolvent and the pole approximation
==============================================

The lower-level block of the evolution operator is a sum of three residues.
Dropping the one attached to the excited level and freezing the displacement
operator at z = 0 gives back the rough effective Hamiltonian.
"""

import numpy as np

from lambdaelim import REFERENCE_PARAMS, exact_propagator, green_effective, residues, rough_effective
from lambdaelim.resolvent import ProjectedResolvent, pole_approx_resolvent

m = ProjectedResolvent(REFERENCE_PARAMS)
print("det M(Delta x) (x - 1) / Delta^2 coefficients:", m.det_polynomial())

#%%
r = residues(REFERENCE_PARAMS, 0.0)
print("poles:", r.poles)
print("sum of residues at t = 0:\n", np.round(r.total(), 14))
print("largest entry of the excited-pole residue:", np.abs(r[2]).max())

#%%
# The full residue sum is the exact propagator block.
for t in (1.0, 10.0, 100.0):
    rt = residues(REFERENCE_PARAMS, t).total()
    print(f"Delta t = {t:5.0f}: |sum R_k - U_P| = {np.abs(rt - exact_propagator(REFERENCE_PARAMS, t)[:2, :2]).max():.1e}")

#%%
print("green(E0=0) - rough:", np.abs(green_effective(REFERENCE_PARAMS).matrix - rough_effective(REFERENCE_PARAMS).matrix).max())
print("pole-approximation poles:", pole_approx_resolvent(REFERENCE_PARAMS).poles())
print("exact lower poles:       ", np.sort(r.poles[:2]))
