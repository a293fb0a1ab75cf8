"""
Checking orders in eps
======================

Halve eps (scale delta and both Rabi frequencies, keep Delta) and watch the
residuals shrink.
"""

import numpy as np

from lambdaelim import REFERENCE_INITIAL, REFERENCE_PARAMS, LambdaParams
from lambdaelim.analysis import expansion_study, scaling_study

fit = scaling_study(REFERENCE_PARAMS, (1, 0.5, 0.25), "rough")
print("rough vs exact:", fit.errors, "slope", round(fit.slope, 2))

bad = scaling_study(REFERENCE_PARAMS, (1, 0.5, 0.25), "shifted", eta=3.0)
print("eta = 3 vs exact:", bad.errors, "slope", round(bad.slope, 2))

#%%
# Leading-order expansions of roots and mode amplitudes, both branches.
for params in (REFERENCE_PARAMS, LambdaParams(0.0, 1.0, 0.1 * np.exp(-1j * np.pi / 3), -0.1j)):
    study = expansion_study(params, REFERENCE_INITIAL)
    print(study.branch, "passed" if study.passed else "FAILED")
    for q, (order, res, rt) in study.rows.items():
        ratios = "exact" if rt is None else np.round(rt.ratios, 2)
        print(f"  {q}: {res[0]:.2e} -> {res[-1]:.2e}  ratios {ratios}")
