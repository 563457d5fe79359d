"""
KCBS contextuality in the Fibonacci fusion space
================================================

Five rank-one projectors on Hom(tau, tau^4) form a pentagon of orthogonality.
The symmetric state reaches sqrt(5) while noncontextual models stop at 2.
"""

import numpy as np

from topocontext.contextuality import (
    classical_bound,
    classify_hierarchy,
    kcbs_model,
    kcbs_projectors_fibonacci,
    kcbs_value,
    pentagon_scenario,
    uniform_model,
)

setup = kcbs_projectors_fibonacci()
ps = setup.projectors
print("contexts:", kcbs_model().scenario.contexts)
print("max eigenvalue of sum P_i:", np.linalg.eigvalsh(sum(ps.projectors)).max())

# %%
# The maximizing model against the classical bound, and the LP verdict.

model = kcbs_model()
verdict = classify_hierarchy(model)
print("value", kcbs_value(model), "bound", classical_bound(pentagon_scenario()))
print("class:", verdict.cls, " contextual fraction:", round(verdict.contextual_fraction, 6))
print("consistent global assignments on the support:", verdict.consistent_assignments)

# %%
# The violation is probabilistic only. Noise removes it entirely.

for label, m in [("uniform tables", uniform_model(pentagon_scenario())), ("mixed state", kcbs_model(np.eye(3) / 3))]:
    print(f"{label:15s} value {kcbs_value(m):.4f} class {classify_hierarchy(m).cls}")
