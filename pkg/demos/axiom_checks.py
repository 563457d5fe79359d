"""
Checking category data
======================

Pentagon, hexagon, ribbon, F-unitarity and modularity residuals for every
built-in category, followed by a deliberately corrupted Fibonacci file.
"""

from pathlib import Path

from topocontext import builtin, verify_all
from topocontext.io import load_category

for name in ["fibonacci", "ising", "su2k:2", "su2k:3", "su2k:4", "su2k:6"]:
    reports = verify_all(builtin(name))
    print(f"{name:10s}", "  ".join(f"{r.name}={'ok' if r.passed else 'FAIL'}" for r in reports))

# %%
# One flipped sign in F^{tau tau tau}_tau breaks both pentagon and hexagon.

broken = load_category(Path(__file__).resolve().parents[1] / "src/topocontext/data/broken.json")
for r in verify_all(broken):
    print(r)
