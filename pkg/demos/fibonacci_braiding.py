"""
Braiding Fibonacci anyons
=========================

Three tau anyons with total charge tau span a two-dimensional fusion space.
Exchanging the first pair is diagonal in the left-comb basis; exchanging the
second pair needs an F-move first.
"""

import numpy as np

from topocontext import build_rep, enumerate_basis, fibonacci_category, parse_braid_word, apply_word

fib = fibonacci_category()
basis = enumerate_basis(fib, ["tau"] * 3, "tau")
print("\n".join(basis.describe()))

# %%
# The two generators. The first is diag(R^{tau tau}_1, R^{tau tau}_tau).

rep = build_rep(fib, ["tau"] * 3, "tau")
np.set_printoptions(precision=4, suppress=True)
for i, g in enumerate(rep.generators, start=1):
    print(f"rho(s{i}) =\n{g}")

# %%
# Yang-Baxter holds, and a word times its inverse is the identity.

s1, s2 = rep.generators
print("YB residual:", np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2).max())
w = parse_braid_word("s1 s2^-1 s1 s1 s2", 3)
print("w w^-1 residual:", np.abs(apply_word(rep, w * w.inverse()) - np.eye(2)).max())

# %%
# Growing the system: the fusion-space dimension follows the Fibonacci numbers.

from topocontext import dimension

print([dimension(fib, ["tau"] * n, "1") for n in range(2, 13)])
