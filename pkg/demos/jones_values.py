"""
Link invariants from braid closures
===================================

The Fibonacci Markov trace, corrected for framing, equals the Jones polynomial
at t = exp(2 pi i / 5). A brute-force Kauffman state sum gives the same
numbers without any category data.
"""

import numpy as np

from topocontext import jones_at_fibonacci_root, kauffman_bracket_oracle, parse_braid_word

links = {
    "unknot": ("", 1),
    "unlink (2)": ("", 2),
    "Hopf link": ("s1 s1", 2),
    "trefoil": ("s1 s1 s1", 2),
    "figure-eight": ("s1 s2^-1 s1 s2^-1", 3),
    "cinquefoil": ("s1 s1 s1 s1 s1", 2),
}
for name, (text, n) in links.items():
    w = parse_braid_word(text, n)
    a, b = jones_at_fibonacci_root(w), kauffman_bracket_oracle(w)
    print(f"{name:13s} {a.real:+.6f} {a.imag:+.6f}i   |diff| = {abs(a - b):.1e}")

# %%
# Markov moves leave the value unchanged.

rng = np.random.default_rng(1)
from topocontext.braid import random_word

w = random_word(3, 8, rng)
u = random_word(3, 5, rng)
print(w, "->", jones_at_fibonacci_root(w))
print("conjugated ->", jones_at_fibonacci_root(u * w * u.inverse()))
print("stabilized ->", jones_at_fibonacci_root(w.stabilize(-1)))
