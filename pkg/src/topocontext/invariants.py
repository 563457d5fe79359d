"""Link invariants of braid closures.

Two independent routes to the same number:

* :func:`jones_at_fibonacci_root` -- quantum (Markov) trace of the Fibonacci
  braid representation with a framing correction by the twist of ``tau``;
* :func:`kauffman_bracket_oracle` -- a brute-force Kauffman state sum over all
  smoothings of the closed braid diagram.

Variable convention: ``t = A**-4``. A positive letter ``s_i`` contributes
``A`` to its cup-cap smoothing and ``A**-1`` to the identity smoothing, and the
normalized value is ``(-A**3)**writhe * <L> / <O>``. With this choice the
closure of ``s1^3`` evaluates to ``-t^-4 + t^-3 + t^-1``. At ``A = exp(2 pi i/5)``
(``t = exp(2 pi i/5)``, loop value ``phi``) it agrees with the Fibonacci trace
on every link, including the sign-sensitive multi-component ones.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from functools import lru_cache
from typing import Sequence

import numpy as np

from .braid import BraidWord, apply_word, build_rep
from .category import CategoryData, CategoryError, global_dimension, quantum_dimensions
from .fusion import dimension
from .models import fibonacci_category

__all__ = [
    "FIBONACCI_A",
    "FIBONACCI_T",
    "ORACLE_MAX_CROSSINGS",
    "markov_trace",
    "link_invariant",
    "jones_at_fibonacci_root",
    "kauffman_bracket_oracle",
    "bracket_state_counts",
]

FIBONACCI_A = cmath.exp(2j * math.pi / 5)
FIBONACCI_T = FIBONACCI_A**-4
ORACLE_MAX_CROSSINGS = 20


@lru_cache(maxsize=256)
def _sector_reps(cat: CategoryData, leaf: int, n: int):
    out = []
    for c in range(cat.n_labels):
        if dimension(cat, [leaf] * n, c):
            out.append((c, build_rep(cat, [leaf] * n, c)))
    return tuple(out)


def _leaf(cat: CategoryData, leaves: int | str | Sequence[int | str], n: int) -> int:
    if isinstance(leaves, (str, int, np.integer)):
        return cat.index(leaves)
    ids = {cat.index(x) for x in leaves}
    if len(ids) != 1:
        raise CategoryError("inhomogeneous leaves unsupported")
    if len(leaves) != n:
        raise CategoryError(f"{len(leaves)} leaves for a braid on {n} strands")
    return ids.pop()


def markov_trace(
    cat: CategoryData, leaves: int | str | Sequence[int | str], w: BraidWord, normalize: bool = True
) -> complex:
    """Quantum trace ``sum_c d_c tr(rho_c(w)) / D`` over total charges ``c``.

    ``D = sum_a d_a^2``. With ``normalize`` the result is divided by the value
    of the one-strand unknot, ``d_leaf / D``. No framing correction is applied.
    """
    leaf = _leaf(cat, leaves, w.n_strands)
    d = quantum_dimensions(cat)
    D = global_dimension(cat)
    if w.n_strands == 1:
        raw = d[leaf] / D
    else:
        sectors = _sector_reps(cat, leaf, w.n_strands)
        if not sectors:
            raise CategoryError("zero-dimensional total space")
        raw = sum(d[c] * np.trace(apply_word(rep, w)) for c, rep in sectors) / D
    return complex(raw / (d[leaf] / D) if normalize else raw)


def link_invariant(cat: CategoryData, leaf: int | str, w: BraidWord) -> complex:
    """Unknot-normalized Markov trace with the framing removed: ``theta_leaf^-writhe``."""
    x = cat.index(leaf)
    return complex(cat.twists[x] ** (-w.writhe) * markov_trace(cat, x, w))


def jones_at_fibonacci_root(w: BraidWord) -> complex:
    """Jones polynomial of the closure of ``w`` at ``t = exp(2 pi i / 5)`` via Fibonacci anyons."""
    return link_invariant(fibonacci_category(), "tau", w)


class _DisjointSets:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def bracket_state_counts(w: BraidWord) -> Counter:
    """Histogram of ``(A-exponent, loop count)`` over all ``2**len(w)`` smoothings.

    Segments are the strand pieces between consecutive letters; the closure
    glues the top of each strand to its bottom.
    """
    n, m = w.n_strands, len(w)
    if m > ORACLE_MAX_CROSSINGS:
        raise ValueError(f"oracle limit exceeded: {m} crossings > {ORACLE_MAX_CROSSINGS}")
    counts: Counter = Counter()
    seg = lambda k, q: k * n + q  # noqa: E731
    for state in range(1 << m):
        ds = _DisjointSets((m + 1) * n)
        expo = 0
        for k, (i, e) in enumerate(w.letters):
            p = i - 1
            for q in range(n):
                if q != p and q != p + 1:
                    ds.union(seg(k, q), seg(k + 1, q))
            cupcap = (state >> k) & 1
            expo += e if cupcap else -e
            if cupcap:
                ds.union(seg(k, p), seg(k, p + 1))
                ds.union(seg(k + 1, p), seg(k + 1, p + 1))
            else:
                ds.union(seg(k, p), seg(k + 1, p))
                ds.union(seg(k, p + 1), seg(k + 1, p + 1))
        for q in range(n):
            ds.union(seg(m, q), seg(0, q))
        loops = len({ds.find(seg(k, q)) for k in range(m + 1) for q in range(n)})
        counts[(expo, loops)] += 1
    return counts


def kauffman_bracket_oracle(w: BraidWord, variable: complex = FIBONACCI_A) -> complex:
    """Jones value of the closure of ``w`` at ``t = variable**-4`` from the bracket state sum.

    The state sum is accumulated as exact integer counts and evaluated in a
    fixed order, so the result does not depend on enumeration order.
    """
    A = complex(variable)
    delta = -(A**2) - A**-2
    total = 0j
    for (expo, loops), count in sorted(bracket_state_counts(w).items()):
        total += count * A**expo * delta ** (loops - 1)
    return complex((-(A**3)) ** w.writhe * total)
