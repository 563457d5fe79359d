"""
Contexts generated by braiding
==============================

Conjugating a basis projector by braid images gives a family of projectors.
Which of them commute is a property of the representation, so the contexts
are discovered, not chosen.
"""

import itertools

import numpy as np

from topocontext import fibonacci_category
from topocontext.braid import BraidWord
from topocontext.contextuality import braided_projectors, classify_hierarchy, contextuality_from_braiding

fib = fibonacci_category()
words = ["", "s1", "s2", "s1 s2", "s2 s1"]
model = contextuality_from_braiding(fib, ["tau"] * 4, "tau", words)
print("contexts:", model.scenario.contexts)
print("class:", classify_hierarchy(model).cls)

# %%
# s1 is diagonal, so it fixes the first basis projector and the family
# collapses into disjoint contexts. Searching all words up to length three
# shows how rarely braided images of one basis vector are orthogonal.

cands = [BraidWord(4)]
for length in (1, 2, 3):
    for letters in itertools.product([(1, 1), (2, 1), (3, 1), (2, -1)], repeat=length):
        cands.append(BraidWord(4, letters))
for base in range(3):
    ps, _ = braided_projectors(fib, ["tau"] * 4, "tau", cands, base_index=base)
    distinct = {}
    for lab, P in zip(ps.labels, ps.projectors):
        distinct.setdefault(tuple(np.round(P, 8).ravel()), lab)
    graph = ps.commutation_graph().subgraph(distinct.values())
    # rank-one projectors commute exactly when equal or orthogonal
    print(f"base vector {base}: {len(distinct)} distinct projectors, {graph.number_of_edges()} orthogonal pairs")
