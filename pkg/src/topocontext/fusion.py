"""Left-comb fusion-tree bases and F-move change-of-basis matrices.

A basis vector of ``Hom(c, x_1 (x) ... (x) x_n)`` is the left comb

    (((x_1 x_2)_{e_1} x_3)_{e_2} ... x_n)_c

recorded by its internal labels ``(e_1, ..., e_{n-2})``. It is convenient to
also write ``e_0 = x_1`` and ``e_{n-1} = c``; the vertices are then
``(e_{k-1}, x_{k+1}) -> e_k`` for ``k = 1..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .category import CategoryData, CategoryError

__all__ = [
    "FusionTree",
    "FusionBasis",
    "enumerate_basis",
    "dimension",
    "f_move_matrix",
    "f_moved_trees",
]


@dataclass(frozen=True)
class FusionTree:
    leaves: tuple[int, ...]
    total: int
    internal: tuple[int, ...]

    def comb(self) -> tuple[int, ...]:
        """``(e_0, e_1, ..., e_{n-1})``: running fusion labels, leaf 1 first, total last."""
        if len(self.leaves) == 1:
            return (self.total,)
        return (self.leaves[0],) + self.internal + (self.total,)


@dataclass(frozen=True)
class FusionBasis:
    """Orthonormal basis of left-comb trees sharing ``leaves`` and ``total``."""

    cat: CategoryData
    leaves: tuple[int, ...]
    total: int
    trees: tuple[FusionTree, ...]

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __getitem__(self, i: int) -> FusionTree:
        return self.trees[i]

    def index(self, tree: FusionTree) -> int:
        return self.trees.index(tree)

    def describe(self) -> list[str]:
        """Human-readable internal labels, one string per basis vector."""
        name = self.cat.name_of
        return ["(" + ",".join(name(e) for e in t.internal) + ")" for t in self.trees]


def _resolve(cat: CategoryData, leaves: Sequence[int | str], total: int | str) -> tuple[tuple[int, ...], int]:
    leaves = tuple(cat.index(x) for x in leaves)
    if not leaves:
        raise CategoryError("at least one leaf is required")
    return leaves, cat.index(total)


def enumerate_basis(cat: CategoryData, leaves: Sequence[int | str], total: int | str) -> FusionBasis:
    """All admissible left-comb labelings, sorted lexicographically by internal ids.

    An empty basis is a legal result.
    """
    leaves, total = _resolve(cat, leaves, total)
    n = len(leaves)
    N = cat.N
    if n == 1:
        trees = (FusionTree(leaves, total, ()),) if leaves[0] == total else ()
        return FusionBasis(cat, leaves, total, trees)

    # depth-first along the comb; outcomes() is ascending so the result is lexicographic
    found: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], current: int, k: int):
        if k == n - 1:
            if N[current, leaves[n - 1], total]:
                found.append(prefix)
            return
        for e in cat.rules.outcomes(current, leaves[k]):
            extend(prefix + (e,), e, k + 1)

    extend((), leaves[0], 1)
    trees = tuple(FusionTree(leaves, total, internal) for internal in found)
    return FusionBasis(cat, leaves, total, trees)


def dimension(cat: CategoryData, leaves: Sequence[int | str], total: int | str) -> int:
    """``dim Hom(total, leaves)`` from a product of fusion matrices.

    Independent of :func:`enumerate_basis`; the two must agree.
    """
    leaves, total = _resolve(cat, leaves, total)
    v = np.zeros(cat.n_labels, dtype=object)
    v[leaves[0]] = 1
    for x in leaves[1:]:
        # v_c <- sum_a v_a N_{a x}^c
        v = v @ cat.N[:, x, :].astype(object)
    return int(v[total])


def f_moved_trees(basis: FusionBasis, position: int) -> list[tuple[int, ...]]:
    """Label tuples of the re-associated basis for :func:`f_move_matrix`.

    The entry at slot ``position - 1`` is the fusion channel ``f`` of leaves
    ``position + 1`` and ``position + 2``; the other slots keep their comb labels.
    """
    n = len(basis.leaves)
    _check_position(n, position)
    cat = basis.cat
    x1, x2 = basis.leaves[position], basis.leaves[position + 1]
    out = set()
    for t in basis:
        comb = t.comb()
        left, right = comb[position - 1], comb[position + 1]
        for f in cat.rules.outcomes(x1, x2):
            if cat.N[left, f, right]:
                out.add(t.internal[: position - 1] + (f,) + t.internal[position:])
    return sorted(out)


def _check_position(n: int, position: int):
    if not 1 <= position <= n - 2:
        raise CategoryError(f"inadmissible F-move position {position} for {n} leaves (valid: 1..{n - 2})")


def f_move_matrix(cat: CategoryData, basis: FusionBasis, position: int, inverse: bool = False) -> np.ndarray:
    """Change of basis re-associating leaves ``position+1`` and ``position+2``.

    Rows index ``basis``; columns index :func:`f_moved_trees` and the entry is
    ``[F^{e_{p-1} x_{p+1} x_{p+2}}_{e_{p+1}}]_{e_p, f}`` so that
    ``|old_i> = sum_j M[i, j] |new_j>``. ``inverse=True`` returns the conjugate
    transpose, which undoes the move.
    """
    if basis.cat is not cat:
        raise CategoryError("basis belongs to a different category")
    new = f_moved_trees(basis, position)
    col = {labels: j for j, labels in enumerate(new)}
    M = np.zeros((len(basis), len(new)), dtype=complex)
    x1, x2 = basis.leaves[position], basis.leaves[position + 1]
    for i, t in enumerate(basis):
        comb = t.comb()
        left, e, right = comb[position - 1], comb[position], comb[position + 1]
        for f in cat.rules.outcomes(x1, x2):
            if not cat.N[left, f, right]:
                continue
            key = t.internal[: position - 1] + (f,) + t.internal[position:]
            M[i, col[key]] = cat.F(left, x1, x2, right, e, f)
    return M.conj().T if inverse else M

