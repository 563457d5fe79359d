"""Braid words and unitary braid-group representations on fusion spaces."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .category import CategoryData, CategoryError, CheckReport
from .fusion import FusionBasis, enumerate_basis, f_move_matrix, f_moved_trees

__all__ = [
    "BraidWord",
    "BraidParseError",
    "BraidRep",
    "LieClosure",
    "parse_braid_word",
    "build_rep",
    "apply_word",
    "verify_braid_relations",
    "verify_unitarity",
    "lie_closure",
    "lie_closure_dim",
    "random_word",
]

REP_TOL = 1e-10
RANK_TOL = 1e-8


class BraidParseError(ValueError):
    """Malformed braid word; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


@dataclass(frozen=True)
class BraidWord:
    """Product ``sigma_{i_1}^{e_1} sigma_{i_2}^{e_2} ...`` read left to right."""

    n_strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n_strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i < self.n_strands:
                raise ValueError(f"generator s{i} out of range for {self.n_strands} strands")
            if e not in (1, -1):
                raise ValueError(f"exponent {e} is not +-1")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.n_strands != self.n_strands:
            raise ValueError("cannot multiply braids on different strand counts")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n_strands, self.letters * k)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n_strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        return BraidWord(self.n_strands, tuple((i, -e) for i, e in self.letters))

    def stabilize(self, sign: int = 1) -> BraidWord:
        """Markov stabilization: one more strand and a trailing ``s_n^{sign}``."""
        return BraidWord(self.n_strands + 1, self.letters + ((self.n_strands, sign),))

    @property
    def writhe(self) -> int:
        return sum(e for _, e in self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)


_TOKEN = re.compile(r"s(\d+)(\^-1)?")


def parse_braid_word(text: str, n_strands: int) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``; the empty string is the identity braid."""
    if n_strands < 1:
        raise BraidParseError(f"invalid strand count {n_strands}", 1)
    letters = []
    for m in re.finditer(r"\S+", text):
        tok, col = m.group(), m.start() + 1
        t = _TOKEN.fullmatch(tok)
        if t is None:
            raise BraidParseError(f"malformed token {tok!r}", col)
        i = int(t.group(1))
        if not 1 <= i <= n_strands - 1:
            raise BraidParseError(f"generator index {i} outside 1..{n_strands - 1}", col)
        letters.append((i, -1 if t.group(2) else 1))
    return BraidWord(n_strands, tuple(letters))


def random_word(n_strands: int, length: int, rng: np.random.Generator) -> BraidWord:
    if n_strands < 2:
        return BraidWord(n_strands)
    idx = rng.integers(1, n_strands, size=length)
    exp = rng.choice([-1, 1], size=length)
    return BraidWord(n_strands, tuple(zip(idx.tolist(), exp.tolist())))


@dataclass(frozen=True, eq=False)
class BraidRep:
    cat: CategoryData
    leaves: tuple[int, ...]
    total: int
    basis: FusionBasis
    generators: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def n_strands(self) -> int:
        return len(self.leaves)

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_rep(cat: CategoryData, leaves: Sequence[int | str], total: int | str) -> BraidRep:
    """Generators ``rho(s_i)`` on ``Hom(total, leaves)`` in :func:`enumerate_basis` order.

    ``rho(s_1)`` is diagonal with entries ``R^{xx}_{e_1}``; for ``i >= 2`` it is
    ``M D M^dagger`` with ``M`` the F-move grouping leaves ``i, i+1`` and ``D``
    the R-phases of their fusion channel.
    """
    basis = enumerate_basis(cat, leaves, total)
    leaves, total = basis.leaves, basis.total
    if len(set(leaves)) != 1:
        raise CategoryError("inhomogeneous leaves unsupported")
    if len(basis) == 0:
        raise CategoryError(
            f"Hom({cat.name_of(total)}, {' x '.join(cat.name_of(x) for x in leaves)}) is zero-dimensional"
        )
    x = leaves[0]
    gens = []
    for i in range(1, len(leaves)):
        if i == 1:
            gens.append(np.diag([cat.R(x, x, t.comb()[1]) for t in basis]).astype(complex))
            continue
        M = f_move_matrix(cat, basis, i - 1)
        channels = [labels[i - 2] for labels in f_moved_trees(basis, i - 1)]
        D = np.diag([cat.R(x, x, f) for f in channels])
        gens.append(M @ D @ M.conj().T)
    for g in gens:
        g.setflags(write=False)
    return BraidRep(cat, leaves, total, basis, tuple(gens))


def apply_word(rep: BraidRep, w: BraidWord) -> np.ndarray:
    """Ordered product of generators and inverses; the empty word gives the identity."""
    if w.n_strands != rep.n_strands:
        raise ValueError(f"word on {w.n_strands} strands applied to a {rep.n_strands}-strand representation")
    out = np.eye(rep.dim, dtype=complex)
    for i, e in w.letters:
        g = rep.generators[i - 1]
        out = out @ (g if e == 1 else g.conj().T)
    return out


def _maxabs(A: np.ndarray) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def verify_braid_relations(rep: BraidRep, tol: float = REP_TOL) -> CheckReport:
    """Far commutation and Yang-Baxter residuals (max entrywise)."""
    G = rep.generators
    worst, where = 0.0, ""
    for i in range(len(G)):
        for j in range(i + 2, len(G)):
            res = _maxabs(G[i] @ G[j] - G[j] @ G[i])
            if res > worst:
                worst, where = res, f"s{i + 1} s{j + 1} = s{j + 1} s{i + 1}"
        if i + 1 < len(G):
            a, b = G[i], G[i + 1]
            res = _maxabs(a @ b @ a - b @ a @ b)
            if res > worst:
                worst, where = res, f"s{i + 1} s{i + 2} s{i + 1} = s{i + 2} s{i + 1} s{i + 2}"
    return CheckReport("braid", worst, tol, worst <= tol, where if worst > tol else "")


def verify_unitarity(rep: BraidRep, tol: float = REP_TOL) -> CheckReport:
    worst, where = 0.0, ""
    I = np.eye(rep.dim)
    for i, g in enumerate(rep.generators, start=1):
        res = max(_maxabs(g @ g.conj().T - I), abs(abs(np.linalg.det(g)) - 1.0))
        if res > worst:
            worst, where = res, f"s{i}"
    return CheckReport("unitarity", worst, tol, worst <= tol, where if worst > tol else "")


@dataclass(frozen=True)
class LieClosure:
    dim: int
    target: int
    basis: tuple[np.ndarray, ...] = field(repr=False)
    notes: tuple[str, ...] = ()

    @property
    def full(self) -> bool:
        return self.dim == self.target


def _log_unitary(U: np.ndarray, notes: list[str], eps: float = 1e-3) -> np.ndarray:
    """Principal logarithm of a unitary, anti-Hermitian.

    An eigenvalue on the branch cut (-1) has no principal log; the matrix is
    then rotated by ``exp(i eps)`` first and the rotation removed afterwards,
    which fixes the branch deterministically.
    """
    T, Z = scipy.linalg.schur(U, output="complex")
    ev = np.diag(T)
    shift = 0.0
    if np.any(np.abs(ev + 1) < 1e-9):
        shift = eps
        notes.append("eigenvalue at -1: branch fixed by a phase rotation before the logarithm")
    ang = np.angle(ev * np.exp(1j * shift)) - shift
    X = Z @ np.diag(1j * ang) @ Z.conj().T
    return 0.5 * (X - X.conj().T)


def _traceless(X: np.ndarray) -> np.ndarray:
    d = X.shape[0]
    return X - np.trace(X) / d * np.eye(d)


def _as_real(X: np.ndarray) -> np.ndarray:
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def lie_closure(generators: Iterable[np.ndarray], tol: float = RANK_TOL) -> LieClosure:
    """Real Lie algebra generated by the traceless parts of ``log(U)``.

    Returns the span dimension; ``d**2 - 1`` means the generators' closure
    contains all of SU(d) locally.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ValueError("no generators")
    d = gens[0].shape[0]
    if any(g.shape != (d, d) for g in gens):
        raise ValueError("generators must share one square shape")
    notes: list[str] = []
    basis: list[np.ndarray] = []
    Q = np.zeros((0, 2 * d * d))

    def add(X: np.ndarray) -> bool:
        nonlocal Q
        v = _as_real(X)
        nrm = np.linalg.norm(v)
        if nrm < tol:
            return False
        v = v / nrm
        for _ in range(2):
            v = v - Q.T @ (Q @ v)
        r = np.linalg.norm(v)
        if r < tol:
            return False
        Q = np.vstack([Q, v / r])
        basis.append(X / nrm)
        return True

    for g in gens:
        add(_traceless(_log_unitary(g, notes)))
    done = 0
    while done < len(basis):
        # bracket each new element against everything accumulated so far
        X = basis[done]
        for Y in list(basis[: done + 1]):
            add(X @ Y - Y @ X)
        done += 1
    dim = int(np.linalg.matrix_rank(Q, tol=tol)) if len(Q) else 0
    return LieClosure(dim, d * d - 1, tuple(basis), tuple(dict.fromkeys(notes)))


def lie_closure_dim(generators: Iterable[np.ndarray], tol: float = RANK_TOL) -> int:
    return lie_closure(generators, tol).dim
