"""Multiplicity-free modular tensor category data and its consistency checks.

Conventions
-----------
``F[(a, b, c, d, e, f)]`` is the coefficient in

    |(a b)_e c ; d>  =  sum_f  [F^{abc}_d]_{ef}  |a (b c)_f ; d>

and ``R[(a, b, c)]`` is the phase picked up when ``a`` and ``b`` fusing to ``c``
are exchanged counter-clockwise. Pentagon and hexagon equations are written in
this convention (the same one used for the Fibonacci data ``R^{tt}_1 =
exp(-4 pi i/5)``, ``R^{tt}_t = exp(3 pi i/5)``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "CategoryError",
    "Label",
    "FusionRules",
    "CategoryData",
    "CheckReport",
    "make_category",
    "derive_twists",
    "quantum_dimensions",
    "global_dimension",
    "s_matrix",
    "verify_fusion_rules",
    "verify_pentagon",
    "verify_hexagon",
    "verify_ribbon",
    "verify_f_unitarity",
    "verify_modularity",
    "verify_all",
]

DEFAULT_TOL = 1e-10
MAX_LABELS = 16

FKey = tuple[int, int, int, int, int, int]
RKey = tuple[int, int, int]


class CategoryError(ValueError):
    """Malformed or incomplete category data."""


@dataclass(frozen=True)
class Label:
    id: int
    name: str
    dual: int
    is_unit: bool = False


@dataclass(frozen=True, eq=False)
class FusionRules:
    """Fusion multiplicities ``N[a, b, c]`` = N_{ab}^c."""

    N: np.ndarray

    def __post_init__(self):
        N = np.asarray(self.N, dtype=int)
        if N.ndim != 3 or len(set(N.shape)) != 1:
            raise CategoryError(f"fusion tensor must be n x n x n, got shape {N.shape}")
        if (N < 0).any():
            raise CategoryError("negative fusion multiplicity")
        if (N > 1).any():
            a, b, c = (int(x) for x in np.argwhere(N > 1)[0])
            raise CategoryError(
                f"multiplicity N[{a}][{b}][{c}] = {N[a, b, c]} > 1; only multiplicity-free categories are supported"
            )
        N.setflags(write=False)
        object.__setattr__(self, "N", N)

    @property
    def n_labels(self) -> int:
        return self.N.shape[0]

    def admissible(self, a: int, b: int, c: int) -> bool:
        return bool(self.N[a, b, c])

    def outcomes(self, a: int, b: int) -> list[int]:
        """Labels ``c`` with ``N_{ab}^c = 1``, ascending."""
        return [int(c) for c in np.flatnonzero(self.N[a, b])]

    def fusion_matrix(self, a: int) -> np.ndarray:
        """``(N_a)_{bc} = N[a, b, c]``."""
        return self.N[a]


@dataclass(frozen=True, eq=False)
class CategoryData:
    """Complete algebraic datum of a multiplicity-free MTC.

    Treat instances as immutable; use :func:`dataclasses.replace` to derive
    perturbed copies.
    """

    name: str
    labels: tuple[Label, ...]
    rules: FusionRules
    f: Mapping[FKey, complex]
    r: Mapping[RKey, complex]
    twists: np.ndarray = field(repr=False)

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @property
    def N(self) -> np.ndarray:
        return self.rules.N

    @property
    def unit(self) -> int:
        return next(lab.id for lab in self.labels if lab.is_unit)

    def dual(self, a: int) -> int:
        return self.labels[a].dual

    def name_of(self, a: int) -> str:
        return self.labels[a].name

    def index(self, label: int | str) -> int:
        """Resolve a label given by id or by name."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.n_labels:
                return int(label)
            raise CategoryError(f"unknown label id {label}")
        for lab in self.labels:
            if lab.name == label:
                return lab.id
        if isinstance(label, str) and label.isdigit():
            return self.index(int(label))
        raise CategoryError(f"unknown label {label!r}")

    def F(self, a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
        """Stored F-symbol; inadmissible keys read as zero, missing admissible keys raise."""
        key = (a, b, c, d, e, f)
        if key in self.f:
            return self.f[key]
        if _f_admissible(self.rules, key):
            raise CategoryError(f"missing F entry for admissible key (a,b,c,d,e,f)={key}")
        return 0.0

    def R(self, a: int, b: int, c: int) -> complex:
        key = (a, b, c)
        if key in self.r:
            return self.r[key]
        if self.rules.admissible(a, b, c):
            raise CategoryError(f"missing R entry for admissible key (a,b,c)={key}")
        return 0.0

    def f_block(self, a: int, b: int, c: int, d: int) -> tuple[list[int], list[int], np.ndarray]:
        """The matrix ``[F^{abc}_d]`` with its row labels ``e`` and column labels ``f``."""
        rows = [e for e in self.rules.outcomes(a, b) if self.rules.admissible(e, c, d)]
        cols = [f for f in self.rules.outcomes(b, c) if self.rules.admissible(a, f, d)]
        M = np.array([[self.F(a, b, c, d, e, f) for f in cols] for e in rows], dtype=complex)
        return rows, cols, M.reshape(len(rows), len(cols))


@dataclass(frozen=True)
class CheckReport:
    name: str
    residual: float
    tol: float
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{self.name:<12s} {status:<4s} residual={self.residual:.3e} tol={self.tol:.1e}"
        return f"{line}  {self.detail}" if self.detail else line


def _report(name: str, residual: float, tol: float, detail: str = "", higher_is_ok: bool = False) -> CheckReport:
    passed = residual > tol if higher_is_ok else residual <= tol
    return CheckReport(name, float(residual), float(tol), bool(passed), detail)


def _f_admissible(rules: FusionRules, key: FKey) -> bool:
    a, b, c, d, e, f = key
    return bool(rules.N[a, b, e] and rules.N[e, c, d] and rules.N[b, c, f] and rules.N[a, f, d])


def admissible_f_keys(rules: FusionRules) -> Iterator[FKey]:
    """All (a,b,c,d,e,f) with every vertex admissible, in lexicographic order."""
    n = rules.n_labels
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for e in rules.outcomes(a, b):
            if not rules.N[e, c, d]:
                continue
            for f in rules.outcomes(b, c):
                if rules.N[a, f, d]:
                    yield (a, b, c, d, e, f)


def make_category(
    name: str,
    names: Sequence[str],
    N: np.ndarray,
    F: Mapping[FKey, complex],
    R: Mapping[RKey, complex],
    twists: Sequence[complex] | None = None,
    unit: int = 0,
    duals: Sequence[int] | None = None,
) -> CategoryData:
    """Assemble and structurally validate a category.

    Duals default to the unique ``b`` with ``N[a, b, unit] = 1``; twists default
    to :func:`derive_twists`. Axiom checks are *not* run here.
    """
    rules = FusionRules(N)
    n = rules.n_labels
    if len(names) != n:
        raise CategoryError(f"{len(names)} label names for {n} labels")
    if n > MAX_LABELS:
        raise CategoryError(f"{n} labels exceeds the supported maximum of {MAX_LABELS}")
    if not 0 <= unit < n:
        raise CategoryError(f"unit id {unit} out of range")
    if duals is None:
        duals = []
        for a in range(n):
            cands = [b for b in range(n) if rules.N[a, b, unit]]
            if len(cands) != 1:
                raise CategoryError(f"label {names[a]!r} has {len(cands)} duals")
            duals.append(cands[0])
    labels = tuple(Label(i, str(names[i]), int(duals[i]), i == unit) for i in range(n))
    for lab in labels:
        if not 0 <= lab.dual < n or labels[lab.dual].dual != lab.id:
            raise CategoryError(f"dual of dual of {lab.name!r} is not itself")
    if labels[unit].dual != unit:
        raise CategoryError("dual of the unit must be the unit")

    f = {tuple(int(x) for x in k): complex(v) for k, v in F.items()}
    r = {tuple(int(x) for x in k): complex(v) for k, v in R.items()}
    for k in f:
        if len(k) != 6 or not _f_admissible(rules, k):
            raise CategoryError(f"F entry for inadmissible key {k}")
    for k in r:
        if len(k) != 3 or not rules.N[k]:
            raise CategoryError(f"R entry for inadmissible key {k}")
    if twists is None:
        th = derive_twists(rules, r, unit)
    else:
        th = np.asarray(twists, dtype=complex)
        if th.shape != (n,):
            raise CategoryError(f"expected {n} twists, got shape {th.shape}")
    th = th.copy()
    th.setflags(write=False)
    return CategoryData(name, labels, rules, f, r, th)


def quantum_dimensions(cat: CategoryData | FusionRules) -> np.ndarray:
    """Perron-Frobenius eigenvalue of each fusion matrix ``N_a``."""
    rules = cat.rules if isinstance(cat, CategoryData) else cat
    d = np.empty(rules.n_labels)
    for a in range(rules.n_labels):
        d[a] = np.max(np.abs(np.linalg.eigvals(rules.fusion_matrix(a).astype(float))))
    return d


def global_dimension(cat: CategoryData) -> float:
    """Total quantum dimension squared, ``sum_a d_a^2``."""
    return float(np.sum(quantum_dimensions(cat) ** 2))


def derive_twists(rules: FusionRules, r: Mapping[RKey, complex], unit: int = 0) -> np.ndarray:
    """Twists from the braiding: ``theta_a = sum_c (d_c / d_a) R^{aa}_c``.

    Valid for the unitary multiplicity-free data used here. Labels that do not
    fuse with themselves into the unit would need a Frobenius-Schur correction;
    :func:`verify_ribbon` catches any inconsistency.
    """
    d = quantum_dimensions(rules)
    th = np.empty(rules.n_labels, dtype=complex)
    for a in range(rules.n_labels):
        th[a] = sum(d[c] / d[a] * r.get((a, a, c), 0.0) for c in rules.outcomes(a, a))
    th[unit] = 1.0
    return th


def s_matrix(cat: CategoryData) -> np.ndarray:
    """Unnormalized S-matrix, ``S_ab = sum_c N_{a* b}^c theta_c / (theta_a theta_b) d_c``.

    The unit row is ``S_{1a} = d_a``; divide by ``sqrt(global_dimension)`` for the
    unitary normalization.
    """
    d = quantum_dimensions(cat)
    th = cat.twists
    n = cat.n_labels
    S = np.zeros((n, n), dtype=complex)
    for a, b in itertools.product(range(n), repeat=2):
        abar = cat.dual(a)
        S[a, b] = sum(th[c] / (th[a] * th[b]) * d[c] for c in cat.rules.outcomes(abar, b))
    return S


def verify_fusion_rules(cat: CategoryData) -> CheckReport:
    """Unit law, commutativity, associativity of counts and duality, as a 0/1 residual."""
    N = cat.N
    u = cat.unit
    n = cat.n_labels
    problems = []
    if not np.array_equal(N[u], np.eye(n, dtype=int)):
        problems.append("unit law")
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        problems.append("commutativity")
    # sum_e N_ab^e N_ec^d  vs  sum_f N_bc^f N_af^d
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bcf,afd->abcd", N, N)
    if not np.array_equal(left, right):
        problems.append("associativity")
    for a in range(n):
        for b in range(n):
            if bool(N[a, b, u]) != (b == cat.dual(a)):
                problems.append(f"duality at ({cat.name_of(a)},{cat.name_of(b)})")
                break
    return _report("fusion", float(bool(problems)), 0.0, ", ".join(problems))


def _pentagon_instances(cat: CategoryData):
    rules = cat.rules
    n = cat.n_labels
    out = rules.outcomes
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for f in out(a, b):
            for g in out(f, c):
                for e in out(g, d):
                    for l in out(c, d):
                        if not rules.N[f, l, e]:
                            continue
                        for k in out(b, l):
                            if rules.N[a, k, e]:
                                yield a, b, c, d, e, f, g, k, l


def verify_pentagon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Max residual of

    ``[F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} = sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}``
    """
    F = cat.F
    worst, where = 0.0, ""
    for a, b, c, d, e, f, g, k, l in _pentagon_instances(cat):
        lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k)
        rhs = sum(F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l) for h in cat.rules.outcomes(b, c))
        res = abs(lhs - rhs)
        if res > worst:
            worst, where = res, f"at (a,b,c,d,e,f,g,k,l)={(a, b, c, d, e, f, g, k, l)}"
    return _report("pentagon", worst, tol, where if worst > tol else "")


def verify_hexagon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Max residual over both hexagons (R and R^-1) of

    ``R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}``
    """
    F = cat.F
    rules = cat.rules
    n = cat.n_labels
    worst, where = 0.0, ""
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for e in rules.outcomes(c, a):
            if not rules.N[e, b, d]:
                continue
            for g in rules.outcomes(c, b):
                if not rules.N[a, g, d]:
                    continue
                fs = [f for f in rules.outcomes(a, b) if rules.N[c, f, d]]
                for inverse in (False, True):

                    def R(x, y, z, inverse=inverse):
                        v = cat.R(x, y, z)
                        return 1.0 / v if inverse else v

                    lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g)
                    rhs = sum(F(c, a, b, d, e, f) * R(c, f, d) * F(a, b, c, d, f, g) for f in fs)
                    res = abs(lhs - rhs)
                    if res > worst:
                        kind = "R^-1" if inverse else "R"
                        worst, where = res, f"{kind} hexagon at (a,b,c,d,e,g)={(a, b, c, d, e, g)}"
    for key, v in cat.r.items():
        res = abs(abs(v) - 1.0)
        if res > worst:
            worst, where = res, f"|R{key}| != 1"
    return _report("hexagon", worst, tol, where if worst > tol else "")


def verify_ribbon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """``R^{ab}_c R^{ba}_c = theta_c / (theta_a theta_b)`` and ``theta_a* = theta_a`` for duals."""
    th = cat.twists
    worst, where = 0.0, ""
    for a, b in itertools.product(range(cat.n_labels), repeat=2):
        for c in cat.rules.outcomes(a, b):
            res = abs(cat.R(a, b, c) * cat.R(b, a, c) - th[c] / (th[a] * th[b]))
            if res > worst:
                worst, where = res, f"at (a,b,c)={(a, b, c)}"
    for a in range(cat.n_labels):
        res = max(abs(th[a] - th[cat.dual(a)]), abs(abs(th[a]) - 1.0))
        if res > worst:
            worst, where = res, f"twist of {cat.name_of(a)!r}"
    return _report("ribbon", worst, tol, where if worst > tol else "")


def verify_f_unitarity(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """``max |F F^dagger - I|`` over every block ``[F^{abc}_d]``."""
    n = cat.n_labels
    worst, where = 0.0, ""
    for a, b, c, d in itertools.product(range(n), repeat=4):
        rows, cols, M = cat.f_block(a, b, c, d)
        if not rows and not cols:
            continue
        if len(rows) != len(cols):
            return _report("F-unitary", np.inf, tol, f"non-square block {(a, b, c, d)}")
        res = float(np.max(np.abs(M @ M.conj().T - np.eye(len(rows)))))
        if res > worst:
            worst, where = res, f"block (a,b,c,d)={(a, b, c, d)}"
    return _report("F-unitary", worst, tol, where if worst > tol else "")


def verify_modularity(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Invertibility of the unnormalized S-matrix: passes when ``|det S| > tol``."""
    det = abs(np.linalg.det(s_matrix(cat)))
    return _report("modularity", det, tol, "|det S| reported as residual", higher_is_ok=True)


def verify_all(cat: CategoryData, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    return [
        verify_fusion_rules(cat),
        verify_pentagon(cat, tol),
        verify_hexagon(cat, tol),
        verify_ribbon(cat, tol),
        verify_f_unitarity(cat, tol),
        verify_modularity(cat, tol),
    ]
