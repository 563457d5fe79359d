"""Noncontextuality linear program and the possibilistic contextuality hierarchy."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse
from scipy.optimize import linprog

from .scenario import EmpiricalModel, ModelError, check_compatibility

__all__ = [
    "Verdict",
    "ContextualityVerdict",
    "global_assignments",
    "incidence_matrix",
    "noncontextual_lp",
    "classify_hierarchy",
    "LP_TOL",
    "SUPPORT_TOL",
    "MAX_ASSIGNMENTS",
]

LP_TOL = 1e-7
SUPPORT_TOL = 1e-9
MAX_ASSIGNMENTS = 10**6


class Verdict(str, enum.Enum):
    NONCONTEXTUAL = "noncontextual"
    CONTEXTUAL = "contextual"
    LOGICALLY_CONTEXTUAL = "logically_contextual"
    STRONGLY_CONTEXTUAL = "strongly_contextual"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class ContextualityVerdict:
    """Classification plus the evidence that produced it.

    ``weights`` maps global assignments (outcome values in scenario measurement
    order) to their probability when the model is noncontextual.
    ``functional`` holds one coefficient table per context such that every
    noncontextual model ``q`` satisfies ``sum_C <functional_C, q_C> >= 1``;
    the model itself reaches ``noncontextual_fraction``, so the violation is
    ``contextual_fraction``.
    """

    cls: Verdict
    noncontextual_fraction: float
    contextual_fraction: float
    duality_gap: float
    tol: float
    weights: dict[tuple, float] = field(default_factory=dict)
    functional: tuple[np.ndarray, ...] = ()
    logically_contextual: bool | None = None
    strongly_contextual: bool | None = None
    support_witness: str = ""
    consistent_assignments: int | None = None

    @property
    def violation(self) -> float:
        return self.contextual_fraction

    def replay(self, model: EmpiricalModel) -> bool:
        """Re-derive the verdict from the certificate alone."""
        if self.cls is Verdict.NONCONTEXTUAL:
            recon = _reconstruct(model, self.weights)
            return all(np.max(np.abs(r - t)) <= 2 * self.tol for r, t in zip(recon, model.tables))
        M, _ = incidence_matrix(model)
        y = np.concatenate([f.ravel() for f in self.functional])
        p = np.concatenate([t.ravel() for t in model.tables])
        lp_claim = bool((y >= -self.tol).all() and (M.T @ y >= 1 - self.tol).all() and y @ p < 1 - self.tol)
        if self.strongly_contextual:
            return lp_claim and _consistent_count(model, SUPPORT_TOL) == 0
        return lp_claim


def global_assignments(model: EmpiricalModel) -> list[tuple[int, ...]]:
    """All outcome-index assignments to every measurement, in lexicographic order."""
    sc = model.scenario
    count = sc.n_assignments()
    if count > MAX_ASSIGNMENTS:
        raise ModelError(f"{count} global assignments exceeds desk-scale bound of {MAX_ASSIGNMENTS}")
    return list(itertools.product(*(range(len(sc.outcomes[m])) for m in sc.measurements)))


def incidence_matrix(model: EmpiricalModel) -> tuple[scipy.sparse.csr_matrix, list[tuple[int, ...]]]:
    """Rows: (context, joint outcome) in C order of the tables; columns: global assignments."""
    sc = model.scenario
    G = global_assignments(model)
    pos = {m: i for i, m in enumerate(sc.measurements)}
    rows, cols = [], []
    offset = 0
    for c, ctx in enumerate(sc.contexts):
        shape = sc.shape(c)
        idx = [pos[m] for m in ctx]
        for j, g in enumerate(G):
            rows.append(offset + int(np.ravel_multi_index(tuple(g[i] for i in idx), shape)))
            cols.append(j)
        offset += int(np.prod(shape))
    M = scipy.sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(offset, len(G)))
    return M, G


def _reconstruct(model: EmpiricalModel, weights: dict[tuple, float]) -> list[np.ndarray]:
    sc = model.scenario
    pos = {m: i for i, m in enumerate(sc.measurements)}
    out = [np.zeros(sc.shape(c)) for c in range(len(sc.contexts))]
    for g, w in weights.items():
        gi = tuple(sc.outcomes[m].index(v) for m, v in zip(sc.measurements, g))
        for c, ctx in enumerate(sc.contexts):
            out[c][tuple(gi[pos[m]] for m in ctx)] += w
    return out


def noncontextual_lp(model: EmpiricalModel, tol: float = LP_TOL) -> ContextualityVerdict:
    """Decide whether a distribution over global assignments reproduces the model.

    Solves the primal ``max sum(lam) s.t. M lam <= p, lam >= 0`` (the
    noncontextual fraction) and its dual ``min p.y s.t. M^T y >= 1, y >= 0``.
    A fraction of 1 (within ``tol``) means noncontextual, with ``lam`` as the
    certificate; otherwise ``y`` separates the model from the noncontextual
    polytope.
    """
    report = check_compatibility(model)
    if not report.passed:
        raise ModelError(f"model is not compatible: {report.detail}")
    M, G = incidence_matrix(model)
    p = np.concatenate([t.ravel() for t in model.tables])
    n_rows, n_cols = M.shape

    primal = linprog(-np.ones(n_cols), A_ub=M, b_ub=p, bounds=(0, None), method="highs")
    dual = linprog(p, A_ub=-M.T, b_ub=-np.ones(n_cols), bounds=(0, None), method="highs")
    if primal.status != 0 or dual.status != 0:
        raise RuntimeError(f"LP solver failed: {primal.message} / {dual.message}")
    ncf = float(-primal.fun)
    gap = abs(ncf - float(dual.fun))
    cf = max(0.0, 1.0 - ncf)

    sc = model.scenario
    functional = []
    offset = 0
    for c in range(len(sc.contexts)):
        size = int(np.prod(sc.shape(c)))
        functional.append(dual.x[offset : offset + size].reshape(sc.shape(c)))
        offset += size

    if cf <= tol:
        lam = primal.x / primal.x.sum()
        weights = {}
        for g, w in zip(G, lam):
            if w > 1e-12:
                weights[tuple(sc.outcomes[m][i] for m, i in zip(sc.measurements, g))] = float(w)
        return ContextualityVerdict(Verdict.NONCONTEXTUAL, ncf, cf, gap, tol, weights=weights, functional=tuple(functional))
    return ContextualityVerdict(Verdict.CONTEXTUAL, ncf, cf, gap, tol, functional=tuple(functional))


def _consistent_assignments(model: EmpiricalModel, support_tol: float) -> list[tuple[int, ...]]:
    sc = model.scenario
    pos = {m: i for i, m in enumerate(sc.measurements)}
    supports = [set(model.support(c, support_tol)) for c in range(len(sc.contexts))]
    idx = [[pos[m] for m in ctx] for ctx in sc.contexts]
    return [
        g for g in global_assignments(model) if all(tuple(g[i] for i in ix) in s for ix, s in zip(idx, supports))
    ]


def _consistent_count(model: EmpiricalModel, support_tol: float) -> int:
    return len(_consistent_assignments(model, support_tol))


def classify_hierarchy(model: EmpiricalModel, tol: float = LP_TOL, support_tol: float = SUPPORT_TOL) -> ContextualityVerdict:
    """Strongest of noncontextual < contextual < logically < strongly contextual that holds.

    Logical contextuality: some support element of some context extends to no
    global assignment consistent with every support. Strong: no consistent
    global assignment exists at all.
    """
    lp = noncontextual_lp(model, tol)
    sc = model.scenario
    consistent = _consistent_assignments(model, support_tol)
    strongly = not consistent
    logically, witness = False, ""
    pos = {m: i for i, m in enumerate(sc.measurements)}
    for c, ctx in enumerate(sc.contexts):
        ix = [pos[m] for m in ctx]
        extended = {tuple(g[i] for i in ix) for g in consistent}
        for s in model.support(c, support_tol):
            if s not in extended:
                logically = True
                vals = ",".join(str(sc.outcomes[m][o]) for m, o in zip(ctx, s))
                witness = f"outcome ({vals}) of context {c} {{{', '.join(ctx)}}} has no global extension"
                break
        if logically:
            break

    if strongly and not logically:
        raise RuntimeError("hierarchy violated: strongly contextual but not logically contextual")
    if logically and lp.cls is Verdict.NONCONTEXTUAL:
        raise RuntimeError("hierarchy violated: logically contextual model passed the noncontextual LP")

    if strongly:
        cls = Verdict.STRONGLY_CONTEXTUAL
    elif logically:
        cls = Verdict.LOGICALLY_CONTEXTUAL
    else:
        cls = lp.cls
    return ContextualityVerdict(
        cls,
        lp.noncontextual_fraction,
        lp.contextual_fraction,
        lp.duality_gap,
        tol,
        weights=lp.weights,
        functional=lp.functional,
        logically_contextual=logically,
        strongly_contextual=strongly,
        support_witness=witness,
        consistent_assignments=len(consistent),
    )
