"""Measurement scenarios, empirical models and projective realizations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import networkx as nx
import numpy as np

from ..category import CheckReport

__all__ = [
    "ModelError",
    "MeasurementScenario",
    "EmpiricalModel",
    "ProjectorSet",
    "scenario_from_projectors",
    "empirical_from_state",
    "check_compatibility",
    "uniform_model",
    "COMMUTE_TOL",
    "COMPAT_TOL",
]

COMMUTE_TOL = 1e-8
COMPAT_TOL = 1e-9
PROJECTOR_TOL = 1e-10


class ModelError(ValueError):
    """Malformed scenario, model or projector data."""


@dataclass(frozen=True)
class MeasurementScenario:
    """The triple (X, M, O): measurements, maximal contexts, outcome sets."""

    measurements: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    outcomes: Mapping[str, tuple[Hashable, ...]]

    def __post_init__(self):
        meas = tuple(str(m) for m in self.measurements)
        if len(set(meas)) != len(meas):
            raise ModelError("duplicate measurement labels")
        ctxs = tuple(tuple(str(m) for m in c) for c in self.contexts)
        outs = {str(m): tuple(self.outcomes[m]) for m in meas} if set(self.outcomes) >= set(meas) else None
        if outs is None:
            missing = sorted(set(meas) - set(self.outcomes))
            raise ModelError(f"no outcome set for {missing}")
        for m, o in outs.items():
            if not o or len(set(o)) != len(o):
                raise ModelError(f"outcome set of {m!r} must be non-empty and duplicate-free")
        sets = [frozenset(c) for c in ctxs]
        for c in ctxs:
            if not c or len(set(c)) != len(c):
                raise ModelError(f"context {list(c)} is empty or repeats a measurement")
            unknown = [m for m in c if m not in outs]
            if unknown:
                raise ModelError(f"context {list(c)} names unknown measurements {unknown}")
        if len(set(sets)) != len(sets):
            raise ModelError("contexts are not distinct")
        for i, j in itertools.permutations(range(len(sets)), 2):
            if sets[i] < sets[j]:
                raise ModelError(f"context {list(ctxs[i])} is contained in {list(ctxs[j])}; only maximal contexts allowed")
        covered = set().union(*sets) if sets else set()
        orphans = [m for m in meas if m not in covered]
        if orphans:
            raise ModelError(f"measurements {orphans} appear in no context")
        object.__setattr__(self, "measurements", meas)
        object.__setattr__(self, "contexts", ctxs)
        object.__setattr__(self, "outcomes", outs)

    def shape(self, context: int) -> tuple[int, ...]:
        return tuple(len(self.outcomes[m]) for m in self.contexts[context])

    def n_assignments(self) -> int:
        return int(np.prod([len(self.outcomes[m]) for m in self.measurements], dtype=object))

    def relabel(self, mapping: Mapping[str, str]) -> MeasurementScenario:
        f = lambda m: mapping.get(m, m)  # noqa: E731
        return MeasurementScenario(
            tuple(f(m) for m in self.measurements),
            tuple(tuple(f(m) for m in c) for c in self.contexts),
            {f(m): o for m, o in self.outcomes.items()},
        )


@dataclass(frozen=True, eq=False)
class EmpiricalModel:
    """One probability table per context, axes ordered as the context's measurements."""

    scenario: MeasurementScenario
    tables: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        sc = self.scenario
        if len(self.tables) != len(sc.contexts):
            raise ModelError(f"{len(self.tables)} tables for {len(sc.contexts)} contexts")
        tabs = []
        for i, t in enumerate(self.tables):
            t = np.array(t, dtype=float)
            if t.shape != sc.shape(i):
                raise ModelError(f"table {i} has shape {t.shape}, expected {sc.shape(i)}")
            if (t < -COMPAT_TOL).any():
                raise ModelError(f"table {i} has negative probabilities")
            if abs(t.sum() - 1.0) > COMPAT_TOL:
                raise ModelError(f"table {i} sums to {t.sum():.12g}, not 1")
            t.setflags(write=False)
            tabs.append(t)
        object.__setattr__(self, "tables", tuple(tabs))

    def marginal(self, context: int, measurements: Sequence[str]) -> np.ndarray:
        """Marginal of one context table onto ``measurements`` (in the given order)."""
        ctx = self.scenario.contexts[context]
        keep = [ctx.index(m) for m in measurements]
        drop = tuple(ax for ax in range(len(ctx)) if ax not in keep)
        t = self.tables[context].sum(axis=drop) if drop else self.tables[context]
        order = np.argsort(np.argsort(keep))
        return np.transpose(t, order) if len(keep) > 1 else t

    def probability(self, measurement: str, outcome: Hashable) -> float:
        """``P(measurement = outcome)``, read from the first context containing it."""
        sc = self.scenario
        i = next(k for k, c in enumerate(sc.contexts) if measurement in c)
        idx = sc.outcomes[measurement].index(outcome)
        return float(self.marginal(i, [measurement])[idx])

    def support(self, context: int, tol: float = COMPAT_TOL) -> list[tuple[int, ...]]:
        """Outcome-index tuples with probability above ``tol``."""
        return [tuple(int(x) for x in ix) for ix in np.argwhere(self.tables[context] > tol)]

    def reorder(self, context_order: Sequence[int]) -> EmpiricalModel:
        sc = self.scenario
        new = MeasurementScenario(sc.measurements, tuple(sc.contexts[i] for i in context_order), sc.outcomes)
        return EmpiricalModel(new, tuple(self.tables[i] for i in context_order))

    def relabel(self, mapping: Mapping[str, str]) -> EmpiricalModel:
        return EmpiricalModel(self.scenario.relabel(mapping), self.tables)


def check_compatibility(model: EmpiricalModel, tol: float = COMPAT_TOL) -> CheckReport:
    """Marginals of every pair of overlapping contexts must agree (no signalling)."""
    sc = model.scenario
    worst, where = 0.0, ""
    for i, j in itertools.combinations(range(len(sc.contexts)), 2):
        overlap = [m for m in sc.measurements if m in sc.contexts[i] and m in sc.contexts[j]]
        if not overlap:
            continue
        res = float(np.max(np.abs(model.marginal(i, overlap) - model.marginal(j, overlap))))
        if res > worst:
            worst, where = res, f"contexts {i} and {j} disagree on {{{', '.join(overlap)}}}"
    return CheckReport("compatible", worst, tol, worst <= tol, where if worst > tol else "")


def uniform_model(scenario: MeasurementScenario) -> EmpiricalModel:
    """Every joint outcome of every context equally likely."""
    tabs = []
    for i in range(len(scenario.contexts)):
        shape = scenario.shape(i)
        tabs.append(np.full(shape, 1.0 / np.prod(shape)))
    return EmpiricalModel(scenario, tuple(tabs))


@dataclass(frozen=True, eq=False)
class ProjectorSet:
    """Labelled orthogonal projectors on a common Hilbert space."""

    labels: tuple[str, ...]
    projectors: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.labels) != len(self.projectors):
            raise ModelError("one label per projector required")
        if len(set(self.labels)) != len(self.labels):
            raise ModelError("projector labels must be distinct")
        mats = []
        for lab, P in zip(self.labels, self.projectors):
            P = np.array(P, dtype=complex)
            if P.ndim != 2 or P.shape[0] != P.shape[1]:
                raise ModelError(f"{lab}: not a square matrix")
            if mats and P.shape != mats[0].shape:
                raise ModelError(f"{lab}: dimension mismatch")
            herm = np.max(np.abs(P - P.conj().T))
            idem = np.max(np.abs(P @ P - P))
            if max(herm, idem) > PROJECTOR_TOL:
                raise ModelError(f"{lab}: not an orthogonal projector (|P-P^+|={herm:.2e}, |P^2-P|={idem:.2e})")
            P.setflags(write=False)
            mats.append(P)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "projectors", tuple(mats))

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.projectors[self.labels.index(label)]

    def commutator_norm(self, i: int, j: int) -> float:
        P, Q = self.projectors[i], self.projectors[j]
        return float(np.max(np.abs(P @ Q - Q @ P)))

    def commutation_graph(self, tol: float = COMMUTE_TOL) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.labels)
        for i, j in itertools.combinations(range(len(self.labels)), 2):
            if self.commutator_norm(i, j) < tol:
                G.add_edge(self.labels[i], self.labels[j])
        return G


def scenario_from_projectors(ps: ProjectorSet, tol: float = COMMUTE_TOL) -> MeasurementScenario:
    """Contexts are the maximal cliques of the commutation graph; outcomes are {0, 1}."""
    if not ps.labels:
        raise ModelError("at least one projector is required")
    if len(ps.labels) > 24:
        raise ModelError("more than 24 projectors exceeds the desk-scale bound")
    pos = {lab: i for i, lab in enumerate(ps.labels)}
    cliques = [sorted(c, key=pos.__getitem__) for c in nx.find_cliques(ps.commutation_graph(tol))]
    cliques.sort(key=lambda c: [pos[m] for m in c])
    return MeasurementScenario(ps.labels, tuple(tuple(c) for c in cliques), {m: (0, 1) for m in ps.labels})


def _density(state: np.ndarray, d: int) -> np.ndarray:
    s = np.asarray(state, dtype=complex)
    if s.shape == (d,):
        nrm = np.linalg.norm(s)
        if abs(nrm - 1) > 1e-9:
            raise ModelError(f"state has norm {nrm:.12g}, expected a unit vector")
        return np.outer(s, s.conj())
    if s.shape == (d, d):
        if abs(np.trace(s) - 1) > 1e-9:
            raise ModelError("density matrix must have unit trace")
        return s
    raise ModelError(f"state of shape {s.shape} does not match dimension {d}")


def empirical_from_state(
    state: np.ndarray, ps: ProjectorSet, scenario: MeasurementScenario | None = None, tol: float = COMMUTE_TOL
) -> EmpiricalModel:
    """Born-rule tables for each context.

    ``state`` is a unit vector or a density matrix. Outcome 1 of a measurement
    is its projector ``P``, outcome 0 is ``I - P``.
    """
    if scenario is None:
        scenario = scenario_from_projectors(ps, tol)
    rho = _density(state, ps.dim)
    I = np.eye(ps.dim)
    tabs = []
    for ctx in scenario.contexts:
        mats = [ps[m] for m in ctx]
        for (a, P), (b, Q) in itertools.combinations(zip(ctx, mats), 2):
            if np.max(np.abs(P @ Q - Q @ P)) >= tol:
                raise ModelError(f"context contains non-commuting projectors {a} and {b}")
        for m in ctx:
            if tuple(scenario.outcomes[m]) != (0, 1):
                raise ModelError(f"measurement {m} must have outcomes (0, 1)")
        t = np.empty(tuple(2 for _ in ctx))
        for outcome in itertools.product((0, 1), repeat=len(ctx)):
            op = I.astype(complex)
            for o, P in zip(outcome, mats):
                op = op @ (P if o else I - P)
            t[outcome] = np.trace(rho @ op).real
        # commuting products are projectors; round-off below 1e-12 is not a probability
        t[(t < 0) & (t > -1e-12)] = 0.0
        tabs.append(t)
    return EmpiricalModel(scenario, tuple(tabs))
