"""KCBS pentagon in the Fibonacci fusion space, and braiding-induced projector families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..braid import BraidWord, apply_word, build_rep, parse_braid_word
from ..category import CategoryData
from ..fusion import FusionBasis
from ..models import fibonacci_category
from .scenario import (
    COMMUTE_TOL,
    EmpiricalModel,
    MeasurementScenario,
    ModelError,
    ProjectorSet,
    empirical_from_state,
    scenario_from_projectors,
)

__all__ = [
    "KCBSSetup",
    "kcbs_projectors_fibonacci",
    "kcbs_model",
    "pentagon_scenario",
    "kcbs_value",
    "classical_bound",
    "braided_projectors",
    "contextuality_from_braiding",
]


@dataclass(frozen=True, eq=False)
class KCBSSetup:
    projectors: ProjectorSet
    state: np.ndarray = field(repr=False)
    basis: FusionBasis = field(repr=False)
    vectors: tuple[np.ndarray, ...] = field(repr=False, default=())


def kcbs_projectors_fibonacci() -> KCBSSetup:
    """Five rank-1 projectors on ``Hom(tau, tau^4)`` (dimension 3) forming a pentagon.

    ``v_j = (sin t cos(4 pi j/5), sin t sin(4 pi j/5), cos t)`` in fusion-basis
    coordinates with ``cos^2 t = cos(pi/5) / (1 + cos(pi/5))``, which makes
    ``v_j`` orthogonal to ``v_{j+1}``. The returned state is the symmetry axis,
    the last basis vector.
    """
    from ..fusion import enumerate_basis

    cat = fibonacci_category()
    basis = enumerate_basis(cat, ["tau"] * 4, "tau")
    if len(basis) != 3:
        raise RuntimeError(f"expected a 3-dimensional fusion space, got {len(basis)}")
    c = math.cos(math.pi / 5)
    cos_t = math.sqrt(c / (1 + c))
    sin_t = math.sqrt(1 - cos_t**2)
    vecs = tuple(
        np.array([sin_t * math.cos(4 * math.pi * j / 5), sin_t * math.sin(4 * math.pi * j / 5), cos_t], dtype=complex)
        for j in range(5)
    )
    ps = ProjectorSet(tuple(f"P{j + 1}" for j in range(5)), tuple(np.outer(v, v.conj()) for v in vecs))
    state = np.array([0, 0, 1], dtype=complex)
    return KCBSSetup(ps, state, basis, vecs)


def pentagon_scenario() -> MeasurementScenario:
    labels = tuple(f"P{j + 1}" for j in range(5))
    return MeasurementScenario(
        labels, tuple((labels[j], labels[(j + 1) % 5]) for j in range(5)), {m: (0, 1) for m in labels}
    )


def kcbs_model(state: np.ndarray | None = None) -> EmpiricalModel:
    """Empirical model of the Fibonacci pentagon projectors (default: the maximizing state)."""
    setup = kcbs_projectors_fibonacci()
    ps = setup.projectors
    return empirical_from_state(setup.state if state is None else state, ps, scenario_from_projectors(ps))


def _outcome_one(outcomes: Sequence) -> object:
    for o in outcomes:
        if o == 1 or o == "1":
            return o
    raise ModelError(f"no outcome '1' among {list(outcomes)}")


def kcbs_value(
    model_or_state: EmpiricalModel | np.ndarray,
    projectors: ProjectorSet | None = None,
    measurements: Sequence[str] | None = None,
) -> float:
    """``sum_i P(m_i = 1)`` from an empirical model, or ``sum_i <P_i>`` from a state and projectors."""
    if isinstance(model_or_state, EmpiricalModel):
        model = model_or_state
        ms = model.scenario.measurements if measurements is None else measurements
        return float(sum(model.probability(m, _outcome_one(model.scenario.outcomes[m])) for m in ms))
    if projectors is None:
        raise ValueError("a state needs a projector set")
    s = np.asarray(model_or_state, dtype=complex)
    labels = projectors.labels if measurements is None else measurements
    if s.ndim == 1:
        return float(sum((s.conj() @ projectors[m] @ s).real for m in labels))
    return float(sum(np.trace(s @ projectors[m]).real for m in labels))


def classical_bound(scenario: MeasurementScenario, functional: Mapping[str, float] | None = None):
    """Max of ``sum_m w_m [m = 1]`` over deterministic 0/1 assignments with exclusivity.

    Exclusivity: two measurements sharing a context are never both 1. Integer
    weights give an exact integer result.
    """
    ms = scenario.measurements
    w = {m: 1 for m in ms} if functional is None else dict(functional)
    unknown = set(w) - set(ms)
    if unknown:
        raise ModelError(f"functional names unknown measurements {sorted(unknown)}")
    if len(ms) > 24:
        raise ModelError("more than 24 measurements exceeds the desk-scale bound")
    pos = {m: i for i, m in enumerate(ms)}
    pairs = {tuple(sorted((pos[a], pos[b]))) for ctx in scenario.contexts for a, b in itertools.combinations(ctx, 2)}
    best = None
    for g in itertools.product((0, 1), repeat=len(ms)):
        if any(g[i] and g[j] for i, j in pairs):
            continue
        val = sum(w.get(m, 0) for m, x in zip(ms, g) if x)
        if best is None or val > best:
            best = val
    return best


def _as_word(w: BraidWord | str, n: int) -> BraidWord:
    return w if isinstance(w, BraidWord) else parse_braid_word(w, n)


def braided_projectors(
    cat: CategoryData,
    leaves: Sequence[int | str],
    total: int | str,
    words: Sequence[BraidWord | str],
    base_index: int = 0,
) -> tuple[ProjectorSet, np.ndarray]:
    """``P_w = rho(w) P_base rho(w)^dagger`` with ``P_base`` the projector onto one basis vector.

    Returns the projector set (labelled by the braid words) and the basis
    matrix of the representation's first basis vector as a default state.
    """
    rep = build_rep(cat, leaves, total)
    if not 0 <= base_index < rep.dim:
        raise ModelError(f"base projector index {base_index} outside 0..{rep.dim - 1}")
    base = np.zeros((rep.dim, rep.dim), dtype=complex)
    base[base_index, base_index] = 1.0
    labels, mats = [], []
    for w in words:
        word = _as_word(w, rep.n_strands)
        U = apply_word(rep, word)
        labels.append(f"P[{word}]" if len(word) else "P[e]")
        mats.append(U @ base @ U.conj().T)
    default_state = np.zeros(rep.dim, dtype=complex)
    default_state[0] = 1.0
    return ProjectorSet(tuple(labels), tuple(mats)), default_state


def contextuality_from_braiding(
    cat: CategoryData,
    leaves: Sequence[int | str],
    total: int | str,
    words: Sequence[BraidWord | str],
    base_index: int = 0,
    state: np.ndarray | None = None,
    tol: float = COMMUTE_TOL,
) -> EmpiricalModel:
    """Empirical model of braid-conjugated basis projectors measured on ``state``.

    Contexts come from the commutation graph of the projector family; the
    default state is the first fusion-basis vector.
    """
    ps, default_state = braided_projectors(cat, leaves, total, words, base_index)
    scenario = scenario_from_projectors(ps, tol)
    return empirical_from_state(default_state if state is None else state, ps, scenario, tol)
