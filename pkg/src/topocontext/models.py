"""Built-in anyon models: Fibonacci, Ising and SU(2)_k."""

from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache

import numpy as np

from .category import CategoryData, CategoryError, FusionRules, admissible_f_keys, make_category

__all__ = [
    "PHI",
    "fibonacci_category",
    "ising_category",
    "su2k_category",
    "trivial_category",
    "builtin",
    "BUILTIN_NAMES",
]

PHI = (1 + math.sqrt(5)) / 2
MAX_LEVEL = 8
BUILTIN_NAMES = ("fibonacci", "ising", "su2k:<k>")


def _unit_fusion(n: int) -> np.ndarray:
    N = np.zeros((n, n, n), dtype=int)
    for a in range(n):
        N[0, a, a] = N[a, 0, a] = 1
    return N


def _trivial_symbols(N: np.ndarray) -> tuple[dict, dict]:
    rules = FusionRules(N)
    F = {key: 1.0 for key in admissible_f_keys(rules)}
    n = N.shape[0]
    R = {(a, b, c): 1.0 for a, b, c in itertools.product(range(n), repeat=3) if N[a, b, c]}
    return F, R


@lru_cache(maxsize=None)
def trivial_category() -> CategoryData:
    """The category with only the unit label (Vec)."""
    N = np.ones((1, 1, 1), dtype=int)
    F, R = _trivial_symbols(N)
    return make_category("trivial", ["1"], N, F, R, twists=[1.0])


@lru_cache(maxsize=None)
def fibonacci_category() -> CategoryData:
    """Fibonacci anyons: labels ``1`` (id 0) and ``tau`` (id 1), ``tau x tau = 1 + tau``."""
    N = _unit_fusion(2)
    N[1, 1, 0] = N[1, 1, 1] = 1
    F, R = _trivial_symbols(N)
    block = np.array([[1 / PHI, PHI**-0.5], [PHI**-0.5, -1 / PHI]])
    for e, f in itertools.product(range(2), repeat=2):
        F[(1, 1, 1, 1, e, f)] = block[e, f]
    R[(1, 1, 0)] = cmath.exp(-4j * math.pi / 5)
    R[(1, 1, 1)] = cmath.exp(3j * math.pi / 5)
    return make_category("fibonacci", ["1", "tau"], N, F, R)


@lru_cache(maxsize=None)
def ising_category() -> CategoryData:
    """Ising anyons: ``1`` (0), ``sigma`` (1), ``psi`` (2) with the standard Kitaev data."""
    N = _unit_fusion(3)
    N[1, 1, 0] = N[1, 1, 2] = 1
    N[1, 2, 1] = N[2, 1, 1] = 1
    N[2, 2, 0] = 1
    F, R = _trivial_symbols(N)
    s = 1 / math.sqrt(2)
    for (e, f), v in {(0, 0): s, (0, 2): s, (2, 0): s, (2, 2): -s}.items():
        F[(1, 1, 1, 1, e, f)] = v
    F[(1, 2, 1, 2, 1, 1)] = -1.0
    F[(2, 1, 2, 1, 1, 1)] = -1.0
    R[(1, 1, 0)] = cmath.exp(-1j * math.pi / 8)
    R[(1, 1, 2)] = cmath.exp(3j * math.pi / 8)
    R[(1, 2, 1)] = R[(2, 1, 1)] = -1j
    R[(2, 2, 0)] = -1.0
    return make_category("ising", ["1", "sigma", "psi"], N, F, R)


def _spin_name(jj: int) -> str:
    return str(jj // 2) if jj % 2 == 0 else f"{jj}/2"


@lru_cache(maxsize=None)
def su2k_category(k: int) -> CategoryData:
    """SU(2)_k with labels stored as doubled spins ``0..k``.

    F-symbols are the unitary q-6j symbols at ``q = exp(2 pi i / (k+2))``,
    ``[F^{abc}_d]_{ef} = (-1)^{a+b+c+d} sqrt([2e+1][2f+1]) {a b e; c d f}_q``;
    R-symbols are ``(-1)^{c-a-b} q^{(c(c+1) - a(a+1) - b(b+1))/2}`` (spins, not doubled).
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_LEVEL:
        raise CategoryError(f"unsupported level {k!r}; expected an integer in 1..{MAX_LEVEL}")
    k = int(k)
    n = k + 1
    N = np.zeros((n, n, n), dtype=int)
    for a, b, c in itertools.product(range(n), repeat=3):
        if abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0:
            N[a, b, c] = 1

    qint = [math.sin(m * math.pi / (k + 2)) / math.sin(math.pi / (k + 2)) for m in range(2 * k + 4)]
    qfact = [1.0]
    for m in range(1, 2 * k + 4):
        qfact.append(qfact[-1] * qint[m])

    def delta(a, b, c):
        return math.sqrt(qfact[(a + b - c) // 2] * qfact[(a - b + c) // 2] * qfact[(b + c - a) // 2] / qfact[(a + b + c) // 2 + 1])

    def sixj(a, b, e, c, d, f):
        triads = [(a, b, e), (c, d, e), (a, d, f), (c, b, f)]
        lo = max(sum(t) for t in triads) // 2
        hi = min((a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2)
        total = 0.0
        for z in range(lo, hi + 1):
            den = (
                qfact[z - (a + b + e) // 2]
                * qfact[z - (c + d + e) // 2]
                * qfact[z - (a + d + f) // 2]
                * qfact[z - (c + b + f) // 2]
                * qfact[(a + b + c + d) // 2 - z]
                * qfact[(a + c + e + f) // 2 - z]
                * qfact[(b + d + e + f) // 2 - z]
            )
            total += (-1) ** z * qfact[z + 1] / den
        return total * math.prod(delta(*t) for t in triads)

    rules = FusionRules(N)
    F = {}
    for a, b, c, d, e, f in admissible_f_keys(rules):
        sign = (-1) ** ((a + b + c + d) // 2)
        F[(a, b, c, d, e, f)] = sign * math.sqrt(qint[e + 1] * qint[f + 1]) * sixj(a, b, e, c, d, f)

    R = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if N[a, b, c]:
            phase = (c * (c + 2) - a * (a + 2) - b * (b + 2)) / 8
            R[(a, b, c)] = (-1) ** ((c - a - b) // 2) * cmath.exp(2j * math.pi * phase / (k + 2))

    twists = [cmath.exp(2j * math.pi * (jj * (jj + 2) / 4) / (k + 2)) for jj in range(n)]
    return make_category(f"su2k:{k}", [_spin_name(jj) for jj in range(n)], N, F, R, twists=twists)


def builtin(name: str) -> CategoryData:
    """Look up ``fibonacci``, ``ising``, ``trivial`` or ``su2k:<k>``."""
    key = name.strip().lower()
    if key == "fibonacci":
        return fibonacci_category()
    if key == "ising":
        return ising_category()
    if key == "trivial":
        return trivial_category()
    if key.startswith("su2k:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError:
            raise CategoryError(f"unknown builtin category {name!r}") from None
        return su2k_category(k)
    raise CategoryError(f"unknown builtin category {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
