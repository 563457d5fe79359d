import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topocontext.category import (
    CategoryError,
    admissible_f_keys,
    derive_twists,
    make_category,
    quantum_dimensions,
    s_matrix,
    verify_all,
    verify_hexagon,
    verify_pentagon,
)
from topocontext.io import load_category
from topocontext.models import PHI, builtin, fibonacci_category, ising_category, su2k_category

BUILTINS = ["trivial", "fibonacci", "ising"] + [f"su2k:{k}" for k in range(1, 9)]


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_axioms(name):
    reports = verify_all(builtin(name), tol=1e-10)
    assert [r.name for r in reports if not r.passed] == []


def test_fibonacci_f_and_r():
    fib = fibonacci_category()
    _, _, F = fib.f_block(1, 1, 1, 1)
    s = PHI**-0.5
    np.testing.assert_allclose(F, [[1 / PHI, s], [s, -1 / PHI]], atol=1e-15)
    assert fib.R(1, 1, 0) == pytest.approx(cmath.exp(-4j * math.pi / 5))
    assert fib.R(1, 1, 1) == pytest.approx(cmath.exp(3j * math.pi / 5))


def test_ising_data():
    ising = ising_category()
    _, _, F = ising.f_block(1, 1, 1, 1)
    np.testing.assert_allclose(F, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)
    assert ising.R(1, 1, 0) == pytest.approx(cmath.exp(-1j * math.pi / 8))
    assert ising.R(1, 1, 2) == pytest.approx(cmath.exp(3j * math.pi / 8))
    assert ising.R(2, 2, 0) == pytest.approx(-1)


@pytest.mark.parametrize(
    "name, dims",
    [
        ("fibonacci", [1, PHI]),
        ("ising", [1, math.sqrt(2), 1]),
        ("su2k:3", [1, PHI, PHI, 1]),
    ],
)
def test_quantum_dimensions(name, dims):
    np.testing.assert_allclose(quantum_dimensions(builtin(name)), dims, atol=1e-12)


@pytest.mark.parametrize("k", range(1, 9))
def test_su2k_dimensions_and_twists(k):
    cat = su2k_category(k)
    j2 = np.arange(k + 1)
    q = np.sin((j2 + 1) * np.pi / (k + 2)) / np.sin(np.pi / (k + 2))
    np.testing.assert_allclose(quantum_dimensions(cat), q, atol=1e-10)
    np.testing.assert_allclose(cat.twists, np.exp(2j * np.pi * j2 * (j2 + 2) / 4 / (k + 2)), atol=1e-12)


def test_twists_fibonacci_ising():
    np.testing.assert_allclose(fibonacci_category().twists, [1, cmath.exp(4j * math.pi / 5)], atol=1e-14)
    np.testing.assert_allclose(ising_category().twists, [1, cmath.exp(1j * math.pi / 8), -1], atol=1e-14)


def test_s_matrices():
    np.testing.assert_allclose(s_matrix(fibonacci_category()), [[1, PHI], [PHI, -1]], atol=1e-12)
    r2 = math.sqrt(2)
    np.testing.assert_allclose(s_matrix(ising_category()), [[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]], atol=1e-12)


def test_twists_derived_from_r():
    fib = fibonacci_category()
    np.testing.assert_allclose(derive_twists(fib.rules, fib.r), fib.twists, atol=1e-14)


def test_broken_file_fails_pentagon(data_dir):
    cat = load_category(data_dir / "broken.json")
    rep = verify_pentagon(cat)
    assert not rep.passed and rep.residual > 0.1
    assert not verify_hexagon(cat).passed


@pytest.mark.parametrize("name", ["fibonacci", "ising", "su2k:3"])
def test_admissible_f_keys_brute_force(name):
    rules = builtin(name).rules
    n, N = rules.n_labels, rules.N
    brute = [
        (a, b, c, d, e, f)
        for a in range(n) for b in range(n) for c in range(n) for d in range(n)
        for e in range(n) for f in range(n)
        if N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d]
    ]
    assert list(admissible_f_keys(rules)) == brute


def _fib_parts():
    fib = fibonacci_category()
    return fib, dict(fib.f), dict(fib.r)


def test_missing_f_entry_rejected():
    fib, f, r = _fib_parts()
    del f[(1, 1, 1, 1, 1, 1)]
    cat = make_category("bad", ["1", "tau"], fib.N, f, r)
    with pytest.raises(CategoryError, match=r"\(1, 1, 1, 1, 1, 1\)"):
        verify_pentagon(cat)


def test_inadmissible_entry_rejected():
    fib, f, r = _fib_parts()
    f[(0, 0, 0, 0, 0, 1)] = 1.0
    with pytest.raises(CategoryError):
        make_category("bad", ["1", "tau"], fib.N, f, r)


def test_multiplicity_rejected():
    fib, f, r = _fib_parts()
    N = fib.N.copy()
    N[1, 1, 1] = 2
    with pytest.raises(CategoryError):
        make_category("bad", ["1", "tau"], N, f, r)


def test_inadmissible_lookup_is_zero():
    assert fibonacci_category().F(0, 0, 0, 0, 0, 1) == 0


@pytest.mark.parametrize("name", ["nosuch", "su2k:0", "su2k:9", "su2k:x"])
def test_unknown_builtin(name):
    with pytest.raises(CategoryError):
        builtin(name)


@settings(max_examples=25, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_gauge_transform_preserves_axioms(p0, p1):
    # vertex gauge u^{tau tau}_c: F and R change, consistency and twists do not
    fib, f, r = _fib_parts()
    u = {(1, 1, 0): cmath.exp(1j * p0), (1, 1, 1): cmath.exp(1j * p1)}
    U = lambda a, b, c: u.get((a, b, c), 1.0)  # noqa: E731
    g_f = {k: v * U(k[0], k[1], k[4]) * U(k[4], k[2], k[3]) / (U(k[1], k[2], k[5]) * U(k[0], k[5], k[3])) for k, v in f.items()}
    g_r = {k: v * U(k[1], k[0], k[2]) / U(k[0], k[1], k[2]) for k, v in r.items()}
    g = make_category("gauged", ["1", "tau"], fib.N, g_f, g_r)
    assert all(rep.passed for rep in verify_all(g))
    np.testing.assert_allclose(g.twists, fib.twists, atol=1e-12)
