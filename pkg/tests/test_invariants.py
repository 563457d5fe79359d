import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topocontext.braid import BraidWord, parse_braid_word, random_word
from topocontext.category import CategoryError, global_dimension
from topocontext.invariants import (
    FIBONACCI_A,
    FIBONACCI_T,
    bracket_state_counts,
    jones_at_fibonacci_root,
    kauffman_bracket_oracle,
    link_invariant,
    markov_trace,
)
from topocontext.models import PHI, builtin, fibonacci_category, ising_category

A = FIBONACCI_A
T = FIBONACCI_T


def w(text, n):
    return parse_braid_word(text, n)


def test_evaluation_point():
    assert T == pytest.approx(cmath.exp(2j * math.pi / 5))
    assert -(A**2) - A**-2 == pytest.approx(PHI)


@pytest.mark.parametrize(
    "word, n, closed_form",
    [
        ("", 1, 1),
        ("s1", 2, 1),  # unknot
        ("s1 s1 s1", 2, -(T**-4) + T**-3 + T**-1),
        ("s1^-1 s1^-1 s1^-1", 2, -(T**4) + T**3 + T),
        ("s1 s2^-1 s1 s2^-1", 3, T**2 - T + 1 - T**-1 + T**-2),
        ("", 2, -(A**2) - A**-2),  # two-component unlink, t^(1/2) = A^-2
        ("s1 s1", 2, -(A**2) - A**10),  # Hopf link
    ],
)
def test_closed_forms(word, n, closed_form):
    b = w(word, n)
    assert abs(jones_at_fibonacci_root(b) - closed_form) < 1e-10
    assert abs(kauffman_bracket_oracle(b) - closed_form) < 1e-10


def test_figure_eight_real():
    val = jones_at_fibonacci_root(w("s1 s2^-1 s1 s2^-1", 3))
    assert abs(val.imag) < 1e-12
    assert val.real == pytest.approx(-1.2360679774997898, abs=1e-12)


@pytest.mark.parametrize("word, n", [("s1 s1 s1", 2), ("s1 s2^-1 s1 s2^-1", 3), ("s1 s1 s1 s1 s1", 2), ("s1 s2 s1 s2", 3)])
def test_oracle_at_one_is_one_for_knots(word, n):
    # V(1) = 1 for any knot; the 4-letter 3-strand word above is a knot too
    assert kauffman_bracket_oracle(w(word, n), 1.0) == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 3.0), st.integers(1, 5))
def test_unlink_value(angle, k):
    # k-component unlink: delta^(k-1) at any A on the unit circle
    a = cmath.exp(1j * angle)
    assert kauffman_bracket_oracle(BraidWord(k), a) == pytest.approx((-(a**2) - a**-2) ** (k - 1))


def test_state_counts_total():
    counts = bracket_state_counts(w("s1 s2 s1^-1 s2", 3))
    assert sum(counts.values()) == 16


def test_oracle_limit():
    with pytest.raises(ValueError, match="oracle limit exceeded"):
        kauffman_bracket_oracle(BraidWord(2, ((1, 1),) * 21))


def test_oracle_bit_stable():
    b = w("s1 s2^-1 s1 s2 s1^-1 s2 s2 s1", 3)
    assert kauffman_bracket_oracle(b) == kauffman_bracket_oracle(b)


@pytest.mark.parametrize("n", range(1, 6))
def test_identity_trace(n):
    fib = fibonacci_category()
    raw = markov_trace(fib, "tau", BraidWord(n), normalize=False)
    assert raw == pytest.approx(PHI**n / global_dimension(fib))
    assert markov_trace(fib, "tau", BraidWord(n)) == pytest.approx(PHI ** (n - 1))


def test_markov_trace_errors():
    with pytest.raises(CategoryError, match="inhomogeneous"):
        markov_trace(ising_category(), ["sigma", "psi"], BraidWord(2))


def _random_pair(seed, n):
    rng = np.random.default_rng(seed)
    return random_word(n, int(rng.integers(0, 11)), rng), random_word(n, int(rng.integers(0, 11)), rng)


@pytest.mark.parametrize("seed", range(10))
def test_markov_conjugation(seed):
    u, b = _random_pair(seed, 3)
    assert abs(jones_at_fibonacci_root(u * b * u.inverse()) - jones_at_fibonacci_root(b)) < 1e-8


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("sign", [1, -1])
def test_markov_stabilization(seed, sign):
    _, b = _random_pair(seed, 3)
    assert abs(jones_at_fibonacci_root(b.stabilize(sign)) - jones_at_fibonacci_root(b)) < 1e-8


@pytest.mark.parametrize("seed", range(10))
def test_mirror_conjugates(seed):
    _, b = _random_pair(seed, 4)
    assert abs(jones_at_fibonacci_root(b.mirror()) - jones_at_fibonacci_root(b).conjugate()) < 1e-8


@pytest.mark.parametrize("name, leaf", [("ising", "sigma"), ("su2k:3", "1/2"), ("su2k:4", "1")])
def test_other_categories_markov_invariant(name, leaf):
    cat = builtin(name)
    rng = np.random.default_rng(3)
    for _ in range(5):
        b = random_word(3, 8, rng)
        v = link_invariant(cat, leaf, b)
        assert abs(link_invariant(cat, leaf, b.stabilize(1)) - v) < 1e-8
        assert abs(link_invariant(cat, leaf, b.stabilize(-1)) - v) < 1e-8


def test_ising_unknot_and_unlink():
    ising = ising_category()
    assert link_invariant(ising, "sigma", BraidWord(1)) == pytest.approx(1)
    assert link_invariant(ising, "sigma", BraidWord(2)) == pytest.approx(math.sqrt(2))


def test_random_oracle_agreement_longer_words():
    rng = np.random.default_rng(11)
    for _ in range(10):
        b = random_word(4, 12, rng)
        assert abs(jones_at_fibonacci_root(b) - kauffman_bracket_oracle(b)) < 1e-8
