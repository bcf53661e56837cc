import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmcrystals import pathcrystal as pc
from kmcrystals import rootdata as rd
from kmcrystals.errors import BudgetExceeded, NotDominant, NotFiniteType, NotReducedWord, NotSimplyLaced
from kmcrystals.tensor import freudenthal, weyl_dim


def test_straight_path():
    p = pc.straight_path((1, 2))
    assert p.endpoint() == (1, 2)
    assert pc.straight_path((0, 0)).endpoint() == (0, 0)
    with pytest.raises(NotDominant):
        pc.straight_path((1, -1))


def test_a1_string():
    g = rd.cartan_matrix("A1")
    x = pc.straight_path((3,))
    weights = []
    while x is not None:
        weights.append(x.endpoint())
        x = pc.f_op(g, x, 1)
    assert weights == [(3,), (1,), (-1,), (-3,)]


def test_a2_rho_first_steps(A2):
    x = pc.f_op(A2, pc.straight_path((1, 1)), 1)
    assert x.endpoint() == (-1, 2)
    assert pc.epsilon(x, 1) == 1 and pc.phi(x, 1) == 0
    assert pc.epsilon(x, 2) == 0 and pc.phi(x, 2) == 2
    assert pc.e_op(A2, x, 1) == pc.straight_path((1, 1))


@pytest.mark.parametrize(
    "label, lam, size",
    [
        ("A1", (1,), 2),
        ("A2", (1, 1), 8),
        ("A3", (1, 1, 1), 64),
        ("B2", (1, 1), 16),
        ("C2", (1, 1), 16),
        ("G2", (1, 0), 14),
        ("G2", (0, 1), 7),
        ("D4", (0, 1, 0, 0), 28),
    ],
)
def test_crystal_sizes(label, lam, size):
    g = rd.cartan_matrix(label)
    graph = pc.generate_crystal(g, lam)
    assert len(graph) == size == weyl_dim(g, lam)
    assert graph.character() == freudenthal(g, lam)
    assert graph.highest_weight_elements() == [graph.highest]


def test_operators_are_partial_inverses_on_crystal(A3):
    graph = pc.generate_crystal(A3, (1, 0, 1))
    for (x, i), y in graph.edges.items():
        assert pc.e_op(A3, y, i) == x
    for x in graph.nodes:
        for i in A3.nodes:
            assert pc.epsilon(x, i) == pc.epsilon_by_raising(A3, x, i)
            assert pc.phi(x, i) == pc.phi_by_lowering(A3, x, i)
            assert pc.phi(x, i) - pc.epsilon(x, i) == x.endpoint()[i - 1]


def test_budget_and_finite_guards():
    with pytest.raises(BudgetExceeded):
        pc.generate_crystal(rd.cartan_matrix("A3"), (2, 2, 2), budget=50)
    aff = rd.cartan_matrix("A1^(1)")
    with pytest.raises(NotFiniteType):
        pc.generate_crystal(aff, (1, 0))
    with pytest.raises(BudgetExceeded):
        pc.generate_crystal(aff, (1, 0), budget=30)


def test_monomial_apply_order(A2):
    # f_1 f_2 pi_rho: f_2 acts first
    x = pc.monomial_apply(A2, (1, 1), [(1, 1), (2, 1)])
    assert x.endpoint() == (0, 0)
    assert pc.monomial_apply(A2, (1, 0), [(1, 1), (2, 1)]) is None
    assert pc.apply_f_sequence(A2, pc.straight_path((1, 0)), [1, 2]).endpoint() == (0, -1)


@pytest.mark.parametrize("label, lam", [("A2", (1, 1)), ("A3", (1, 1, 1)), ("D4", (1, 0, 0, 1)), ("A2", (2, 1))])
def test_stembridge(label, lam):
    g = rd.cartan_matrix(label)
    assert pc.check_stembridge(pc.generate_crystal(g, lam)) == []


def test_stembridge_rejects_non_simply_laced():
    g = rd.cartan_matrix("B2")
    with pytest.raises(NotSimplyLaced):
        pc.check_stembridge(pc.generate_crystal(g, (1, 0)))


def _demazure_operator(g, i, char):
    """Demazure operator on a formal character."""
    alpha = rd.simple_root(g, i)
    out = Counter()
    for lam, m in char.items():
        k = lam[i - 1]
        if k >= 0:
            for j in range(k + 1):
                out[rd.sub(lam, rd.scale(j, alpha))] += m
        else:
            for j in range(1, -k):
                out[rd.add(lam, rd.scale(j, alpha))] -= m
    return {w: m for w, m in out.items() if m}


def _demazure_character(g, lam, word):
    char = {tuple(lam): 1}
    for i in reversed(word):
        char = _demazure_operator(g, i, char)
    return char


def _reduced_words(g, max_len):
    for r in range(max_len + 1):
        for w in itertools.product(g.nodes, repeat=r):
            if rd.is_reduced(g, w):
                yield w


@pytest.mark.parametrize("label, lam", [("A2", (1, 1)), ("A2", (2, 1)), ("B2", (1, 1)), ("A3", (1, 0, 1))])
def test_demazure_subcrystal_character(label, lam):
    g = rd.cartan_matrix(label)
    for w in _reduced_words(g, len(rd.longest_word(g))):
        sub = pc.demazure_subcrystal(g, lam, w)
        got = Counter(x.endpoint() for x in sub)
        assert dict(got) == _demazure_character(g, lam, w), w


def test_demazure_full_and_extremal(A2):
    w0 = rd.longest_word(A2)
    assert len(pc.demazure_subcrystal(A2, (1, 1), w0)) == 8
    x = pc.extremal_element(A2, (1, 1), (1, 2))
    assert x.endpoint() == rd.apply_word(A2, (1, 2), (1, 1))
    assert x in pc.demazure_subcrystal(A2, (1, 1), (1, 2))
    with pytest.raises(NotReducedWord):
        pc.demazure_subcrystal(A2, (1, 1), (1, 1))


def test_dot_a1():
    g = rd.cartan_matrix("A1")
    dot = pc.to_dot(pc.generate_crystal(g, (2,)))
    assert dot.count("label=\"1\"") == 2
    assert dot.count("[label=\"(") == 3
    assert dot == pc.to_dot(pc.generate_crystal(g, (2,)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 2), max_size=10), st.integers(0, 2), st.integers(0, 2))
def test_random_walks_stay_in_crystal(letters, a, b):
    g = rd.cartan_matrix("C2")
    lam = (a, b)
    graph = pc.generate_crystal(g, lam)
    x = pc.straight_path(lam)
    for i in letters:
        y = pc.f_op(g, x, i)
        if y is None:
            assert pc.phi(x, i) == 0
            continue
        assert y in graph
        assert pc.e_op(g, y, i) == x
        assert rd.sub(x.endpoint(), y.endpoint()) == rd.simple_root(g, i)
        x = y
