import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import coefficients, golden_a, golden_b, golden_c, labels, random_combination, random_module_table, table_of
from lctables.errors import NotInCone
from lctables.extremal import Decomposition, K, Kind, Kx, MPow, R, extremal_table
from lctables.greedy import decompose, greedy_steps, recombine, unit_greedy_steps
from lctables.table import DeltaTable, GradedMap

F = Fraction
GOLDEN_A = Decomposition.of([(F(2, 3), MPow(2, 0)), (F(1, 3), MPow(3, 0))])
GOLDEN_B = Decomposition.of(
    [
        (F(3, 7), MPow(6, 6)),
        (F(4, 7), MPow(7, 6)),
        (F(1, 2), MPow(7, 5)),
        (F(5, 18), MPow(8, 5)),
        (F(11, 90), MPow(9, 5)),
        (F(1, 10), MPow(10, 5)),
        (2, Kx(0)),
    ]
)
GOLDEN_C_GREEDY = Decomposition.of([(1, MPow(2, 0)), (1, MPow(1, -2))])
GOLDEN_C_OTHER = Decomposition.of([(F(2, 3), MPow(2, 0)), (F(1, 3), MPow(3, 0)), (1, R(-2))])


def test_golden_ideal():
    assert decompose(golden_a()) == GOLDEN_A


def test_golden_cokernel():
    d = decompose(golden_b())
    assert d == GOLDEN_B
    assert recombine(d) == golden_b()


def test_golden_direct_sum():
    T = golden_c()
    assert decompose(T) == GOLDEN_C_GREEDY
    assert recombine(GOLDEN_C_GREEDY) == T
    assert recombine(GOLDEN_C_OTHER) == T


def test_single_k():
    assert decompose(extremal_table(K(3))) == Decomposition.of([(1, K(3))])


def test_recombine_examples():
    assert recombine(Decomposition()).is_zero()
    t = recombine(Decomposition.of([(1, R(0)), (1, K(0))]))
    assert t == DeltaTable(d0=GradedMap({0: 1}), d2=GradedMap({-2: 1}))


def test_zero_table():
    assert decompose(DeltaTable()) == Decomposition()


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(coefficients, labels), max_size=8))
def test_round_trip(terms):
    T = table_of(terms)
    assert recombine(decompose(T)) == T


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), labels), max_size=6))
def test_batched_steps_match_unit_steps(terms):
    T = table_of(terms)
    assert unrounded(unit_greedy_steps(T)) == decompose(T)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coefficients, labels), max_size=6), st.fractions(1, 30, max_denominator=30))
def test_homogeneous(terms, c):
    T = table_of(terms)
    scaled = Decomposition.of((c * r, label) for r, label in decompose(T))
    assert decompose(table_of((c * r, label) for r, label in terms)) == scaled


def unrounded(rounds):
    return Decomposition.of(p for r in rounds for p in r)


def test_each_unit_round_removes_one_unit_of_top_mass():
    rng = random.Random(7)
    for _ in range(100):
        T = random_module_table(rng)
        H = DeltaTable(d1=T.d1, d2=T.d2)
        for pieces in unit_greedy_steps(T)[1:]:
            kinds = {label.kind for _, label in pieces}
            top_round = kinds <= {Kind.MPOW, Kind.R}
            if top_round:
                a = max(H.d2.support) + 2
                before = H.d2[a - 2]
                assert sum(c for c, _ in pieces) == 1
                assert all(label.shift == -a for _, label in pieces)
            removed = recombine(Decomposition.of(pieces))
            H = DeltaTable(d1=H.d1 - removed.d1, d2=H.d2 - removed.d2)
            if top_round:
                assert H.d2[a - 2] == before - 1
        assert H.is_zero()


def test_batches_remove_their_coefficient_sum_of_top_mass():
    rng = random.Random(8)
    for _ in range(100):
        T = table_of(random_combination(rng))
        H = T
        for step, a, pieces in greedy_steps(T):
            removed = recombine(Decomposition.of(pieces))
            if step in ("m_power", "R"):
                before = H.d2[a - 2]
                assert removed.d2 == sum((c for c, _ in pieces), Fraction(0)) * GradedMap({a - 2: 1})
                H = DeltaTable(H.d0, H.d1 - removed.d1, H.d2 - removed.d2)
                assert H.d2[a - 2] == before - sum(c for c, _ in pieces)
            else:
                H = DeltaTable(H.d0 - removed.d0, H.d1 - removed.d1, H.d2)
        assert H.is_zero()


def test_loop_degrees_strictly_decrease():
    # each pass of the Δ^2 loop clears one degree, each k[x] pass lowers b
    rng = random.Random(9)
    for _ in range(100):
        T = random_module_table(rng)
        trace = greedy_steps(T)
        tops = [a for step, a, _ in trace if step in ("m_power", "R")]
        assert all(x >= y for x, y in zip(tops, tops[1:]))
        assert len(set(tops)) <= len(T.d2.support)
        assert len(tops) <= 2 * len(T.d2.support)
        bs = [b for step, b, _ in trace if step == "kx"]
        assert all(x > y for x, y in zip(bs, bs[1:]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 5), st.sampled_from("k kx".split()), st.integers(-6, 6)), max_size=8))
def test_dimension_one(terms):
    T = table_of((c, K(a) if kind == "k" else Kx(a)) for c, kind, a in terms)
    d = decompose(T)
    assert all(label.kind in (Kind.K, Kind.KX) for _, label in d)
    assert all(c.denominator == 1 for c, _ in d)


def test_outside_cone_is_rejected():
    # h^1 = 1 in degree 0 only: non-negative, but not monotone
    T = DeltaTable(d1=GradedMap({0: 1, -1: -1}))
    with pytest.raises(NotInCone):
        decompose(T)
    # h^1 = (1, 1, 2) in degrees 0..2 over R(0) grows after a plateau
    T = DeltaTable(d1=GradedMap({2: 2, 1: -1, -1: -1}), d2=GradedMap({-2: 1}))
    with pytest.raises(NotInCone):
        decompose(T)


def test_random_rational_combinations():
    rng = random.Random(11)
    for _ in range(200):
        T = table_of(random_combination(rng))
        assert recombine(decompose(T)) == T
