"""Random inputs, golden tables and independent oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from lctables.extremal import K, Kx, MonomialIdealSpec, MPow, R, combine, extremal_table, monomial_ideal_table
from lctables.facets import MPoint, combine_points, rays, shift_generator
from lctables.table import GradedMap, RawWindow, Tail, from_raw


def random_label(rng: random.Random, shifts=(-6, 6), tmax=6):
    a = rng.randint(*shifts)
    kind = rng.choice("k x m r".split())
    if kind == "m":
        return MPow(rng.randint(1, tmax), a)
    return {"k": K, "x": Kx, "r": R}[kind](a)


def random_rational(rng: random.Random, top=20) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, top))


def random_combination(rng: random.Random, max_terms=8):
    return [(random_rational(rng), random_label(rng)) for _ in range(rng.randint(1, max_terms))]


def table_of(terms):
    return combine((c, extremal_table(label)) for c, label in terms)


def random_ideal(rng: random.Random) -> frozenset:
    # staircase generators x^p, y^q plus a few corners; always m-primary
    p, q = rng.randint(1, 4), rng.randint(1, 4)
    gens = {(p, 0), (0, q)}
    for _ in range(rng.randint(0, 3)):
        gens.add((rng.randint(0, p), rng.randint(0, q)))
    return frozenset(gens)


def random_module_table(rng: random.Random):
    parts = []
    for _ in range(rng.randint(1, 5)):
        c = rng.randint(1, 3)
        if rng.random() < 0.4:
            parts.append((c, monomial_ideal_table(MonomialIdealSpec(random_ideal(rng), rng.randint(-4, 4)))))
        else:
            parts.append((c, extremal_table(random_label(rng, (-4, 4), 5))))
    return combine(parts)


def random_cone_point(rng: random.Random, d: int, lo: int = 0, max_terms=10) -> MPoint:
    gens = rays(d)
    return combine_points(
        (random_rational(rng), shift_generator(rng.choice(gens), lo)) for _ in range(rng.randint(1, max_terms))
    )


labels = st.one_of(
    st.builds(K, st.integers(-6, 6)),
    st.builds(Kx, st.integers(-6, 6)),
    st.builds(R, st.integers(-6, 6)),
    st.builds(MPow, st.integers(1, 6), st.integers(-6, 6)),
)
coefficients = st.fractions(min_value=0, max_value=20, max_denominator=20)
graded_maps = st.dictionaries(st.integers(-8, 8), st.fractions(-10, 10, max_denominator=12), max_size=8).map(GradedMap)
mpoints = st.builds(MPoint, graded_maps, graded_maps, graded_maps)


# -- golden tables --------------------------------------------------------------

IDEAL_X2_Y2 = MonomialIdealSpec(frozenset({(2, 0), (0, 2)}))


def golden_a():
    return monomial_ideal_table(IDEAL_X2_Y2)


def golden_b():
    # published table of the cokernel example, degrees -8..5
    h1 = [2, 2, 3, 5, 7, 9, 11, 13, 10, 7, 4, 2, 1, 0]
    h2 = [3, 1] + [0] * 12
    return from_raw(RawWindow(-8, 5, (0,) * 14, tuple(h1), tuple(h2), Tail()))


def golden_c():
    return combine([(1, golden_a()), (1, extremal_table(R(-2)))])


# -- oracles ----------------------------------------------------------------------


def dense_delta(values: dict[int, Fraction], t: int, lo: int, hi: int) -> dict[int, Fraction]:
    """Δ^t on an explicit list over ``[lo - t, hi]``, entries outside treated as 0."""
    seq = {n: Fraction(values.get(n, 0)) for n in range(lo - t, hi + t + 1)}
    for _ in range(t):
        seq = {n: seq[n] - seq.get(n + 1, Fraction(0)) for n in seq}
    return {n: v for n, v in seq.items() if v}


def cyclic_oracle(column: dict[int, int], a: int, b: int):
    """Solve ``column = sum_t r_t [R/m^t(-a)]`` for t = 1..b-a+1 with sympy."""
    size = b - a + 1
    rs = sympy.symbols(f"r1:{size + 1}")
    eqs = []
    for n in range(a, b + 1):
        # [R/m^t(-a)]_n = n - a + 1 whenever n < a + t
        eqs.append(sum((n - a + 1) * rs[t - 1] for t in range(n - a + 1, size + 1)) - column.get(n, 0))
    (sol,) = sympy.linsolve(eqs, rs)
    return {t: Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for t, v in zip(range(1, size + 1), sol)}


def fraction_rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def dense_functional(name: str, n: int, s: int, A: MPoint, lo: int = -40, hi: int = 40) -> Fraction:
    """Functional values by summing over an explicit degree range."""
    a = lambda i, j: A.rows[i][j]
    if name == "mu":
        return a(0, s)
    if name == "phi":
        return a(2, s)
    if name == "tau":
        return a(1, s) + sum(a(2, i) for i in range(lo, s))
    total = sum(a(1, i) for i in range(s + n + 1, hi + 1))
    total += (n + 1) * a(1, s + n)
    total += sum((i + 1) * a(2, s + i) for i in range(n))
    return Fraction(total)
