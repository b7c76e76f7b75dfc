"""Admissible columns and finite-length Hilbert function decompositions.

A column is a :class:`GradedMap`.  The growth condition ``(*_a^b)`` below is
Macaulay's bound for cyclic modules over ``k[x,y]``; a column meeting it with
value 1 at ``a`` is an *admissible column generated in degree a*.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import HypothesesViolated, NotStarShaped
from .extremal import hilbert_column_cyclic
from .table import ZERO, GradedMap


def star_condition(H: GradedMap, a: int, b: int) -> bool:
    """Check ``(*_a^b)``: support exactly ``[a, b]`` and bounded growth.

    For ``a < n <= b`` the value ``h_n`` may reach ``(n-a+1) h_a`` only while
    the column is still growing maximally, i.e. ``h_{n-1} = (n-a) h_a``, and
    is otherwise capped by ``h_{n-1} h_a``.
    """
    if a > b:
        return False
    if any(n < a or n > b for n in H.support):
        return False
    if any(H[n] <= 0 for n in range(a, b + 1)):
        return False
    ha = H[a]
    for n in range(a + 1, b + 1):
        prev, cur = H[n - 1], H[n]
        if prev == (n - a) * ha:
            bound = (n - a + 1) * ha
        elif prev < (n - a) * ha:
            bound = prev * ha
        else:
            return False
        if cur > bound:
            return False
    return True


def is_admissible(H: GradedMap, a: int) -> bool:
    """Admissible column generated in degree ``a`` (integer values, ``h_a = 1``)."""
    if not H or H[a] != 1:
        return False
    if any(v.denominator != 1 for v in H.values()):
        return False
    return star_condition(H, a, max(H.support))


def solve_cyclic(H: GradedMap, a: int) -> list[tuple[Fraction, int]]:
    """Exact solution of ``H = sum_t r_t [R/m^t(-a)]`` by back-substitution.

    With ``d_i = h_{a+i}`` and ``s`` the top offset, the coefficient of
    ``R/m^{i+1}`` is ``d_i/(i+1) - d_{i+1}/(i+2)`` (and ``d_s/(s+1)`` at the
    top).  Coefficients may come out negative; callers decide what that means.
    Returns ``(r, t)`` pairs with ``t`` decreasing and zero ``r`` dropped.
    """
    if not H:
        return []
    if min(H.support) < a:
        raise NotStarShaped(f"column has entries below its generator degree {a}")
    s = max(H.support) - a
    ratios = [H[a + i] / (i + 1) for i in range(s + 1)] + [ZERO]
    out = []
    for i in range(s, -1, -1):
        r = ratios[i] - ratios[i + 1]
        if r:
            out.append((r, i + 1))
    return out


def decompose_finite_length(H: GradedMap, a: int, b: int) -> list[tuple[Fraction, int]]:
    """Write a ``(*_a^b)`` column as ``sum r [R/m^t(-a)]`` with ``r >= 0``.

    Raises :class:`NotStarShaped` if ``H`` fails the growth condition, or if
    it passes only through the ``h_{n-1} h_a`` clause with ``h_a != 1`` and
    the unique solution has a negative coefficient.
    """
    if not star_condition(H, a, b):
        raise NotStarShaped(f"column does not satisfy (*) on [{a}, {b}]")
    terms = solve_cyclic(H, a)
    if any(r < 0 for r, _ in terms):
        raise NotStarShaped("column has no non-negative decomposition into cyclic columns")
    return terms


def _iterative_decomposition(H: GradedMap, a: int) -> list[tuple[Fraction, int]]:
    # Peel off the tallest cyclic column each round; cross-check for solve_cyclic.
    out = []
    rest = GradedMap(H)
    while rest:
        b = max(rest.support)
        if b < a:
            raise NotStarShaped("residue escaped below the generator degree")
        t = b - a + 1
        r = rest[b] / t
        out.append((r, t))
        rest = rest - r * hilbert_column_cyclic(t, a)
    return out


def max_admissible(P: GradedMap, a: int) -> GradedMap:
    """Largest admissible column generated in degree ``a`` lying under ``P``."""
    if not P.is_nonnegative():
        raise ValueError("max_admissible needs a non-negative column")
    return GradedMap({n: min(v, n - a + 1) for n, v in P.items() if n >= a})


def truncation(H: GradedMap, degrees: Iterable[int]) -> GradedMap:
    """``H`` minus the number of times each degree occurs in ``degrees``."""
    counts = Counter(degrees)
    return H - GradedMap({n: c for n, c in counts.items()})


@dataclass(frozen=True)
class AdmissibleWitness:
    column: GradedMap
    gen_degree: int
    top_degree: int

    def __post_init__(self):
        if not isinstance(self.column, GradedMap):
            object.__setattr__(self, "column", GradedMap(self.column))
        ok = (
            self.column[self.gen_degree] == 1
            and all(v.denominator == 1 for v in self.column.values())
            and star_condition(self.column, self.gen_degree, self.top_degree)
        )
        if not ok:
            raise NotStarShaped("column is not admissible in the given degrees")

    @classmethod
    def of(cls, column: GradedMap, gen_degree: int | None = None) -> AdmissibleWitness:
        column = GradedMap(column)
        a = min(column.support) if gen_degree is None else gen_degree
        return cls(column, a, max(column.support))


def _strictly_increasing_to(col: GradedMap, b: int) -> bool:
    if not col:
        return True
    start = min(col.support)
    return max(col.support) == b and all(col[n] > col[n - 1] for n in range(start, b + 1))


def subtract_admissible(U: AdmissibleWitness, V: GradedMap) -> tuple[GradedMap, GradedMap]:
    """Split ``U - V`` into ``W = max(0, U - V)`` and ``Z = max(0, V - U)``.

    Here ``b`` is the larger of the top degrees of ``U`` and ``V``.  ``V``
    must vanish outside ``[a', b]`` for some ``a' >= a``, stay below
    ``n - a + 1`` and increase strictly on ``[a', b]``.  Then ``W`` is again
    admissible and ``Z`` is zero or strictly increasing up to ``b``.
    """
    V = GradedMap(V)
    a = U.gen_degree
    b = max(U.top_degree, max(V.support)) if V else U.top_degree
    if any(v.denominator != 1 or v < 0 for v in V.values()):
        raise HypothesesViolated("V must have non-negative integer entries")
    if V:
        a_prime = min(V.support)
        if a_prime < a:
            raise HypothesesViolated(f"V must vanish below {a}")
        for n in range(a_prime, b + 1):
            if V[n] > n - a + 1:
                raise HypothesesViolated(f"v_{n} exceeds {n - a + 1}")
            if V[n] <= V[n - 1]:
                raise HypothesesViolated(f"V does not increase strictly at degree {n}")
    else:
        a_prime = b + 1

    u = U.column
    degrees = range(a, b + 1)
    W = GradedMap({n: max(ZERO, u[n] - V[n]) for n in degrees})
    Z = GradedMap({n: max(ZERO, V[n] - u[n]) for n in degrees})

    if a_prime > a:
        assert is_admissible(W, a), "subtraction broke admissibility"
    else:
        assert not W or star_condition(W, min(W.support), max(W.support))
    assert _strictly_increasing_to(Z, b), "excess column is not strictly increasing"
    return W, Z
