"""Greedy decomposition of a table into extremal tables.

The loop works top-down: strip ``h^0`` into copies of ``k``; while ``Δ^2 h^2``
is nonzero take its highest degree ``a - 2`` and remove either a copy of
``R(-a)`` (if ``h^1_a = 0``) or the largest admissible column generated in
degree ``a``, written as a combination of ``m^t(-a)``; finally peel the
monotone remainder of ``h^1`` into copies of ``k[x]``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInCone, WouldGoNegative
from .extremal import Decomposition, ExtremalLabel, K, Kx, MPow, R, combine, extremal_table
from .hilbert import max_admissible, solve_cyclic
from .table import DeltaTable, GradedMap, sub_checked, table_value


def recombine(d: Decomposition) -> DeltaTable:
    return combine((c, extremal_table(label)) for c, label in d)


def _remove(H: DeltaTable, pieces: list[tuple[Fraction, ExtremalLabel]]) -> DeltaTable:
    try:
        return sub_checked(H, combine((c, extremal_table(label)) for c, label in pieces))
    except WouldGoNegative as exc:
        raise NotInCone(f"subtracting {pieces} leaves a negative table: {exc}") from None


def _admissible_part(H: DeltaTable, a: int, units: Fraction) -> GradedMap:
    """``units`` unit extractions of an admissible column at degree ``a``, summed.

    Each unit step removes ``min(h^1_n, n - a + 1)`` pointwise, so ``j``
    consecutive steps remove ``min(h^1_n, j (n - a + 1))`` in total, which is
    ``j`` times the maximal admissible column under ``h^1 / j``.
    """
    top = max(H.d1.support)
    h1 = GradedMap({n: table_value(H, 1, n) for n in range(a, top + 1)})
    return units * max_admissible((1 / units) * h1, a)


def greedy_steps(T: DeltaTable) -> list[tuple[str, int, list[tuple[Fraction, ExtremalLabel]]]]:
    """Run the greedy loop and record each subtraction as ``(step, degree, pieces)``.

    All unit steps taken at one degree are merged into a single batch; on
    integer tables this gives the same total as taking them one at a time,
    and the batched form is homogeneous, so rational tables behave exactly
    like their integer multiples.
    """
    trace = []
    pieces = [(v, K(-n)) for n, v in T.d0.items()]
    if pieces:
        trace.append(("k", 0, pieces))
    H = DeltaTable(d1=T.d1, d2=T.d2)

    while H.d2:
        a = max(H.d2.support) + 2
        mass = H.d2[a - 2]
        if mass < 0:
            raise NotInCone(f"Δ²h² is negative in its top degree {a - 2}")
        units = min(table_value(H, 1, a), mass)
        if units > 0:
            column = _admissible_part(H, a, units)
            cyclic = solve_cyclic(column, a)
            if any(r < 0 for r, _ in cyclic):
                raise NotInCone(f"h^1 generated in degree {a} is not a sum of cyclic Hilbert functions")
            step = [(r, MPow(t, -a)) for r, t in cyclic]
            trace.append(("m_power", a, step))
            H = _remove(H, step)
        if mass > units:
            step = [(mass - units, R(-a))]
            trace.append(("R", a, step))
            H = _remove(H, step)

    while H.d1:
        b = max(H.d1.support) + 1
        c = H.d1[b - 1]
        if c < 0:
            raise NotInCone(f"h^1 left after the h^2 pass is not monotone at degree {b - 1}")
        step = [(c, Kx(-b))]
        trace.append(("kx", b, step))
        H = _remove(H, step)
    return trace


def unit_greedy_steps(T: DeltaTable) -> list[list[tuple[Fraction, ExtremalLabel]]]:
    """The greedy loop with one unit subtraction per iteration, for integer tables.

    Returns the pieces removed in each iteration, the ``h^0`` strip first.
    """
    if any(v.denominator != 1 for row in T.rows for v in row.values()):
        raise ValueError("unit steps need an integer table")
    out = [[(v, K(-n)) for n, v in T.d0.items()]]
    H = DeltaTable(d1=T.d1, d2=T.d2)
    while H.d2:
        a = max(H.d2.support) + 2
        if H.d2[a - 2] < 0:
            raise NotInCone(f"Δ²h² is negative in its top degree {a - 2}")
        if table_value(H, 1, a) == 0:
            step = [(Fraction(1), R(-a))]
        else:
            cyclic = solve_cyclic(_admissible_part(H, a, Fraction(1)), a)
            if any(r < 0 for r, _ in cyclic):
                raise NotInCone(f"h^1 generated in degree {a} is not a sum of cyclic Hilbert functions")
            step = [(r, MPow(t, -a)) for r, t in cyclic]
        out.append(step)
        H = _remove(H, step)
    while H.d1:
        b = max(H.d1.support) + 1
        if H.d1[b - 1] < 0:
            raise NotInCone(f"h^1 left after the h^2 pass is not monotone at degree {b - 1}")
        step = [(Fraction(1), Kx(-b))]
        out.append(step)
        H = _remove(H, step)
    return out


def decompose(T: DeltaTable) -> Decomposition:
    """Positive rational combination of extremal tables summing to ``T``.

    Raises :class:`NotInCone` when some subtraction would leave a table with
    a negative entry, which only happens for inputs outside the cone.
    """
    d = Decomposition.of(p for _, _, step in greedy_steps(T) for p in step)
    if recombine(d) != T:
        raise NotInCone("greedy decomposition does not recombine to the input")
    return d
