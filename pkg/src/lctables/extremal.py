"""Tables of the extremal modules ``k(a), k[x](a), R(a), m^t(a)`` over R = k[x,y].

Shifts follow the usual twist convention ``M(a)_n = M_{n+a}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import InvalidLabel, NegativeEntry, NotPrimary
from .table import DeltaTable, GradedMap, delta, rational, shift


class Kind(enum.Enum):
    K = "k"
    KX = "kx"
    MPOW = "m_power"
    R = "R"


_KIND_ORDER = {Kind.K: 0, Kind.KX: 1, Kind.MPOW: 2, Kind.R: 3}


@dataclass(frozen=True)
class ExtremalLabel:
    kind: Kind
    shift: int = 0
    t: int | None = None

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            try:
                object.__setattr__(self, "kind", Kind(self.kind))
            except ValueError:
                raise InvalidLabel(f"unknown extremal kind {self.kind!r}") from None
        if self.kind is Kind.MPOW:
            if not isinstance(self.t, int) or self.t < 1:
                raise InvalidLabel("m^t needs an integer exponent t >= 1")
        elif self.t is not None:
            raise InvalidLabel(f"{self.kind.value} takes no exponent")

    def sort_key(self):
        return (-self.shift, _KIND_ORDER[self.kind], self.t or 0)

    def __str__(self):
        base = {Kind.K: "k", Kind.KX: "k[x]", Kind.R: "R"}.get(self.kind)
        if base is None:
            base = f"m^{self.t}"
        return f"{base}({self.shift})"


def K(a: int = 0) -> ExtremalLabel:
    return ExtremalLabel(Kind.K, a)


def Kx(a: int = 0) -> ExtremalLabel:
    return ExtremalLabel(Kind.KX, a)


def R(a: int = 0) -> ExtremalLabel:
    return ExtremalLabel(Kind.R, a)


def MPow(t: int, a: int = 0) -> ExtremalLabel:
    return ExtremalLabel(Kind.MPOW, a, t)


@dataclass(frozen=True)
class Decomposition:
    """Positive rational combination of extremal tables, in canonical order.

    Canonical order is by descending shift, then ``k < k[x] < m^t < R`` with
    ``t`` ascending.  Use :meth:`of` to build one from arbitrary pairs.
    """

    terms: tuple[tuple[Fraction, ExtremalLabel], ...] = ()

    def __post_init__(self):
        for c, _ in self.terms:
            if c <= 0:
                raise ValueError("decomposition coefficients must be positive")

    @classmethod
    def of(cls, pairs: Iterable[tuple[object, ExtremalLabel]]) -> Decomposition:
        merged: dict[ExtremalLabel, Fraction] = {}
        for c, label in pairs:
            c = rational(c)
            if c < 0:
                raise ValueError("decomposition coefficients must be non-negative")
            merged[label] = merged.get(label, Fraction(0)) + c
        ordered = sorted(merged.items(), key=lambda kv: kv[0].sort_key())
        return cls(tuple((c, label) for label, c in ordered if c))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficients(self) -> dict[ExtremalLabel, Fraction]:
        return {label: c for c, label in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{label}" for c, label in self.terms)


_R_D2 = GradedMap({-2: 1})


def extremal_table(label: ExtremalLabel) -> DeltaTable:
    """Closed-form Δ-image of the table of ``label``'s module."""
    if not isinstance(label, ExtremalLabel):
        raise InvalidLabel(f"not an extremal label: {label!r}")
    return _extremal_table(label)


@lru_cache(maxsize=4096)
def _extremal_table(label: ExtremalLabel) -> DeltaTable:
    if label.kind is Kind.K:
        base = DeltaTable(d0=GradedMap({0: 1}))
    elif label.kind is Kind.KX:
        # h^1_n = 1 for n <= -1
        base = DeltaTable(d1=GradedMap({-1: 1}))
    elif label.kind is Kind.R:
        # h^2_n = -n-1 for n <= -2
        base = DeltaTable(d2=_R_D2)
    else:
        # H^1(m^t) = R/m^t and H^2(m^t) = H^2(R)
        base = DeltaTable(d1=delta(hilbert_column_cyclic(label.t, 0), 1), d2=_R_D2)
    return shift(base, label.shift)


def hilbert_column_cyclic(t: int, a: int) -> GradedMap:
    """Hilbert function of ``R/m^t(-a)``: value ``n-a+1`` for ``a <= n < a+t``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return GradedMap({n: n - a + 1 for n in range(a, a + t)})


@dataclass(frozen=True)
class MonomialIdealSpec:
    """Monomial ideal generated by ``x^i y^j`` for ``(i, j)`` in ``generators``, twisted by ``shift``."""

    generators: frozenset[tuple[int, int]]
    shift: int = 0

    def __post_init__(self):
        gens = frozenset((int(i), int(j)) for i, j in self.generators)
        if any(i < 0 or j < 0 for i, j in gens):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def power_of_maximal(cls, t: int, shift: int = 0) -> MonomialIdealSpec:
        return cls(frozenset((i, t - i) for i in range(t + 1)), shift)


def quotient_hilbert_function(generators: Iterable[tuple[int, int]]) -> GradedMap:
    """Hilbert function of ``R/I`` by counting standard monomials.

    ``I`` must contain a pure power of each variable, which bounds the
    staircase by ``x^p, y^q``.
    """
    gens = list(generators)
    xs = [i for i, j in gens if j == 0]
    ys = [j for i, j in gens if i == 0]
    if not xs or not ys:
        raise NotPrimary("ideal contains no pure power of x or of y, so R/I is not of finite length")
    p, q = min(xs), min(ys)
    counts: dict[int, int] = {}
    for i in range(p):
        for j in range(q):
            if not any(i >= gi and j >= gj for gi, gj in gens):
                counts[i + j] = counts.get(i + j, 0) + 1
    return GradedMap(counts)


def monomial_ideal_table(spec: MonomialIdealSpec) -> DeltaTable:
    """Table of ``I(a)`` for an m-primary monomial ideal ``I``.

    ``H^1(I) = R/I`` and ``H^2(I) = H^2(R)``; ``H^0`` vanishes.
    """
    hf = quotient_hilbert_function(spec.generators)
    return shift(DeltaTable(d1=delta(hf, 1), d2=_R_D2), spec.shift)


def combine(terms: Iterable[tuple[object, DeltaTable]]) -> DeltaTable:
    """``sum c_i T_i`` with non-negative ``c_i``."""
    rows: list[dict[int, Fraction]] = [{}, {}, {}]
    for c, t in terms:
        c = rational(c)
        if c < 0:
            raise NegativeEntry("combine needs non-negative coefficients")
        if not c:
            continue
        for acc, row in zip(rows, t.rows):
            for n, v in row.items():
                acc[n] = acc.get(n, 0) + c * v
    return DeltaTable(*(GradedMap(r) for r in rows))
