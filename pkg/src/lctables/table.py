"""Graded sequences, difference operators and local cohomology tables.

A local cohomology table of a module of dimension at most two has three
columns ``h^0, h^1, h^2`` indexed by the integers.  ``h^1`` is eventually
constant and ``h^2`` eventually linear in low degrees, so the raw columns are
infinite.  Their difference images ``Δ^0 h^0, Δ^1 h^1, Δ^2 h^2`` are finitely
supported, and the map is injective, so :class:`DeltaTable` stores only those.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import NegativeEntry, TailInconsistent, WouldGoNegative

ZERO = Fraction(0)

_RATIONAL_RE = re.compile(r"\s*[-+]?\d+(\s*/\s*\d+)?\s*")


def rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused: nothing in this package is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.fullmatch(value):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class GradedMap(Mapping):
    """Finitely supported map ``Z -> Q``; missing degrees read as zero."""

    __slots__ = ("_data",)

    def __init__(self, entries: Mapping | Iterable | None = None):
        data = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for n, v in items:
                v = rational(v)
                if v:
                    n = int(n)
                    data[n] = data.get(n, ZERO) + v
                    if not data[n]:
                        del data[n]
        self._data = data

    def __getitem__(self, n):
        return self._data.get(n, ZERO)

    def __contains__(self, n):
        return n in self._data

    def __iter__(self):
        return iter(sorted(self._data))

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if isinstance(other, GradedMap):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self == GradedMap(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __repr__(self):
        body = ", ".join(f"{n}: {v}" for n, v in self.items())
        return f"GradedMap({{{body}}})"

    def __bool__(self):
        return bool(self._data)

    def __add__(self, other: GradedMap) -> GradedMap:
        out = dict(self._data)
        for n, v in other._data.items():
            out[n] = out.get(n, ZERO) + v
        return GradedMap(out)

    def __neg__(self) -> GradedMap:
        return GradedMap({n: -v for n, v in self._data.items()})

    def __sub__(self, other: GradedMap) -> GradedMap:
        return self + (-other)

    def __mul__(self, c) -> GradedMap:
        c = rational(c)
        return GradedMap({n: c * v for n, v in self._data.items()})

    __rmul__ = __mul__

    @property
    def support(self) -> list[int]:
        return sorted(self._data)

    def hull(self) -> tuple[int, int] | None:
        if not self._data:
            return None
        return min(self._data), max(self._data)

    def shifted(self, k: int) -> GradedMap:
        """Move every entry from degree ``n`` to ``n + k``."""
        return GradedMap({n + k: v for n, v in self._data.items()})

    def total(self) -> Fraction:
        return sum(self._data.values(), ZERO)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._data.values())


def delta(seq: GradedMap, t: int = 1) -> GradedMap:
    """Iterated difference ``Δ^t(n) = Δ^{t-1}(n) - Δ^{t-1}(n+1)``."""
    if t < 0:
        raise ValueError("difference order must be non-negative")
    out = GradedMap(seq)
    for _ in range(t):
        hull = out.hull()
        if hull is None:
            return out
        lo, hi = hull
        out = GradedMap({n: out[n] - out[n + 1] for n in range(lo - 1, hi + 1)})
    return out


def _upper_sums(d1: GradedMap) -> dict[int, Fraction]:
    """``n -> sum_{m >= n} d1(m)`` on the hull of ``d1``."""
    hull = d1.hull()
    if hull is None:
        return {}
    lo, hi = hull
    acc, out = ZERO, {}
    for n in range(hi, lo - 1, -1):
        acc += d1[n]
        out[n] = acc
    return out


@dataclass(frozen=True)
class DeltaTable:
    """A local cohomology table stored as ``(Δ^0 h^0, Δ^1 h^1, Δ^2 h^2)``.

    Construction checks that the reconstructed table is non-negative in
    every degree, including the constant and linear tails in low degrees.
    """

    d0: GradedMap = field(default_factory=GradedMap)
    d1: GradedMap = field(default_factory=GradedMap)
    d2: GradedMap = field(default_factory=GradedMap)

    def __post_init__(self):
        for name in ("d0", "d1", "d2"):
            value = getattr(self, name)
            if not isinstance(value, GradedMap):
                object.__setattr__(self, name, GradedMap(value))
        if not self.d0.is_nonnegative():
            raise NegativeEntry("h^0 has a negative entry")
        for n, v in _upper_sums(self.d1).items():
            if v < 0:
                raise NegativeEntry(f"h^1 is negative in degree {n}")
        # h^2 is piecewise linear between support points of d2, so checking
        # the support points and the slope of the low-degree tail suffices.
        h1_of_d2 = _upper_sums(self.d2)
        acc = ZERO
        for n in sorted(h1_of_d2, reverse=True):
            acc += h1_of_d2[n]
            if acc < 0:
                raise NegativeEntry(f"h^2 is negative in degree {n}")
        if self.d2.total() < 0:
            raise NegativeEntry("h^2 tends to -infinity in low degrees")

    @classmethod
    def zero(cls) -> DeltaTable:
        return cls()

    @property
    def rows(self) -> tuple[GradedMap, GradedMap, GradedMap]:
        return self.d0, self.d1, self.d2

    def is_zero(self) -> bool:
        return not (self.d0 or self.d1 or self.d2)

    def hull(self) -> tuple[int, int] | None:
        hulls = [h for h in (r.hull() for r in self.rows) if h is not None]
        if not hulls:
            return None
        return min(h[0] for h in hulls), max(h[1] for h in hulls)

    def value(self, i: int, n: int) -> Fraction:
        return table_value(self, i, n)

    def column(self, i: int, lo: int, hi: int) -> list[Fraction]:
        return [table_value(self, i, n) for n in range(lo, hi + 1)]

    def __add__(self, other: DeltaTable) -> DeltaTable:
        return add(self, other)

    def __rmul__(self, c) -> DeltaTable:
        return scale(c, self)


def table_value(t: DeltaTable, i: int, n: int) -> Fraction:
    """Entry ``h^i_n`` of the table, reconstructed from its Δ-image."""
    if i == 0:
        return t.d0[n]
    if i == 1:
        return sum((v for m, v in t.d1.items() if m >= n), ZERO)
    if i == 2:
        return sum(((m - n + 1) * v for m, v in t.d2.items() if m >= n), ZERO)
    raise ValueError(f"cohomological index must be 0, 1 or 2, got {i}")


def add(a: DeltaTable, b: DeltaTable) -> DeltaTable:
    return DeltaTable(a.d0 + b.d0, a.d1 + b.d1, a.d2 + b.d2)


def scale(c, a: DeltaTable) -> DeltaTable:
    c = rational(c)
    if c < 0:
        raise NegativeEntry("tables can only be scaled by non-negative rationals")
    return DeltaTable(c * a.d0, c * a.d1, c * a.d2)


def sub_checked(a: DeltaTable, b: DeltaTable) -> DeltaTable:
    """``a - b``, refusing results with a negative entry anywhere."""
    try:
        return DeltaTable(a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2)
    except NegativeEntry as exc:
        raise WouldGoNegative(str(exc)) from None


def shift(t: DeltaTable, a: int) -> DeltaTable:
    """Table of ``M(a)``; since ``M(a)_n = M_{n+a}`` degrees move by ``-a``."""
    return DeltaTable(t.d0.shifted(-a), t.d1.shifted(-a), t.d2.shifted(-a))


@dataclass(frozen=True)
class Tail:
    """How the columns continue below the lowest listed degree.

    ``h^0`` is always zero there.  ``h^1`` is either constant (by default
    equal to its value at ``lo``) or zero; ``h^2`` is either linear (by
    default with the slope read off the two lowest rows) or zero.  Explicit
    ``h1_value``/``h2_slope`` override the defaults and are checked against
    the window.
    """

    h1_constant: bool = True
    h2_linear: bool = True
    h1_value: Fraction | None = None
    h2_slope: Fraction | None = None


@dataclass(frozen=True)
class RawWindow:
    """Explicit rows ``lo..hi`` of a table; everything above ``hi`` is zero."""

    lo: int
    hi: int
    h0: tuple[Fraction, ...]
    h1: tuple[Fraction, ...]
    h2: tuple[Fraction, ...]
    tail: Tail = Tail()

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("window needs lo <= hi")
        width = self.hi - self.lo + 1
        for name in ("h0", "h1", "h2"):
            col = tuple(rational(v) for v in getattr(self, name))
            if len(col) != width:
                raise ValueError(f"{name} must list {width} values")
            object.__setattr__(self, name, col)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def get(self, i: int, n: int) -> Fraction:
        if not self.lo <= n <= self.hi:
            return ZERO
        return (self.h0, self.h1, self.h2)[i][n - self.lo]


def from_raw(w: RawWindow) -> DeltaTable:
    """Δ-image of an explicit window, after checking its declared tail."""
    for i, col in enumerate((w.h0, w.h1, w.h2)):
        for n, v in zip(w.degrees, col):
            if v < 0:
                raise NegativeEntry(f"h^{i}_{n} = {v} is negative")
    lo, hi = w.lo, w.hi
    tail = w.tail

    if tail.h1_constant:
        c1 = w.get(1, lo) if tail.h1_value is None else rational(tail.h1_value)
    else:
        c1 = ZERO
    if c1 < 0:
        raise NegativeEntry("declared h^1 tail is negative")
    h1 = {n: w.get(1, n) for n in w.degrees}
    h1[lo - 1] = c1
    d1 = {n: h1[n] - h1.get(n + 1, ZERO) for n in range(lo - 1, hi + 1)}
    if d1[lo - 1]:
        raise TailInconsistent(
            f"h^1 tail value {c1} does not continue h^1_{lo} = {w.get(1, lo)}")

    if tail.h2_linear:
        edge = w.get(2, lo) - w.get(2, lo + 1)
        slope = edge if tail.h2_slope is None else rational(tail.h2_slope)
        if slope < 0:
            raise NegativeEntry("h^2 tail decreases towards low degrees")
        below = {lo - j: w.get(2, lo) + j * slope for j in (1, 2)}
    else:
        below = {lo - 1: ZERO, lo - 2: ZERO}
    h2 = {n: w.get(2, n) for n in w.degrees}
    h2.update(below)
    h2_at = lambda n: h2.get(n, ZERO)
    d2 = {n: h2_at(n) - 2 * h2_at(n + 1) + h2_at(n + 2) for n in range(lo - 2, hi + 1)}
    if d2[lo - 1] or d2[lo - 2]:
        raise TailInconsistent("declared h^2 tail does not continue the window")

    return DeltaTable(
        GradedMap({n: w.get(0, n) for n in w.degrees}),
        GradedMap({n: v for n, v in d1.items() if n >= lo}),
        GradedMap({n: v for n, v in d2.items() if n >= lo}),
    )


def render_window(t: DeltaTable, lo: int | None = None, hi: int | None = None) -> RawWindow:
    """Explicit window covering at least the support hull of ``t``."""
    hull = t.hull() or (0, 0)
    lo = hull[0] if lo is None else lo
    hi = hull[1] if hi is None else hi
    if lo > hull[0] or hi < hull[1]:
        raise ValueError(f"window [{lo}, {hi}] does not cover the support {hull}")
    cols = [tuple(t.column(i, lo, hi)) for i in range(3)]
    return RawWindow(lo, hi, *cols)
