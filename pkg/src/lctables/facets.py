"""The cone in Δ-coordinates: generators, facet functionals, membership.

A point of the cone is a finitely supported ``3 x Z`` matrix ``a_{i,n}``.
Its generators are the elementary matrices ``E(i, s)`` and the matrices
``Gamma(s, n)``, which are the Δ-images of the extremal tables.  The
functionals ``μ, τ, φ, π`` cut the cone out on each window ``[0, d]``, and
every window is reduced to that shape by translation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import InvalidLabel, NotInCone
from .extremal import ExtremalLabel, Kind, K, Kx, MPow, R
from .table import ZERO, DeltaTable, GradedMap, rational


@dataclass(frozen=True)
class MPoint:
    a0: GradedMap = GradedMap()
    a1: GradedMap = GradedMap()
    a2: GradedMap = GradedMap()

    def __post_init__(self):
        for name in ("a0", "a1", "a2"):
            v = getattr(self, name)
            if not isinstance(v, GradedMap):
                object.__setattr__(self, name, GradedMap(v))

    @classmethod
    def from_table(cls, t: DeltaTable) -> MPoint:
        return cls(t.d0, t.d1, t.d2)

    def to_table(self) -> DeltaTable:
        """The table with this Δ-image; raises if it has negative entries."""
        return DeltaTable(self.a0, self.a1, self.a2)

    @property
    def rows(self) -> tuple[GradedMap, GradedMap, GradedMap]:
        return (self.a0, self.a1, self.a2)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, n = key
        return self.rows[i][n]

    def hull(self) -> tuple[int, int] | None:
        hulls = [r.hull() for r in self.rows if r]
        if not hulls:
            return None
        return min(h[0] for h in hulls), max(h[1] for h in hulls)

    def shifted(self, k: int) -> MPoint:
        return MPoint(*(r.shifted(k) for r in self.rows))

    def __add__(self, other: MPoint) -> MPoint:
        return MPoint(*(x + y for x, y in zip(self.rows, other.rows)))

    def __sub__(self, other: MPoint) -> MPoint:
        return MPoint(*(x - y for x, y in zip(self.rows, other.rows)))

    def __rmul__(self, c) -> MPoint:
        return MPoint(*(c * r for r in self.rows))

    def __bool__(self):
        return any(self.rows)


# -- functionals --------------------------------------------------------------


@dataclass(frozen=True)
class Mu:
    s: int

    def __str__(self):
        return f"mu_{self.s}"


@dataclass(frozen=True)
class Tau:
    s: int

    def __str__(self):
        return f"tau_{self.s}"


@dataclass(frozen=True)
class Phi:
    s: int

    def __str__(self):
        return f"phi_{self.s}"


@dataclass(frozen=True)
class Pi:
    n: int
    s: int

    def __post_init__(self):
        if self.n < 0:
            raise InvalidLabel("pi_{n,s} needs n >= 0")

    def __str__(self):
        return f"pi_{self.n},{self.s}"


FunctionalId = Union[Mu, Tau, Phi, Pi]


def eval_functional(f: FunctionalId, A: MPoint) -> Fraction:
    if isinstance(f, Mu):
        return A.a0[f.s]
    if isinstance(f, Phi):
        return A.a2[f.s]
    if isinstance(f, Tau):
        return A.a1[f.s] + sum((v for i, v in A.a2.items() if i <= f.s - 1), ZERO)
    if isinstance(f, Pi):
        n, s = f.n, f.s
        tail = sum((v for i, v in A.a1.items() if i > s + n), ZERO)
        return tail + (n + 1) * A.a1[s + n] + sum(((i + 1) * A.a2[s + i] for i in range(n)), ZERO)
    raise TypeError(f"not a functional: {f!r}")


def shift_functional(f: FunctionalId, k: int) -> FunctionalId:
    if isinstance(f, Pi):
        return Pi(f.n, f.s + k)
    return type(f)(f.s + k)


def functional_list(d: int) -> list[FunctionalId]:
    """The facet functionals of the window ``[0, d]`` in canonical order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    out: list[FunctionalId] = [Mu(s) for s in range(d + 1)]
    out += [Tau(s) for s in range(d)]
    out += [Phi(s) for s in range(d + 1)]
    out += [Pi(0, s) for s in range(1, d + 1)]
    out += [Pi(n, s) for n in range(1, d - 1) for s in range(1, d - n)]
    return out


def functional_vector(f: FunctionalId, d: int) -> list[Fraction]:
    """Coefficients of ``f`` on the coordinates ``(i, n)`` of ``[0, d]``, row-major in ``i``."""
    return [eval_functional(f, elementary(i, n)) for i in range(3) for n in range(d + 1)]


# -- generators ---------------------------------------------------------------


@dataclass(frozen=True)
class E:
    i: int
    s: int

    def __post_init__(self):
        if self.i not in (0, 1, 2):
            raise InvalidLabel("E(i, s) needs i in {0, 1, 2}")

    def __str__(self):
        return f"E({self.i},{self.s})"


@dataclass(frozen=True)
class Gamma:
    s: int
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidLabel("Gamma(s, n) needs n >= 1")

    def __str__(self):
        return f"Gamma({self.s},{self.n})"


GeneratorId = Union[E, Gamma]


def elementary(i: int, s: int) -> MPoint:
    rows = [GradedMap(), GradedMap(), GradedMap()]
    rows[i] = GradedMap({s: 1})
    return MPoint(*rows)


def generator_point(g: GeneratorId) -> MPoint:
    if isinstance(g, E):
        return elementary(g.i, g.s)
    if isinstance(g, Gamma):
        a1 = {j: -1 for j in range(g.s + 1, g.s + g.n + 1)}
        a1[g.s + g.n + 1] = g.n
        return MPoint(a1=GradedMap(a1), a2=GradedMap({g.s: 1}))
    raise TypeError(f"not a generator: {g!r}")


def shift_generator(g: GeneratorId, k: int) -> GeneratorId:
    if isinstance(g, E):
        return E(g.i, g.s + k)
    return Gamma(g.s + k, g.n)


def generator_hull(g: GeneratorId) -> tuple[int, int]:
    if isinstance(g, E):
        return g.s, g.s
    return g.s, g.s + g.n + 1


def combine_points(terms: Iterable[tuple[object, GeneratorId]]) -> MPoint:
    out = MPoint()
    for c, g in terms:
        out = out + rational(c) * generator_point(g)
    return out


def delta_lambda_of(label: ExtremalLabel) -> GeneratorId:
    a = label.shift
    if label.kind is Kind.K:
        return E(0, -a)
    if label.kind is Kind.KX:
        return E(1, -a - 1)
    if label.kind is Kind.R:
        return E(2, -a - 2)
    return Gamma(-a - 2, label.t)


def label_of(g: GeneratorId) -> ExtremalLabel:
    """Inverse of :func:`delta_lambda_of`."""
    if isinstance(g, Gamma):
        return MPow(g.n, -g.s - 2)
    return (K(-g.s), Kx(-g.s - 1), R(-g.s - 2))[g.i]


def rays(d: int) -> list[GeneratorId]:
    """Generators supported in ``[0, d]``."""
    out: list[GeneratorId] = [E(i, s) for i in range(3) for s in range(d + 1)]
    out += [Gamma(s, n) for s in range(d + 1) for n in range(1, d - s)]
    return out


# -- membership and facet decomposition ---------------------------------------


@dataclass(frozen=True)
class Violation:
    functional: FunctionalId
    value: Fraction

    def __str__(self):
        return f"{self.functional} = {self.value}"


def _normalize(A: MPoint) -> tuple[MPoint, int, int]:
    # Translate the support to [0, d]; a single degree still uses d = 1 so
    # that the τ_0 inequality is part of the list.
    hull = A.hull() or (0, 0)
    lo = hull[0]
    return A.shifted(-lo), lo, max(hull[1] - lo, 1)


def membership(A: MPoint) -> Violation | None:
    """``None`` if ``A`` lies in the cone, else the first violated functional.

    The functional is reported in ``A``'s own degrees.
    """
    B, lo, d = _normalize(A)
    for f in functional_list(d):
        v = eval_functional(f, B)
        if v < 0:
            return Violation(shift_functional(f, lo), v)
    return None


def facet_steps(A: MPoint, d: int) -> list[tuple[Fraction, GeneratorId]]:
    """Algorithm on a point already supported in ``[0, d]``; returns every subtraction made."""
    out: list[tuple[Fraction, GeneratorId]] = []

    def take(c: Fraction, g: GeneratorId):
        nonlocal A
        if c:
            out.append((c, g))
            A = A - c * generator_point(g)

    take(A.a2[d], E(2, d))
    for i in range(d + 1):
        take(A.a0[i], E(0, i))
    w = d
    while w > 0:
        take(A.a2[w - 1], E(2, w - 1))
        k = 1
        shrink = False
        while True:
            # The zero test comes first: a step can clear a_{1,w} just as k
            # reaches w, and the window must then still shrink.
            if A.a1[w] == 0:
                shrink = True
                break
            if k == w:
                break
            cands = [eval_functional(Phi(w - 1 - k), A)]
            for s in range(w + 1 - k, w + 1):
                for n in range(max(0, min(k - 2, w - s - 1)) + 1):
                    cands.append(eval_functional(Pi(n, s), A) / (s - w + k))
            take(min(cands), Gamma(w - 1 - k, k))
            k += 1
        if not shrink:
            break
        w -= 1
    for i in range(d + 1):
        take(A.a1[i], E(1, i))
    if A:
        raise NotInCone(f"facet decomposition left a non-zero remainder {A}")
    return out


def facet_decompose(A: MPoint) -> list[tuple[Fraction, GeneratorId]]:
    """Non-negative combination of generators equal to ``A``.

    Terms are listed in the order they were subtracted; repeated generators
    are merged into their first occurrence.
    """
    bad = membership(A)
    if bad is not None:
        raise NotInCone(f"point violates {bad}", violation=bad)
    B, lo, d = _normalize(A)
    merged: dict[GeneratorId, Fraction] = {}
    for c, g in facet_steps(B, d):
        if c < 0:
            raise NotInCone(f"negative coefficient {c} for {g}")
        merged[g] = merged.get(g, ZERO) + c
    return [(c, shift_generator(g, lo)) for g, c in merged.items() if c]


# -- incidence ----------------------------------------------------------------


@dataclass(frozen=True)
class Incidence:
    rays: tuple[GeneratorId, ...]
    facets: tuple[FunctionalId, ...]
    matrix: tuple[tuple[bool, ...], ...]  # matrix[r][f]: facet f vanishes on ray r

    def facets_on_ray(self) -> list[int]:
        return [sum(row) for row in self.matrix]

    def rays_on_facet(self) -> list[int]:
        return [sum(col) for col in zip(*self.matrix)] if self.matrix else [0] * len(self.facets)


def incidence(d: int) -> Incidence:
    rs = rays(d)
    fs = functional_list(d)
    points = [generator_point(g) for g in rs]
    matrix = tuple(tuple(eval_functional(f, p) == 0 for f in fs) for p in points)
    return Incidence(tuple(rs), tuple(fs), matrix)


def extremality_rank(g: GeneratorId, d: int) -> int:
    """Rank of the facet functionals of ``[0, d]`` that vanish on ``g``.

    A generator spans an extremal ray of the window cone exactly when this
    equals ``3 (d + 1) - 1``.
    """
    from sympy import Matrix

    lo, hi = generator_hull(g)
    if lo < 0 or hi > d:
        raise ValueError(f"{g} is not supported in [0, {d}]")
    p = generator_point(g)
    rows = [functional_vector(f, d) for f in functional_list(d) if eval_functional(f, p) == 0]
    if not rows:
        return 0
    return Matrix(rows).rank()
