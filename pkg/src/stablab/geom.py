"""Fixed-point data for the supported geometries.

Two families are cataloged: cotangent bundles of Grassmannians T*Gr(k,n)
with their framing torus a_1..a_n, and Hilbert schemes of n points in the
plane with the two-dimensional torus t_1, t_2 (the symplectic weight is
hbar = t_1 + t_2).  Characters are stored as integer vectors over the
geometry's variable table; the last slot is always reserved for hbar so a
tangent weight chi and its partner hbar - chi are integer vectors too.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .arrange import Arrangement
from .ring import VarTable


class GeomError(Exception):
    pass


class InvalidLabel(GeomError):
    pass


class UnsupportedFamily(GeomError):
    pass


Char = tuple  # integer vector over the geometry's VarTable


def _subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return [tuple(s) for s in itertools.combinations(range(1, n + 1), k)]


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in descending lexicographic order, e.g. (3),(2,1),(1,1,1)."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class TangentData:
    point: tuple
    weights: tuple[Char, ...]


class Geometry:
    """Common interface: fixed points, tangent characters, roots."""

    family: str

    def var_table(self) -> VarTable:
        raise NotImplementedError

    def fixed_points(self) -> list:
        raise NotImplementedError

    def tangent_weights(self, point) -> TangentData:
        raise NotImplementedError

    def hbar_index(self) -> int:
        return self.var_table().index("hbar")


class TStarGrassmannian(Geometry):
    """T*Gr(k, n) with framing variables a_1..a_n and symplectic weight hbar."""

    family = "tgr"

    def __init__(self, k: int, n: int, var_names: Sequence[str] | None = None):
        if not (0 <= k <= n) or n < 1:
            raise GeomError(f"bad Grassmannian parameters k={k}, n={n}")
        self.k = k
        self.n = n
        names = list(var_names) if var_names else [f"a{i}" for i in range(1, n + 1)]
        if len(names) != n:
            raise GeomError("need one framing variable per column")
        self._table = VarTable(
            tuple(names) + ("hbar",), tuple(["equivariant"] * n + ["symplectic-weight"])
        )

    def var_table(self) -> VarTable:
        return self._table

    def fixed_points(self) -> list[tuple[int, ...]]:
        return _subsets(self.n, self.k)

    def dim(self) -> int:
        return 2 * self.k * (self.n - self.k)

    def tangent_weights(self, point) -> TangentData:
        S = tuple(sorted(point))
        if S not in set(self.fixed_points()):
            raise InvalidLabel(f"{point} is not a k-subset of 1..{self.n}")
        nv = self._table.nvars
        weights = []
        for i in S:
            for j in range(1, self.n + 1):
                if j in S:
                    continue
                chi = [0] * nv
                chi[i - 1] = 1
                chi[j - 1] = -1
                weights.append(tuple(chi))
                dual = [0] * nv
                dual[-1] = 1
                dual[i - 1] = -1
                dual[j - 1] = 1
                weights.append(tuple(dual))
        return TangentData(S, tuple(weights))


class HilbC2(Geometry):
    """Hilb(C^2, n) with torus variables t_1, t_2; hbar = t_1 + t_2.

    Fixed points are monomial ideals, labeled by partitions of n; tangent
    characters come in arm/leg pairs per box.
    """

    family = "hilb"

    def __init__(self, n: int):
        if n < 1:
            raise GeomError("need n >= 1")
        self.n = n
        self._table = VarTable(("t1", "t2"), ("equivariant", "equivariant"))

    def var_table(self) -> VarTable:
        return self._table

    def fixed_points(self) -> list[tuple[int, ...]]:
        return partitions(self.n)

    def dim(self) -> int:
        return 2 * self.n

    def tangent_weights(self, point) -> TangentData:
        lam = tuple(point)
        if lam not in set(self.fixed_points()):
            raise InvalidLabel(f"{point} is not a partition of {self.n}")
        conj = _conjugate(lam)
        weights = []
        for i, row in enumerate(lam):  # box (i, j), 0-indexed
            for j in range(row):
                arm = lam[i] - j - 1
                leg = conj[j] - i - 1
                # the pair (chi, hbar - chi) with hbar = t1 + t2
                weights.append((arm + 1, -leg))
                weights.append((-arm, leg + 1))
        return TangentData(lam, tuple(weights))

    def hbar_char(self) -> Char:
        return (1, 1)

    def hbar_index(self) -> int:  # hbar is not an independent variable here
        raise GeomError("Hilb uses hbar = t1 + t2")


def _conjugate(lam: Sequence[int]) -> list[int]:
    if not lam:
        return []
    return [sum(1 for row in lam if row > j) for j in range(lam[0])]


@dataclass
class TGrFamily(Geometry):
    """Disjoint union over k of T*Gr(k, n): the full based module of the
    framing torus, graded by k."""

    n: int
    var_names: tuple[str, ...] | None = None

    family = "tgr-family"

    def __post_init__(self):
        self._members = [TStarGrassmannian(k, self.n, self.var_names) for k in range(self.n + 1)]

    def var_table(self) -> VarTable:
        return self._members[0].var_table()

    def member(self, k: int) -> TStarGrassmannian:
        return self._members[k]

    def fixed_points(self) -> list[tuple[int, ...]]:
        out = []
        for k in range(self.n + 1):
            out.extend(self._members[k].fixed_points())
        return out

    def tangent_weights(self, point) -> TangentData:
        return self._members[len(point)].tangent_weights(point)


def fixed_points(g: Geometry) -> list:
    return g.fixed_points()


def tangent_weights(g: Geometry, point) -> TangentData:
    return g.tangent_weights(point)


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(vec)
    return tuple(v // g for v in vec)


def equivariant_roots(g: Geometry) -> set[Char]:
    """Characters of the framing torus in the normal directions to the fixed
    locus, collected over all fixed points (integer multiples retained,
    duplicates removed)."""
    roots: set[Char] = set()
    if isinstance(g, (TStarGrassmannian, TGrFamily)):
        n = g.n
        for p in g.fixed_points():
            for chi in g.tangent_weights(p).weights:
                a_part = chi[:n]  # project away hbar
                if any(a_part):
                    roots.add(tuple(a_part))
        return roots
    if isinstance(g, HilbC2):
        # restrict to the symplectic torus t2 = -t1; weights become m * t1
        for p in g.fixed_points():
            for (c1, c2) in g.tangent_weights(p).weights:
                m = c1 - c2
                if m:
                    roots.add((m,))
        return roots
    raise UnsupportedFamily(g.family)


def kahler_roots(g: Geometry) -> set[int]:
    """Effective-class roots driving the polar part of quantum multiplication;
    known in closed form for the supported families."""
    if isinstance(g, HilbC2):
        return set(range(-g.n, g.n + 1)) - {0}
    if isinstance(g, TStarGrassmannian):
        return {-1, 1} if g.k >= 1 else set()
    if isinstance(g, TGrFamily):
        return {-1, 1} if g.n >= 1 else set()
    raise UnsupportedFamily(getattr(g, "family", str(g)))


def kahler_arrangement(g: Geometry, window=None) -> Arrangement:
    """Periodic affine arrangement <root, x> in ZZ on the rank-1 Picard line."""
    roots = kahler_roots(g)
    if not roots:
        raise UnsupportedFamily("no known positive roots for this family member")
    positive = sorted({abs(r) for r in roots})
    if window is None:
        window = [(Fraction(0), Fraction(1))]
    return Arrangement.periodic_from_roots(1, [[b] for b in positive], window)


def attraction_height(g: Geometry, sigma: Sequence[int], point) -> int:
    """Pairing of the chamber cocharacter with the fixed point's character sum."""
    if isinstance(g, (TStarGrassmannian, TGrFamily)):
        return sum(sigma[i - 1] for i in point)
    raise UnsupportedFamily(g.family)


def roots_report(g: Geometry) -> dict:
    eq = equivariant_roots(g)
    if isinstance(g, HilbC2):
        eq_display = sorted(m for (m,) in eq)
    else:
        eq_display = sorted(eq)
    report = {"equivariant": eq_display}
    try:
        report["kahler"] = sorted(kahler_roots(g))
    except UnsupportedFamily:
        report["kahler"] = None
    return report
