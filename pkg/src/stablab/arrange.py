"""Rational hyperplane arrangements: regions, walls, codimension-2 strata,
wall-crossing paths, groupoid relation checking, and a Salvetti-style
presentation.

All geometry is exact: feasibility of strict rational inequality systems is
decided by Fourier-Motzkin elimination, which also produces rational witness
points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from .linalg import DimensionMismatch, Matrix
from .ring import LaurentPoly, RationalFunction, VarTable


class ArrangeError(Exception):
    pass


class NonGenericUnresolvable(ArrangeError):
    pass


# ---------------------------------------------------------------------------
# Exact feasibility of linear systems (strict and non-strict), with witness.
# ---------------------------------------------------------------------------

Ineq = tuple  # (coeffs: list[Fraction], rhs: Fraction, op: ">" | ">=")
Eq = tuple  # (coeffs: list[Fraction], rhs: Fraction)


def _normalize_ineq(coeffs, rhs, op):
    denom_lcm = 1
    for c in list(coeffs) + [rhs]:
        c = Fraction(c)
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(Fraction(c) * denom_lcm) for c in coeffs]
    r = int(Fraction(rhs) * denom_lcm)
    g = 0
    for c in ints + [r]:
        g = gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
        r //= g
    return tuple(ints), Fraction(r), op


def fm_feasible(ineqs: Sequence[Ineq], eqs: Sequence[Eq] = ()) -> Optional[list[Fraction]]:
    """Witness of the system {coeffs . x OP rhs}, or None if infeasible."""
    if not ineqs and not eqs:
        return []
    nvars = len(ineqs[0][0]) if ineqs else len(eqs[0][0])
    work = [([Fraction(c) for c in co], Fraction(r), op) for co, r, op in ineqs]
    equalities = [([Fraction(c) for c in co], Fraction(r)) for co, r in eqs]

    # eliminate equalities first, recording pivot expressions for back-subst
    pivots: list[tuple[int, list[Fraction], Fraction]] = []  # x_j = expr . x + const
    active = list(range(nvars))
    while equalities:
        co, r = equalities.pop()
        j = next((k for k in active if co[k]), None)
        if j is None:
            if r != 0:
                return None
            continue
        pj = co[j]
        expr = [-c / pj for c in co]
        const = r / pj
        expr[j] = Fraction(0)
        pivots.append((j, expr, const))
        active.remove(j)

        def subst(cs, rr):
            cj = cs[j]
            if not cj:
                return cs, rr
            ncs = [c + cj * e for c, e in zip(cs, expr)]
            ncs[j] = Fraction(0)
            return ncs, rr - cj * const

        equalities = [subst(cs, rr) for cs, rr in equalities]
        work = [(*subst(cs, rr), op) for cs, rr, op in work]

    # validate and drop constant constraints produced by the equality phase
    cur = []
    for cs, r, op in work:
        if all(c == 0 for c in cs):
            if (op == ">" and not (0 > r)) or (op == ">=" and not (0 >= r)):
                return None
            continue
        cur.append((cs, r, op))

    # Fourier-Motzkin elimination over the remaining variables
    elim_record: list[tuple[int, list, list]] = []  # (var, lowers, uppers)
    order = list(active)
    for j in order:
        lowers, uppers, rest = [], [], []
        for cs, r, op in cur:
            cj = cs[j]
            if cj == 0:
                rest.append((cs, r, op))
            elif cj > 0:
                lowers.append(([c / cj for c in cs], r / cj, op))  # x_j > rhs - ...
            else:
                uppers.append(([c / cj for c in cs], r / cj, op))
        elim_record.append((j, lowers, uppers))
        new = list(rest)
        for lo in lowers:
            for up in uppers:
                # lower: x_j OP r_l - sum c_l x ; upper: x_j OP r_u - sum c_u x
                # combined: sum (c_l - c_u) x OP r_l - r_u
                cs = [l - u for l, u in zip(lo[0], up[0])]
                cs[j] = Fraction(0)
                r = lo[1] - up[1]
                op = ">=" if (lo[2] == ">=" and up[2] == ">=") else ">"
                new.append((cs, r, op))
        seen = set()
        cur = []
        for cs, r, op in new:
            if all(c == 0 for c in cs):
                if (op == ">" and not (0 > r)) or (op == ">=" and not (0 >= r)):
                    return None
                continue
            key = _normalize_ineq(cs, r, op)
            if key in seen:
                continue
            seen.add(key)
            cur.append((cs, r, op))

    # back-substitute a witness
    x: list[Optional[Fraction]] = [None] * nvars
    for j, lowers, uppers in reversed(elim_record):
        lo_val, lo_strict = None, False
        for cs, r, op in lowers:
            v = r - sum(c * x[k] for k, c in enumerate(cs) if k != j and c and x[k] is not None)
            if lo_val is None or v > lo_val or (v == lo_val and op == ">"):
                lo_val, lo_strict = v, (op == ">")
        up_val, up_strict = None, False
        for cs, r, op in uppers:
            v = r - sum(c * x[k] for k, c in enumerate(cs) if k != j and c and x[k] is not None)
            if up_val is None or v < up_val or (v == up_val and op == ">"):
                up_val, up_strict = v, (op == ">")
        if lo_val is None and up_val is None:
            x[j] = Fraction(0)
        elif lo_val is None:
            x[j] = up_val - 1
        elif up_val is None:
            x[j] = lo_val + 1
        else:
            if lo_val > up_val or (lo_val == up_val and (lo_strict or up_strict)):
                return None
            x[j] = (lo_val + up_val) / 2
    for j, expr, const in reversed(pivots):
        x[j] = const + sum(e * x[k] for k, e in enumerate(expr) if e and x[k] is not None)
    return [Fraction(v) for v in x]


# ---------------------------------------------------------------------------
# Arrangements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """Rational hyperplane <normal, x> = offset with primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence[int], offset=0) -> "Hyperplane":
        normal = [int(n) for n in normal]
        if not any(normal):
            raise ArrangeError("zero normal")
        g = 0
        for n in normal:
            g = gcd(g, abs(n))
        offset = Fraction(offset) / g
        normal = [n // g for n in normal]
        lead = next(n for n in normal if n)
        if lead < 0:  # identify (normal, offset) with (-normal, -offset)
            normal = [-n for n in normal]
            offset = -offset
        return cls(tuple(normal), offset)

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        return sum(Fraction(n) * Fraction(p) for n, p in zip(self.normal, point)) - self.offset

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": str(self.offset)}


@dataclass
class Arrangement:
    """Central or periodic-affine arrangement with an enumeration window.

    A periodic arrangement is given by integer root vectors: the hyperplane
    family <root, x> in ZZ.  Roots keep their multiple (the root 2x gives
    walls at half-integers); instantiated hyperplanes are normalized.
    """

    dim: int
    hyperplanes: list[Hyperplane]
    periodic: bool = False
    window: Optional[list[tuple[Fraction, Fraction]]] = None
    roots: Optional[list[tuple[int, ...]]] = None

    def __post_init__(self):
        seen = set()
        uniq = []
        for h in self.hyperplanes:
            if h not in seen:
                seen.add(h)
                uniq.append(h)
        self.hyperplanes = uniq
        if self.periodic and (self.window is None or self.roots is None):
            raise ArrangeError("periodic arrangement needs roots and a bounded window")

    @classmethod
    def central(cls, dim: int, normals: Sequence[Sequence[int]]) -> "Arrangement":
        return cls(dim, [Hyperplane.make(n, 0) for n in normals])

    @classmethod
    def periodic_from_roots(
        cls, dim: int, roots: Sequence[Sequence[int]], window
    ) -> "Arrangement":
        """Affine arrangement <root, x> in ZZ, confined to the window box."""
        win = [(Fraction(a), Fraction(b)) for a, b in window]
        rts = [tuple(int(c) for c in r) for r in roots]
        return cls(dim, [], periodic=True, window=win, roots=rts)

    def active_hyperplanes(self, box=None) -> list[Hyperplane]:
        """Finite hyperplane list: instantiates integer offsets when periodic."""
        if not self.periodic:
            return list(self.hyperplanes)
        box = box or self.window
        import math

        out = []
        for root in self.roots:
            lo = sum(n * (b[0] if n > 0 else b[1]) for n, b in zip(root, box))
            hi = sum(n * (b[1] if n > 0 else b[0]) for n, b in zip(root, box))
            for c in range(math.floor(lo), math.ceil(hi) + 1):
                if lo <= c <= hi:
                    out.append(Hyperplane.make(root, c))
        seen = set()
        uniq = []
        for h in sorted(out, key=lambda h: (h.normal, h.offset)):
            if h not in seen:
                seen.add(h)
                uniq.append(h)
        return uniq

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
            "periodic": self.periodic,
            "window": [[str(a), str(b)] for a, b in self.window] if self.window else None,
            "roots": [list(r) for r in self.roots] if self.roots else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        hps = [Hyperplane.make(h["normal"], Fraction(h["offset"])) for h in data["hyperplanes"]]
        win = None
        if data.get("window"):
            win = [(Fraction(a), Fraction(b)) for a, b in data["window"]]
        roots = [tuple(r) for r in data["roots"]] if data.get("roots") else None
        return cls(
            data["dim"], hps, periodic=data.get("periodic", False), window=win, roots=roots
        )


@dataclass
class Region:
    """Open region cut out by sign conditions, with an interior witness."""

    signs: tuple[int, ...]
    point: tuple[Fraction, ...]
    kind: str  # "cone" | "alcove"

    def to_json(self) -> dict:
        return {
            "signs": ["+" if s > 0 else "-" for s in self.signs],
            "point": [str(c) for c in self.point],
            "kind": self.kind,
        }


@dataclass
class Wall:
    hyperplane: int  # index into the active hyperplane list
    regions: tuple[int, int]  # indices into the region list


@dataclass
class Codim2Stratum:
    pencil: tuple[int, ...]  # hyperplane indices through the stratum
    point: tuple[Fraction, ...]
    region_cycle: list[int]  # 2m region indices in circular order
    wall_cycle: list[int]  # wall_cycle[t] separates region_cycle[t], [t+1]


def _region_constraints(hyperplanes, signs, box=None):
    ineqs = []
    for h, s in zip(hyperplanes, signs):
        coeffs = [Fraction(s * n) for n in h.normal]
        ineqs.append((coeffs, Fraction(s) * h.offset, ">"))
    if box:
        d = len(box)
        for k, (lo, hi) in enumerate(box):
            e = [Fraction(0)] * d
            e[k] = Fraction(1)
            ineqs.append((list(e), Fraction(lo), ">="))
            e2 = [Fraction(0)] * d
            e2[k] = Fraction(-1)
            ineqs.append((e2, -Fraction(hi), ">="))
    return ineqs


def enumerate_regions(arr: Arrangement) -> list[Region]:
    """All open regions (meeting the window, if periodic), each with an
    exact interior witness; incremental insertion with feasibility splits."""
    hyperplanes = arr.active_hyperplanes()
    kind = "alcove" if arr.periodic else "cone"
    box = arr.window if arr.periodic else None
    if not hyperplanes:
        pt = tuple(Fraction(0) for _ in range(arr.dim))
        if box:
            pt = tuple((lo + hi) / 2 for lo, hi in box)
        return [Region((), pt, kind)]
    regions: list[tuple[tuple[int, ...], tuple[Fraction, ...] | None]] = [((), None)]
    prefix: list[Hyperplane] = []
    for h in hyperplanes:
        new_regions = []
        for signs, witness in regions:
            for s in (1, -1):
                w = fm_feasible(_region_constraints(prefix + [h], signs + (s,), box))
                if w is not None:
                    new_regions.append((signs + (s,), tuple(w)))
        regions = new_regions
        prefix.append(h)
    out = [Region(signs, pt, kind) for signs, pt in regions]
    out.sort(key=lambda r: r.signs, reverse=True)
    return out


def region_of_point(arr: Arrangement, point: Sequence[Fraction], regions=None) -> Region:
    hyperplanes = arr.active_hyperplanes()
    signs = []
    for h in hyperplanes:
        v = h.eval(point)
        if v == 0:
            raise NonGenericUnresolvable(f"point lies on hyperplane {h}")
        signs.append(1 if v > 0 else -1)
    signs = tuple(signs)
    if regions is not None:
        for r in regions:
            if r.signs == signs:
                return r
    return Region(signs, tuple(Fraction(c) for c in point), "alcove" if arr.periodic else "cone")


def walls(arr: Arrangement, regions: Optional[list[Region]] = None) -> list[Wall]:
    hyperplanes = arr.active_hyperplanes()
    if regions is None:
        regions = enumerate_regions(arr)
    box = arr.window if arr.periodic else None
    out = []
    for i, h in enumerate(hyperplanes):
        for a, b in itertools.combinations(range(len(regions)), 2):
            ra, rb = regions[a], regions[b]
            diff = [k for k in range(len(hyperplanes)) if ra.signs[k] != rb.signs[k]]
            if diff != [i]:
                continue
            # shared facet: equality on h, common strict signs elsewhere
            ineqs = []
            for k, hk in enumerate(hyperplanes):
                if k == i:
                    continue
                s = ra.signs[k]
                ineqs.append(([Fraction(s * n) for n in hk.normal], Fraction(s) * hk.offset, ">"))
            if box:
                ineqs += _region_constraints([], [], box)
            eqs = [([Fraction(n) for n in h.normal], h.offset)]
            if fm_feasible(ineqs, eqs) is not None:
                out.append(Wall(i, (a, b)))
    return out


def _circular_key(vec: tuple[Fraction, Fraction]):
    s, t = vec
    if t > 0 or (t == 0 and s > 0):
        half = 0
    else:
        half = 1
    return half


def _sort_rays(rays: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    import functools

    def cmp(u, v):
        hu, hv = _circular_key(u), _circular_key(v)
        if hu != hv:
            return -1 if hu < hv else 1
        cross = u[0] * v[1] - u[1] * v[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(rays, key=functools.cmp_to_key(cmp))


def codim2_strata(arr: Arrangement, regions: Optional[list[Region]] = None) -> list[Codim2Stratum]:
    """Codimension-2 strata with their full circular region/wall cycles.

    Degenerate pencils (three or more hyperplanes through one stratum) are
    supported; a stratum is reported when all regions around it are
    enumerated (inside the window, in the periodic case).
    """
    hyperplanes = arr.active_hyperplanes()
    if regions is None:
        regions = enumerate_regions(arr)
    region_by_signs = {r.signs: k for k, r in enumerate(regions)}
    d = arr.dim
    strata: dict[tuple, Codim2Stratum] = {}
    for i, j in itertools.combinations(range(len(hyperplanes)), 2):
        hi, hj = hyperplanes[i], hyperplanes[j]
        # need independent normals
        minors = [
            (p, q, hi.normal[p] * hj.normal[q] - hi.normal[q] * hj.normal[p])
            for p, q in itertools.combinations(range(d), 2)
        ]
        pivot = next(((p, q, m) for p, q, m in minors if m), None)
        if pivot is None:
            continue
        p, q, det = pivot
        # particular point: solve on coords (p, q), zero elsewhere
        x0 = [Fraction(0)] * d
        x0[p] = Fraction(hi.offset * hj.normal[q] - hj.offset * hi.normal[q], det)
        x0[q] = Fraction(hi.normal[p] * hj.offset - hj.normal[p] * hi.offset, det)
        pencil = []
        for k, h in enumerate(hyperplanes):
            # h contains the stratum iff normal in span and offset matches
            a_num = h.normal[p] * hj.normal[q] - h.normal[q] * hj.normal[p]
            b_num = hi.normal[p] * h.normal[q] - hi.normal[q] * h.normal[p]
            alpha, beta = Fraction(a_num, det), Fraction(b_num, det)
            if all(
                Fraction(h.normal[r]) == alpha * hi.normal[r] + beta * hj.normal[r]
                for r in range(d)
            ) and h.offset == alpha * hi.offset + beta * hj.offset:
                pencil.append(k)
        key = tuple(pencil)
        if key in strata:
            continue
        stratum = _build_cycle(arr, hyperplanes, regions, region_by_signs, pencil, x0, p, q)
        if stratum is not None:
            strata[key] = stratum
    return [strata[k] for k in sorted(strata)]


def _build_cycle(arr, hyperplanes, regions, region_by_signs, pencil, x0, p, q):
    d = arr.dim
    # directions of the pencil lines in the (e_p, e_q) transversal plane
    rays = []
    for k in pencil:
        h = hyperplanes[k]
        dir_st = (Fraction(-h.normal[q]), Fraction(h.normal[p]))
        rays.append((dir_st, k))
        rays.append(((-dir_st[0], -dir_st[1]), k))
    ordered = _sort_rays([r for r, _ in rays])
    ray_hyp = {}
    for r, k in rays:
        ray_hyp[r] = k
    m2 = len(ordered)
    region_cycle = []
    wall_cycle = []
    others = [k for k in range(len(hyperplanes)) if k not in pencil]
    for t in range(m2):
        r1, r2 = ordered[t], ordered[(t + 1) % m2]
        mid = (r1[0] + r2[0], r1[1] + r2[1])
        D = [Fraction(0)] * d
        D[p] += mid[0]
        D[q] += mid[1]
        signs = []
        ok = True
        for k, h in enumerate(hyperplanes):
            if k in pencil:
                v = sum(Fraction(n) * dd for n, dd in zip(h.normal, D))
                if v == 0:
                    ok = False
                    break
                signs.append(1 if v > 0 else -1)
            else:
                v = h.eval(x0)
                if v == 0:
                    ok = False  # stratum touches a non-pencil hyperplane
                    break
                signs.append(1 if v > 0 else -1)
        if not ok:
            return None
        idx = region_by_signs.get(tuple(signs))
        if idx is None:
            return None  # region outside the enumeration window
        region_cycle.append(idx)
        wall_cycle.append(ray_hyp[r2])
    # wall_cycle[t] separates sector t and t+1 via ray r_{t+1}
    return Codim2Stratum(tuple(pencil), tuple(x0), region_cycle, wall_cycle)


@dataclass
class Crossing:
    hyperplane: Hyperplane
    t: Fraction
    point: tuple[Fraction, ...]


def crossing_path(arr: Arrangement, start: Region, shift: Sequence[Fraction]) -> list[Crossing]:
    """Ordered wall crossings of the straight segment representative ->
    representative + shift; ties are resolved deterministically by the
    instantiation order of hyperplanes."""
    shift = [Fraction(s) for s in shift]
    if all(s == 0 for s in shift):
        return []
    x0 = list(start.point)
    x1 = [a + b for a, b in zip(x0, shift)]
    if arr.periodic:
        lo = [min(a, b) for a, b in zip(x0, x1)]
        hi = [max(a, b) for a, b in zip(x0, x1)]
        box = [
            (min(l, w[0]) - 1, max(h, w[1]) + 1)
            for l, h, w in zip(lo, hi, arr.window or [(Fraction(0), Fraction(0))] * arr.dim)
        ]
        hyperplanes = arr.active_hyperplanes(box=box)
    else:
        hyperplanes = arr.active_hyperplanes()
    events = []
    for idx, h in enumerate(hyperplanes):
        v0 = h.eval(x0)
        dv = sum(Fraction(n) * s for n, s in zip(h.normal, shift))
        if dv == 0:
            if v0 == 0:
                raise NonGenericUnresolvable("segment lies inside a hyperplane")
            continue
        t = -v0 / dv
        if t == 0 or t == 1:
            raise NonGenericUnresolvable("segment endpoint lies on a hyperplane")
        if 0 < t < 1:
            events.append((t, idx, h))
    events.sort(key=lambda e: (e[0], e[1]))
    out = []
    for t, idx, h in events:
        pt = tuple(a + t * s for a, s in zip(x0, shift))
        out.append(Crossing(h, t, pt))
    return out


@dataclass
class StratumCertificate:
    stratum: Codim2Stratum
    status: str  # "pass" | "fail"
    residual: Optional[Matrix] = None
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        data = {
            "stratum": list(self.stratum.pencil),
            "status": self.status,
        }
        if self.witness:
            data["witness"] = self.witness
        return data


def groupoid_check(
    arr: Arrangement,
    assign: Callable[[Hyperplane], Matrix],
    dyn_table: VarTable,
    slot: str = "t",
    regions: Optional[list[Region]] = None,
) -> list[StratumCertificate]:
    """Verify the cycle relation around every codimension-2 stratum.

    ``assign`` maps a hyperplane to an invertible matrix whose entries are
    rational functions of the scalar slot variable; each factor is evaluated
    at its own wall equation <normal, z> - offset in the dynamical variables
    z_1..z_dim of ``dyn_table``.  The two transversal paths around a stratum
    must compose to the same matrix.
    """
    hyperplanes = arr.active_hyperplanes()
    if regions is None:
        regions = enumerate_regions(arr)
    strata = codim2_strata(arr, regions)
    zvars = dyn_table.names[: arr.dim]

    def wall_matrix(hyp_index: int) -> Matrix:
        h = hyperplanes[hyp_index]
        B = assign(h)
        equation = LaurentPoly.zero(dyn_table)
        for n, zn in zip(h.normal, zvars):
            if n:
                equation = equation + LaurentPoly.var(dyn_table, zn).scale(n)
        equation = equation + LaurentPoly.const(dyn_table, -h.offset)
        return B.map(lambda e: e.substitute({slot: equation}), table=dyn_table)

    certs = []
    for st in strata:
        m2 = len(st.wall_cycle)
        if m2 % 2:
            raise ArrangeError("odd cycle around a stratum")
        m = m2 // 2
        mats = {}
        size = None
        for k in set(st.wall_cycle):
            mats[k] = wall_matrix(k)
            if size is None:
                size = (mats[k].rows, mats[k].cols)
            elif (mats[k].rows, mats[k].cols) != size:
                raise DimensionMismatch("inconsistent matrix sizes along a cycle")
        path1 = st.wall_cycle[:m]  # crossings in order
        path2 = list(reversed(st.wall_cycle[m:]))  # other way around
        P1 = Matrix.identity(dyn_table, size[0])
        for k in path1:
            P1 = mats[k] * P1
        P2 = Matrix.identity(dyn_table, size[0])
        for k in path2:
            P2 = mats[k] * P2
        residual = P1 - P2
        if residual.is_zero():
            certs.append(StratumCertificate(st, "pass"))
        else:
            wit = None
            for i in range(residual.rows):
                for j in range(residual.cols):
                    if not residual[i, j].is_zero():
                        wit = {"entry": [i, j], "residual": str(residual[i, j])}
                        break
                if wit:
                    break
            certs.append(StratumCertificate(st, "fail", residual, wit))
    return certs


def salvetti_presentation(arr: Arrangement) -> dict:
    """Groupoid presentation dual to the sign-vector decomposition.

    Objects are regions; generators are ordered wall crossings with an
    over/under lift; relations equate the two positive lifts of the paths
    around every codimension-2 stratum, one relation per crossing type.
    """
    regions = enumerate_regions(arr)
    wall_list = walls(arr, regions)
    generators = []
    for w_id, w in enumerate(wall_list):
        a, b = w.regions
        for src, dst in ((a, b), (b, a)):
            for lift in ("up", "down"):
                generators.append(
                    {"id": len(generators), "wall": w_id, "from": src, "to": dst, "lift": lift}
                )
    gen_lookup = {}
    for g in generators:
        gen_lookup[(g["wall"], g["from"], g["to"], g["lift"])] = g["id"]
    wall_by_pair = {}
    for w_id, w in enumerate(wall_list):
        wall_by_pair[frozenset(w.regions)] = w_id
    relations = []
    for st in codim2_strata(arr, regions):
        m2 = len(st.region_cycle)
        m = m2 // 2
        for lift in ("up", "down"):
            def word(path_regions):
                out = []
                for a, b in zip(path_regions, path_regions[1:]):
                    w_id = wall_by_pair.get(frozenset((a, b)))
                    if w_id is None:
                        return None
                    out.append(gen_lookup[(w_id, a, b, lift)])
                return out

            side1 = word(st.region_cycle[: m + 1])
            side2 = word([st.region_cycle[0]] + list(reversed(st.region_cycle[m:])))
            if side1 is None or side2 is None:
                continue
            relations.append({"stratum": list(st.pencil), "lift": lift, "lhs": side1, "rhs": side2})
    return {
        "objects": [r.to_json() for r in regions],
        "generators": generators,
        "relations": relations,
    }
