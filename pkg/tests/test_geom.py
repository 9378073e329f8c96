from fractions import Fraction

import pytest

from stablab.arrange import enumerate_regions
from stablab.geom import (
    HilbC2,
    InvalidLabel,
    TGrFamily,
    TStarGrassmannian,
    UnsupportedFamily,
    attraction_height,
    equivariant_roots,
    fixed_points,
    kahler_arrangement,
    kahler_roots,
    partitions,
    tangent_weights,
)


def test_fixed_points_order():
    assert fixed_points(TStarGrassmannian(1, 2)) == [(1,), (2,)]
    assert fixed_points(HilbC2(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(fixed_points(TStarGrassmannian(2, 4))) == 6
    assert len(fixed_points(TGrFamily(3))) == 8


def test_grassmannian_tangent_weights():
    g = TStarGrassmannian(1, 2)
    td = tangent_weights(g, (1,))
    # characters over (a1, a2, hbar): a1 - a2 and hbar - (a1 - a2)
    assert set(td.weights) == {(1, -1, 0), (-1, 1, 1)}
    with pytest.raises(InvalidLabel):
        tangent_weights(g, (3,))


def test_hilb_small_tangents():
    g = HilbC2(1)
    td = tangent_weights(g, (1,))
    assert set(td.weights) == {(1, 0), (0, 1)}  # t1 and t2
    g2 = HilbC2(2)
    td2 = tangent_weights(g2, (2,))
    # restricted to t2 = -t1, weights become {+-1, +-2} times t1
    restricted = sorted(c1 - c2 for (c1, c2) in td2.weights)
    assert restricted == [-2, -1, 1, 2]


def test_symplectic_pairing_all_geometries():
    for g in [TStarGrassmannian(k, n) for n in range(1, 6) for k in range(n + 1)] + [
        HilbC2(n) for n in range(1, 6)
    ]:
        if isinstance(g, HilbC2):
            hbar = (1, 1)
        else:
            hbar = tuple([0] * g.n + [1])
        for p in fixed_points(g):
            td = tangent_weights(g, p)
            assert len(td.weights) == g.dim()
            bag = list(td.weights)
            while bag:
                chi = bag.pop()
                partner = tuple(h - c for h, c in zip(hbar, chi))
                assert partner in bag, (g.family, p, chi)
                bag.remove(partner)


def test_hilb_hook_restriction():
    for n in range(1, 7):
        g = HilbC2(n)
        for lam in fixed_points(g):
            hooks = _hooks(lam)
            restricted = sorted(c1 - c2 for (c1, c2) in tangent_weights(g, lam).weights)
            assert restricted == sorted([h for h in hooks] + [-h for h in hooks])


def _hooks(lam):
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            out.append((row - j - 1) + (conj[j] - i - 1) + 1)
    return out


def test_hilb_equivariant_roots():
    for n in range(1, 7):
        roots = equivariant_roots(HilbC2(n))
        assert roots == {(m,) for m in range(-n, n + 1) if m != 0}


def test_grassmannian_equivariant_roots():
    g = TStarGrassmannian(1, 2)
    assert equivariant_roots(g) == {(1, -1), (-1, 1)}
    fam = TGrFamily(3)
    expected = set()
    for i in range(3):
        for j in range(3):
            if i != j:
                v = [0, 0, 0]
                v[i], v[j] = 1, -1
                expected.add(tuple(v))
    assert equivariant_roots(fam) == expected


def test_kahler_arrangement_walls():
    arr = kahler_arrangement(HilbC2(3))
    offsets = sorted(h.offset for h in arr.active_hyperplanes())
    assert offsets == [0, Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1]
    arr2 = kahler_arrangement(TStarGrassmannian(1, 2))
    assert sorted(h.offset for h in arr2.active_hyperplanes()) == [0, 1]
    arr3 = kahler_arrangement(HilbC2(1))
    assert sorted(h.offset for h in arr3.active_hyperplanes()) == [0, 1]
    assert kahler_roots(TStarGrassmannian(0, 2)) == set()


def test_root_hyperplanes_feed_arrangement():
    fam = TGrFamily(3)
    roots = equivariant_roots(fam)
    normals = sorted({tuple(r) for r in roots if _first_nonzero(r) > 0})
    from stablab.arrange import Arrangement

    arr = Arrangement.central(3, [list(n) for n in normals])
    regions = enumerate_regions(arr)
    assert len(regions) == 6  # chambers of the rank-2 root system times nothing else


def _first_nonzero(v):
    return next(x for x in v if x)


def test_attraction_height():
    g = TGrFamily(4)
    sigma = (4, 3, 2, 1)
    assert attraction_height(g, sigma, (1, 4)) == attraction_height(g, sigma, (2, 3))
    assert attraction_height(g, sigma, (1, 2)) > attraction_height(g, sigma, (3, 4))


def test_partitions_count():
    assert [len(partitions(n)) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]
