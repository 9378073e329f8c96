"""Cross-validation: the cycle relation around the triple point of the rank-2
arrangement, with walls carrying the geometric two-body R-matrix, reduces to
the Yang-Baxter identity verified independently in the R-matrix module."""

from stablab.arrange import Arrangement, groupoid_check
from stablab.geom import TGrFamily
from stablab.linalg import Matrix
from stablab.ring import LaurentPoly, RationalFunction, VarTable
from stablab.rmat import SPECTRAL, embed_factor_pair, two_factor_r, yang_baxter_check

SLOT = VarTable(("t", "hbar"))
DYN = VarTable(("z1", "z2", "hbar"))


def _r_on_legs(Ru, legs):
    slot = Ru.map(lambda e: e.substitute({"u": LaurentPoly.var(SLOT, "t")}), table=SLOT)
    return embed_factor_pair(slot, legs, 3, 2)


def _assignment(Ru):
    def assign(h):
        if h.normal == (1, 0):
            return _r_on_legs(Ru, (0, 1))
        if h.normal == (0, 1):
            return _r_on_legs(Ru, (1, 2))
        if h.normal == (1, 1):
            return _r_on_legs(Ru, (0, 2))
        raise AssertionError(h)

    return assign


A2 = Arrangement.central(2, [[1, 0], [0, 1], [1, 1]])


def test_hexagon_relation_is_yang_baxter():
    Ru = two_factor_r(TGrFamily(2))
    assert yang_baxter_check(Ru)["status"] == "pass"
    certs = groupoid_check(A2, _assignment(Ru), DYN)
    assert len(certs) == 1
    assert len(certs[0].stratum.wall_cycle) == 6
    assert certs[0].status == "pass"


def test_hexagon_fails_with_broken_assignment():
    Ru = two_factor_r(TGrFamily(2))
    two = RationalFunction.const(SPECTRAL, 2)
    broken = Ru.copy()
    broken[1, 2] = Ru[1, 2] * two  # detune one matrix element
    assert yang_baxter_check(broken)["status"] == "fail"
    certs = groupoid_check(A2, _assignment(broken), DYN)
    assert len(certs) == 1
    assert certs[0].status == "fail"
    assert certs[0].witness is not None
    assert "residual" in certs[0].witness
