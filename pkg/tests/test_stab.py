from fractions import Fraction

import pytest

from stablab.geom import TGrFamily, TStarGrassmannian
from stablab.linalg import Matrix
from stablab.ring import LaurentPoly, RationalFunction
from stablab.stab import (
    Chamber,
    Polarization,
    StabError,
    WallSlope,
    diagonal_entry,
    full_euler,
    jump_scan,
    stab_solve,
    stab_tensor,
    verify_stab,
)

TP1 = TStarGrassmannian(1, 2)
T = TP1.var_table()


def P(text, table=T):
    return LaurentPoly.parse(table, text)


def column_signs_match(computed, expected_rows, order):
    """computed[i][j] == eps_j * expected[i][j] for diagonal signs eps."""
    n = len(order)
    for j in range(n):
        eps = None
        for i in range(n):
            e, x = computed[i][j], expected_rows[i][j]
            if x.is_zero() != e.is_zero():
                return False
            if x.is_zero():
                continue
            for s in (1, -1):
                if e == x.scale(s):
                    if eps is None:
                        eps = s
                    elif eps != s:
                        return False
                    break
            else:
                return False
    return True


def test_tp1_hand_matrix_plus_chamber():
    sm = stab_solve(TP1, "+")
    assert sm.order == [(1,), (2,)]
    # hand-solved oracle, up to declared polarization column signs
    expected = [
        [P("hbar - a1 + a2"), P("0")],
        [P("hbar"), P("-a1 + a2")],
    ]
    assert column_signs_match(sm.entries, expected, sm.order)
    assert verify_stab(sm)["ok"]


def test_tp1_hand_matrix_minus_chamber():
    sm = stab_solve(TP1, "-")
    assert sm.order == [(2,), (1,)]
    expected = [
        [P("hbar + a1 - a2"), P("0")],
        [P("hbar"), P("a1 - a2")],
    ]
    assert column_signs_match(sm.entries, expected, sm.order)
    assert verify_stab(sm)["ok"]


def test_trivial_torus_identity_like():
    g = TStarGrassmannian(1, 1)
    sm = stab_solve(g, Chamber((1,)))
    assert sm.order == [(1,)]
    assert sm.entries[0][0] == LaurentPoly.const(g.var_table(), 1)


def test_uniqueness_and_axioms_all_small_grassmannians():
    for n in range(1, 5):
        for k in range(n + 1):
            g = TStarGrassmannian(k, n)
            for sign in ("+", "-"):
                sm = stab_solve(g, sign)
                rep = verify_stab(sm)
                assert rep["ok"], (k, n, sign, rep)
                assert sm.metadata["unique"] is True
                d = k * (n - k)
                a_names = [g.var_table().names[i] for i in range(n)]
                for idx, label in enumerate(sm.order):
                    diag = sm.entries[idx][idx]
                    if d > 0:
                        assert diag.total_degree(a_names) == d


def test_gkm_and_triangularity_reported():
    sm = stab_solve(TStarGrassmannian(2, 4), "+")
    rep = verify_stab(sm)
    assert rep["gkm"] and rep["triangular"] and rep["diagonal"]


def test_equal_height_entries_vanish():
    # non-comparable fixed points ({1,4} vs {2,3} under the standard chamber)
    sm = stab_solve(TStarGrassmannian(2, 4), "+")
    assert sm.entry((1, 4), (2, 3)).is_zero()
    assert sm.entry((2, 3), (1, 4)).is_zero()


def test_chamber_value_refinement_irrelevant():
    # chambers in the same cone give the identical matrix
    a = stab_solve(TStarGrassmannian(1, 3), Chamber((3, 2, 1)))
    b = stab_solve(TStarGrassmannian(1, 3), Chamber((10, 4, 1)))
    assert a.entries == b.entries


def test_tp2_column_values():
    # hand-derived values for T*Gr(1,3), standard chamber
    g = TStarGrassmannian(1, 3)
    sm = stab_solve(g, "+")
    tab = g.var_table()
    assert sm.order == [(1,), (2,), (3,)]
    assert sm.entry((1,), (1,)) == P("hbar - a1 + a2", tab) * P("hbar - a1 + a3", tab)
    assert sm.entry((2,), (1,)) == P("hbar", tab) * P("hbar - a2 + a3", tab)
    assert sm.entry((3,), (1,)) == P("hbar", tab) * P("hbar + a2 - a3", tab)
    assert sm.entry((2,), (2,)) == P("a1 - a2", tab) * P("hbar - a2 + a3", tab)
    assert sm.entry((3,), (2,)) == P("hbar", tab) * P("a1 - a3", tab)
    assert sm.entry((3,), (3,)) == P("a1 - a3", tab) * P("a2 - a3", tab)


def test_k_mode_tp1_small_slope():
    sm = stab_solve(TP1, "+", mode="K", slope=Fraction(1, 2))
    assert sm.entry((1,), (1,)) == P("1 - a1*a2^-1*hbar^-1")
    assert sm.entry((2,), (2,)) == P("-1 + a1*a2^-1")
    assert sm.entry((2,), (1,)) == P("1 - hbar^-1")
    assert verify_stab(sm)["ok"]


def test_k_mode_window_strictness():
    sm = stab_solve(TP1, "+", mode="K", slope=Fraction(1, 2))
    for w in sm.metadata["windows"]:
        s = Fraction(1, 2)
        for e in w["exponents"]:
            assert -s < e < w["nodes"] - s


def test_k_mode_wall_slope_reports_both_sides():
    with pytest.raises(WallSlope) as exc:
        stab_solve(TP1, "+", mode="K", slope=0)
    err = exc.value
    assert err.below.entries != err.above.entries


def test_jump_scan_tp1_integer_walls():
    res = jump_scan(TP1, "+", Polarization(), (Fraction(-3, 2), Fraction(3, 2)), 2)
    assert res["jumps"] == [Fraction(-1), Fraction(0), Fraction(1)]


def test_jump_scan_inside_one_alcove():
    res = jump_scan(TP1, "+", Polarization(), (Fraction(1, 8), Fraction(7, 8)), 2)
    assert res["jumps"] == []


def test_jump_scan_tgr13_contained_in_integer_walls():
    res = jump_scan(
        TStarGrassmannian(1, 3), "+", Polarization(), (Fraction(-1, 2), Fraction(3, 2)), 3
    )
    assert all(j.denominator == 1 for j in res["jumps"])
    assert res["jumps"] == [Fraction(0), Fraction(1)]


def test_stab_tensor_splitting_1_1_matches_stab_solve():
    fam = TGrFamily(2)
    sm = stab_tensor(fam, (1, 1), "+")
    direct = stab_solve(fam, "+")
    assert sm.order == direct.order
    assert sm.entries == direct.entries
    assert sm.metadata["columns"] == [[[], []], [[1], []], [[], [2]], [[1], [2]]]


def test_stab_tensor_degenerate_identity():
    fam = TGrFamily(2)
    sm = stab_tensor(fam, (2, 0), "+")
    assert sm.metadata.get("degenerate") is True
    m = sm.to_matrix()
    assert m == Matrix.identity(fam.var_table(), 4)


def test_stab_tensor_21_columns_are_pairs():
    fam = TGrFamily(3)
    sm = stab_tensor(fam, (2, 1), "+")
    for label, (left, right) in zip(sm.order, sm.metadata["columns"]):
        assert sorted(left + right) == sorted(label)
        assert all(i <= 2 for i in left) and all(i > 2 for i in right)
    rep = verify_stab(sm)
    assert rep["triangular"] and rep["gkm"] and rep["diagonal"]


def test_stab_tensor_both_signs_share_internal_chamber():
    fam = TGrFamily(3)
    plus = stab_tensor(fam, (2, 1), "+")
    minus = stab_tensor(fam, (2, 1), "-")
    # internal flags agree on each group
    fp, fm = plus.metadata["flag"], minus.metadata["flag"]
    assert [i for i in fp if i <= 2] == [i for i in fm if i <= 2]
    assert [i for i in fp if i > 2] == [i for i in fm if i > 2]


def test_full_euler_degree():
    g = TStarGrassmannian(2, 4)
    e = full_euler(g, (1, 2), "H")
    assert e.total_degree() == g.dim()


def test_diagonal_entry_matches_solver():
    g = TStarGrassmannian(1, 3)
    sm = stab_solve(g, "+")
    for idx, label in enumerate(sm.order):
        assert sm.entries[idx][idx] == diagonal_entry(g, sm.chamber, label, "H", sm.polarization)


def test_bad_chamber_rejected():
    with pytest.raises(StabError):
        stab_solve(TP1, Chamber((1, 1)))
    with pytest.raises(StabError):
        Chamber((2, 2, 1))
