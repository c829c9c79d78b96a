import sympy
import pytest
from sympy.matrices.normalforms import smith_normal_form

from artifact import chainlink
from artifact.arith import IntMatrix


def _sympy_snf(rows):
    D = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


def test_longitude_rows():
    M = chainlink.longitude_matrix()
    assert M.entries[0] == (0, -1, 0, 0, -1)
    assert M.tolist() == [list(r) for r in chainlink.LONGITUDES]


def test_longitude_matrix_rank_and_snf():
    # SNF oracle: the matrix is nonsingular with det -2, so rank 5
    rows = chainlink.longitude_matrix().tolist()
    assert sympy.Matrix(rows).det() == -2
    assert chainlink.longitude_matrix().rank() == sympy.Matrix(rows).rank() == 5
    assert chainlink.longitude_matrix().invariant_factors() == _sympy_snf(rows) == [1, 1, 1, 1, 2]


def test_left_kernel_mod_2():
    # over Z the transpose has trivial kernel; (1,1,1,1,1) is a kernel vector mod 2 only
    M = chainlink.longitude_matrix()
    assert chainlink.left_kernel(M) == []
    y = [sum(M.entries[i][j] for i in range(5)) for j in range(5)]
    assert y == [-2, 0, 0, 0, 0]


def test_longitude_images():
    r = chainlink.check_longitude_images()
    assert r["ok"] and r["mismatched"] == []
    assert r["images"][1] == (0, 0, 1)
    assert r["images"][2] == (1, 0, -1)
    # oracle: straight sympy product
    img = sympy.Matrix(chainlink.TORUS_MAP) * sympy.Matrix(chainlink.LONGITUDES).T
    assert [tuple(img[:, c]) for c in range(5)] == list(chainlink.EXPECTED_LONGITUDE_IMAGES)


def test_torus_map_columns():
    cols = list(zip(*chainlink.TORUS_MAP))
    assert cols == [(0, 0, 0), (0, 1, -1), (0, 0, 1), (-1, 1, 0), (0, -1, 1)]


def test_deck_group():
    r = chainlink.deck_group()
    assert r["rankOfM"] == 3 == sympy.Matrix(chainlink.TORUS_MAP).rank()
    assert r["snfOfM"] == _sympy_snf(chainlink.TORUS_MAP) == [1, 1, 1]
    assert r["elementaryDivisors"] == [5, 5, 5]


def test_deck_group_oracle_by_counting():
    # independent: the image of M mod 5 in (Z/5)^3, enumerated
    img = set()
    from itertools import product

    for x in product(range(5), repeat=5):
        img.add(tuple(sum(row[j] * x[j] for j in range(5)) % 5 for row in chainlink.TORUS_MAP))
    assert len(img) == 125


def test_abelianized_quotient_is_rank_four():
    assert chainlink.abelianized_quotient() == [5, 5, 5, 5]


def test_mayer_vietoris():
    r = chainlink.mayer_vietoris(chainlink.paper_gluing())
    assert r["h1Rank"] == 9 and r["free"]
    assert r["rankA"] == 5
    assert r["h0KernelRank"] == 4
    assert chainlink.mayer_vietoris_h1_rank() == 9


def test_mayer_vietoris_oracle():
    # coker of x -> (Ax, -Ax) from Z^10 to Z^10 via sympy SNF: 5 free summands
    g = chainlink.paper_gluing()
    A = [[g.copy_a[c // 2][c % 2][r] for c in range(10)] for r in range(5)]
    big = A + [[-x for x in row] for row in A]
    nz = _sympy_snf(big)
    assert nz == [1] * 5
    assert 10 - len(nz) + 4 == 9


def test_swap_invariance():
    g = chainlink.paper_gluing()
    assert chainlink.mayer_vietoris(g) == chainlink.mayer_vietoris(g.swapped())


def test_gluing_validation():
    g = chainlink.paper_gluing()
    bad = chainlink.GluingData(g.copy_a, g.copy_b[:4] + (((0, 0, 0, 0, 1), (1, 0, 0, 0, 0)),))
    with pytest.raises(chainlink.ChainLinkError, match="torus 4"):
        chainlink.mayer_vietoris(bad)
