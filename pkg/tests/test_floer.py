import json
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import floer


def test_e2_by_hand_summation():
    # oracle: the Betti vectors placed by hand
    #   H*(L_im^5) = (1, 9, 9, 1) in degrees 0..3
    #   five T^2 shifted to -1..1, five more to 2..4
    #   Morse complex of L' (2, 6, 4) in degrees 1..3, relative one (4, 6, 2) in 0..2
    hand = {p: 0 for p in range(-1, 5)}
    for p, c in zip(range(0, 4), (1, 9, 9, 1)):
        hand[p] += c
    for p, c in zip(range(-1, 2), (5, 10, 5)):
        hand[p] += c
    for p, c in zip(range(2, 5), (5, 10, 5)):
        hand[p] += c
    for p, c in zip(range(1, 4), (2, 6, 4)):
        hand[p] += c
    for p, c in zip(range(0, 3), (4, 6, 2)):
        hand[p] += c
    got = floer.build_e2(floer.paper_summands())
    assert got == hand == {-1: 5, 0: 15, 1: 22, 2: 22, 3: 15, 4: 5}


def test_b1_comes_from_mayer_vietoris():
    s = floer.paper_summands()
    assert s[0].counts == (1, 9, 9, 1)
    assert floer.paper_summands(b1=3)[0].counts == (1, 3, 3, 1)


def test_basis_matches_e2():
    data = floer.load_incidence()
    e2 = floer.build_e2(floer.paper_summands())
    assert {p: len(v) for p, v in data["_basis"].items()} == e2


def test_ranks_against_sympy():
    data = floer.load_incidence()
    dd = floer.DiffData.from_incidence(data)
    ranks = dd.ranks()
    assert (ranks[1], ranks[2], ranks[3]) == (10, 8, 4)
    assert (ranks[-1], ranks[0]) == (4, 8)
    for p, m in dd.d.items():
        assert sympy.Matrix(m).rank() == ranks[p]


def test_composites_vanish():
    dd = floer.DiffData.from_incidence(floer.load_incidence())
    comps = dd.composites_vanish()
    assert len(comps) == 4 and all(comps.values())


def test_cohomology():
    r = floer.verify()
    assert r["hf"] == {-1: 1, 0: 3, 1: 4, 2: 4, 3: 3, 4: 1}
    assert r["poincare"] and r["eulerE2"] == r["eulerHF"] == 0
    assert r["ok"]


def test_poincare_check():
    assert floer.poincare_check({-1: 1, 0: 3, 1: 4, 2: 4, 3: 3, 4: 1})
    assert not floer.poincare_check({-1: 1, 0: 3, 1: 4, 2: 5, 3: 3, 4: 1})


def test_negative_cohomology_raises():
    with pytest.raises(floer.FloerDataError):
        floer.cohomology_ranks({0: 1, 1: 1}, {0: 2})


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_cohomology_of_random_complex(seed):
    # random complex d1 . d0 = 0 built as d1 = B P, d0 = Q A with P Q = 0
    rng = random.Random(seed)
    n0, n1, n2 = rng.randint(1, 5), rng.randint(1, 6), rng.randint(1, 5)
    k = rng.randint(0, n1)
    # split Z^n1 = Z^k + Z^(n1-k); d0 lands in the first part, d1 kills it
    d0 = [[rng.randint(-2, 2) for _ in range(n0)] if i < k else [0] * n0 for i in range(n1)]
    d1 = [[0] * k + [rng.randint(-2, 2) for _ in range(n1 - k)] for _ in range(n2)]
    e2 = {0: n0, 1: n1, 2: n2}
    ranks = {0: sympy.Matrix(d0).rank(), 1: sympy.Matrix(d1).rank()}
    h = floer.cohomology_ranks(e2, ranks)
    assert all(h[p] <= e2[p] for p in e2)
    assert floer.euler(h) == floer.euler(e2)


def _write(tmp_path, data):
    p = tmp_path / "inc.json"
    p.write_text(json.dumps(data))
    return p


def test_corrupted_file_names_path(tmp_path):
    p = tmp_path / "floer_incidence.json"
    p.write_text("{not json")
    with pytest.raises(floer.FloerDataError, match=str(p)):
        floer.verify(p)


def test_shape_error(tmp_path):
    data = json.loads(floer.default_data_path().read_text())
    data["d2"] = data["d2"][:-1]
    with pytest.raises(floer.FloerDataError, match="d2"):
        floer.verify(_write(tmp_path, data))


def test_wrong_rank_is_reported(tmp_path):
    data = json.loads(floer.default_data_path().read_text())
    data["d3"] = [[0] * len(r) for r in data["d3"]]
    r = floer.verify(_write(tmp_path, data))
    assert "d3" in r["rankMismatch"] and not r["ok"]


def test_missing_file(tmp_path):
    with pytest.raises(floer.FloerDataError, match="missing.json"):
        floer.load_incidence(tmp_path / "missing.json")
