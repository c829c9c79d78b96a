import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact import dwork, tropical
from artifact.tropical import ConormalPoint, Edge, TropCurve, conormal_member


def _balance_oracle(c: TropCurve):
    # sum of weighted primitive directions, computed from raw coordinates
    from math import gcd

    def prim(v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in v]
        g = abs(gcd(*ints))
        return [x // g for x in ints]

    sums = [[0, 0, 0] for _ in c.vertices]
    for e in c.edges:
        if e.ray is not None:
            sums[e.start] = [s + e.weight * d for s, d in zip(sums[e.start], prim(e.ray))]
        else:
            d = prim([y - x for x, y in zip(c.vertices[e.start], c.vertices[e.end])])
            sums[e.start] = [s + e.weight * x for s, x in zip(sums[e.start], d)]
            sums[e.end] = [s - e.weight * x for s, x in zip(sums[e.end], d)]
    return all(s == [0, 0, 0] for s in sums)


def test_V_balanced():
    V = tropical.make_V()
    assert tropical.check_balancing(V) and _balance_oracle(V)
    assert len(V.vertices) == 1 and V.vertices[0] == (0, 0, 0)


def test_weighted_V_unbalanced():
    V = tropical.make_V((2, 1, 1, 1))
    assert not tropical.check_balancing(V)
    assert tropical.unbalanced_vertices(V) == [0]


@pytest.mark.parametrize("i", [1, 2, 3])
def test_smoothings_balanced(i):
    rng = random.Random(i)
    for _ in range(10):
        eps = Fraction(rng.randint(1, 1000), rng.randint(1, 97))
        c = tropical.make_V_smoothed(i, eps)
        assert tropical.check_balancing(c) and _balance_oracle(c)
        assert tropical.bounded_edge_length(c) == [eps]
        assert c.ray_directions() == tropical.make_V().ray_directions()


def test_smoothing_edge_direction():
    c = tropical.make_V_smoothed(1, Fraction(1, 2))
    assert c.direction(c.edges[0], 0) == (0, -1, -1)
    assert c.vertices == ((0, Fraction(1, 4), Fraction(1, 4)), (0, Fraction(-1, 4), Fraction(-1, 4)))


@given(st.fractions(min_value=Fraction(-5), max_value=Fraction(0)))
def test_smoothing_rejects_nonpositive_eps(eps):
    with pytest.raises(tropical.TropicalError):
        tropical.make_V_smoothed(1, eps)


def test_bad_index():
    with pytest.raises(tropical.TropicalError):
        tropical.make_V_smoothed(4, 1)


def test_json_roundtrip():
    c = tropical.make_V_smoothed(2, Fraction(3, 5))
    text = json.dumps(c.to_json())
    assert TropCurve.from_json(text) == c


def test_json_malformed():
    with pytest.raises(tropical.TropicalError):
        TropCurve.from_json({"vertices": [[0, 0]], "edges": []})
    with pytest.raises(tropical.TropicalError):
        TropCurve.from_json({"edges": []})


def test_edge_validation():
    with pytest.raises(tropical.TropicalError):
        Edge(0)
    with pytest.raises(tropical.TropicalError):
        Edge(0, end=1, weight=0)


@pytest.mark.parametrize("root", [1, 2])
def test_tropicalization_of_limit_line(root):
    pts = dwork.boundary_intersections(dwork.build_van_geemen_line(dwork.default_params(root)))
    dirs = tropical.tropicalization_type(pts)
    assert dirs == sorted([(-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, 1)])
    assert tropical.same_up_to_sign(dirs, tropical.make_V())


def test_tropicalization_transversality():
    with pytest.raises(tropical.TropicalError):
        tropical.tropicalization_type([(1, (0, 0, 1, 1)), (2, (1, 0, 1, 1)), (3, (1, 1, 0, 1)), (4, (1, 1, 1, 0))])


def test_conormal_predicates():
    assert conormal_member(ConormalPoint((3, 2, 2), (0, Fraction(1, 7), 0)), 1)
    assert not conormal_member(ConormalPoint((Fraction(1, 2), 2, 2), (0, 0, 0)), 1)
    assert not conormal_member(ConormalPoint((3, 2, 1), (0, 0, 0)), 1)
    assert conormal_member(ConormalPoint((2, 1, 2), (0, Fraction(3, 5), 0)), 2, cover=True)
    assert not conormal_member(ConormalPoint((2, 1, 2), (0, Fraction(3, 5), 0)), 2)
    assert conormal_member(ConormalPoint((Fraction(1, 3),) * 3, (Fraction(1, 5), Fraction(1, 5), 0)), 4, cover=True)
    assert not conormal_member(ConormalPoint((Fraction(1, 3),) * 3, (Fraction(1, 5), Fraction(1, 5), 0)), 4)
    assert conormal_member(ConormalPoint((1, 1, 1), (0, 0, 0)), 4)
    with pytest.raises(tropical.TropicalError):
        conormal_member(ConormalPoint((1, 1, 1), (0, 0, 0)), 5)
