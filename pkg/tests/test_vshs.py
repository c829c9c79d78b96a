from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import bps, vshs
from artifact.arith import QuadElem, TruncSeries

from conftest import quads

N4 = 4


def series(vals, order=None, var="Q"):
    return TruncSeries([QuadElem.coerce(v) for v in vals], order, var)


def phi2(order, c0=5):
    return series([c0] + [k * k for k in range(1, order + 1)], order)


def e(i, order=N4):
    return vshs.basis_vector(i, order)


def test_connection_on_basis():
    m = vshs.a_model(phi2(N4))
    z = vshs._zero(N4, "Q")
    assert vshs.apply_connection(m, e(0)) == e(1)
    assert vshs.apply_connection(m, e(3)) == [z, z, z, z]
    assert vshs.apply_connection(m, e(2)) == [z, z, z, -vshs._one(N4, "Q")]
    assert vshs.apply_connection(m, e(1)) == [z, z, -phi2(N4), z]


def _theta2_oracle(table, order):
    # termwise: coefficient of Q^d in theta^2 Psi is d^2 ntilde_d
    return series([d * d * table.get(d, QuadElem(0)) for d in range(order + 1)], order)


@pytest.fixture
def paper_psi():
    return vshs.psi_from_table(bps.paper_ntilde(4), N4)


def test_horizontality_paper_psi(paper_psi):
    m = vshs.a_model(phi2(N4))
    nf = vshs.NormalFunctionCandidate(paper_psi)
    assert vshs.horizontality_check(m, nf)
    rep = vshs.horizontality_report(m, nf)
    assert rep["othersVanish"] == {"e3": True, "e2": True, "e0": True}
    assert rep["e1"] == _theta2_oracle(bps.paper_ntilde(4), N4)


@pytest.mark.xfail(strict=True, reason="with (nabla v)_i = theta v_i + sum_j m_ij v_j the e1 component is +theta^2 Psi")
def test_horizontality_sign_as_stated(paper_psi):
    rep = vshs.horizontality_report(vshs.a_model(phi2(N4)), vshs.NormalFunctionCandidate(paper_psi))
    assert rep["e1"] == -_theta2_oracle(bps.paper_ntilde(4), N4)


def test_other_convention_is_not_horizontal(paper_psi):
    # nabla = theta - M: the e0 component becomes 2 theta Psi
    m = vshs.a_model(phi2(N4))
    neg = vshs.ConnectionMatrix(tuple(tuple(-x for x in row) for row in m.entries))
    assert not vshs.horizontality_check(neg, vshs.NormalFunctionCandidate(paper_psi))


def test_zero_psi():
    m = vshs.a_model(phi2(N4))
    nf = vshs.NormalFunctionCandidate(vshs._zero(N4, "Q"))
    assert all(x.is_zero() for x in vshs.horizontality_report(m, nf)["nabla"])
    assert vshs.build_extension(m, nf).trivial


def test_e2_component_breaks_horizontality(paper_psi):
    m = vshs.a_model(phi2(N4))
    nu = vshs.NormalFunctionCandidate(paper_psi).nu_tilde
    # a constant e2 component would only feed e1 (nabla e2 = -Phi'' e1); Q e2 survives
    nu[1] = series([0, 1], N4)
    assert not vshs.horizontality_check(m, vshs.NormalFunctionCandidate(paper_psi, tuple(nu)))


def test_extension_with_paper_psi(paper_psi):
    ext = vshs.build_extension(vshs.a_model(phi2(N4)), vshs.NormalFunctionCandidate(paper_psi), Fraction(1, 2))
    assert ext.k2 == 1 and ext.levels2 == (1, 3, 1, -1, -3)
    assert len(ext.nabla) == 5


def test_extension_rejects_e3():
    m = vshs.a_model(phi2(N4))
    nf = vshs.NormalFunctionCandidate(vshs._zero(N4, "Q"), tuple(e(0)))
    with pytest.raises(vshs.VSHSError, match="e2"):
        vshs.build_extension(m, nf)


def test_extension_needs_half_integer_k(paper_psi):
    with pytest.raises(vshs.VSHSError):
        vshs.build_extension(vshs.a_model(phi2(N4)), vshs.NormalFunctionCandidate(paper_psi), Fraction(1, 3))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.lists(quads, min_size=9, max_size=9), st.lists(quads, min_size=9, max_size=9), st.booleans())
def test_transversality_iff_horizontality(n, psi_c, phi_c, perturb):
    psi = TruncSeries(psi_c[: n + 1], n)
    m = vshs.a_model(TruncSeries(phi_c[: n + 1], n))
    nu = vshs.NormalFunctionCandidate(psi).nu_tilde
    if perturb:
        nu[0] = nu[0] + vshs._one(n, "Q")
    nf = vshs.NormalFunctionCandidate(psi, tuple(nu))
    horizontal = vshs.horizontality_check(m, nf)
    try:
        vshs.build_extension(m, nf)
        transversal = True
    except vshs.VSHSError:
        transversal = False
    assert horizontal == transversal == (not perturb)


@settings(max_examples=30, deadline=None)
@given(st.lists(quads, min_size=5, max_size=5), st.lists(quads, min_size=20, max_size=20))
def test_leibniz(fc, vc):
    m = vshs.b_model(phi2(N4))
    f = TruncSeries(fc, N4)
    v = [TruncSeries(vc[5 * i : 5 * i + 5], N4) for i in range(4)]
    lhs = vshs.apply_connection(m, [f * x for x in v])
    rhs = [f.theta() * x + f * y for x, y in zip(v, vshs.apply_connection(m, v))]
    assert lhs == rhs


def test_residue_checks_A_and_B():
    for m in (vshs.a_model(phi2(N4)), vshs.b_model(phi2(N4, c0=7))):
        r = vshs.residue_checks(m)
        assert r["strictlyLowerTriangular"] and r["nilpotent"] and not r["flagged"]
        assert r["weightRanks"] == [3, 2, 1]
    N = vshs.residue_checks(vshs.a_model(phi2(N4)))["residue"]
    # matrix power oracle
    S = sympy.Matrix([[int(x.a) for x in row] for row in N])
    assert S[1, 0] == 1 and S[2, 1] == -5 and S[3, 2] == -1
    assert S**4 == sympy.zeros(4, 4) and S**3 != sympy.zeros(4, 4)


def test_residue_zero_matrix():
    z = vshs._zero(N4, "Q")
    m = vshs.ConnectionMatrix(tuple((z,) * 4 for _ in range(4)))
    r = vshs.residue_checks(m)
    assert r["nilpotent"] and not r["flagged"] and r["weightRanks"] == [0, 0, 0]


def test_residue_eigenvalue_one_flagged():
    m = vshs.a_model(phi2(N4))
    rows = [list(r) for r in m.entries]
    rows[0][0] = vshs._one(N4, "Q")
    r = vshs.residue_checks(vshs.ConnectionMatrix(tuple(tuple(r) for r in rows)))
    assert r["flagged"] and not r["eigenvaluesInUnitInterval"]


def test_w1_from_w0():
    z = series([0, 1], 3, "z")
    assert vshs.w1_from_w0(z) == z
    w0 = series([0, 2, Fraction(1, 3), 5], 3, "z")
    assert vshs.w1_from_w0(w0).coeffs[0].is_zero()
    assert vshs.w1_from_w0(series([4], 3, "z")).is_zero()


def test_b_side_same_code_path(paper_psi):
    a = vshs.a_model(phi2(N4))
    b = vshs.b_model(phi2(N4))
    assert a.entries == b.entries and (a.kind, b.kind) == ("A", "B")


def test_bad_shapes():
    with pytest.raises(vshs.VSHSError):
        vshs.ConnectionMatrix(((vshs._zero(1, "Q"),) * 4,) * 3)
    with pytest.raises(vshs.VSHSError):
        vshs.apply_connection(vshs.a_model(phi2(2)), [vshs._zero(2, "Q")] * 3)
