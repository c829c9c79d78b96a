import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact import dilog


def clausen_oracle(theta, n=200000):
    # partial sums of sum sin(k t)/k^2 with the trivial tail bound 1/n
    return math.fsum(math.sin(k * theta) / (k * k) for k in range(1, n + 1))


def basel_oracle(n=10**6):
    # sum_{k<n} 1/k^2 plus the Euler-Maclaurin tail 1/n + 1/(2n^2) + 1/(6n^3)
    return math.fsum(1 / (k * k) for k in range(1, n)) + 1 / n + 1 / (2 * n * n) + 1 / (6 * n**3)


def test_li2_basics():
    assert dilog.li2(0) == 0
    assert abs(dilog.li2(1) - math.pi**2 / 6) <= 1e-12
    assert abs(basel_oracle() - math.pi**2 / 6) <= 1e-12


def test_li2_inside_disk_series():
    z = 0.3 + 0.4j
    ref = sum(z**k / (k * k) for k in range(1, 200))
    assert abs(dilog.li2(z) - ref) <= 1e-12


def test_li2_rejects_outside():
    with pytest.raises(dilog.DilogError):
        dilog.li2(1.5)


def test_tetrahedron_value():
    v = dilog.li2(cmath.exp(1j * math.pi / 3)).imag
    assert abs(v - clausen_oracle(math.pi / 3)) <= 1e-5
    assert abs(v - 1.0149416064096536) <= 1e-9


@given(st.floats(0.01, 6.27))
def test_clausen_symmetries(t):
    assert abs(dilog.clausen2(-t) + dilog.clausen2(t)) <= 1e-11
    assert abs(dilog.clausen2(t + 2 * math.pi) - dilog.clausen2(t)) <= 1e-11
    z = cmath.exp(1j * t)
    assert abs(dilog.li2(z.conjugate()).imag + dilog.li2(z).imag) <= 1e-11


def test_duplication():
    assert abs(dilog.clausen2(2 * math.pi / 3) - 2 / 3 * dilog.clausen2(math.pi / 3)) <= 1e-10


def test_unit_circle_real_part():
    # Re Li2(e^{it}) = sum cos(kt)/k^2 = pi^2/6 - t(2pi - t)/4
    t = 1.1
    ref = math.fsum(math.cos(k * t) / (k * k) for k in range(1, 200000))
    assert abs(dilog.li2(cmath.exp(1j * t)).real - ref) <= 1e-5


def test_volume_report():
    r = dilog.volume_report()
    assert abs(r["tetra"] - 1.0149416064) <= 1e-8
    assert r["chainLink"] == 10 * r["tetra"]
    assert abs(r["chainLink"] - 10.149416064) <= 1e-8
    assert r["cover125"] == 1250 * r["tetra"]
    assert abs(r["cover125"] - 1268.677008) <= 1e-6
    assert abs(r["jmwPrediction"] - 131.942) <= 1e-3
    assert r["multipliers"] == {"chainLink": 10, "cover125": 1250, "jmwPrediction": 130}
    assert r["coverIs125ChainLink"] and r["mismatch"]
    assert r["imLi2MinusOmega"] < 0


def test_l2chi():
    v = dilog.l2chi_via_dilog()
    assert v > 0
    assert abs(v - 0.781302412896) <= 1e-9
    # partial sums of chi(k)/k^2, alternating bound
    ref = math.fsum((1 if k % 3 == 1 else -1) / (k * k) for k in range(1, 300000) if k % 3)
    assert abs(v - ref) <= 1e-9
