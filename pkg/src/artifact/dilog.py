"""Dilogarithm and Clausen values at roots of unity, and the volume comparison."""

from __future__ import annotations

import cmath
import math

import mpmath

DPS = 30


class DilogError(ValueError):
    pass


def clausen2(theta: float) -> float:
    with mpmath.workdps(DPS):
        return float(mpmath.clsin(2, theta))


def li2(z: complex) -> complex:
    """Li_2 on the closed unit disk.

    On the circle z = e^{i t}, 0 <= t < 2 pi, the real part is the
    Bernoulli polynomial pi^2/6 - t(2 pi - t)/4 and the imaginary part is Cl_2(t).
    """
    z = complex(z)
    if not (cmath.isfinite(z)):
        raise DilogError("argument must be finite")
    r = abs(z)
    if r > 1 + 1e-15:
        raise DilogError("li2 is only exposed for |z| <= 1")
    if abs(r - 1) <= 1e-15:
        t = cmath.phase(z) % (2 * math.pi)
        return complex(math.pi**2 / 6 - t * (2 * math.pi - t) / 4, clausen2(t))
    with mpmath.workdps(DPS):
        return complex(mpmath.polylog(2, z))


TETRA_MULT = 1
CHAIN_LINK_MULT = 10
COVER_DEGREE = 125
JMW_MULT = 130


def volume_report() -> dict:
    tetra = clausen2(math.pi / 3)
    cover_mult = CHAIN_LINK_MULT * COVER_DEGREE
    # what the displayed Im Li2(-omega) gives with omega = exp(2 pi i / 3)
    raw = li2(-cmath.exp(2j * math.pi / 3)).imag
    return {
        "tetra": tetra,
        "chainLink": CHAIN_LINK_MULT * tetra,
        "cover125": cover_mult * tetra,
        "jmwPrediction": JMW_MULT * tetra,
        "multipliers": {"chainLink": CHAIN_LINK_MULT, "cover125": cover_mult, "jmwPrediction": JMW_MULT},
        "coverIs125ChainLink": cover_mult == COVER_DEGREE * CHAIN_LINK_MULT,
        "mismatch": cover_mult != JMW_MULT,
        "imLi2MinusOmega": raw,
        "signNote": "Im Li2(-omega) is negative for omega = exp(2 pi i/3); volumes use its magnitude Cl2(pi/3)",
    }


def l2chi_via_dilog() -> float:
    """L(2, chi) = (Im Li2(omega) - Im Li2(omega^2)) / sqrt(3) = 2 Cl2(2 pi/3) / sqrt(3)."""
    return 2 * clausen2(2 * math.pi / 3) / math.sqrt(3)
