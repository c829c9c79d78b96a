"""Local systems on the immersed Lagrangian and the five obstruction equations.

A local system is a tuple of holonomies (mu_0..mu_4, lambda_0..lambda_4)
around meridians and longitudes.  Local unobstructedness is the vanishing of

    r0 = 1 + mu0^-1 + mu0^-1 lambda0^-1
    r1 = -1 - mu1^5 + lambda1^-5
    r2 = -1 - mu2^-5 - lambda2^5
    r3 = -1 - mu3^-5 + lambda3^5
    r4 = -1 + mu4^5 + mu4^5 lambda4^5

All arithmetic is exact in the tower field Q(w)[a]/(a^5 - 27).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arith import OMEGA, OMEGA2, QuadElem, TowerElem
from .chainlink import LONGITUDES

# The longitude rows give lambda_i as a monomial in the mu's.  The sign
# twist below is the one that makes the displayed van Geemen holonomies
# consistent with those monomials (the untwisted monomials fail for
# lambda_2 and lambda_3).
LONGITUDE_SIGNS_LITERAL = (1, 1, 1, 1, 1)
LONGITUDE_SIGNS_TWISTED = (1, 1, -1, -1, -1)


class LocsysError(ValueError):
    pass


def _t(x) -> TowerElem:
    return TowerElem.coerce(x)


@dataclass(frozen=True)
class HolonomyTuple:
    mu: tuple
    lam: tuple

    def __post_init__(self):
        mu = tuple(_t(x) for x in self.mu)
        lam = tuple(_t(x) for x in self.lam)
        if len(mu) != 5 or len(lam) != 5:
            raise LocsysError("five meridian and five longitude holonomies")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "lam", lam)

    def nonzero(self) -> bool:
        return not any(x.is_zero() for x in self.mu + self.lam)

    def conj(self) -> "HolonomyTuple":
        return HolonomyTuple(tuple(x.conj() for x in self.mu), tuple(x.conj() for x in self.lam))


def longitude_monomial(mu: tuple, i: int, signs=LONGITUDE_SIGNS_TWISTED) -> TowerElem:
    out = _t(signs[i])
    for m, e in zip(mu, LONGITUDES[i]):
        if e:
            out = out * m ** e
    return out


def consistency(h: HolonomyTuple, signs=LONGITUDE_SIGNS_TWISTED) -> list[bool]:
    """Per i, does lambda_i equal its (signed) longitude monomial?"""
    return [h.lam[i] == longitude_monomial(h.mu, i, signs) for i in range(5)]


def residues(h: HolonomyTuple) -> list[TowerElem]:
    if not h.nonzero():
        raise LocsysError("holonomies must be nonzero")
    mu, lam = h.mu, h.lam
    one = _t(1)
    return [
        one + mu[0] ** -1 + mu[0] ** -1 * lam[0] ** -1,
        -one - mu[1] ** 5 + lam[1] ** -5,
        -one - mu[2] ** -5 - lam[2] ** 5,
        -one - mu[3] ** -5 + lam[3] ** 5,
        -one + mu[4] ** 5 + mu[4] ** 5 * lam[4] ** 5,
    ]


def is_unobstructed(h: HolonomyTuple) -> bool:
    return all(r.is_zero() for r in residues(h))


def _omega(which: int) -> QuadElem:
    if which not in (1, 2):
        raise LocsysError("whichRoot is 1 (omega) or 2 (omega^2)")
    return OMEGA if which == 1 else OMEGA2


def _check_a(a: TowerElem) -> None:
    if a ** 5 != _t(27):
        raise LocsysError("a^5 != 27")


def van_geemen_tuple(which: int = 1, a: TowerElem | None = None) -> HolonomyTuple:
    """The van Geemen holonomies, with lambda_4 = +w.

    The displayed value lambda_4 = -w makes r4 = 2w; see
    :func:`displayed_van_geemen_tuple`.
    """
    h = _vg(which, a, lam4_sign=1)
    if not all(consistency(h)):
        raise LocsysError("van Geemen tuple fails the longitude monomials")
    return h


def displayed_van_geemen_tuple(which: int = 1, a: TowerElem | None = None) -> HolonomyTuple:
    """The holonomies exactly as displayed, including lambda_4 = -w."""
    return _vg(which, a, lam4_sign=-1)


def _vg(which, a, lam4_sign):
    w = _t(_omega(which))
    a = TowerElem.gen() if a is None else _t(a)
    _check_a(a)
    c = a / 3
    mu = (w, -w, (c * (1 - w * w)) ** -1, (-w) ** -1, (-(w * w)) ** -1)
    lam = (w, (-(c * (1 - w))) ** -1, -(w * w), -(c * (1 - w)), lam4_sign * w)
    return HolonomyTuple(mu, lam)


# --- exact roots in the tower field -----------------------------------------


def _root_in_base(c: QuadElem, n: int, max_den: int = 10 ** 9) -> QuadElem | None:
    """An n-th root of c inside Q(w), found by rounding and certified exactly."""
    if c.is_zero():
        return QuadElem(0)
    z = complex(c)
    r, phi = abs(z), cmath.phase(z)
    for k in range(n):
        cand = r ** (1 / n) * cmath.exp(1j * (phi + 2 * cmath.pi * k) / n)
        for den in (10 ** 3, 10 ** 6, max_den):
            y = QuadElem(
                Fraction(cand.real).limit_denominator(den),
                Fraction(cand.imag / 3 ** 0.5).limit_denominator(den),
            )
            if y ** n == c:
                return y
    return None


def exact_root(v: TowerElem, n: int) -> TowerElem | None:
    """An n-th root of v in the tower field, or None if none was found.

    Only roots of the form y a^j with y in Q(w) are searched, so v must be a
    monomial c a^m.  A root found this way is certified by exponentiation.
    For n = 5 it is the only root in the field, which has no nontrivial
    fifth roots of unity.
    """
    nz = [i for i, c in enumerate(v.coeffs) if not c.is_zero()]
    if not nz:
        return _t(0)
    if len(nz) > 1:
        return None
    m, c = nz[0], v.coeffs[nz[0]]
    for j in range(5):
        if (n * j - m) % 5:
            continue
        shift = (n * j - m) // 5  # a^(n j) = 27^shift a^m
        y = _root_in_base(c / Fraction(27) ** shift, n)
        if y is not None:
            cand = TowerElem([0] * j + [y])
            if cand ** n == v:
                return cand
    return None


# --- extension of a pair-of-pants point -------------------------------------


@dataclass
class ExtendResult:
    tuples: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    lambda4_fifth: list = field(default_factory=list)


def lambda0_from_mu0(mu0) -> TowerElem:
    """Solve r0 = 0 for lambda0: lambda0 = -1/(mu0 + 1)."""
    mu0 = _t(mu0)
    if (mu0 + 1).is_zero():
        raise LocsysError("mu0 = -1 admits no lambda0")
    return -(mu0 + 1).inverse()


def lambda4_fifth_candidates(mu0, lambda0) -> tuple[TowerElem, list[TowerElem]]:
    """K and the roots L = lambda4^5 of K L^2 + K L + 1 = 0, K = -mu0^5 - lambda0^-5.

    This is the derivation chain 1/(1+L) - 1/L = K written with the twisted
    longitude monomials.
    """
    mu0, lambda0 = _t(mu0), _t(lambda0)
    K = -(mu0 ** 5) - lambda0 ** -5
    if K.is_zero():
        return K, []
    disc = K * K - 4 * K
    s = exact_root(disc, 2)
    if s is None:
        raise LocsysError("discriminant has no square root found in the field")
    if s.is_zero():
        return K, [-(K * 2).inverse() * K]
    two_k = K * 2
    return K, [(-K + s) / two_k, (-K - s) / two_k]


def extend_point(mu0, lambda0=None) -> ExtendResult:
    """Back-substitute through the obstruction equations from (mu0, lambda0).

    Per root L of the quadratic: lambda4 = L^(1/5), mu4^5 = 1/(1+L),
    mu3 = -mu0 lambda4, mu1 = 1/(lambda0 mu4), lambda1^-5 = 1 + mu1^5,
    mu2 = mu0 lambda1, then lambda2, lambda3 from the longitude monomials.
    Fifth roots are exact and unique when they exist.  Every candidate is
    checked against all five residues; r2 is not used in the derivation and
    can fail, which is reported as a diagnostic.
    """
    out = ExtendResult()
    mu0 = _t(mu0)
    lambda0 = lambda0_from_mu0(mu0) if lambda0 is None else _t(lambda0)
    one = _t(1)
    if not (one + mu0 ** -1 + mu0 ** -1 * lambda0 ** -1).is_zero():
        raise LocsysError("(mu0, lambda0) does not satisfy r0 = 0")
    try:
        K, Ls = lambda4_fifth_candidates(mu0, lambda0)
    except LocsysError as exc:
        out.diagnostics.append(str(exc))
        return out
    out.lambda4_fifth = Ls
    if not Ls:
        out.diagnostics.append("K = 0: the quadratic for lambda4^5 has no roots")
    for L in Ls:
        tag = f"lambda4^5 = {L}"
        if (one + L).is_zero() or L.is_zero():
            out.diagnostics.append(f"{tag}: denominator 1 + lambda4^5 or lambda4^5 vanishes")
            continue
        lam4 = exact_root(L, 5)
        mu4 = exact_root((one + L).inverse(), 5)
        if lam4 is None or mu4 is None:
            out.diagnostics.append(f"{tag}: no exact fifth root in the field")
            continue
        mu3 = -(mu0 * lam4)
        mu1 = (lambda0 * mu4).inverse()
        inv_lam1_5 = one + mu1 ** 5
        if inv_lam1_5.is_zero():
            out.diagnostics.append(f"{tag}: lambda1 would be infinite")
            continue
        lam1 = exact_root(inv_lam1_5.inverse(), 5)
        if lam1 is None:
            out.diagnostics.append(f"{tag}: no exact fifth root for lambda1")
            continue
        mu2 = mu0 * lam1
        mu = (mu0, mu1, mu2, mu3, mu4)
        if any(x.is_zero() for x in mu):
            out.diagnostics.append(f"{tag}: a meridian holonomy vanishes")
            continue
        lam = tuple(longitude_monomial(mu, i) for i in range(5))
        if any(x.is_zero() for x in lam):
            out.diagnostics.append(f"{tag}: a longitude holonomy vanishes")
            continue
        if lam[0] != lambda0 or lam[1] != lam1 or lam[4] != lam4:
            out.diagnostics.append(f"{tag}: back-substitution is inconsistent")
            continue
        h = HolonomyTuple(mu, lam)
        bad = [i for i, r in enumerate(residues(h)) if not r.is_zero()]
        if bad:
            out.diagnostics.append(f"{tag}: residues r{bad} do not vanish")
            continue
        out.tuples.append(h)
    return out


def extend_point_float(mu0: complex, lambda0: complex | None = None, tol: float = 1e-9) -> list[dict]:
    """Floating-point version of :func:`extend_point` over all fifth-root choices.

    Exploration only.  Returns every choice whose five residues are below tol.
    """
    if lambda0 is None:
        lambda0 = -1 / (mu0 + 1)
    K = -(mu0 ** 5) - lambda0 ** -5
    if K == 0:
        return []
    s = cmath.sqrt(K * K - 4 * K)
    found = []
    for L in ((-K + s) / (2 * K), (-K - s) / (2 * K)):
        if abs(1 + L) < tol or abs(L) < tol:
            continue
        for k4, j4, k1 in product(range(5), repeat=3):
            lam4 = _froot(L, 5, k4)
            mu4 = _froot(1 / (1 + L), 5, j4)
            mu3 = -mu0 * lam4
            mu1 = 1 / (lambda0 * mu4)
            base = 1 + mu1 ** 5
            if abs(base) < tol:
                continue
            lam1 = _froot(1 / base, 5, k1)
            mu2 = mu0 * lam1
            mu = (mu0, mu1, mu2, mu3, mu4)
            lam = [lambda0, lam1, -mu1 / mu3, -mu4 / mu2, lam4]
            if any(abs(x) < tol for x in lam):
                continue
            res = _residues_float(mu, lam)
            if max(abs(r) for r in res) < tol:
                found.append({"mu": mu, "lambda": tuple(lam), "choice": (k4, j4, k1)})
    return found


def _froot(z: complex, n: int, k: int) -> complex:
    r, phi = abs(z), cmath.phase(z)
    return r ** (1 / n) * cmath.exp(1j * (phi + 2 * cmath.pi * k) / n)


def _residues_float(mu, lam):
    return [
        1 + 1 / mu[0] + 1 / (mu[0] * lam[0]),
        -1 - mu[1] ** 5 + lam[1] ** -5,
        -1 - mu[2] ** -5 - lam[2] ** 5,
        -1 - mu[3] ** -5 + lam[3] ** 5,
        -1 + mu[4] ** 5 + mu[4] ** 5 * lam[4] ** 5,
    ]


def riemann_hurwitz_genus(degree: int, punctures: int, cycles: list[list[int]]) -> int:
    """Genus of a degree-d cover of the sphere minus ``punctures`` points.

    ``cycles[i]`` lists the cycle lengths of the monodromy around puncture
    i, one entry per preimage.  2 - 2g = d (2 - P) + total number of cycles.
    """
    if degree <= 0 or punctures < 0:
        raise LocsysError("degree must be positive")
    if len(cycles) != punctures:
        raise LocsysError("one cycle list per puncture")
    for i, cyc in enumerate(cycles):
        if any(c <= 0 for c in cyc) or sum(cyc) != degree:
            raise LocsysError(f"cycle lengths over puncture {i} do not sum to the degree")
    euler = degree * (2 - punctures) + sum(len(c) for c in cycles)
    if euler % 2 or euler > 2:
        raise LocsysError("cycle data gives no closed orientable surface")
    return (2 - euler) // 2


def tuple_to_json(h: HolonomyTuple) -> dict:
    from .dwork import tower_to_json

    return {"mu": [tower_to_json(x) for x in h.mu], "lambda": [tower_to_json(x) for x in h.lam]}

