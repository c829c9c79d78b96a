"""Connection matrices over a formal punctured disk and normal functions.

Vectors are written in the basis (e3, e2, e1, e0).  A connection matrix m
acts by (nabla v)_i = theta(v_i) + sum_j m_ij v_j with theta = q d/dq, so
column j holds nabla e_j.  Filtration levels are half-integers; e_i sits in
F^{>= i - 3/2} and levels are stored doubled (e3: 3, e2: 1, e1: -1, e0: -3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import QuadElem, TruncSeries, mat_mul, rank

LABELS = ("e3", "e2", "e1", "e0")
LEVELS2 = (3, 1, -1, -3)


class VSHSError(ValueError):
    pass


def _zero(order: int, var: str) -> TruncSeries:
    return TruncSeries.zero(order, var, like=QuadElem(0))


def _one(order: int, var: str) -> TruncSeries:
    return TruncSeries.monomial(0, order, QuadElem(1), var)


@dataclass(frozen=True)
class ConnectionMatrix:
    entries: tuple
    kind: str = "A"

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise VSHSError("connection matrix must be 4x4")
        object.__setattr__(self, "entries", rows)

    @property
    def order(self) -> int:
        return min(s.order for r in self.entries for s in r)

    @property
    def var(self) -> str:
        return self.entries[0][0].var

    @classmethod
    def from_coupling(cls, coupling: TruncSeries, kind: str = "A") -> "ConnectionMatrix":
        """The shared shape: (2,1) = 1, (3,2) = -coupling, (4,3) = -1.

        For the A side the coupling is Phi'', for the B side the Yukawa
        coupling; nothing else differs.
        """
        n, v = coupling.order, coupling.var
        z = _zero(n, v)
        m = [[z] * 4 for _ in range(4)]
        m[1][0] = _one(n, v)
        m[2][1] = -coupling
        m[3][2] = -_one(n, v)
        return cls(tuple(tuple(r) for r in m), kind)

    def residue(self) -> list[list]:
        return [[s.coeffs[0] for s in r] for r in self.entries]


def a_model(phi2: TruncSeries) -> ConnectionMatrix:
    return ConnectionMatrix.from_coupling(phi2, "A")


def b_model(yukawa: TruncSeries) -> ConnectionMatrix:
    return ConnectionMatrix.from_coupling(yukawa, "B")


def basis_vector(i: int, order: int, var: str = "Q") -> list[TruncSeries]:
    return [_one(order, var) if j == i else _zero(order, var) for j in range(4)]


def apply_connection(m: ConnectionMatrix, v: Sequence[TruncSeries]) -> list[TruncSeries]:
    if len(v) != 4:
        raise VSHSError("vectors have four components")
    out = []
    for i in range(4):
        acc = v[i].theta()
        for j in range(4):
            if not m.entries[i][j].is_zero() and not v[j].is_zero():
                acc = acc + m.entries[i][j] * v[j]
            else:
                acc = acc.truncate(min(m.entries[i][j].order, v[j].order))
        out.append(acc)
    return out


@dataclass(frozen=True)
class NormalFunctionCandidate:
    """nu~ = theta(Psi) e1 + Psi e0, unless an explicit vector is supplied."""

    psi: TruncSeries
    vector: tuple | None = field(default=None)

    @property
    def nu_tilde(self) -> list[TruncSeries]:
        if self.vector is not None:
            return list(self.vector)
        z = _zero(self.psi.order, self.psi.var)
        return [z, z, self.psi.theta(), self.psi]


def psi_from_table(table: dict, order: int, var: str = "Q") -> TruncSeries:
    cs = [QuadElem(0)] * (order + 1)
    for d, x in table.items():
        if 0 <= d <= order:
            cs[d] = QuadElem.coerce(x)
    return TruncSeries(cs, order, var)


def horizontality_report(m: ConnectionMatrix, nf: NormalFunctionCandidate) -> dict:
    nab = apply_connection(m, nf.nu_tilde)
    th2 = nf.psi.theta().theta()
    others = {LABELS[i]: nab[i].is_zero() for i in (0, 1, 3)}
    e1 = nab[2]
    return {
        "nabla": nab,
        "othersVanish": others,
        "e1": e1,
        "e1IsPlusTheta2Psi": e1 == th2,
        "e1IsMinusTheta2Psi": e1 == -th2,
        "horizontal": all(others.values()),
    }


def horizontality_check(m: ConnectionMatrix, nf: NormalFunctionCandidate) -> bool:
    """nabla nu~ has only an e1 component (the normal-function condition).

    The sign of that component is reported by horizontality_report; with
    this connection convention it is +theta^2 Psi.
    """
    return horizontality_report(m, nf)["horizontal"]


# --- extensions ---------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionSpec:
    """Rank-5 module K + V in the basis (s, e3, e2, e1, e0), s = (1, nu~).

    ``levels2`` are doubled filtration levels; s sits at level k.
    """

    base: ConnectionMatrix
    nu_tilde: tuple
    k2: int
    levels2: tuple
    nabla: tuple
    trivial: bool


def _in_filtration(w: Sequence[TruncSeries], level2: int) -> str | None:
    """First basis label of V below the level with a nonzero component."""
    for i in range(4):
        if LEVELS2[i] < level2 and not w[i].is_zero():
            return LABELS[i]
    return None


def build_extension(base: ConnectionMatrix, nf: NormalFunctionCandidate, k=Fraction(1, 2)) -> ExtensionSpec:
    k2 = int(2 * Fraction(k))
    if Fraction(k2, 2) != Fraction(k):
        raise VSHSError("k must be a half-integer")
    nu = nf.nu_tilde
    rep = horizontality_report(base, nf)
    if not rep["horizontal"]:
        bad = [lab for lab, ok in rep["othersVanish"].items() if not ok]
        raise VSHSError(f"lifted section s = (1, nu~): nabla s has {', '.join(bad)} component(s)")
    nabla = []
    # F^{>=i}(K + V) = (0 + F^{>=i} V) + K s for i <= k; components in K are 0
    # after nabla on this spanning set, so membership is a check in V.
    for i in range(4):
        img = apply_connection(base, basis_vector(i, base.order, base.var))
        bad = _in_filtration(img, LEVELS2[i] - 2)
        if bad:
            raise VSHSError(f"Griffiths transversality fails on {LABELS[i]}: nabla {LABELS[i]} has {bad} component")
        nabla.append(img)
    ns = rep["nabla"]
    bad = _in_filtration(ns, k2 - 2)
    if bad:
        raise VSHSError(f"Griffiths transversality fails on s = (1, nu~): nabla s has {bad} component")
    nabla.insert(0, ns)
    return ExtensionSpec(
        base, tuple(nu), k2, (k2,) + LEVELS2, tuple(tuple(x) for x in nabla), all(x.is_zero() for x in nu)
    )


# --- residues -----------------------------------------------------------------


def residue_checks(m: ConnectionMatrix) -> dict:
    N = m.residue()
    lower = all(N[i][j] == 0 for i in range(4) for j in range(i, 4))
    triangular = all(N[i][j] == 0 for i in range(4) for j in range(i + 1, 4))
    powers = [N]
    for _ in range(3):
        powers.append(mat_mul(powers[-1], N))
    nilpotent = all(x == 0 for r in powers[3] for x in r)
    diag = [N[i][i] for i in range(4)] if triangular else None
    if nilpotent:
        eig_ok = True
    elif diag is not None:
        eig_ok = all(_in_unit_interval(x) for x in diag)
    else:
        eig_ok = False
    return {
        "residue": N,
        "strictlyLowerTriangular": lower,
        "nilpotent": nilpotent,
        "eigenvaluesInUnitInterval": eig_ok,
        "weightRanks": [rank(P) for P in powers[:3]],
        "flagged": not (lower and nilpotent and eig_ok),
    }


def _in_unit_interval(x) -> bool:
    q = QuadElem.coerce(x)
    return q.b == 0 and 0 <= q.a < 1


def w1_from_w0(w0: TruncSeries) -> TruncSeries:
    return w0.theta()


def series_to_json(s: TruncSeries) -> dict:
    return {
        "var": s.var,
        "order": s.order,
        "coeffs": [[str(QuadElem.coerce(c).a), str(QuadElem.coerce(c).b)] for c in s.coeffs],
    }
