"""Van Geemen lines on the Dwork pencil.

The pencil is  prod x_j - (z^(1/5)/5) sum x_j^5  on P^4.  A van Geemen line
is cut out by

    x1 + w x2 + w^2 x3 = 0,   x4 = (a/3) s,   x5 = (b/3) s,   s = x1+x2+x3

with 1 + w + w^2 = 0, a^5 + b^5 = 27 and z^(1/5) = ab/6.  Everything is
computed in the tower field Q(w)[a]/(a^5 - 27), so a check done once holds
for all five fifth roots of 27.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .arith import OMEGA, OMEGA2, QuadElem, TowerElem

Point = tuple  # five TowerElem


class DworkError(ValueError):
    pass


@dataclass(frozen=True)
class DworkParams:
    omega: QuadElem
    a: TowerElem
    b: TowerElem

    def z_fifth_root(self) -> TowerElem:
        return self.a * self.b / 6

    def check(self) -> None:
        w = self.omega
        if not (1 + w + w * w).is_zero():
            raise DworkError("omega is not a primitive cube root of unity")
        if self.a ** 5 + self.b ** 5 != TowerElem.coerce(27):
            raise DworkError("a^5 + b^5 != 27")


def default_params(root: int = 1, family: str = "limit") -> DworkParams:
    """Standard test points.

    root 1 or 2 picks omega or omega^2.  ``limit`` is b = 0 with a the
    tower generator; ``generic`` takes a = -w t, b = -w^2 t with t the
    generator, which works because (-w)^5 + (-w^2)^5 = 1.
    """
    w = OMEGA if root == 1 else OMEGA2
    t = TowerElem.gen()
    if family == "limit":
        return DworkParams(w, t, TowerElem.coerce(0))
    if family == "generic":
        return DworkParams(w, -(OMEGA * t), -(OMEGA2 * t))
    raise DworkError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ParamLine:
    p: Point
    q: Point

    def point(self, s, t) -> Point:
        return tuple(s * x + t * y for x, y in zip(self.p, self.q))


def build_van_geemen_line(params: DworkParams, strict: bool = True) -> ParamLine:
    """Span the line by the two points with (x1, x2, x3) = (-w, 1, 0), (-w^2, 0, 1).

    With strict=False the a^5 + b^5 = 27 relation is not enforced; that is
    only useful for negative tests.
    """
    w = params.omega
    if not (1 + w + w * w).is_zero():
        raise DworkError("omega is not a primitive cube root of unity")
    if strict:
        params.check()
    pts = []
    for first in ((-w, 1, 0), (-(w * w), 0, 1)):
        x1, x2, x3 = (TowerElem.coerce(v) for v in first)
        s = x1 + x2 + x3
        pts.append((x1, x2, x3, params.a * s / 3, params.b * s / 3))
    line = ParamLine(*pts)
    if plucker(line) == {}:
        raise DworkError("spanning points coincide")
    return line


def linear_forms(params: DworkParams) -> list[tuple]:
    """The three defining linear forms as coefficient 5-tuples."""
    w = TowerElem.coerce(params.omega)
    a3, b3 = params.a / 3, params.b / 3
    zero, one = TowerElem.coerce(0), TowerElem.coerce(1)
    return [
        (one, w, w * w, zero, zero),
        (-a3, -a3, -a3, one, zero),
        (-b3, -b3, -b3, zero, one),
    ]


def _dot(form, pt):
    acc = TowerElem.coerce(0)
    for c, x in zip(form, pt):
        acc = acc + c * x
    return acc


def on_line_forms(line: ParamLine, params: DworkParams) -> bool:
    return all(_dot(f, pt).is_zero() for f in linear_forms(params) for pt in (line.p, line.q))


# binary forms in (s, t): list of coefficients of s^(d-k) t^k


def _bmul(f, g):
    out = [TowerElem.coerce(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _fifth_power(lin):
    u, v = lin
    return [comb(5, k) * u ** (5 - k) * v ** k for k in range(6)]


def dwork_binary_form(line: ParamLine, params: DworkParams) -> list[TowerElem]:
    """The six coefficients of the Dwork quintic restricted to the line."""
    lins = list(zip(line.p, line.q))
    prod = [TowerElem.coerce(1)]
    for lin in lins:
        prod = _bmul(prod, list(lin))
    power_sum = [TowerElem.coerce(0)] * 6
    for lin in lins:
        power_sum = [x + y for x, y in zip(power_sum, _fifth_power(lin))]
    k = params.z_fifth_root() / 5
    return [x - k * y for x, y in zip(prod, power_sum)]


def verify_on_dwork(line: ParamLine, params: DworkParams) -> bool:
    return all(c.is_zero() for c in dwork_binary_form(line, params))


# --- projective comparison via Pluecker data --------------------------------

PAIRS = list(combinations(range(5), 2))


def plucker(line: ParamLine) -> dict:
    out = {}
    for i, j in PAIRS:
        v = line.p[i] * line.q[j] - line.p[j] * line.q[i]
        if not v.is_zero():
            out[(i, j)] = v
    return out


def _key(x: TowerElem):
    return tuple((c.a, c.b) for c in x.coeffs)


def canonical(pl: dict, exps: dict | None = None) -> tuple:
    """Canonical form of a Pluecker vector whose entries are zeta^e * x.

    zeta is a primitive fifth root of unity, which is not in the tower
    field; the entries are tracked as (x, e mod 5).  Since no nonzero power
    of zeta lies in the tower field, two such vectors are proportional iff
    they have equal support and, after dividing by the first entry, equal
    x parts and equal exponent offsets.
    """
    if not pl:
        raise DworkError("zero Pluecker vector")
    exps = exps or {}
    pairs = sorted(pl)
    piv = pairs[0]
    inv = pl[piv].inverse()
    e0 = exps.get(piv, 0)
    return tuple(
        (pr, _key(pl[pr] * inv), (exps.get(pr, 0) - e0) % 5) for pr in pairs
    )


def same_line(l1: ParamLine, l2: ParamLine) -> bool:
    return canonical(plucker(l1)) == canonical(plucker(l2))


# --- group actions -----------------------------------------------------------
#
# Both actions only permute Pluecker entries, flip their signs and shift
# their zeta exponents, so a state is (pair -> (value id, exponent)) over a
# finite interned value table, and ratios are computed once per value pair.

DIAG_GENERATORS = [tuple(1 if k == i else (-1 if k == 4 else 0) for k in range(5)) for i in range(4)]


class _Values:
    def __init__(self):
        self.vals: list[TowerElem] = []
        self.ids: dict = {}
        self.neg: dict[int, int] = {}
        self.ratios: dict = {}
        self.ratio_ids: dict = {}

    def intern(self, x: TowerElem) -> int:
        k = _key(x)
        if k not in self.ids:
            self.ids[k] = len(self.vals)
            self.vals.append(x)
        return self.ids[k]

    def negate(self, i: int) -> int:
        if i not in self.neg:
            self.neg[i] = self.intern(-self.vals[i])
        return self.neg[i]

    def ratio(self, i: int, j: int):
        if (i, j) not in self.ratios:
            k = _key(self.vals[j] / self.vals[i])
            self.ratios[(i, j)] = self.ratio_ids.setdefault(k, len(self.ratio_ids))
        return self.ratios[(i, j)]


def _initial_state(line: ParamLine, table: _Values):
    return tuple((pr, table.intern(v), 0) for pr, v in sorted(plucker(line).items()))


def _state_key(state, table: _Values) -> tuple:
    _, v0, e0 = state[0]
    return tuple((pr, table.ratio(v0, v), (e - e0) % 5) for pr, v, e in state)


def _act_diag(state, k, table):
    return tuple((pr, v, (e + k[pr[0]] + k[pr[1]]) % 5) for pr, v, e in state)


def _act_perm(state, sigma, table):
    # x'_{sigma(i)} = x_i
    out = []
    for (i, j), v, e in state:
        a, b = sigma[i], sigma[j]
        if a < b:
            out.append(((a, b), v, e))
        else:
            out.append(((b, a), table.negate(v), e))
    return tuple(sorted(out))


def _orbit(line: ParamLine, gens) -> int:
    table = _Values()
    start = _initial_state(line, table)
    seen = {_state_key(start, table)}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for g in gens:
            nst = g(st, table)
            key = _state_key(nst, table)
            if key not in seen:
                seen.add(key)
                queue.append(nst)
    return len(seen)


def _diag_gens():
    return [lambda st, tb, k=k: _act_diag(st, k, tb) for k in DIAG_GENERATORS]


def _perm_gens():
    swap = (1, 0, 2, 3, 4)
    cycle = (1, 2, 3, 4, 0)
    return [lambda st, tb, s=s: _act_perm(st, s, tb) for s in (swap, cycle)]


def s5_stabilizer(line: ParamLine) -> list[tuple]:
    """All permutations fixing the line, by exhaustive enumeration of S5."""
    table = _Values()
    start = _initial_state(line, table)
    base = _state_key(start, table)
    return [
        sigma
        for sigma in permutations(range(5))
        if _state_key(_act_perm(start, sigma, table), table) == base
    ]


VIRTUAL_LINE_COUNT = 2875


def orbit_sizes(line: ParamLine) -> dict:
    """Orbit sizes under (Z/5)^3, under S5, and under the group they generate.

    The diagonal group is {zeta^k : sum k = 0 mod 5} modulo scalars; its
    generators e_i - e_5 suffice.
    """
    g5 = _orbit(line, _diag_gens())
    s5 = _orbit(line, _perm_gens())
    both = _orbit(line, _diag_gens() + _perm_gens())
    return {
        "g5Orbit": g5,
        "s5Orbit": s5,
        "lowerBound": both,
        "virtualCount": VIRTUAL_LINE_COUNT,
        "exceedsVirtual": both > VIRTUAL_LINE_COUNT,
    }


# --- boundary of the limit line in P^3 --------------------------------------


def boundary_intersections(line: ParamLine) -> list[tuple[int, tuple]]:
    """Meets of the limit line in {x5 = 0} = P^3 with the four hyperplanes x_i = 0.

    Hyperplane indices are 1..4.  Points are returned as 4-tuples.
    """
    if not (line.p[4].is_zero() and line.q[4].is_zero()):
        raise DworkError("line is not contained in {x5 = 0}")
    out = []
    for i in range(4):
        pi, qi = line.p[i], line.q[i]
        if pi.is_zero() and qi.is_zero():
            raise DworkError(f"line lies in the hyperplane x{i + 1} = 0")
        pt = line.point(qi, -pi)[:4]
        out.append((i + 1, pt))
    for (i, x), (j, y) in combinations(out, 2):
        if _proj_eq(x, y):
            raise DworkError(f"boundary points on x{i} = 0 and x{j} = 0 coincide")
    return out


def _proj_eq(x, y) -> bool:
    return all((x[i] * y[j] - x[j] * y[i]).is_zero() for i, j in combinations(range(len(x)), 2))


def limit_forms(params: DworkParams) -> list[tuple]:
    """The three specialized forms, homogenized with x4 (u_i = x_i/x4).

    -c(1-w)u2 - c(1-w^2)u3 + 1,  -c(1-w)u1 - c(1-w^2)u2 + 1,
    -c(1-w^2)u1 - c(1-w)u3 + 1,  with c = a/3.
    """
    w = params.omega
    c = params.a / 3
    al = c * (1 - w)
    be = c * (1 - w * w)
    one, zero = TowerElem.coerce(1), TowerElem.coerce(0)
    return [
        (zero, -al, -be, one),
        (-al, -be, zero, one),
        (-be, zero, -al, one),
    ]


def _rank_tower(rows) -> int:
    from .arith import rank

    return rank([list(r) for r in rows])


def verify_limit_equations(params: DworkParams, line: ParamLine | None = None) -> bool:
    """Do the specialized forms cut out exactly the limit line?

    They must span a rank-2 system (so they define a line in P^3) and
    vanish on the four boundary points of ``line``.
    """
    if not params.b.is_zero():
        raise DworkError("limit equations need b = 0")
    if line is None:
        line = build_van_geemen_line(params)
    forms = limit_forms(params)
    if _rank_tower(forms) != 2:
        return False
    pts = [pt for _, pt in boundary_intersections(line)]
    return all(_dot(f, pt).is_zero() for f in forms for pt in pts)


def point_to_json(pt) -> list:
    return [tower_to_json(x) for x in pt]


def tower_to_json(x: TowerElem) -> list:
    """Per power of a, the pair [rational part, sqrt(-3) part] as strings."""
    out = []
    for c in x.coeffs:
        out.append([_fr(c.a), _fr(c.b)])
    return out


def _fr(f: Fraction) -> str:
    return str(f)
