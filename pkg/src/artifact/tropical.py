"""Weighted tropical curves in R^3, the curve V and its smoothings.

Coordinates are exact rationals.  Edges are either bounded (two vertex
indices) or rays (one vertex and a direction).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence


class TropicalError(ValueError):
    pass


def primitive(v: Sequence) -> tuple[int, int, int]:
    """Primitive integer vector along a rational direction."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise TropicalError("zero direction")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def lattice_length(v: Sequence) -> Fraction:
    """The t with v = t * primitive(v)."""
    p = primitive(v)
    i = next(k for k in range(3) if p[k])
    return Fraction(v[i]) / p[i]


@dataclass(frozen=True)
class Edge:
    start: int
    end: int | None = None
    ray: tuple | None = None
    weight: int = 1

    def __post_init__(self):
        if (self.end is None) == (self.ray is None):
            raise TropicalError("edge needs exactly one of end vertex or ray direction")
        if self.weight <= 0:
            raise TropicalError("weights are positive")


@dataclass(frozen=True)
class TropCurve:
    vertices: tuple
    edges: tuple = field(default=())

    def direction(self, e: Edge, at: int) -> tuple[int, int, int]:
        """Primitive outgoing direction of edge e at vertex ``at``."""
        if e.ray is not None:
            return primitive(e.ray)
        a, b = self.vertices[e.start], self.vertices[e.end]
        d = primitive([y - x for x, y in zip(a, b)])
        return d if at == e.start else tuple(-x for x in d)

    def outgoing(self, v: int) -> list[tuple[tuple, int]]:
        out = []
        for e in self.edges:
            if e.start == v:
                out.append((self.direction(e, v), e.weight))
            if e.end == v:
                out.append((self.direction(e, v), e.weight))
        return out

    def ray_directions(self) -> list[tuple]:
        return sorted(primitive(e.ray) for e in self.edges for _ in range(e.weight) if e.ray is not None)

    def to_json(self) -> dict:
        edges = []
        for e in self.edges:
            d = {"from": e.start, "weight": e.weight}
            if e.ray is not None:
                d["rayDir"] = [int(x) for x in e.ray]
            else:
                d["to"] = e.end
            edges.append(d)
        return {"vertices": [[str(Fraction(x)) for x in v] for v in self.vertices], "edges": edges}

    @classmethod
    def from_json(cls, data: dict | str) -> "TropCurve":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            verts = tuple(tuple(Fraction(str(x)) for x in v) for v in data["vertices"])
            edges = []
            for e in data["edges"]:
                ray = e.get("rayDir")
                edges.append(
                    Edge(int(e["from"]), e.get("to"), tuple(int(x) for x in ray) if ray else None, int(e.get("weight", 1)))
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise TropicalError(f"malformed tropical curve: {exc}") from exc
        if any(len(v) != 3 for v in verts):
            raise TropicalError("vertices live in R^3")
        return cls(verts, tuple(edges))


def check_balancing(c: TropCurve) -> bool:
    for v in range(len(c.vertices)):
        total = [0, 0, 0]
        for d, w in c.outgoing(v):
            total = [t + w * x for t, x in zip(total, d)]
        if any(total):
            return False
    return True


def unbalanced_vertices(c: TropCurve) -> list[int]:
    bad = []
    for v in range(len(c.vertices)):
        total = [0, 0, 0]
        for d, w in c.outgoing(v):
            total = [t + w * x for t, x in zip(total, d)]
        if any(total):
            bad.append(v)
    return bad


E1, E2, E3, E4 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)
V_DIRECTIONS = (E1, E2, E3, E4)


def make_V(weights: Sequence[int] = (1, 1, 1, 1)) -> TropCurve:
    origin = (Fraction(0),) * 3
    return TropCurve((origin,), tuple(Edge(0, ray=d, weight=w) for d, w in zip(V_DIRECTIONS, weights)))


def _cycle(v, times):
    # (x, y, z) -> (z, x, y) sends e1 -> e2 -> e3 -> e1
    for _ in range(times):
        v = (v[2], v[0], v[1])
    return v


def make_V_smoothed(i: int, eps) -> TropCurve:
    """V(i; eps): two trivalent vertices joined by an edge of lattice length eps.

    For i = 1 the vertices are (0, eps/2, eps/2), carrying rays e2 and e3,
    and (0, -eps/2, -eps/2), carrying rays e1 and (-1,-1,-1).  i = 2, 3 are
    cyclic permutations of coordinates.
    """
    if i not in (1, 2, 3):
        raise TropicalError("smoothing index is 1, 2 or 3")
    eps = Fraction(eps)
    if eps <= 0:
        raise TropicalError("eps must be positive")
    h = eps / 2
    up, down = (Fraction(0), h, h), (Fraction(0), -h, -h)
    rays_up, rays_down = (E2, E3), (E1, E4)
    k = i - 1
    verts = (_cycle(up, k), _cycle(down, k))
    edges = [Edge(0, end=1)]
    edges += [Edge(0, ray=_cycle(d, k)) for d in rays_up]
    edges += [Edge(1, ray=_cycle(d, k)) for d in rays_down]
    return TropCurve(verts, tuple(edges))


def bounded_edge_length(c: TropCurve) -> list[Fraction]:
    out = []
    for e in c.edges:
        if e.end is not None:
            a, b = c.vertices[e.start], c.vertices[e.end]
            out.append(lattice_length([y - x for x, y in zip(a, b)]))
    return out


# --- tropicalization of the limit line --------------------------------------


def tropicalization_type(bdry: Sequence[tuple[int, Sequence]]) -> list[tuple]:
    """Directions of the punctures of a line in P^3 minus the coordinate planes.

    A puncture on {x_i = 0}, i = 1, 2, 3 goes off in direction -e_i, one on
    the homogenizing plane {x4 = 0} in direction (1, 1, 1).  Each point must
    meet exactly one coordinate plane (transversality).
    """
    if sorted(h for h, _ in bdry) != [1, 2, 3, 4]:
        raise TropicalError("need one point on each of the four coordinate planes")
    dirs = []
    for h, pt in bdry:
        zeros = [k + 1 for k, x in enumerate(pt) if _is_zero(x)]
        if zeros != [h]:
            raise TropicalError(f"puncture on x{h} = 0 is not transverse (zero coordinates {zeros})")
        dirs.append((1, 1, 1) if h == 4 else tuple(-int(k == h - 1) for k in range(3)))
    return sorted(dirs)


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def same_up_to_sign(dirs: Sequence[tuple], curve: TropCurve) -> bool:
    ref = curve.ray_directions()
    neg = sorted(tuple(-x for x in d) for d in dirs)
    return sorted(dirs) == ref or neg == ref


# --- periodized conormals ----------------------------------------------------


@dataclass(frozen=True)
class ConormalPoint:
    """A point of (C*)^3 as (modulus, argument/2pi) per coordinate."""

    moduli: tuple
    turns: tuple

    def __post_init__(self):
        mods = tuple(Fraction(m) for m in self.moduli)
        if len(mods) != 3 or any(m <= 0 for m in mods):
            raise TropicalError("three positive moduli required")
        object.__setattr__(self, "moduli", mods)
        object.__setattr__(self, "turns", tuple(Fraction(t) % 1 for t in self.turns))


def _angle_ok(turn: Fraction, cover: bool) -> bool:
    if cover:
        return (turn * 5).denominator == 1
    return turn == 0


def conormal_member(p: ConormalPoint, leg: int, cover: bool = False) -> bool:
    """Membership in the displayed periodized-conormal predicates.

    Legs 1-3: |u_j| = |u_k| and u_leg real in [1, inf); in the cover version
    u_leg = r e^{i theta} with r >= 1 and theta a multiple of 2pi/5.
    Leg 4: |u1| = |u2| = |u3| and u1 u2 u3 in (0, 1], or r e^{i theta} with
    r in (0, 1] and theta a multiple of 2pi/5 in the cover version.
    """
    m, t = p.moduli, p.turns
    if leg in (1, 2, 3):
        i = leg - 1
        j, k = [x for x in range(3) if x != i]
        return m[j] == m[k] and m[i] >= 1 and _angle_ok(t[i], cover)
    if leg == 4:
        if not (m[0] == m[1] == m[2]):
            return False
        r = m[0] * m[1] * m[2]
        return 0 < r <= 1 and _angle_ok(sum(t) % 1, cover)
    raise TropicalError("legs are numbered 1..4")
