"""First homology of the chain link complement L' and of the immersed double.

H1(L') is free on the meridians m0..m4.  The longitudes and the map to
H1(T^3) are fixed integer matrices; everything else is Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import IntMatrix, cokernel_invariants, snf

# row i is l_i in the meridian basis
LONGITUDES = (
    (0, -1, 0, 0, -1),
    (-1, 0, 1, 0, 0),
    (0, 1, 0, -1, 0),
    (0, 0, -1, 0, 1),
    (-1, 0, 0, 1, 0),
)

# column i is the image of m_i in the basis e1, e2, e3
TORUS_MAP = (
    (0, 0, 0, -1, 0),
    (0, 1, 0, 1, -1),
    (0, -1, 1, 0, 1),
)

EXPECTED_LONGITUDE_IMAGES = (
    (0, 0, 0),
    (0, 0, 1),
    (1, 0, -1),
    (0, -1, 0),
    (-1, 1, 0),
)

COVER_DEGREE = 5


class ChainLinkError(ValueError):
    pass


def longitude_matrix() -> IntMatrix:
    return IntMatrix(LONGITUDES)


def torus_map() -> IntMatrix:
    return IntMatrix(TORUS_MAP)


def longitude_images() -> list[tuple[int, ...]]:
    img = torus_map() @ longitude_matrix().T()
    return [tuple(img.entries[r][c] for r in range(3)) for c in range(5)]


def check_longitude_images() -> dict:
    got = longitude_images()
    bad = [i for i, (g, e) in enumerate(zip(got, EXPECTED_LONGITUDE_IMAGES)) if g != e]
    return {"ok": not bad, "images": got, "mismatched": bad}


def left_kernel(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of {y : y M = 0} over Z, read off the SNF row transform."""
    U, D, _ = snf(M)
    r = D.rank()
    return [tuple(row) for row in U.entries[r:]]


def _sublattice_quotient(gens: IntMatrix) -> list[int]:
    return cokernel_invariants(gens)


def deck_group(n: int = COVER_DEGREE) -> dict:
    """Deck group of the cover pulled back from the n^3-fold cover of T^3.

    That group is Z^5 / K with K = {x : M x in n Z^3}, i.e. the image of M
    mod n.  With U M V = D, K is spanned by the columns of V scaled by
    n / gcd(d_i, n) (by 1 where d_i = 0).
    """
    M = torus_map()
    _, D, V = snf(M)
    diag = [D.entries[i][i] if i < D.rows else 0 for i in range(M.cols)]
    scale = []
    for d in diag:
        if d == 0:
            scale.append(1)
        else:
            g = gcd(d, n)
            scale.append(n // g)
    K = IntMatrix([[V.entries[r][c] * scale[c] for c in range(M.cols)] for r in range(M.cols)])
    invariants = _sublattice_quotient(K)
    return {
        "rankOfM": M.rank(),
        "snfOfM": [d for d in diag if d],
        "elementaryDivisors": invariants,
    }


def abelianized_quotient(n: int = COVER_DEGREE) -> list[int]:
    """Z^5 / <m0, n m1, ..., n m4>: what the abelianization of the pi_1 quotient gives."""
    gens = IntMatrix([[1 if (r == c and c == 0) else (n if r == c else 0) for c in range(5)] for r in range(5)])
    return cokernel_invariants(gens)


@dataclass(frozen=True)
class GluingData:
    """Meridian/longitude classes of the five boundary tori in both copies of L'."""

    copy_a: tuple  # per torus: (meridian vector, longitude vector)
    copy_b: tuple

    def swapped(self) -> "GluingData":
        return GluingData(self.copy_b, self.copy_a)

    def validate(self) -> None:
        if len(self.copy_a) != 5 or len(self.copy_b) != 5:
            raise ChainLinkError("five boundary tori expected")
        for i, (ta, tb) in enumerate(zip(self.copy_a, self.copy_b)):
            if len(ta) != 2 or len(tb) != 2:
                raise ChainLinkError(f"torus {i}: need a meridian and a longitude")
            if any(len(v) != 5 for v in (*ta, *tb)):
                raise ChainLinkError(f"torus {i}: classes must be vectors in Z^5")
            if tuple(ta) != tuple(tb):
                raise ChainLinkError(f"torus {i}: gluing does not respect the homology classes")


def paper_gluing() -> GluingData:
    tori = tuple(
        (tuple(int(r == i) for r in range(5)), LONGITUDES[i]) for i in range(5)
    )
    return GluingData(tori, tori)


def mayer_vietoris(g: GluingData) -> dict:
    """H1 of two copies of L' glued along the five boundary tori.

    Segment  H1(T) -> H1(L') + H1(L') -> H1(X) -> H0(T) -> H0(L') + H0(L')
    with T the five tori.  H1(X) = coker(first map) + ker(last map).
    """
    g.validate()
    A = [[g.copy_a[c // 2][c % 2][r] for c in range(10)] for r in range(5)]
    B = [[g.copy_b[c // 2][c % 2][r] for c in range(10)] for r in range(5)]
    iota = IntMatrix(A + [[-x for x in row] for row in B])
    coker = cokernel_invariants(iota)
    h0 = IntMatrix([[1] * 5, [-1] * 5])
    ker0 = 5 - h0.rank()
    free = coker.count(0)
    torsion = [d for d in coker if d]
    return {
        "rankA": IntMatrix(A).rank(),
        "cokernelFreeRank": free,
        "cokernelTorsion": torsion,
        "h0KernelRank": ker0,
        "h1Rank": free + ker0,
        "free": not torsion,
    }


def mayer_vietoris_h1_rank(g: GluingData | None = None) -> int:
    return mayer_vietoris(g or paper_gluing())["h1Rank"]
