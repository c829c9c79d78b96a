"""Multiple-cover resummation with the order-3 Dirichlet character.

Tables map degrees d >= 1 to QuadElem values; on disk they are stored as
{d: [num, den]} meaning (num/den)*sqrt(-3).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import OMEGA, OMEGA2, SQRT_M3, QuadElem


class BPSError(ValueError):
    pass


def chi(k: int) -> int:
    r = k % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def chi_exact(k: int) -> QuadElem:
    """(omega^k - omega^(2k)) / sqrt(-3), evaluated in the field."""
    return (OMEGA**k - OMEGA2**k) / SQRT_M3


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def expand(n: dict, N: int) -> dict[int, QuadElem]:
    """ntilde_D = sum_{k | D} chi(k)/k^2 n_{D/k} for D <= N."""
    _support_check(n)
    out = {}
    for D in range(1, N + 1):
        acc = QuadElem(0)
        for k in _divisors(D):
            c = chi(k)
            if c and D // k in n:
                acc = acc + QuadElem.coerce(n[D // k]) * Fraction(c, k * k)
        out[D] = acc
    return out


def invert(ntilde: dict, N: int) -> dict[int, QuadElem]:
    _support_check(ntilde)
    n: dict[int, QuadElem] = {}
    for D in range(1, N + 1):
        acc = QuadElem.coerce(ntilde.get(D, 0))
        for k in _divisors(D)[1:]:
            c = chi(k)
            if c:
                acc = acc - n[D // k] * Fraction(c, k * k)
        n[D] = acc
    return n


def _support_check(table: dict) -> None:
    if any(d < 1 for d in table):
        raise BPSError("tables are supported in degrees d >= 1")


def _is_power_of_3(m: int) -> bool:
    while m % 3 == 0:
        m //= 3
    return m == 1


def ring_member(x) -> bool:
    """x in sqrt(-3) * Z[1/3]."""
    x = QuadElem.coerce(x)
    return x.a == 0 and _is_power_of_3(x.b.denominator)


def half_in_ring(x) -> bool:
    return ring_member(QuadElem.coerce(x) / 2)


# --- tables on disk -----------------------------------------------------------


def table_from_json(data) -> dict[int, QuadElem]:
    raw = data.get("table", data) if isinstance(data, dict) else None
    if not isinstance(raw, dict):
        raise BPSError("table must be a JSON object {d: [num, den]}")
    out = {}
    for d, v in raw.items():
        try:
            num, den = v
            r = Fraction(int(num), int(den))
            out[int(d)] = QuadElem(0, r)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise BPSError(f"bad table entry {d!r}: {v!r}") from exc
    _support_check(out)
    return dict(sorted(out.items()))


def table_to_json(table: dict) -> dict:
    out = {}
    for d, x in sorted(table.items()):
        x = QuadElem.coerce(x)
        if x.a != 0:
            raise BPSError(f"degree {d} value is not a multiple of sqrt(-3)")
        out[str(d)] = [x.b.numerator, x.b.denominator]
    return out


def load_table(path: str | Path) -> dict[int, QuadElem]:
    p = Path(path)
    try:
        return table_from_json(json.loads(p.read_text()))
    except (OSError, json.JSONDecodeError, BPSError) as exc:
        raise BPSError(f"{p}: {exc}") from exc


def default_table_path() -> Path:
    return Path(str(resources.files("artifact") / "data" / "bps_ntilde.json"))


def paper_ntilde(N: int = 4, path: str | Path | None = None) -> dict[int, QuadElem]:
    table = load_table(path if path is not None else default_table_path())
    return {d: v for d, v in table.items() if d <= N}


def check_paper_values(N: int = 4, path: str | Path | None = None) -> dict:
    nt = paper_ntilde(N, path)
    top = max(nt)
    n = invert(nt, top)
    return {
        "N": top,
        "n": table_to_json(n),
        "ringMember": {str(d): ring_member(x) for d, x in n.items()},
        "halfInRing": {str(d): half_in_ring(x) for d, x in n.items()},
        "roundTrip": expand(n, top) == nt,
        "ok": all(ring_member(x) and half_in_ring(x) for x in n.values()) and expand(n, top) == nt,
    }


# --- L(2, chi) ----------------------------------------------------------------


def dirichlet_L2(tolerance: float = 1e-10) -> float:
    """sum chi(k)/k^2 with a certified bound.

    Dropping the zero terms leaves an alternating series with decreasing
    magnitudes, so the limit lies between consecutive partial sums; the
    midpoint is within half their gap.
    """
    if not tolerance > 0:
        raise BPSError("tolerance must be positive")
    # stop once the next nonzero term is below 2*tolerance
    kmax = int(math.isqrt(int(math.ceil(1 / (2 * tolerance))))) + 2
    terms = [chi(k) / (k * k) for k in range(1, kmax + 1) if k % 3]
    s = math.fsum(terms)
    k = kmax + 1
    while k % 3 == 0:
        k += 1
    nxt = chi(k) / (k * k)
    return s + nxt / 2
