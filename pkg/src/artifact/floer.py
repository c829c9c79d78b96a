"""Energy spectral sequence bookkeeping for the immersed Lagrangian.

The E2 page is a sum of shifted Betti vectors.  The differentials are
shipped as a JSON incidence file (d1, d2, d3 in degrees 1, 2, 3); the ones
in degrees 0 and -1 are their transposes under the Poincare pairing, which
matches basis vectors by position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arith import mat_mul, rank, transpose
from .chainlink import mayer_vietoris_h1_rank

DEGREES = tuple(range(-1, 5))
EXPECTED_HF = {-1: 1, 0: 3, 1: 4, 2: 4, 3: 3, 4: 1}
DATA_NAME = "floer_incidence.json"


class FloerDataError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    name: str
    counts: tuple
    low_index: int = 0
    shift: int = 0
    copies: int = 1

    def dims(self) -> dict[int, int]:
        # cohomological index k sits in degree k - shift
        out: dict[int, int] = {}
        for k, c in enumerate(self.counts, start=self.low_index):
            if c:
                out[k - self.shift] = out.get(k - self.shift, 0) + c * self.copies
        return out


def build_e2(spec: list[Summand]) -> dict[int, int]:
    dims: dict[int, int] = {}
    for s in spec:
        for deg, d in s.dims().items():
            dims[deg] = dims.get(deg, 0) + d
    return dict(sorted(dims.items()))


def paper_summands(b1: int | None = None) -> list[Summand]:
    """Summand data, with b1 of the immersed domain taken from Mayer-Vietoris."""
    return summands_from_json(load_incidence()["summands"], b1)


def summands_from_json(raw: list, b1: int | None = None) -> list[Summand]:
    if b1 is None:
        b1 = mayer_vietoris_h1_rank()
    out = []
    for s in raw:
        counts = tuple(b1 if c == "b1" else int(c) for c in s["counts"])
        out.append(Summand(s["name"], counts, int(s.get("lowIndex", 0)), int(s.get("shift", 0)), int(s.get("copies", 1))))
    return out


def default_data_path() -> Path:
    return Path(str(resources.files("artifact") / "data" / DATA_NAME))


def load_incidence(path: str | Path | None = None) -> dict:
    """Load and shape-check an incidence file.  Errors name the file."""
    p = Path(path) if path is not None else default_data_path()
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FloerDataError(f"{p}: cannot read incidence data ({exc})") from exc
    try:
        basis = {int(k): v for k, v in data["basis"].items()}
        for name, deg in (("d1", 1), ("d2", 2), ("d3", 3)):
            m = data[name]
            rows, cols = len(basis[deg + 1]), len(basis[deg])
            if len(m) != rows or any(len(r) != cols for r in m):
                raise FloerDataError(f"{p}: {name} must be {rows}x{cols}")
            if any(not isinstance(x, int) for r in m for x in r):
                raise FloerDataError(f"{p}: {name} has non-integer entries")
        data["summands"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise FloerDataError(f"{p}: malformed incidence data ({exc})") from exc
    data["_path"] = str(p)
    data["_basis"] = basis
    return data


@dataclass(frozen=True)
class DiffData:
    """Differentials d_p : E^p -> E^(p+1) as integer matrices (rows = target)."""

    d: dict

    @classmethod
    def from_incidence(cls, data: dict) -> "DiffData":
        d1, d2, d3 = data["d1"], data["d2"], data["d3"]
        return cls({-1: transpose(d3), 0: transpose(d2), 1: d1, 2: d2, 3: d3})

    def ranks(self) -> dict[int, int]:
        return {p: rank(m) for p, m in sorted(self.d.items())}

    def composites_vanish(self) -> dict[str, bool]:
        out = {}
        for p in sorted(self.d):
            if p + 1 in self.d:
                prod = mat_mul(self.d[p + 1], self.d[p])
                out[f"d{p + 1}.d{p}"] = all(x == 0 for row in prod for x in row)
        return out


def cohomology_ranks(e2: dict[int, int], ranks: dict[int, int]) -> dict[int, int]:
    out = {}
    for p in sorted(e2):
        h = e2[p] - ranks.get(p, 0) - ranks.get(p - 1, 0)
        if h < 0:
            raise FloerDataError(f"negative cohomology in degree {p}")
        out[p] = h
    return out


def euler(dims: dict[int, int]) -> int:
    return sum((-1) ** (p % 2) * d for p, d in dims.items())


def poincare_check(h: dict[int, int], top: int = 3) -> bool:
    degs = set(h) | {top - p for p in h}
    return all(h.get(p, 0) == h.get(top - p, 0) for p in degs)


def verify(path: str | Path | None = None) -> dict:
    data = load_incidence(path)
    e2 = build_e2(summands_from_json(data["summands"]))
    dd = DiffData.from_incidence(data)
    ranks = dd.ranks()
    hf = cohomology_ranks(e2, ranks)
    expected = data.get("expectedRanks", {})
    got = {"d1": ranks[1], "d2": ranks[2], "d3": ranks[3]}
    bad_ranks = [k for k, v in expected.items() if got.get(k) != v]
    comps = dd.composites_vanish()
    return {
        "file": data["_path"],
        "e2": e2,
        "ranks": ranks,
        "rankMismatch": bad_ranks,
        "compositesVanish": comps,
        "hf": hf,
        "hfMatches": hf == EXPECTED_HF,
        "eulerE2": euler(e2),
        "eulerHF": euler(hf),
        "poincare": poincare_check(hf),
        "ok": not bad_ranks and all(comps.values()) and hf == EXPECTED_HF and poincare_check(hf)
        and euler(e2) == euler(hf),
    }
