"""The run-all verification suite.

Each check returns (status, details).  Details are JSON-ready and contain
no floats beyond what a module computes deterministically, so reports are
byte-identical across runs.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import bps, chainlink, dilog, dwork, floer, locsys, tropical, vshs
from .arith import QuadElem, TruncSeries, det_int

SCHEMA_VERSION = 1
PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


@dataclass(frozen=True)
class Config:
    truncation_order: int = 4
    float_tolerance: float = 1e-9
    data_dir: Path | None = None

    def data_file(self, name: str) -> Path | None:
        return None if self.data_dir is None else self.data_dir / name


class ConfigError(ValueError):
    pass


CONFIG_KEYS = {"truncationOrder", "floatTolerance", "dataDir"}


def config_from_json(raw) -> Config:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    extra = set(raw) - CONFIG_KEYS
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")
    n = raw.get("truncationOrder", 4)
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= 12:
        raise ConfigError("truncationOrder must be an integer in 1..12")
    tol = raw.get("floatTolerance", 1e-9)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not 0 < tol < 1:
        raise ConfigError("floatTolerance must be a number in (0, 1)")
    d = raw.get("dataDir")
    if d is not None and not isinstance(d, str):
        raise ConfigError("dataDir must be a string")
    return Config(n, float(tol), Path(d) if d is not None else None)


def _ok(flag: bool) -> str:
    return PASS if flag else FAIL


# --- dwork ----------------------------------------------------------------------


def _dwork_checks(cfg: Config) -> list:
    cache: dict = {}

    def orbits():
        if "o" not in cache:
            line = dwork.build_van_geemen_line(dwork.default_params(1, "generic"))
            cache["o"] = dwork.orbit_sizes(line)
            cache["stab"] = dwork.s5_stabilizer(line)
        return cache["o"]

    def containment(family):
        def run():
            res = {}
            for root in (1, 2):
                p = dwork.default_params(root, family)
                res[f"omega^{root}"] = dwork.verify_on_dwork(dwork.build_van_geemen_line(p), p)
            return _ok(all(res.values())), res

        return run

    def g5():
        o = orbits()
        return _ok(o["g5Orbit"] == 125), {"orbit": o["g5Orbit"]}

    def s5():
        o = orbits()
        return _ok(o["s5Orbit"] == 40), {"orbit": o["s5Orbit"]}

    def stab():
        orbits()
        st = cache["stab"]
        return _ok(len(st) == 3), {"order": len(st), "elements": [list(s) for s in st]}

    def bound():
        o = orbits()
        return _ok(o["lowerBound"] == 5000 and o["exceedsVirtual"]), {
            "lowerBound": o["lowerBound"],
            "virtualCount": o["virtualCount"],
        }

    def boundary():
        res = {}
        for root in (1, 2):
            pts = dwork.boundary_intersections(dwork.build_van_geemen_line(dwork.default_params(root)))
            dirs = tropical.tropicalization_type(pts)
            res[f"omega^{root}"] = {"hyperplanes": [h for h, _ in pts], "directions": [list(d) for d in dirs]}
        return PASS, res

    def limit_eqs():
        res = {f"omega^{r}": dwork.verify_limit_equations(dwork.default_params(r)) for r in (1, 2)}
        return _ok(all(res.values())), res

    return [
        ("dwork.containment-generic", "van Geemen line lies on the Dwork quintic (a^5 + b^5 = 27)", containment("generic")),
        ("dwork.containment-limit", "van Geemen line, b = 0 specialization", containment("limit")),
        ("dwork.g5-orbit", "orbit of a van Geemen line under (Z/5)^3 has 125 lines", g5),
        ("dwork.s5-orbit", "orbit under S5 has 40 lines", s5),
        ("dwork.s5-stabilizer", "S5 stabilizer is the 3-cycle group on x1, x2, x3", stab),
        ("dwork.orbit-lower-bound", "at least 5000 lines, exceeding 2875", bound),
        ("dwork.boundary", "limit line meets each coordinate plane of P^3 transversally", boundary),
        ("dwork.limit-equations", "specialized linear equations of the limit line", limit_eqs),
    ]


# --- tropical -------------------------------------------------------------------

EPS_SAMPLES = tuple(Fraction(k, 7) for k in range(1, 11))


def _tropical_checks(cfg: Config) -> list:
    def v_bal():
        V = tropical.make_V()
        return _ok(tropical.check_balancing(V)), {"curve": V.to_json()}

    def smooth():
        bad = []
        for i in (1, 2, 3):
            for eps in EPS_SAMPLES:
                c = tropical.make_V_smoothed(i, eps)
                if not tropical.check_balancing(c) or tropical.bounded_edge_length(c) != [eps]:
                    bad.append([i, str(eps)])
        return _ok(not bad), {"epsSamples": [str(e) for e in EPS_SAMPLES], "failures": bad}

    def trop_type():
        pts = dwork.boundary_intersections(dwork.build_van_geemen_line(dwork.default_params(1)))
        dirs = tropical.tropicalization_type(pts)
        same = tropical.same_up_to_sign(dirs, tropical.make_V())
        return _ok(same), {"directions": [list(d) for d in dirs], "matchesVUpToSign": same}

    def conormal():
        P = tropical.ConormalPoint
        cases = [
            (P((2, 1, 1), (0, Fraction(1, 3), Fraction(2, 3))), 1, False, True),
            (P((2, 1, 1), (Fraction(2, 5), 0, 0)), 1, False, False),
            (P((2, 1, 1), (Fraction(2, 5), 0, 0)), 1, True, True),
            (P((Fraction(1, 2),) * 3, (0, 0, 0)), 4, False, True),
            (P((2, 2, 2), (0, 0, 0)), 4, False, False),
        ]
        got = [tropical.conormal_member(p, leg, cover) for p, leg, cover, _ in cases]
        want = [w for *_, w in cases]
        return _ok(got == want), {"cases": len(cases), "results": got}

    return [
        ("tropical.V-balanced", "tropical curve V is balanced", v_bal),
        ("tropical.smoothings-balanced", "smoothings V(i; eps) are balanced with edge length eps", smooth),
        ("tropical.tropicalization-type", "limit line tropicalizes to V", trop_type),
        ("tropical.conormal-predicates", "periodized conormal legs and their 5-fold cover", conormal),
    ]


# --- chainlink ------------------------------------------------------------------


def _chainlink_checks(cfg: Config) -> list:
    def relations():
        M = chainlink.longitude_matrix()
        facs = M.invariant_factors()
        ok = M.tolist() == [list(r) for r in chainlink.LONGITUDES] and math.prod(facs) == abs(det_int(M))
        return _ok(ok), {
            "rows": M.tolist(),
            "rank": M.rank(),
            "invariantFactors": facs,
            "det": det_int(M),
        }

    def images():
        r = chainlink.check_longitude_images()
        return _ok(r["ok"]), {"images": [list(x) for x in r["images"]], "mismatched": r["mismatched"]}

    def deck():
        r = chainlink.deck_group()
        return _ok(r["elementaryDivisors"] == [5, 5, 5]), r

    def pi1():
        ab = chainlink.abelianized_quotient()
        return FLAGGED, {
            "claimedQuotient": [5, 5, 5],
            "abelianizedQuotient": ab,
            "note": "the abelianized quotient is (Z/5)^4; agreement needs nonabelian relations, not checked",
        }

    def mv():
        r = chainlink.mayer_vietoris(chainlink.paper_gluing())
        r2 = chainlink.mayer_vietoris(chainlink.paper_gluing().swapped())
        return _ok(r["h1Rank"] == 9 and r["free"] and r == r2), r

    return [
        ("chainlink.longitude-relations", "longitudes in terms of meridians", relations),
        ("chainlink.longitude-images", "induced map H1(L') -> H1(T^3) on longitudes", images),
        ("chainlink.deck-group", "125-fold cover has deck group (Z/5)^3", deck),
        ("chainlink.pi1-quotient", "quotient of pi1 by the meridian normal closure", pi1),
        ("chainlink.mayer-vietoris", "H1 of the immersed domain is free of rank 9", mv),
    ]


# --- locsys ---------------------------------------------------------------------


def _locsys_checks(cfg: Config) -> list:
    def vg(which):
        def run():
            h = locsys.van_geemen_tuple(which)
            res = locsys.residues(h)
            cons = locsys.consistency(h)
            return _ok(all(r.is_zero() for r in res) and all(cons)), {
                "residuesZero": [r.is_zero() for r in res],
                "longitudeConsistency": cons,
                "twist": list(locsys.LONGITUDE_SIGNS_TWISTED),
            }

        return run

    def roundtrip():
        out = {}
        ok = True
        for which in (1, 2):
            h = locsys.van_geemen_tuple(which)
            r = locsys.extend_point(h.mu[0], h.lam[0])
            hit = h in r.tuples
            ok = ok and hit
            out[f"omega^{which}"] = {"found": hit, "solutions": len(r.tuples), "diagnostics": r.diagnostics}
        return _ok(ok), out

    def rh():
        g = locsys.riemann_hurwitz_genus(25, 3, [[5] * 5] * 3)
        return _ok(g == 6), {"genus": g}

    return [
        ("locsys.vg-residues-omega", "van Geemen local system is unobstructed (omega)", vg(1)),
        ("locsys.vg-residues-omega2", "van Geemen local system is unobstructed (omega^2)", vg(2)),
        ("locsys.extend-roundtrip", "derivation chain from (mu0, lambda0)", roundtrip),
        ("locsys.riemann-hurwitz", "branched 25-fold cover of the pair of pants has genus 6", rh),
    ]


# --- floer ----------------------------------------------------------------------


def _floer_checks(cfg: Config) -> list:
    cache: dict = {}

    def result():
        if "r" not in cache:
            cache["r"] = floer.verify(cfg.data_file(floer.DATA_NAME))
        return cache["r"]

    def e2():
        r = result()
        want = {-1: 5, 0: 15, 1: 22, 2: 22, 3: 15, 4: 5}
        return _ok(r["e2"] == want), {"e2": _intkeys(r["e2"])}

    def ranks():
        r = result()
        return _ok(not r["rankMismatch"]), {"ranks": _intkeys(r["ranks"]), "mismatch": r["rankMismatch"]}

    def comps():
        r = result()
        return _ok(all(r["compositesVanish"].values())), r["compositesVanish"]

    def hf():
        r = result()
        ok = r["hfMatches"] and r["poincare"] and r["eulerE2"] == r["eulerHF"]
        return _ok(ok), {"hf": _intkeys(r["hf"]), "poincare": r["poincare"], "euler": [r["eulerE2"], r["eulerHF"]]}

    return [
        ("floer.e2-dims", "E2 page of the energy spectral sequence", e2),
        ("floer.differential-ranks", "differentials of rank 10, 8 and 4", ranks),
        ("floer.composites", "consecutive differentials compose to zero", comps),
        ("floer.hf-ranks", "Floer cohomology ranks (1, 3, 4, 4, 3, 1)", hf),
    ]


def _intkeys(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


# --- bps ------------------------------------------------------------------------


def _bps_checks(cfg: Config) -> list:
    def chi_values():
        vals = {k: bps.chi(k) for k in range(1, 7)}
        exact = all(QuadElem(bps.chi(k)) == bps.chi_exact(k) for k in range(1, 31))
        mult = all(bps.chi(m * n) == bps.chi(m) * bps.chi(n) for m in range(1, 60) for n in range(1, 60))
        return _ok(exact and mult), {"values": _intkeys(vals), "matchesDefinition": exact, "multiplicative": mult}

    def chi_display():
        v = bps.chi_exact(2)
        return FLAGGED, {
            "displayedChiOfMinusOne": 2,
            "definitionGives": int(v.a),
            "note": "the case display prints 2 for k = -1 mod 3; the defining formula gives -1",
        }

    def paper():
        r = bps.check_paper_values(cfg.truncation_order, cfg.data_file("bps_ntilde.json"))
        return _ok(r["ok"]), r

    def roundtrip():
        rng = random.Random(20240601)
        bad = 0
        for _ in range(100):
            N = rng.randint(1, 12)
            t = {d: QuadElem(Fraction(rng.randint(-99, 99), rng.randint(1, 9)), Fraction(rng.randint(-99, 99), 3 ** rng.randint(0, 3))) for d in range(1, N + 1)}
            if bps.invert(bps.expand(t, N), N) != t or bps.expand(bps.invert(t, N), N) != t:
                bad += 1
        return _ok(bad == 0), {"tables": 100, "failures": bad}

    def l2():
        v = bps.dirichlet_L2(cfg.float_tolerance / 10)
        w = dilog.l2chi_via_dilog()
        return _ok(abs(v - w) <= cfg.float_tolerance and v > 0), {"partialSums": _r(v), "viaClausen": _r(w)}

    return [
        ("bps.chi", "order-3 Dirichlet character from its defining formula", chi_values),
        ("bps.chi-display", "case display of the character", chi_display),
        ("bps.paper-values", "n_d in sqrt(-3) Z[1/3], twice an element of that ring", paper),
        ("bps.roundtrip", "multiple-cover expansion and inversion are inverse", roundtrip),
        ("bps.L2", "resummation constant is L(2; chi)", l2),
    ]


def _r(x: float) -> float:
    return float(f"{x:.12g}")


# --- vshs -----------------------------------------------------------------------


def _vshs_checks(cfg: Config) -> list:
    N = cfg.truncation_order
    try:
        table = bps.paper_ntilde(N, cfg.data_file("bps_ntilde.json"))
    except bps.BPSError:
        table = None

    def phi2():
        return TruncSeries([QuadElem(5)] + [QuadElem(Fraction(k * k * k, 1)) for k in range(1, N + 1)], N)

    def horiz():
        if table is None:
            return FAIL, {"error": "ntilde table unavailable"}
        psi = vshs.psi_from_table(table, N)
        rep = vshs.horizontality_report(vshs.a_model(phi2()), vshs.NormalFunctionCandidate(psi))
        th2 = psi.theta().theta()
        return _ok(rep["horizontal"] and rep["e1IsPlusTheta2Psi"]), {
            "order": N,
            "othersVanish": rep["othersVanish"],
            "e1": vshs.series_to_json(rep["e1"]),
            "e1Equals": "+theta^2 Psi" if rep["e1"] == th2 else "other",
            "note": "with (nabla v)_i = theta v_i + sum_j m_ij v_j the e1 component is +theta^2 Psi, not -theta^2 Psi",
        }

    def extension():
        rng = random.Random(7)
        fails = []
        for t in range(50):
            cs = [QuadElem(Fraction(rng.randint(-20, 20), rng.randint(1, 5)), Fraction(rng.randint(-20, 20), rng.randint(1, 5))) for _ in range(9)]
            psi = TruncSeries(cs, 8)
            m = vshs.a_model(TruncSeries([QuadElem(5)] + [QuadElem(rng.randint(-9, 9)) for _ in range(8)], 8))
            try:
                vshs.build_extension(m, vshs.NormalFunctionCandidate(psi))
            except vshs.VSHSError as exc:
                fails.append([t, str(exc)])
        return _ok(not fails), {"samples": 50, "order": 8, "failures": fails}

    def residues():
        out = {}
        for kind, m in (("A", vshs.a_model(phi2())), ("B", vshs.b_model(phi2()))):
            r = vshs.residue_checks(m)
            out[kind] = {k: r[k] for k in ("strictlyLowerTriangular", "nilpotent", "eigenvaluesInUnitInterval", "weightRanks", "flagged")}
        return _ok(not out["A"]["flagged"] and not out["B"]["flagged"]), out

    def w1():
        w0 = TruncSeries([QuadElem(0)] + [QuadElem(Fraction(1, k)) for k in range(1, N + 1)], N, "z")
        w1_ = vshs.w1_from_w0(w0)
        ok = w1_.coeffs[0].is_zero() and all(c == QuadElem(1) for c in w1_.coeffs[1:])
        ok = ok and vshs.w1_from_w0(TruncSeries([QuadElem(3)], N, "z")).is_zero()
        return _ok(ok), {"w1": vshs.series_to_json(w1_)}

    return [
        ("vshs.horizontality", "normal function nu = theta(Psi) e1 + Psi e0 is horizontal", horiz),
        ("vshs.extension", "extension of VSHS by a normal function is Griffiths transversal", extension),
        ("vshs.residues", "A- and B-model residues are nilpotent", residues),
        ("vshs.w1", "W1 = z d/dz W0", w1),
    ]


# --- dilog ----------------------------------------------------------------------


def _dilog_checks(cfg: Config) -> list:
    def basel():
        v = dilog.li2(1)
        err = abs(v - math.pi**2 / 6)
        return _ok(err <= 1e-12), {"li2(1)": _r(v.real), "error": float(f"{err:.3g}")}

    def volumes():
        r = dilog.volume_report()
        ok = r["multipliers"]["chainLink"] == 10 and r["coverIs125ChainLink"] and r["mismatch"]
        ok = ok and abs(r["tetra"] - 1.0149416064096536) <= 1e-8
        return _ok(ok), {k: (_r(v) if isinstance(v, float) else v) for k, v in r.items() if k not in ("signNote", "imLi2MinusOmega")}

    def sign():
        r = dilog.volume_report()
        return FLAGGED, {"imLi2MinusOmega": _r(r["imLi2MinusOmega"]), "note": r["signNote"]}

    def cross():
        v = dilog.l2chi_via_dilog()
        dup = abs(dilog.clausen2(2 * math.pi / 3) - 2 / 3 * dilog.clausen2(math.pi / 3))
        return _ok(v > 0 and dup <= 1e-10 and abs(v - 0.7813024128964862) <= cfg.float_tolerance), {"value": _r(v)}

    return [
        ("dilog.li2-basel", "Li2(1) = pi^2/6", basel),
        ("dilog.volumes", "chain link is 10 regular ideal tetrahedra; cover volume 1250 vs predicted 130", volumes),
        ("dilog.volume-sign", "sign of Im Li2(-omega)", sign),
        ("dilog.L2-via-clausen", "L(2; chi) = 2 Cl2(2 pi/3)/sqrt(3)", cross),
    ]


SUITES: dict[str, Callable[[Config], list]] = {
    "dwork": _dwork_checks,
    "tropical": _tropical_checks,
    "chainlink": _chainlink_checks,
    "locsys": _locsys_checks,
    "floer": _floer_checks,
    "bps": _bps_checks,
    "vshs": _vshs_checks,
    "dilog": _dilog_checks,
}


def run_checks(cfg: Config | None = None, modules=None, timings: bool = False) -> list[dict]:
    """Run the suites; elapsedMillis is 0 unless ``timings`` is set."""
    cfg = cfg or Config()
    out = []
    for mod, make in SUITES.items():
        if modules and mod not in modules:
            continue
        for name, cite, fn in make(cfg):
            t0 = time.perf_counter()
            try:
                status, details = fn()
            except Exception as exc:  # a crashing check is a failing check
                status, details = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
            ms = round((time.perf_counter() - t0) * 1000) if timings else 0
            out.append({"checkName": name, "paperCitation": cite, "status": status, "details": details, "elapsedMillis": ms})
    out.sort(key=lambda e: e["checkName"])
    return out


def build_report(entries: list[dict]) -> dict:
    counts = {s: sum(e["status"] == s for e in entries) for s in (PASS, FAIL, FLAGGED)}
    return {"schemaVersion": SCHEMA_VERSION, "summary": counts, "checks": entries}

