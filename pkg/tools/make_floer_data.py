"""Write src/artifact/data/floer_incidence.json from the incidence description.

Run once; the JSON is the shipped, reviewed artifact.  Degrees 1, 2, 3 carry
the matrices d1, d2, d3; degrees 0 and -1 are their transposes under the
Poincare pairing, which matches basis vectors by position.
"""

import json
from itertools import combinations
from pathlib import Path

TORI = range(5)
FACES = list(combinations(range(1, 5), 2))

basis = {
    "-1": [f"T{t}[+1].H0" for t in TORI],
    "0": ["L.H0"]
    + [f"T{t}[+1].H1.{x}" for t in TORI for x in ("mu", "lam")]
    + [f"rel.CM1.{i}" for i in range(1, 5)],
    "1": [f"L.H1.s{i}^" for i in range(1, 5)]
    + [f"L.H1.l{j}^" for j in range(5)]
    + [f"T{t}[+1].H2" for t in TORI]
    + ["CM0.p1", "CM0.p2"]
    + [f"rel.CM2.{i}{k}" for i, k in FACES],
    "2": [f"L.H2.s{i}" for i in range(1, 5)]
    + [f"L.H2.l{j}" for j in range(5)]
    + [f"T{t}[-2].H0" for t in TORI]
    + ["rel.CM3.q1", "rel.CM3.q2"]
    + [f"CM1.f{i}{k}" for i, k in FACES],
    "3": ["L.H3"]
    + [f"T{t}[-2].H1.{x}" for t in TORI for x in ("mu", "lam")]
    + [f"CM2.c{i}" for i in range(1, 5)],
    "4": [f"T{t}[-2].H2" for t in TORI],
}


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def idx(deg, label):
    return basis[deg].index(label)


# d3: E^3 -> E^4, critical point c_i hits the torus classes of tori 0 and i
d3 = zeros(len(basis["4"]), len(basis["3"]))
for i in range(1, 5):
    c = idx("3", f"CM2.c{i}")
    d3[idx("4", f"T{i}[-2].H2")][c] = 1
    d3[idx("4", "T0[-2].H2")][c] = -1

# d2: E^2 -> E^3
d2 = zeros(len(basis["3"]), len(basis["2"]))
for j in range(1, 5):
    d2[idx("3", f"T{j}[-2].H1.lam")][idx("2", f"L.H2.l{j}")] = 1
d2[idx("3", "T1[-2].H1.mu")][idx("2", "L.H2.l0")] = -1
d2[idx("3", "T4[-2].H1.mu")][idx("2", "L.H2.l0")] = -1
for i, k in FACES:
    col = idx("2", f"CM1.f{i}{k}")
    d2[idx("3", f"T{i}[-2].H1.mu")][col] = 1
    d2[idx("3", f"T{k}[-2].H1.mu")][col] = 1

# d1: E^1 -> E^2
V = {(1, 2): 1, (3, 4): 1, (1, 3): -1, (2, 4): -1}
d1 = zeros(len(basis["2"]), len(basis["1"]))
for (i, k), sgn in V.items():
    d1[idx("2", f"CM1.f{i}{k}")][idx("1", "CM0.p1")] = sgn
    d1[idx("2", f"CM1.f{i}{k}")][idx("1", "CM0.p2")] = -sgn
    d1[idx("2", "rel.CM3.q1")][idx("1", f"rel.CM2.{i}{k}")] = sgn
    d1[idx("2", "rel.CM3.q2")][idx("1", f"rel.CM2.{i}{k}")] = -sgn
for i in range(1, 5):
    s = idx("1", f"L.H1.s{i}^")
    d1[idx("2", "T0[-2].H0")][s] = 1
    d1[idx("2", f"T{i}[-2].H0")][s] = 1
    d1[idx("2", f"L.H2.s{i}")][idx("1", "T0[+1].H2")] = 1
    d1[idx("2", f"L.H2.s{i}")][idx("1", f"T{i}[+1].H2")] = 1

summands = [
    {"name": "H*(L_im^5)", "counts": [1, "b1", "b1", 1], "lowIndex": 0, "shift": 0, "copies": 1},
    {"name": "H*(T^2)[+1]", "counts": [1, 2, 1], "lowIndex": 0, "shift": 1, "copies": 5},
    {"name": "H*(T^2)[-2]", "counts": [1, 2, 1], "lowIndex": 0, "shift": -2, "copies": 5},
    {"name": "CM*(L')", "counts": [2, 6, 4], "lowIndex": 0, "shift": -1, "copies": 1},
    {"name": "CM*(L',dL')", "counts": [4, 6, 2], "lowIndex": 1, "shift": 1, "copies": 1},
]

data = {
    "format": 1,
    "summands": summands,
    "basis": basis,
    "d1": d1,
    "d2": d2,
    "d3": d3,
    "expectedRanks": {"d1": 10, "d2": 8, "d3": 4},
}

out = Path(__file__).resolve().parents[1] / "src" / "artifact" / "data" / "floer_incidence.json"
parts = []
for key, val in data.items():
    if key in ("d1", "d2", "d3"):
        rows = ",\n  ".join(json.dumps(r) for r in val)
        parts.append(f' "{key}": [\n  {rows}\n ]')
    else:
        parts.append(f" {json.dumps(key)}: " + json.dumps(val))
out.write_text("{\n" + ",\n".join(parts) + "\n}\n")
print(out)
