#!/usr/bin/env python3
"""Deterministic generator for the small evaluation corpus in data/desk.

Every instance has at most 12 integer variables, a fractional LP optimum and
a positive integrality gap. Reference LP and IP values come from HiGHS via
scipy and are stored next to the model so the C++ enumeration can be
cross-checked.
"""
import argparse
import json
import random
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp


def solve(inst, integral):
    n = len(inst["variables"])
    c = np.array(inst["objective"], dtype=float)
    if inst["sense"] == "max":
        c = -c
    a = np.zeros((len(inst["rows"]), n))
    lo, hi = [], []
    for i, r in enumerate(inst["rows"]):
        for j, v in r["coefs"]:
            a[i, j] = v
        if r["sense"] == ">=":
            lo.append(r["rhs"]); hi.append(np.inf)
        elif r["sense"] == "<=":
            lo.append(-np.inf); hi.append(r["rhs"])
        else:
            lo.append(r["rhs"]); hi.append(r["rhs"])
    vlo = [v["lo"] if v["lo"] is not None else -np.inf for v in inst["variables"]]
    vhi = [v["hi"] if v["hi"] is not None else np.inf for v in inst["variables"]]
    ints = [1 if (v["integer"] and integral) else 0 for v in inst["variables"]]
    res = milp(c, constraints=LinearConstraint(a, lo, hi), bounds=Bounds(vlo, vhi), integrality=ints)
    if res.status != 0:
        return None, None
    val = float(res.fun)
    return (-val if inst["sense"] == "max" else val), res.x


def var(name, lo, hi, integer):
    return {"name": name, "lo": lo, "hi": hi, "integer": integer}


def row(name, coefs, sense, rhs):
    return {"name": name, "coefs": [[j, round(v, 6)] for j, v in coefs if v != 0], "sense": sense, "rhs": round(rhs, 6)}


def knapsack(rng, k):
    n = rng.randint(6, 12)
    m = rng.randint(1, 3)
    w = [[rng.randint(2, 20) for _ in range(n)] for _ in range(m)]
    rows = [row(f"cap{i}", list(enumerate(w[i])), "<=", sum(w[i]) * rng.uniform(0.3, 0.6)) for i in range(m)]
    return {"name": f"knap{k:02d}", "sense": "max",
            "variables": [var(f"x{j}", 0, 1, True) for j in range(n)],
            "objective": [rng.randint(5, 30) for _ in range(n)], "rows": rows}


def cover(rng, k):
    # An odd cycle of pairs keeps the LP optimum at halves.
    n = rng.choice([7, 9, 11])
    rows = [row(f"cyc{j}", sorted([(j, 1), ((j + 1) % n, 1)]), ">=", 1) for j in range(n)]
    for i in range(rng.randint(1, 3)):
        members = rng.sample(range(n), 3)
        rows.append(row(f"cov{i}", [(j, 1) for j in sorted(members)], ">=", 1))
    return {"name": f"cover{k:02d}", "sense": "min",
            "variables": [var(f"x{j}", 0, 1, True) for j in range(n)],
            "objective": [rng.randint(4, 6) for _ in range(n)], "rows": rows}


def general(rng, k):
    n = rng.randint(3, 6)
    m = rng.randint(2, 4)
    rows = []
    for i in range(m):
        coefs = [(j, rng.randint(1, 9)) for j in range(n)]
        rows.append(row(f"r{i}", coefs, "<=", rng.randint(10, 30) + 0.5))
    return {"name": f"gen{k:02d}", "sense": "max",
            "variables": [var(f"x{j}", 0, rng.randint(2, 4), True) for j in range(n)],
            "objective": [rng.randint(1, 12) for _ in range(n)], "rows": rows}


def facility(rng, k):
    f = rng.randint(3, 5)
    cust = rng.randint(2, 3)
    vars_ = [var(f"open{i}", 0, 1, True) for i in range(f)]
    obj = [rng.randint(8, 20) for _ in range(f)]
    rows = []
    cap = [rng.randint(4, 9) for _ in range(f)]
    dem = [rng.randint(2, 6) for _ in range(cust)]
    flow = {}
    for i in range(f):
        for c in range(cust):
            flow[i, c] = len(vars_)
            vars_.append(var(f"y{i}_{c}", 0, None, False))
            obj.append(rng.randint(1, 6))
    for c in range(cust):
        rows.append(row(f"dem{c}", [(flow[i, c], 1) for i in range(f)], ">=", dem[c]))
    for i in range(f):
        rows.append(row(f"cap{i}", [(flow[i, c], 1) for c in range(cust)] + [(i, -cap[i])], "<=", 0))
    return {"name": f"fac{k:02d}", "sense": "min", "variables": vars_, "objective": obj, "rows": rows}


def shifted(rng, k):
    # Nonzero lower bounds, an equality row and a mirrored variable.
    n = rng.randint(3, 5)
    vars_ = [var(f"x{j}", 1, rng.randint(3, 5), True) for j in range(n)]
    vars_.append(var("t", None, 60, False))
    coefs = [(j, rng.randint(2, 7)) for j in range(n)]
    rows = [row("bal", coefs + [(n, -1)], "=", 0),
            row("lim", coefs, "<=", rng.randint(14, 24) + 0.5),
            row("floor", [(n, 1)], ">=", -5)]
    obj = [rng.randint(1, 5) for _ in range(n)] + [1]
    return {"name": f"shift{k:02d}", "sense": "max", "variables": vars_, "objective": obj, "rows": rows}


FAMILIES = [knapsack, cover, general, facility, shifted]


def to_mps(inst):
    lines = [f"NAME          {inst['name']}"]
    if inst["sense"] == "max":
        lines += ["OBJSENSE", "    MAX"]
    lines.append("ROWS")
    lines.append(" N  obj")
    tag = {">=": "G", "<=": "L", "=": "E"}
    for r in inst["rows"]:
        lines.append(f" {tag[r['sense']]}  {r['name']}")
    lines.append("COLUMNS")
    in_int = False
    for j, v in enumerate(inst["variables"]):
        if v["integer"] != in_int:
            lines.append(f"    M{j}  'MARKER'  '{'INTORG' if v['integer'] else 'INTEND'}'")
            in_int = v["integer"]
        entries = [("obj", inst["objective"][j])]
        entries += [(r["name"], c) for r in inst["rows"] for jj, c in r["coefs"] if jj == j]
        for name, c in entries:
            if c != 0:
                lines.append(f"    {v['name']}  {name}  {c}")
    if in_int:
        lines.append("    MEND  'MARKER'  'INTEND'")
    lines.append("RHS")
    for r in inst["rows"]:
        if r["rhs"] != 0:
            lines.append(f"    rhs  {r['name']}  {r['rhs']}")
    lines.append("BOUNDS")
    for v in inst["variables"]:
        if v["lo"] is None:
            lines.append(f" MI bnd  {v['name']}")
        elif v["lo"] != 0:
            lines.append(f" LO bnd  {v['name']}  {v['lo']}")
        if v["hi"] is not None:
            lines.append(f" UP bnd  {v['name']}  {v['hi']}")
        elif v["integer"]:
            lines.append(f" PL bnd  {v['name']}")
    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "desk"))
    ap.add_argument("--count", type=int, default=24)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*"):
        old.unlink()
    rng = random.Random(args.seed)
    made, k = 0, 0
    while made < args.count:
        fam = FAMILIES[k % len(FAMILIES)]
        inst = fam(rng, k)
        k += 1
        if sum(v["integer"] for v in inst["variables"]) > 12:
            continue
        lp, x = solve(inst, integral=False)
        ip, _ = solve(inst, integral=True)
        if lp is None or ip is None or abs(lp - ip) < 1e-3 * max(1.0, abs(ip)):
            continue
        ints = [j for j, v in enumerate(inst["variables"]) if v["integer"]]
        if all(abs(x[j] - round(x[j])) <= 1e-5 for j in ints):
            continue
        doc = {"format": "vpc-forge-instance", "version": 1, **inst,
               "reference": {"lp_value": round(lp, 9), "ip_value": round(ip, 9)}}
        if made % 8 == 7:
            (out / f"{inst['name']}.mps").write_text(to_mps(inst))
        else:
            (out / f"{inst['name']}.json").write_text(json.dumps(doc, indent=1) + "\n")
        made += 1
    print(f"wrote {made} instances to {out}")


if __name__ == "__main__":
    main()
