"""Independent brute-force oracle for the catalog invariants.

Reads the catalog data file with its own parser, evaluates coefficients with
sympy and computes every invariant straight from its definition as the
kernel of an explicit linear system.  Nothing from ``assocalg`` is imported
except the location of the data file.

Run as a script to regenerate ``oracle_baseline.json``.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

import sympy

DATA = Path(__file__).resolve().parents[1] / "src" / "assocalg" / "data" / "catalog.txt"
BASELINE = Path(__file__).with_name("oracle_baseline.json")
ALPHAS = [sympy.Integer(0), sympy.Integer(2), sympy.Integer(-1), sympy.Rational(1, 2)]


def read_entries():
    entries, cur = [], None
    for raw in DATA.read_text().splitlines():
        line = raw.strip()
        if line.startswith("entry "):
            cur = {"id": line.split()[1], "products": [], "params": {}, "claimed": None, "wedderburn": None}
            entries.append(cur)
        elif cur is None or not line or line.startswith("#"):
            continue
        elif line.startswith("dim "):
            cur["dim"] = int(line.split()[1])
        elif line.startswith("param "):
            _, name, excl = line.split()
            vals = excl.split("=", 1)[1]
            cur["params"][name] = [] if vals == "-" else [sympy.sympify(v) for v in vals.split(",")]
        elif "->" in line and ":" in line and not line.startswith("|"):
            lhs, coeff = line.split(":", 1)
            ij, k = lhs.split("->")
            i, j = ij.split()
            cur["products"].append((int(i), int(j), int(k), coeff.strip()))
        elif line.startswith("claimed "):
            fields = dict(tok.split("=", 1) for tok in line.split()[1:])
            types = set() if fields["types"] == "-" else set(fields["types"].split(","))
            cur["claimed"] = {
                "commutative": "commutative" in types,
                "unital": "unital" in types,
                "nilpotent": "nilpotent" in types,
                "dim_C": int(fields["dim_C"]),
                "dim_L": int(fields["dim_L"]),
                "dim_R": int(fields["dim_R"]),
            }
        elif line.startswith("wedderburn "):
            fields = dict(tok.split("=", 1) for tok in line.split()[1:])
            cur["wedderburn"] = [int(x) for x in fields["N"].split(",")] if fields["N"] != "-" else []
    return entries


def samples(entry):
    if not entry["params"]:
        return [{}]
    (name, excl), = entry["params"].items()
    return [{name: a} for a in ALPHAS if a not in excl]


def structure_constants(entry, env):
    n = entry["dim"]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    subs = {sympy.Symbol(k): v for k, v in env.items()}
    for i, j, k, coeff in entry["products"]:
        val = sympy.nsimplify(sympy.sympify(coeff).subs(subs))
        c[i - 1][j - 1][k - 1] = Fraction(int(val.p), int(val.q))
    return c


def mul(c, x, y):
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    for k in range(n):
                        out[k] += x[i] * y[j] * c[i][j][k]
    return out


def rank(rows):
    m = [list(r) for r in rows if any(r)]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((p for p in range(r, len(m)) if m[p][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for p in range(len(m)):
            if p != r and m[p][col]:
                f = m[p][col] / m[r][col]
                m[p] = [a - f * b for a, b in zip(m[p], m[r])]
        r += 1
    return r


def unit_vec(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def left_ann_dim(c):
    # x with x e_j = 0: coefficient of e_k in x e_j is sum_i x_i c[i][j][k]
    n = len(c)
    rows = [[c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return n - rank(rows)


def right_ann_dim(c):
    n = len(c)
    rows = [[c[j][i][k] for i in range(n)] for j in range(n) for k in range(n)]
    return n - rank(rows)


def commutative(c):
    n = len(c)
    return all(c[i][j] == c[j][i] for i in range(n) for j in range(n))


def unital(c):
    """Solve u e_j = e_j = e_j u with sympy."""
    n = len(c)
    u = sympy.symbols(f"u0:{n}")
    eqs = []
    for j in range(n):
        for k in range(n):
            target = 1 if j == k else 0
            eqs.append(sum(u[i] * sympy.Rational(c[i][j][k]) for i in range(n)) - target)
            eqs.append(sum(u[i] * sympy.Rational(c[j][i][k]) for i in range(n)) - target)
    return bool(sympy.linsolve(eqs, u))


def power_dims(c):
    n = len(c)
    basis = [unit_vec(n, i) for i in range(n)]
    span = basis
    dims = [n]
    for _ in range(n + 1):
        prods = [mul(c, a, b) for a in basis for b in span]
        r = rank(prods)
        dims.append(r)
        if r == 0 or r == dims[-2]:
            break
        span = prods
    return dims


def radical_dim(c):
    """Right-regular Dickson form on the unitalization: x in rad iff tr R_{y x} = 0 for all y."""
    n = len(c)
    m = n + 1

    def mul1(x, y):  # elements of A + <1>, unit last
        out = mul(c, x[:n], y[:n]) + [Fraction(0)]
        for k in range(n):
            out[k] += x[n] * y[k] + y[n] * x[k]
        out[n] = x[n] * y[n]
        return out

    basis1 = [unit_vec(m, i) for i in range(m)]

    def trace_right(z):
        return sum(mul1(b, z)[i] for i, b in enumerate(basis1))

    rows = []
    for y in basis1:
        rows.append([trace_right(mul1(y, unit_vec(m, i))) for i in range(n)])
    return n - rank(rows)


def associative(c):
    n = len(c)
    e = [unit_vec(n, i) for i in range(n)]
    return all(
        mul(c, mul(c, e[i], e[j]), e[k]) == mul(c, e[i], mul(c, e[j], e[k]))
        for i, j, k in product(range(n), repeat=3)
    )


def comm_subalgebra_witness(c, k):
    """A commutative subalgebra of dimension k spanned by small vectors, or None."""
    n = len(c)
    pool = [unit_vec(n, i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        for s in (1, -1):
            v = unit_vec(n, i)
            v[j] = Fraction(s)
            pool.append(v)
    if unital(c):
        pool.append(unit_guess(c))
    for combo in combinations(pool, k):
        if rank(combo) != k:
            continue
        if any(mul(c, a, b) != mul(c, b, a) for a, b in combinations(combo, 2)):
            continue
        if all(rank(list(combo) + [mul(c, a, b)]) == k for a in combo for b in combo):
            return [list(map(str, v)) for v in combo]
    return None


def unit_guess(c):
    n = len(c)
    u = sympy.symbols(f"u0:{n}")
    eqs = [
        sum(u[i] * sympy.Rational(c[i][j][k]) for i in range(n)) - (1 if j == k else 0)
        for j in range(n) for k in range(n)
    ]
    (sol,) = sympy.linsolve(eqs, u)
    return [Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in sol]


def label(entry, env):
    if not env:
        return entry["id"]
    (name, val), = env.items()
    return f"{entry['id']}({name}={val})"


def compute():
    """Per-sample invariants and the list of table disagreements."""
    rows, disagreements = [], []
    for entry in read_entries():
        for env in samples(entry):
            c = structure_constants(entry, env)
            pd = power_dims(c)
            got = {
                "associative": associative(c),
                "commutative": commutative(c),
                "unital": unital(c),
                "nilpotent": pd[-1] == 0,
                "dim_L": left_ann_dim(c),
                "dim_R": right_ann_dim(c),
                "dim_radical": radical_dim(c),
                "power_dims": pd,
            }
            lab = label(entry, env)
            rows.append({"label": lab, **got})
            cl = entry["claimed"]
            for key in ("commutative", "unital", "nilpotent", "dim_L", "dim_R"):
                if got[key] != cl[key]:
                    disagreements.append([lab, key, got[key], cl[key]])
            n = entry["dim"]
            if cl["dim_C"] < n:
                if cl["dim_C"] + 1 == n and got["commutative"]:
                    disagreements.append([lab, "dim_C", n, cl["dim_C"]])
                elif not got["commutative"]:
                    w = comm_subalgebra_witness(c, cl["dim_C"] + 1)
                    if w is not None:
                        disagreements.append([lab, "dim_C", cl["dim_C"] + 1, cl["dim_C"]])
            elif not got["commutative"]:
                disagreements.append([lab, "dim_C", "<" + str(n), cl["dim_C"]])
            if entry["wedderburn"] is not None and len(entry["wedderburn"]) != got["dim_radical"]:
                disagreements.append([lab, "wedderburn", got["dim_radical"], len(entry["wedderburn"])])
    return rows, disagreements


if __name__ == "__main__":
    rows, dis = compute()
    BASELINE.write_text(json.dumps({"invariants": rows, "disagreements": dis}, indent=1, default=str) + "\n")
    print(f"{len(rows)} samples, {len(dis)} disagreements", file=sys.stderr)
