#!/usr/bin/env python3
"""Cross-check the built-in SDP solver against a general-purpose conic solver.

Dumps the two covariance programs of one operating point with `dmqkd dump-sdp`,
solves each with the built-in solver (`dmqkd solve-sdp`) and with CVXOPT, and
compares the optimal values. The first verified run writes a golden file; later
runs also compare against it.
"""

import argparse
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
from cvxopt import matrix, solvers

REL_TOL = 1e-6
GAP_TOL = 1e-7
GOLDEN_TOL = 1e-6
VERBOSE = False


def read_problem(path):
    tokens = Path(path).read_text().split()
    pos = 0

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def key(name):
        tok = take()
        if tok != name:
            raise ValueError(f"{path}: expected {name!r}, got {tok!r}")

    def triplets(dim, nnz):
        a = np.zeros((dim, dim))
        for _ in range(nnz):
            i, j, v = int(take()), int(take()), float(take())
            a[i, j] = v
            a[j, i] = v
        return a

    key("dmqkd-sdp")
    if take() != "1":
        raise ValueError(f"{path}: unsupported version")
    key("name")
    name = take()
    key("sense")
    sense = take()
    key("dim")
    dim = int(take())
    key("trace_bound")
    trace_bound = float(take())
    key("embedded")
    take()
    key("objective")
    c = triplets(dim, int(take()))
    cons = []
    while True:
        tok = take()
        if tok == "end":
            break
        if tok != "constraint":
            raise ValueError(f"{path}: unexpected token {tok!r}")
        kind, rhs, nnz, cname = take(), float(take()), int(take()), take()
        cons.append((cname, kind, rhs, triplets(dim, nnz)))
    return {"name": name, "sense": sense, "dim": dim, "trace_bound": trace_bound, "C": c, "constraints": cons}


def solve_reference(prob):
    """Certified reference value from CVXOPT on the Lagrange dual.

    For a max primal the dual minimizes b.y subject to sum y_i A_i - C >= 0; for a
    min primal it maximizes b.y subject to C - sum y_i A_i >= 0. Whatever the
    solver status, b.y corrected by trace_bound times the LMI violation bounds the
    primal optimum. The returned value is accepted once CVXOPT's own primal matrix
    reaches it from the feasible side.
    """
    rows = [(kind, rhs, a) for _, kind, rhs, a in prob["constraints"] if a.any()]
    m = len(rows)
    sign = 1.0 if prob["sense"] == "max" else -1.0
    b = np.array([r[1] for r in rows])
    gs = np.column_stack([-sign * a.reshape(-1, order="F") for _, _, a in rows])
    hs = -sign * prob["C"]
    lin, lower, upper = [], np.full(m, -np.inf), np.full(m, np.inf)
    for i, (kind, _, _) in enumerate(rows):
        if kind == "eq":
            continue
        # Multiplier sign: nonnegative for "le" under max and for "ge" under min.
        nonneg = (kind == "le") == (sign > 0)
        e = np.zeros(m)
        e[i] = -1.0 if nonneg else 1.0
        lin.append(e)
        if nonneg:
            lower[i] = 0.0
        else:
            upper[i] = 0.0

    last = None
    for iters in (12, 15, 20, 25, 30, 40):
        solvers.options.update({"show_progress": VERBOSE, "abstol": 1e-10, "reltol": 1e-9,
                                "feastol": 1e-9, "maxiters": iters})
        res = solvers.sdp(matrix(sign * b), G=matrix(np.array(lin)), h=matrix(np.zeros(len(lin))),
                          Gs=[matrix(gs)], hs=[matrix(hs)])
        y = np.clip(np.array(res["x"]).ravel(), lower, upper)
        lmi = sign * (sum(y[i] * rows[i][2] for i in range(m)) - prob["C"])
        lam = min(0.0, float(np.linalg.eigvalsh((lmi + lmi.T) / 2)[0]))
        certified = float(b @ y) - sign * lam * prob["trace_bound"]

        x = np.array(res["zs"][0])
        x = (x + x.T) / 2
        viol = max(0.0, -float(np.linalg.eigvalsh(x)[0]))
        for kind, rhs, a in rows:
            r = float(np.sum(a * x)) - rhs
            viol = max(viol, {"le": r, "ge": -r, "eq": abs(r)}[kind])
        primal = float(np.sum(prob["C"] * x))
        spread = abs(primal - certified) / (1.0 + abs(certified))
        last = (certified, f"{res['status']} it {iters} spread {spread:.1e} viol {viol:.1e}")
        if spread < GAP_TOL and viol < GAP_TOL:
            return certified, "CVXOPT", last[1]
    raise RuntimeError(f"{prob['name']}: no certified reference value ({last[1]})")


def solve_builtin(cli, path):
    out = subprocess.run([cli, "solve-sdp", str(path), "--tol", "1e-10"], check=True,
                         capture_output=True, text=True).stdout
    fields = dict(line.split(maxsplit=1) for line in out.strip().splitlines())
    return float(fields["value"]), float(fields["bound"]), float(fields["gap"])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cli", required=True)
    ap.add_argument("--config", required=True)
    ap.add_argument("--workdir", required=True)
    ap.add_argument("--golden", required=True)
    ap.add_argument("--loss", default="0.45757490560675124")
    ap.add_argument("--dim", default="99")
    args = ap.parse_args()

    work = Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    results = {}
    ok = True
    for mode in ("truncated", "finite-dim"):
        prefix = work / f"point_{mode}"
        subprocess.run([args.cli, "dump-sdp", args.config, "--prefix", str(prefix),
                        "--loss", args.loss, "--sdp", mode, "--dim", args.dim], check=True)
        for which in ("gammaB", "gammaAB"):
            path = Path(f"{prefix}_{which}.sdp")
            prob = read_problem(path)
            value, bound, gap = solve_builtin(args.cli, path)
            ref, solver, status = solve_reference(prob)
            rel = abs(value - ref) / max(1.0, abs(ref))
            good = rel <= REL_TOL and gap < GAP_TOL
            ok &= good
            key = f"{mode}/{which}"
            results[key] = {"builtin": value, "bound": bound, "gap": gap, "reference": ref}
            print(f"{key:22s} dim {prob['dim']:4d} builtin {value:.12f} {solver} {ref:.12f} "
                  f"({status}) rel {rel:.2e} gap {gap:.2e} {'ok' if good else 'FAIL'}")

    golden = Path(args.golden)
    if golden.exists():
        frozen = json.loads(golden.read_text())
        for key, row in results.items():
            want = frozen[key]["builtin"]
            rel = abs(row["builtin"] - want) / max(1.0, abs(want))
            if rel > GOLDEN_TOL:
                ok = False
                print(f"{key}: drifted from golden {want:.12f} (rel {rel:.2e})")
    elif ok:
        golden.parent.mkdir(parents=True, exist_ok=True)
        golden.write_text(json.dumps(results, indent=2, sort_keys=True) + "\n")
        print(f"wrote {golden}")
    print("sdp crossval:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
