"""Command-line front end: eval, quad, transform, connect, stiffness, table-eig.

Files are CSV with a one-line JSON header comment. Numbers are written with
15 significant digits. Exit codes: 0 ok, 2 contract violation, 3 no convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import connections as conn
from .fourier_quad import (
    default_rule,
    map_rule_to_x,
    analyze,
    synthesize,
    weighted_fourier_rule,
)
from .modal import STORAGE_ORDER, BasisKind, ModalCoefficients, eval_basis
from .stiffness import NonConvergenceError, apply_derivative, assemble_stiffness, spectral_radius

TABLE2_S = ("0.6", "1.0", "6.0", "pi^2", "15.5")
TABLE2_N = (11, 50, 101, 250, 501)
TABLE2 = {
    "0.6": (7.31, 43.76, 91.50, 237.60, 483.75),
    "1.0": (7.99, 44.51, 92.28, 238.39, 484.54),
    "6.0": (15.96, 53.75, 101.81, 248.14, 494.40),
    "pi^2": (21.72, 60.67, 109.05, 255.63, 501.99),
    "15.5": (29.73, 70.45, 119.40, 266.44, 512.99),
}


def real(text: str) -> float:
    """Float parser that also takes the tokens ``pi`` and ``pi^2``."""
    t = text.strip().lower()
    if t == "pi^2":
        return math.pi ** 2
    if t == "pi":
        return math.pi
    if t == "-pi":
        return -math.pi
    return float(t)


def fmt(v: float) -> str:
    return format(float(v) + 0.0, ".15g")  # no "-0"


# ---------------------------------------------------------------------------
# coefficient files


def write_coefficients(c: ModalCoefficients, out) -> None:
    size_key = "K" if c.kind.is_fourier else "N"
    size = c.K if c.kind.is_fourier else len(c.entries)
    param = list(c.param) if isinstance(c.param, (tuple, list)) else c.param
    header = {"kind": c.kind.value, "param": param, size_key: size}
    if c.kind.is_fourier:
        header["storage_order"] = STORAGE_ORDER
    out.write("# " + json.dumps(header) + "\n")
    out.write("index,re,im\n")
    for k, v in zip(c.indices, c.entries):
        out.write(f"{int(k)},{fmt(v.real)},{fmt(v.imag)}\n")


def read_coefficients(path: str) -> ModalCoefficients:
    with open(path) as fh:
        first = fh.readline()
        if not first.startswith("#"):
            raise ValueError(f"{path}: missing JSON header line")
        header = json.loads(first[1:])
        kind = BasisKind(header["kind"])
        param = header["param"]
        if isinstance(param, list):
            param = tuple(param)
        rows = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("index")]
    idx = np.array([int(r.split(",")[0]) for r in rows])
    vals = np.array([complex(float(r.split(",")[1]), float(r.split(",")[2])) for r in rows])
    c = ModalCoefficients(kind, param, vals)
    expected = 2 * header["K"] + 1 if kind.is_fourier else header["N"]
    if len(vals) != expected:
        raise ValueError(f"{path}: body has {len(vals)} rows, header declares {expected}")
    if not np.array_equal(idx, c.indices):
        raise ValueError(f"{path}: indices are not in the declared storage order")
    return c


def write_samples(points, values, out, meta: dict) -> None:
    out.write("# " + json.dumps(meta) + "\n")
    out.write("point,re,im\n")
    for p, v in zip(points, values):
        out.write(f"{fmt(p)},{fmt(v.real)},{fmt(v.imag)}\n")


def read_samples(path: str):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#") and not ln.startswith("point")]
    pts = np.array([float(ln.split(",")[0]) for ln in lines])
    vals = np.array([complex(float(ln.split(",")[1]), float(ln.split(",")[2])) for ln in lines])
    return pts, vals


# ---------------------------------------------------------------------------
# parameter handling


def kind_param(args):
    kind = BasisKind(args.kind)
    if kind in (BasisKind.Psi, BasisKind.psi):
        if args.gamma is None:
            raise ValueError(f"--gamma is required for {kind.value}")
        return kind, args.gamma
    if kind in (BasisKind.PB, BasisKind.pb):
        if args.s is None or args.t is None:
            raise ValueError(f"--s and --t are required for {kind.value}")
        return kind, (args.s, args.t)
    if kind is BasisKind.JacobiP:
        if args.alpha is None or args.beta is None:
            raise ValueError("--alpha and --beta are required for JacobiP")
        return kind, (args.alpha, args.beta)
    if args.s is None:
        raise ValueError(f"--s is required for {kind.value}")
    return kind, args.s


def add_param_flags(p):
    p.add_argument("--kind", required=True, choices=[k.value for k in BasisKind])
    p.add_argument("--gamma", type=real)
    p.add_argument("--s", type=real)
    p.add_argument("--t", type=real)
    p.add_argument("--alpha", type=real)
    p.add_argument("--beta", type=real)


def parse_points(args):
    if args.points:
        return read_samples(args.points)[0] if args.points.endswith(".csv") else np.loadtxt(args.points, ndmin=1)
    for name in ("x", "theta", "r"):
        v = getattr(args, name, None)
        if v is not None:
            return np.array(v, dtype=float)
    if args.range:
        a, b, m = args.range.split(":")
        return np.linspace(real(a), real(b), int(m))
    raise ValueError("give points with --x, --theta, --r, --range or --points")


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, out):
    kind, param = kind_param(args)
    pts = parse_points(args)
    if kind.is_fourier:
        if args.k is not None:
            ks = [args.k]
        else:
            ks = list(range(args.kmin, args.kmax + 1))
        K = max(abs(k) for k in ks)
        B = eval_basis(kind, param, K, pts)
        from .modal import canonical_position
        rows = {k: B[canonical_position(k)] for k in ks}
    else:
        ns = [args.n] if args.n is not None else list(range(args.kmin, args.kmax + 1))
        if min(ns) < 0:
            raise ValueError("polynomial indices must be nonnegative")
        B = eval_basis(kind, param, max(ns) + 1, pts)
        rows = {n: B[n] for n in ns}
    out.write("# " + json.dumps({"kind": kind.value, "param": param}) + "\n")
    out.write("point,index,re,im\n")
    for j, p in enumerate(pts):
        for k, vals in rows.items():
            v = complex(vals[j])
            out.write(f"{fmt(p)},{k},{fmt(v.real)},{fmt(v.imag)}\n")


def cmd_quad(args, out):
    if args.s is not None:
        gamma = args.s - 1
    elif args.gamma is not None:
        gamma = args.gamma
    else:
        raise ValueError("give --gamma or --s")
    rule = weighted_fourier_rule(gamma, args.N)
    if args.chart == "x":
        q = map_rule_to_x(rule, weighted=args.weighted)
        nodes, weights = q.nodes, q.weights
    else:
        nodes, weights = rule.theta, rule.omega if args.weighted else rule.Omega
    meta = {"gamma": gamma, "N": args.N, "chart": args.chart, "weighted": args.weighted}
    out.write("# " + json.dumps(meta) + "\n")
    out.write("n,node,weight\n")
    for n, (a, w) in enumerate(zip(nodes, weights)):
        out.write(f"{n},{fmt(a)},{fmt(w)}\n")


def cmd_transform(args, out):
    if args.direction == "synthesize":
        c = read_coefficients(args.input)
        size = c.K if c.kind.is_fourier else len(c.entries)
        if args.points or args.range or args.x is not None or args.theta is not None:
            pts = parse_points(args)
        else:
            pts = default_rule(c.kind, c.param, size)[0]
        vals = synthesize(c, pts)
        meta = {"kind": c.kind.value, "param": c.param, "size": size}
        write_samples(pts, vals, out, meta)
        return
    kind, param = kind_param(args)
    if args.size is None:
        raise ValueError("analyze needs --size (K for Fourier kinds, N otherwise)")
    pts, vals = read_samples(args.input)
    nodes, weights = default_rule(kind, param, args.size)
    if len(pts) != len(nodes) or not np.allclose(pts, nodes, rtol=1e-13, atol=1e-13, equal_nan=False):
        raise ValueError("samples must sit on the default rule nodes (use 'transform synthesize' to produce them)")
    write_coefficients(analyze(vals, kind, param, args.size, nodes, weights), out)


def cmd_connect(args, out):
    c = read_coefficients(args.input)
    d = args.direction
    if args.pipeline == "psi-psi":
        res = conn.psi_psi_connect(c, args.G, d)
    elif args.pipeline == "Psi-psi":
        res = conn.Psi_to_psi(c, d, method=args.method)
    elif args.pipeline == "s-mod":
        if args.target is None:
            raise ValueError("s-mod needs --target")
        res = conn.modify_s(c, args.target, method=args.method)
    else:
        res = conn.jacobi_connect(c, args.A, args.B, d)
    write_coefficients(res, out)


def cmd_stiffness(args, out):
    S = assemble_stiffness(args.s, args.N, mirrored=args.mirrored)
    if args.radius:
        out.write(fmt(spectral_radius(S)) + "\n")
    elif args.apply:
        write_coefficients(apply_derivative(read_coefficients(args.apply)), out)
    else:
        out.write("# " + json.dumps({"s": args.s, "N": args.N, "mirrored": args.mirrored}) + "\n")
        out.write("row_k,col_k,im_value\n")
        for k, l, v in S.triplets:
            out.write(f"{k},{l},{fmt(v.imag)}\n")


def table_eig(mirrored_even: bool | None = None):
    """Rows (s label, N, computed, published, |diff|, ordering used).

    With ``mirrored_even=None`` even N tries the canonical ordering first and
    switches to the mirrored one when the canonical value misses by > 0.02.
    """
    rows = []
    for label in TABLE2_S:
        s = real(label)
        for N, ref in zip(TABLE2_N, TABLE2[label]):
            if N % 2 == 1 or mirrored_even is False:
                order = "canonical"
            elif mirrored_even:
                order = "mirrored"
            else:
                order = "canonical"
            val = spectral_radius(assemble_stiffness(s, N, mirrored=order == "mirrored"))
            if mirrored_even is None and N % 2 == 0 and abs(val - ref) > 0.02:
                order = "mirrored"
                val = spectral_radius(assemble_stiffness(s, N, mirrored=True))
            rows.append((label, N, val, ref, abs(val - ref), order))
    return rows


def cmd_table_eig(args, out):
    choice = {"auto": None, "canonical": False, "mirrored": True}[args.even]
    out.write("s,N,computed,published,abs_diff,ordering\n")
    for label, N, val, ref, diff, order in table_eig(choice):
        out.write(f"{label},{N},{val:.4f},{ref:.2f},{diff:.4f},{order}\n")


def build_parser():
    p = argparse.ArgumentParser(prog="wiener", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate basis functions")
    add_param_flags(e)
    e.add_argument("--k", type=int)
    e.add_argument("--n", type=int)
    e.add_argument("--kmin", type=int, default=0)
    e.add_argument("--kmax", type=int, default=0)
    for name in ("x", "theta", "r"):
        e.add_argument(f"--{name}", type=real, nargs="+")
    e.add_argument("--range", help="a:b:count (write --range=a:b:count when a is negative)")
    e.add_argument("--points", help="file of points")
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("quad", help="dump a theta- or x-chart rule")
    q.add_argument("--gamma", type=real)
    q.add_argument("--s", type=real)
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--weighted", action="store_true")
    q.add_argument("--chart", choices=["theta", "x"], default="theta")
    q.set_defaults(func=cmd_quad)

    t = sub.add_parser("transform", help="analyze or synthesize")
    t.add_argument("direction", choices=["analyze", "synthesize"])
    t.add_argument("--input", required=True)
    t.add_argument("--kind", choices=[k.value for k in BasisKind])
    for name in ("gamma", "s", "t", "alpha", "beta"):
        t.add_argument(f"--{name}", type=real)
    t.add_argument("--size", type=int)
    for name in ("x", "theta"):
        t.add_argument(f"--{name}", type=real, nargs="+")
    t.add_argument("--range", help="a:b:count")
    t.add_argument("--points")
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("connect", help="connection pipelines")
    c.add_argument("pipeline", choices=["psi-psi", "Psi-psi", "s-mod", "jacobi"])
    c.add_argument("--input", required=True)
    c.add_argument("--direction", choices=["forward", "backward"], default="forward")
    c.add_argument("--G", type=real, default=0)
    c.add_argument("--target", type=real)
    c.add_argument("--A", type=int, default=0)
    c.add_argument("--B", type=int, default=0)
    c.add_argument("--method", choices=["banded", "recurrence"], default="banded")
    c.set_defaults(func=cmd_connect)

    s = sub.add_parser("stiffness", help="assemble, export or apply the phi stiffness matrix")
    s.add_argument("--s", type=real, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--mirrored", action="store_true")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--export", action="store_true")
    g.add_argument("--radius", action="store_true")
    g.add_argument("--apply")
    s.set_defaults(func=cmd_stiffness)

    te = sub.add_parser("table-eig", help="recompute the 5 x 5 maximum-eigenvalue table")
    te.add_argument("--even", choices=["auto", "canonical", "mirrored"], default="auto")
    te.set_defaults(func=cmd_table_eig)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
