"""Command-line interface.

    boolslep coeff-matrix --op hbdo --n 8 --k 3 --r 2
    boolslep spectrum --n 8 --k 3 --out report.json
    boolslep eigvecs --n 8 --k 3 --r 2 --out fig3.csv
    boolslep wr-projection --n 8 --r 3 --columns 0 20
    boolslep sparsity --n 8 --format pgm --out adjacency.pgm
    boolslep verify --n 8 --k 3

Without a subcommand the worked example (n=8, K=3) tables are printed.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import coeff, oracle
from .coeff import HBDOParams, Route
from .cube import (
    check_n,
    dyadic_permutation,
    sphere_indices,
    sphere_size,
    sphere_to_cube,
)
from .eigen import qpq_eigenspaces
from .errors import InvalidInputError, OracleCapError
from .hadamard import hadamard_apply
from .harmonics import lift, project_onto_wr, wr_dim, wr_projection_matrix

OPS = ("a", "aplus", "aminus", "p", "qpq", "hbdo", "hbdo-reduced")


class UsageError(Exception):
    pass


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _params(args):
    if args.alpha is None and args.beta is None:
        return HBDOParams.commuting(args.k)
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta must be given together")
    return HBDOParams(args.alpha, args.beta)


def _validate(args, need_r=False):
    check_n(args.n)
    if args.k is None:
        args.k = min(3, args.n)
    if not 0 <= args.k <= args.n:
        raise UsageError(f"--k must be in [0, {args.n}]")
    r = getattr(args, "r", None)
    if need_r and r is None:
        raise UsageError("--r is required")
    if r is not None and not 0 <= r <= args.n:
        raise UsageError(f"--r must be in [0, {args.n}]")
    if hasattr(args, "precision") and not 1 <= args.precision <= 17:
        raise UsageError("--precision must be in [1, 17]")


def coefficient_matrix(op, n, k, r, params=None, route=Route.SPECTRAL):
    """The CoeffMatrix requested by name (shared with the tests)."""
    if op == "a":
        return coeff.coeff_a(n, r)
    if op == "aplus":
        return coeff.coeff_aplus(n, r)
    if op == "aminus":
        return coeff.coeff_aminus(n, r)
    if op in ("p", "qpq"):
        if r > k:
            raise UsageError(f"--op {op} needs r <= k")
        m = coeff.coeff_p(n, k, r, route)
        return coeff.principal_minor(m, min(k, n - r) - r + 1) if op == "qpq" else m
    if op in ("hbdo", "hbdo-reduced"):
        m = coeff.hbdo_matrix(n, r, params or HBDOParams.commuting(k))
        if op == "hbdo-reduced":
            if r > k:
                raise UsageError("--op hbdo-reduced needs r <= k")
            m = coeff.principal_minor(m, k + 1 - r)
        return m
    raise UsageError(f"unknown --op {op!r}")


def cmd_coeff_matrix(args):
    _validate(args, need_r=True)
    m = coefficient_matrix(args.op, args.n, args.k, args.r, _params(args), args.route)
    entries = coeff.as_table_layout(m) if args.layout == "table" else m.entries
    if args.format == "json":
        text = json.dumps({"n": args.n, "K": args.k, "r": args.r, "op": args.op, "label": m.label,
                           "layout": args.layout, "entries": entries.tolist()}, indent=2) + "\n"
    else:
        text = coeff.matrix_to_csv(entries, args.precision)
    _write(text, args.out)
    return 0


def cmd_spectrum(args):
    _validate(args)
    report = qpq_eigenspaces(args.n, args.k, args.route)
    if args.format == "json":
        text = report.to_json(indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "multiplicity", "lambda"])
        for lv in report.levels:
            for lam in lv.eigenvalues:
                w.writerow([lv.r, lv.multiplicity, coeff._fmt(lam, args.precision)])
        text = buf.getvalue()
    _write(text, args.out)
    return 0


def eigvec_table(n, k, r, delta_index=0, normalized=False):
    """Columns for plotting: dyadic rank, mask, W, V, HV (dyadic order)."""
    if r > k:
        raise UsageError("eigvecs needs r <= k")
    if wr_dim(n, r) <= 0:
        raise UsageError(f"W_{r} is trivial for n={n}")
    if not 0 <= delta_index < sphere_size(n, r):
        raise UsageError(f"--delta must be in [0, {sphere_size(n, r)})")
    e = np.zeros(sphere_size(n, r))
    e[delta_index] = 1.0
    w = sphere_to_cube(n, r, project_onto_wr(n, r, e))
    report = qpq_eigenspaces(n, k)
    level = next(lv for lv in report.levels if lv.r == r)
    top = level.pairs[0]
    v = lift(n, r, top.coeffs, w)
    hv = hadamard_apply(v) * (2.0 ** (-n / 2) if normalized else 1.0)
    perm = dyadic_permutation(n)
    return perm, w[perm], v[perm], hv[perm], top.lam


def cmd_eigvecs(args):
    _validate(args)
    r = args.r if args.r is not None else min(2, args.k)
    perm, w, v, hv, _ = eigvec_table(args.n, args.k, r, args.delta, args.normalized)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["rank", "mask", "W", "V", "HV"])
    p = args.precision
    for rank, mask in enumerate(perm):
        out.writerow([rank, int(mask), coeff._fmt(w[rank], p), coeff._fmt(v[rank], p), coeff._fmt(hv[rank], p)])
    _write(buf.getvalue(), args.out)
    return 0


def cmd_wr_projection(args):
    check_n(args.n)
    if args.r is None or not 0 <= args.r <= args.n:
        raise UsageError("--r in [0, n] is required")
    pw = wr_projection_matrix(args.n, args.r)
    cols = args.columns if args.columns else range(pw.shape[1])
    for c in cols:
        if not 0 <= c < pw.shape[1]:
            raise UsageError(f"column {c} outside [0, {pw.shape[1]})")
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    masks = sphere_indices(args.n, args.r)
    out.writerow(["sphere_rank", "mask"] + [f"col_{c}" for c in cols])
    for i, mask in enumerate(masks):
        out.writerow([i, int(mask)] + [coeff._fmt(pw[i, c], args.precision) for c in cols])
    _write(buf.getvalue(), args.out)
    return 0


def adjacency_pattern(n):
    """0/1 adjacency pattern in dyadic order."""
    n = check_n(n, oracle.ORACLE_MAX_N)
    perm = dyadic_permutation(n)
    return oracle.build("A", n).entries[np.ix_(perm, perm)].astype(np.uint8)


def cmd_sparsity(args):
    pat = adjacency_pattern(args.n)
    if args.format == "pgm":
        size = pat.shape[0]
        lines = ["P2", f"{size} {size}", "1"]
        lines += [" ".join(str(1 - v) for v in row) for row in pat]
        text = "\n".join(lines) + "\n"
    else:
        text = "\n".join(",".join(map(str, row)) for row in pat) + "\n"
    _write(text, args.out)
    return 0


def cmd_verify(args):
    from .verify import run_verification

    _validate(args)
    if args.n > oracle.ORACLE_MAX_N:
        raise OracleCapError(f"verify refuses n={args.n}: dense oracle cap is {oracle.ORACLE_MAX_N}")
    rep = run_verification(args.n, args.k, _params(args), seed=args.seed)
    _write(rep.to_json(indent=2) + "\n", args.out)
    if not rep.passed:
        failed = ", ".join(c.name for c in rep.checks if not c.passed)
        print(f"verification FAILED: {failed}", file=sys.stderr)
        return 1
    return 0


def cmd_tables(args):
    params = HBDOParams.commuting(3)
    blocks = [("HBDO (n,K,r) = (8,3,2)", coefficient_matrix("hbdo", 8, 3, 2, params))]
    blocks += [(f"P (n,K,r) = (8,3,{r})", coefficient_matrix("p", 8, 3, r)) for r in (1, 2, 3)]
    parts = []
    for title, m in blocks:
        parts.append(f"# {title}\n" + coeff.matrix_to_csv(np.round(coeff.as_table_layout(m), 4), 6))
    _write("\n".join(parts), args.out)
    return 0


def _common(p, r=False):
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=None, help="band/ball radius K (default min(3, n))")
    if r:
        p.add_argument("--r", type=int, default=None)
    p.add_argument("--precision", type=int, default=6, help="significant digits (1-17)")
    p.add_argument("--out", default="-")


def build_parser():
    parser = argparse.ArgumentParser(prog="boolslep", description=__doc__.split("\n")[0] or None)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("coeff-matrix", help="write a coefficient matrix")
    _common(p, r=True)
    p.add_argument("--op", choices=OPS, default="p")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--route", choices=[x.value for x in Route], default="spectral")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--layout", choices=("table", "coeff"), default="table",
                   help="table: band-limit matrices with row k = image of A_+^k W; coeff: d = M c")
    p.set_defaults(func=cmd_coeff_matrix)

    p = sub.add_parser("spectrum", help="eigenspace report of QPQ")
    _common(p)
    p.add_argument("--route", choices=[x.value for x in Route], default="spectral")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eigvecs", help="W, V and HV columns for plotting")
    _common(p, r=True)
    p.add_argument("--delta", type=int, default=0, help="dyadic rank within the sphere of the projected delta")
    p.add_argument("--normalized", action="store_true", help="use H_bar instead of H")
    p.set_defaults(func=cmd_eigvecs)

    p = sub.add_parser("wr-projection", help="columns of the projection onto W_r")
    _common(p, r=True)
    p.add_argument("--columns", type=int, nargs="*")
    p.set_defaults(func=cmd_wr_projection)

    p = sub.add_parser("sparsity", help="adjacency pattern in dyadic order")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("verify", help="structured vs dense verification")
    _common(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="print the n=8, K=3 tables")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", cmd_tables)
    if not hasattr(args, "out"):
        args.out = "-"
    try:
        return func(args)
    except (UsageError, InvalidInputError, OracleCapError) as exc:
        print(f"boolslep: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
