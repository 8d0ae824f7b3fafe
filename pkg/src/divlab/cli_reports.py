"""Command-line front end: cache building, per-theorem experiments, reports.

Exit codes: 0 success, 2 flag errors, 3 domain errors, 4 I/O errors.
Output is deterministic given identical caches and flags.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import arith_core, error_terms, moment_engine, residue_poly, voronoi, zeta_line

CACHE_ENV = "DIVLAB_CACHE_DIR"


def default_cache_dir():
    return os.environ.get(CACHE_ENV, ".divlab_cache")


# ---------------------------------------------------------------------------
# cache helpers

def get_table(k: int, limit: int, cache_dir) -> arith_core.DivisorTable:
    cache = Path(cache_dir)
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / f"d{k}_{limit}.dkt"
    if path.exists():
        t = arith_core.load_table(path)
        if t.k == k and t.limit == limit:
            return t
    t = arith_core.sieve_dk(k, limit)
    arith_core.store_table(t, path)
    return t


def get_ztable(T_max: float, cache_dir) -> zeta_line.CumulativeZetaTable:
    cache = Path(cache_dir)
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / f"zeta_cum_{int(T_max)}.ezt"
    if path.exists():
        t = zeta_line.load_cumulative(path)
        if t.t_max >= T_max:
            return t
    t = zeta_line.build_cumulative(T_max)
    zeta_line.store_cumulative(t, path)
    return t


def _delta_handle(k: int, limit: int, cache_dir):
    table = get_table(k, limit, cache_dir)
    poly = residue_poly.main_term_poly(k)
    return error_terms.delta_handle(table, poly)


# ---------------------------------------------------------------------------
# report emission

def emit_report(rep: moment_engine.MomentReport, fmt: str, path,
                guide_exponents=None) -> None:
    if not rep.samples:
        raise ValueError("empty report")
    if fmt == "csv":
        text = moment_engine.report_to_csv(rep)
    elif fmt == "json":
        text = moment_engine.report_to_json(rep)
    elif fmt == "svg":
        text = _report_svg(rep, guide_exponents or [rep.ref_exponent])
    else:
        raise ValueError(f"unknown format {fmt}")
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _report_svg(rep, guide_exponents, width=640, height=480, margin=60):
    xs = np.log10([s[0] for s in rep.samples])
    ys = np.log10([max(abs(s[1]), 1e-300) for s in rep.samples])
    x0, x1 = xs.min(), xs.max() if xs.max() > xs.min() else xs.min() + 1
    y0, y1 = ys.min(), ys.max() if ys.max() > ys.min() else ys.min() + 1
    pad = 0.05 * max(y1 - y0, 1e-9)
    y0, y1 = y0 - pad, y1 + pad

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width/2:.0f}" y="20" text-anchor="middle" font-size="14">'
        f'{rep.kind} (log10-log10, fitted slope {rep.fitted_exponent:.4f})</text>',
        f'<line x1="{margin}" y1="{height-margin}" x2="{width-margin}" '
        f'y2="{height-margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height-margin}" stroke="black"/>',
    ]
    anchor_y = ys[-1]
    for ge in guide_exponents:
        ya = anchor_y + ge * (x0 - xs[-1])
        yb = anchor_y + ge * (x1 - xs[-1])
        parts.append(
            f'<line class="guide" x1="{px(x0):.2f}" y1="{py(ya):.2f}" '
            f'x2="{px(x1):.2f}" y2="{py(yb):.2f}" stroke="gray" '
            f'stroke-dasharray="6 3"/>')
        parts.append(f'<text x="{px(x1)-4:.2f}" y="{py(yb)-4:.2f}" '
                     f'text-anchor="end" font-size="11" fill="gray">'
                     f'slope {ge:.4g}</text>')
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="4" '
                     f'fill="steelblue"/>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# commands

def _dyadic_xs(xmin, xmax):
    xs = []
    x = int(xmin)
    while x <= xmax:
        xs.append(x)
        x *= 2
    if not xs or xs[-1] != int(xmax):
        xs.append(int(xmax))
    return xs


def cmd_sieve(args):
    get_table(args.k, int(args.limit), args.cache_dir)
    print(f"sieved d_{args.k} to {int(args.limit)}")
    return 0


def cmd_delta(args):
    limit = int(args.limit if args.limit else max(args.x, 1))
    if args.k == 2 and args.star:
        table = get_table(2, 4 * int(math.ceil(args.x)), args.cache_dir)
        print(f"{error_terms.delta_star(table, args.x):.12g}")
        return 0
    table = get_table(args.k, limit, args.cache_dir)
    poly = residue_poly.main_term_poly(args.k)
    print(f"{error_terms.delta_k(table, poly, args.x):.12g}")
    return 0


def cmd_voronoi(args):
    X = args.Xmin
    limit = int(2 * X) + 1
    h = _delta_handle(2, limit, args.cache_dir)
    table = get_table(2, limit, args.cache_dir)
    params = voronoi.make_params(table, args.N)
    val = voronoi.remainder_mean_square(params, h, X)
    bound = 10.0 * X ** 1.5 * args.N ** -0.5 * math.log(X) ** 3
    print(f"X={X:g} N={args.N} int_R2={val:.6g} bound={bound:.6g} "
          f"ok={val <= bound}")
    return 0


_KINDS = {"delta2": 2, "delta3": 3, "delta4": 4}


def cmd_moment(args):
    k = _KINDS[args.kind]
    xs = _dyadic_xs(args.Xmin, args.Xmax) if args.dyadic else [int(args.Xmax)]
    h = _delta_handle(k, int(args.Xmax), args.cache_dir)
    ref = float(moment_engine.REF_EXPONENTS[f"{args.kind}_sq"])
    rep = moment_engine.dyadic_moment_report(h, h, xs, kind=f"{args.kind}_sq",
                                             ref_exponent=ref)
    emit_report(rep, args.out, args.output, guide_exponents=[ref])
    return 0


def _named_handle(name, limit, cache_dir):
    if name in _KINDS:
        return _delta_handle(_KINDS[name], limit, cache_dir)
    if name == "e":
        return zeta_line.e_handle(get_ztable(float(limit), cache_dir))
    if name == "estar":
        ztable = get_ztable(float(limit), cache_dir)
        dtable = get_table(2, int(4 * limit / (2 * math.pi)) + 8, cache_dir)
        return zeta_line.e_star_handle(ztable, dtable)
    raise ValueError(f"unknown error term {name}")


def cmd_correlate(args):
    xs = _dyadic_xs(args.Xmin, args.Xmax) if args.dyadic else [int(args.Xmax)]
    limit = int(args.Xmax)
    f = _named_handle(args.f, limit, args.cache_dir)
    if args.f == args.g:
        g = f
        ref = float(moment_engine.REF_EXPONENTS.get(
            f"{args.f}_sq", moment_engine.REF_EXPONENTS["cross_cs_ceiling"]))
        kind = f"{args.f}_sq"
    else:
        g = _named_handle(args.g, limit, args.cache_dir)
        both_delta = args.f in _KINDS and args.g in _KINDS
        ref = (float(moment_engine.REF_EXPONENTS["cross_cs_ceiling"])
               if both_delta else 1.5)
        kind = f"cross_{args.f}_{args.g}"
    rep = moment_engine.dyadic_moment_report(f, g, xs, kind=kind,
                                             ref_exponent=ref)
    emit_report(rep, args.out, args.output, guide_exponents=[ref])
    return 0


def cmd_zeta(args):
    if args.fourth_moment:
        val = zeta_line.fourth_moment(args.sigma, args.T)
        print(f"sigma={args.sigma:g} T={args.T:g} int_|zeta|^4={val:.10g} "
              f"value/T={val/args.T:.10g}")
        return 0
    z = zeta_line.zeta_eval(args.sigma, args.t)
    print(f"zeta({args.sigma:g}+{args.t:g}i) = {z.real:.12g}{z.imag:+.12g}i")
    return 0


def cmd_estar(args):
    T = args.T
    ztable = get_ztable(T, args.cache_dir)
    dlimit = int(4 * T / (2 * math.pi)) + 8
    dtable = get_table(2, dlimit, args.cache_dir)
    e = zeta_line.e_of_x(ztable, T)
    es = zeta_line.e_star(T, ztable, dtable)
    print(f"T={T:g} E={e:.10g} E*={es:.10g}")
    return 0


def cmd_report(args):
    # one-command reproductions of the headline mean-value experiments
    recipes = {
        "theorem1": ("correlate", ["--f", "delta2", "--g", "delta3"]),
        "theorem2": ("correlate", ["--f", "delta2", "--g", "delta4"]),
        "theorem3": ("correlate", ["--f", "e", "--g", "delta3"]),
        "lemma1": ("voronoi", []),
        "lemma5": ("zeta", ["--fourth-moment"]),
        "eq54": ("correlate", ["--f", "estar", "--g", "estar"]),
    }
    if args.which not in recipes:
        raise ValueError(f"unknown experiment {args.which}")
    sub, extra = recipes[args.which]
    argv = [sub] + extra + args.rest
    return run(argv)


def _build_parser():
    p = argparse.ArgumentParser(prog="divlab")
    p.add_argument("--cache-dir", default=default_cache_dir())
    p.add_argument("--threads", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--limit", type=float, required=True)
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("delta")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--limit", type=float, default=None)
    s.add_argument("--star", action="store_true")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("voronoi")
    s.add_argument("--Xmin", type=float, default=1e4)
    s.add_argument("--N", type=int, default=100)
    s.set_defaults(func=cmd_voronoi)

    s = sub.add_parser("moment")
    s.add_argument("--kind", choices=sorted(_KINDS), required=True)
    s.add_argument("--Xmin", type=float, default=1e3)
    s.add_argument("--Xmax", type=float, required=True)
    s.add_argument("--dyadic", action="store_true")
    s.add_argument("--out", choices=["csv", "json", "svg"], default="csv")
    s.add_argument("--output", default=None)
    s.set_defaults(func=cmd_moment)

    s = sub.add_parser("correlate")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--Xmin", type=float, default=1e3)
    s.add_argument("--Xmax", type=float, required=True)
    s.add_argument("--dyadic", action="store_true")
    s.add_argument("--out", choices=["csv", "json", "svg"], default="csv")
    s.add_argument("--output", default=None)
    s.set_defaults(func=cmd_correlate)

    s = sub.add_parser("zeta")
    s.add_argument("--sigma", type=float, default=0.5)
    s.add_argument("--t", type=float, default=100.0)
    s.add_argument("--T", type=float, default=1e3)
    s.add_argument("--fourth-moment", action="store_true")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("estar")
    s.add_argument("--T", type=float, default=1e3)
    s.set_defaults(func=cmd_estar)

    s = sub.add_parser("report")
    s.add_argument("--which", required=True)
    s.set_defaults(func=cmd_report)
    return p


def run(argv) -> int:
    parser = _build_parser()
    try:
        args, unknown = parser.parse_known_args(argv)
        if unknown and args.command != "report":
            parser.error(f"unrecognized arguments: {' '.join(unknown)}")
        args.rest = unknown   # forwarded to the underlying recipe command
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 4


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
