"""Mean squares, cross-correlations, series constants, exponent fits.

Delta-kind integrands are a (exact integer step) minus (smooth main term);
expanding the square in closed form loses ~16 digits to cancellation at
x ~ 1e7 (the cross terms are ~x^2 log^6 x while the result is ~x^{2/3}),
so the production path evaluates the small difference first and applies
GL-8 per unit interval, which integrates the smooth factor to ~1e-14
relative -- effectively exact.  The closed-form antiderivative recurrence
is kept as poly_log_integral and doubles as the oracle for the quadrature.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._kernels import _cross_delta_gl, _cross_delta_partial, _GX8, _GW8
from .error_terms import ErrorTermHandle

# reference exponents appearing in the comparison bounds
REF_EXPONENTS = {
    "delta2_sq": Fraction(3, 2),
    "delta3_sq": Fraction(5, 3),
    "delta4_sq": Fraction(7, 4),
    "cross_23_proven": Fraction(13, 9),
    "cross_cs_ceiling": Fraction(19, 12),
    "cross_upper": Fraction(25, 16),
    "delta4_slope_cap": Fraction(13, 8),
    "estar_sq": Fraction(4, 3),
    "e_sq": Fraction(3, 2),
}


def poly_log_integral(a: int, j: int, lo: float, hi: float) -> float:
    """int_lo^hi x^a log^j x dx by the standard recurrence."""
    if a < 0 or j < 0:
        raise ValueError("powers must be nonnegative")
    if not 0 < lo <= hi:
        raise ValueError("need 0 < lo <= hi")
    if j == 0:
        return (hi ** (a + 1) - lo ** (a + 1)) / (a + 1)
    head = (hi ** (a + 1) * math.log(hi) ** j
            - lo ** (a + 1) * math.log(lo) ** j) / (a + 1)
    return head - j / (a + 1) * poly_log_integral(a, j - 1, lo, hi)


# ---------------------------------------------------------------------------
# integration paths

def _exact_cross(f: ErrorTermHandle, g: ErrorTermHandle, X: float,
                 snaps=None) -> float | np.ndarray:
    """Delta-kind x Delta-kind over [1, X]; optional cumulative snapshots."""
    n1 = int(math.floor(X))
    if snaps is None:
        snap_arr = np.array([n1], np.int64)
    else:
        snap_arr = np.asarray(snaps, np.int64)
    out = np.zeros(len(snap_arr), np.float64)
    _cross_delta_gl(f.prefix, f.coeffs, g.prefix, g.coeffs, 1, n1,
                    _GX8, _GW8, snap_arr, out)
    if snaps is not None:
        return out
    total = out[-1]
    if X > n1:
        total += _cross_delta_partial(f.prefix[n1], f.coeffs,
                                      g.prefix[n1], g.coeffs,
                                      float(n1), X, _GX8, _GW8)
    return float(total)


def _grid_quad(f: ErrorTermHandle, g: ErrorTermHandle, lo: float, X: float,
               panel: float = 0.25, order: int = 4) -> float:
    """Composite GL on panels aligned to integers, both factors by batch."""
    gx, gw = np.polynomial.legendre.leggauss(order)
    gx = 0.5 * (gx + 1.0)
    gw = 0.5 * gw
    edges = np.arange(lo, X + 1e-9, panel)
    if edges[-1] < X:
        edges = np.append(edges, X)
    los, his = edges[:-1], edges[1:]
    widths = his - los
    xs = (los[:, None] + widths[:, None] * gx[None, :]).ravel()
    vals = f.batch(xs) * g.batch(xs)
    vals = vals.reshape(len(los), order)
    return float(np.sum(vals @ gw * widths))


def mean_square(handle: ErrorTermHandle, X: float) -> float:
    """int_1^X h(x)^2 dx (E-kinds integrate from the domain floor)."""
    return cross_moment(handle, handle, X)


def cross_moment(f: ErrorTermHandle, g: ErrorTermHandle, X: float) -> float:
    lo = max(f.domain[0], g.domain[0])
    if X > min(f.domain[1], g.domain[1]) or X < lo:
        raise ValueError(f"X={X} outside common domain")
    if X <= 1.0:
        return 0.0
    if f.is_delta_kind and g.is_delta_kind:
        return _exact_cross(f, g, X)
    if f.is_delta_kind or g.is_delta_kind:
        lo = max(lo, 1.0)
    return _grid_quad(f, g, lo, X)


def cross_moment_dyadic(f: ErrorTermHandle, g: ErrorTermHandle, Xs) -> np.ndarray:
    """Cumulative int_1^{X} f g at several X in a single pass (delta kinds)."""
    Xs = np.asarray(Xs, np.int64)
    if not (f.is_delta_kind and g.is_delta_kind):
        return np.array([cross_moment(f, g, float(X)) for X in Xs])
    return _exact_cross(f, g, float(Xs[-1]), snaps=Xs)


def cs_bound(f: ErrorTermHandle, g: ErrorTermHandle, X: float) -> float:
    return math.sqrt(mean_square(f, X) * mean_square(g, X))


# ---------------------------------------------------------------------------
# series constants

@dataclass(frozen=True)
class SeriesConstant:
    k: int
    value: float
    method: str
    tail_bound: float = 0.0


def series_constant_A(k: int, precision: float = 1e-10, method: str = "auto",
                      table=None, direct_limit: int = 10 ** 7) -> SeriesConstant:
    """A_2 = (6 pi^2)^-1 sum d^2(n) n^-3/2,  A_3 = (10 pi^2)^-1 sum d_3^2(n) n^-4/3.

    k=2 uses the identity sum d^2(n) n^-s = zeta^4(s)/zeta(2s); k=3 defaults
    to direct summation with a tail estimate from the last octave (the
    series converges like N^-1/3 log^8 N, so the reported tail is large and
    honest).  method="euler" evaluates the k=3 Euler product instead, which
    gives the true limit.
    """
    import mpmath as mp
    if k == 2:
        if method in ("auto", "zeta-identity"):
            with mp.workdps(30):
                v = mp.zeta(mp.mpf(3) / 2) ** 4 / mp.zeta(3) / (6 * mp.pi ** 2)
            return SeriesConstant(k=2, value=float(v), method="zeta-identity")
        if method == "direct":
            d = _need_values(table, 2, direct_limit)
            n = np.arange(1, len(d), dtype=np.float64)
            s = float(np.sum(d[1:] ** 2 * n ** -1.5))
            tail = s - float(np.sum(d[1:len(d) // 2 + 1] ** 2
                                    * n[:len(d) // 2] ** -1.5))
            return SeriesConstant(k=2, value=s / (6 * math.pi ** 2),
                                  method="direct",
                                  tail_bound=tail / (math.sqrt(2) - 1)
                                  / (6 * math.pi ** 2))
        raise ValueError(f"unknown method {method}")
    if k == 3:
        if method == "euler":
            with mp.workdps(30):
                import sympy
                u_pow = mp.mpf(4) / 3
                prod = mp.zeta(u_pow) ** 9
                for p in sympy.primerange(2, 10 ** 5):
                    u = mp.mpf(p) ** (-u_pow)
                    s = mp.mpf(0)
                    ue = mp.mpf(1)
                    for e in range(0, 200):
                        term = (mp.mpf((e + 1) * (e + 2)) / 2) ** 2 * ue
                        s += term
                        ue *= u
                        if term < mp.mpf(10) ** -35 and e > 3:
                            break
                    prod *= (1 - u) ** 9 * s
            return SeriesConstant(k=3, value=float(prod) / (10 * math.pi ** 2),
                                  method="euler")
        d = _need_values(table, 3, direct_limit)
        n = np.arange(1, len(d), dtype=np.float64)
        terms = d[1:] ** 2 * n ** (-4.0 / 3.0)
        s = float(np.sum(terms))
        s_oct = float(np.sum(terms[len(terms) // 2:]))
        tail = s_oct / (2 ** (1.0 / 3.0) - 1.0)   # c(x) x^-4/3 local model
        return SeriesConstant(k=3, value=s / (10 * math.pi ** 2),
                              method="direct",
                              tail_bound=tail / (10 * math.pi ** 2))
    raise ValueError("k must be 2 or 3")


def _need_values(table, k, limit):
    if table is not None:
        if table.k != k:
            raise ValueError(f"need a k={k} table")
        return table.values.astype(np.float64)
    from .arith_core import sieve_dk
    return sieve_dk(k, limit).values.astype(np.float64)


# ---------------------------------------------------------------------------
# exponent fitting

def fit_exponent(samples):
    """Least squares on (log X, log |value|); zero values are excluded.

    Returns (slope, intercept, stderr_of_slope).
    """
    xs = np.array([s[0] for s in samples], np.float64)
    vs = np.array([s[1] for s in samples], np.float64)
    if np.any(np.diff(xs) <= 0):
        raise ValueError("X must be strictly increasing")
    keep = vs != 0
    xs, vs = xs[keep], np.abs(vs[keep])
    if len(xs) < 4:
        raise ValueError("fewer than 4 usable samples")
    lx, lv = np.log(xs), np.log(vs)
    A = np.vstack([lx, np.ones_like(lx)]).T
    coef, res, *_ = np.linalg.lstsq(A, lv, rcond=None)
    slope, intercept = coef
    dof = len(lx) - 2
    if dof > 0 and len(res):
        s2 = res[0] / dof
        stderr = math.sqrt(s2 / np.sum((lx - lx.mean()) ** 2))
    else:
        stderr = 0.0
    return float(slope), float(intercept), float(stderr)


# ---------------------------------------------------------------------------
# reports

@dataclass
class MomentReport:
    kind: str
    ref_exponent: float
    samples: list = field(default_factory=list)  # (X, value, normalized, bound)
    fitted_exponent: float = float("nan")
    fit_stderr: float = float("nan")

    def finish_fit(self):
        try:
            slope, _, stderr = fit_exponent([(s[0], s[1]) for s in self.samples])
        except ValueError:
            return self    # fewer than 4 usable points: no fit, NaN stands
        self.fitted_exponent = slope
        self.fit_stderr = stderr
        return self


def dyadic_moment_report(f: ErrorTermHandle, g: ErrorTermHandle, Xs,
                         kind: str, ref_exponent: float,
                         with_bounds: bool = True) -> MomentReport:
    rep = MomentReport(kind=kind, ref_exponent=float(ref_exponent))
    vals = cross_moment_dyadic(f, g, Xs)
    for X, v in zip(Xs, vals):
        bound = cs_bound(f, g, float(X)) if (with_bounds and f is not g) else 0.0
        rep.samples.append((float(X), float(v), float(v) / float(X) ** rep.ref_exponent,
                            float(bound)))
    return rep.finish_fit()


def report_to_csv(rep: MomentReport) -> str:
    lines = ["X,value,normalized,bound,ratio"]
    for X, v, nv, b in rep.samples:
        ratio = abs(v) / b if b else 0.0
        lines.append(f"{X:.17g},{v:.17g},{nv:.17g},{b:.17g},{ratio:.17g}")
    lines.append(f"# kind={rep.kind} ref_exponent={rep.ref_exponent:.17g} "
                 f"fitted_exponent={rep.fitted_exponent:.17g} "
                 f"fit_stderr={rep.fit_stderr:.17g}")
    return "\n".join(lines) + "\n"


def report_from_csv(text: str) -> MomentReport:
    lines = [ln for ln in text.strip().splitlines() if ln]
    meta = {}
    for tok in lines[-1].lstrip("# ").split():
        key, _, sval = tok.partition("=")
        meta[key] = sval
    rep = MomentReport(kind=meta["kind"], ref_exponent=float(meta["ref_exponent"]),
                       fitted_exponent=float(meta["fitted_exponent"]),
                       fit_stderr=float(meta["fit_stderr"]))
    for ln in lines[1:-1]:
        X, v, nv, b, _ = (float(t) for t in ln.split(","))
        rep.samples.append((X, v, nv, b))
    return rep


def report_to_json(rep: MomentReport) -> str:
    return json.dumps({
        "kind": rep.kind,
        "ref_exponent": rep.ref_exponent,
        "fitted_exponent": rep.fitted_exponent,
        "fit_stderr": rep.fit_stderr,
        "samples": [{"X": X, "value": v, "normalized": nv, "bound": b}
                    for X, v, nv, b in rep.samples],
    }, indent=2, sort_keys=True)


def report_from_json(text: str) -> MomentReport:
    obj = json.loads(text)
    rep = MomentReport(kind=obj["kind"], ref_exponent=obj["ref_exponent"],
                       fitted_exponent=obj["fitted_exponent"],
                       fit_stderr=obj["fit_stderr"])
    rep.samples = [(s["X"], s["value"], s["normalized"], s["bound"])
                   for s in obj["samples"]]
    return rep
