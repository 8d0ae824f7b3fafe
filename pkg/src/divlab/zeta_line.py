"""zeta(sigma + it), the mean-square error term E(x), and Jutila's E*(t).

Two independent evaluators: Riemann-Siegel on the critical line (main sum
plus up to five correction terms whose coefficient functions are frozen
Chebyshev tables, see _rs_coeffs) and Euler-Maclaurin for general
sigma in [1/2, 1].  E(x) is served from a cumulative quadrature table of
|zeta(1/2+it)|^2; point queries re-evaluate the partial panel rather than
interpolating, bulk queries go through a cubic Hermite interpolant whose
derivative data is the integrand itself.
"""
from __future__ import annotations

import cmath
import math
import struct
from dataclasses import dataclass

import numpy as np

from ._kernels import (_zeta_em, _z_rs, _theta_rs, _zsq_half,
                       _build_cum_kernel, _fourth_moment_kernel,
                       _hermite_eval, _fnv1a64, _gauss01)
from ._rs_coeffs import RS_CHEB
from .arith_core import DivisorTable
from .error_terms import ErrorTermHandle, delta_star, delta_star_handle

EULER_GAMMA = 0.5772156649015329
TWO_PI = 2.0 * math.pi
EZT_MAGIC = b"EZT1"


@dataclass(frozen=True)
class ZetaLineConfig:
    method: str = "auto"           # auto | rs | em
    rs_correction_order: int = 4   # number of correction terms minus one
    rs_min_t: float = 200.0        # RS applicability floor under "auto"
    panel_width: float = 0.125
    gauss_order: int = 8
    t_max_half: float = 1e5        # sigma = 1/2
    t_max_em: float = 2e4          # general sigma (Euler-Maclaurin is O(t))


DEFAULT_CONFIG = ZetaLineConfig()


def zeta_eval(sigma: float, t: float, config: ZetaLineConfig = DEFAULT_CONFIG) -> complex:
    if not 0.5 <= sigma <= 1.0:
        raise ValueError("sigma must lie in [1/2, 1]")
    if t < 0:
        return zeta_eval(sigma, -t, config).conjugate()
    tmax = config.t_max_half if sigma == 0.5 else config.t_max_em
    if t > tmax:
        raise ValueError(f"t={t} beyond configured maximum {tmax}")
    method = config.method
    if method == "auto":
        method = "rs" if (sigma == 0.5 and t >= config.rs_min_t) else "em"
    if method == "rs":
        if sigma != 0.5:
            raise ValueError("Riemann-Siegel path requires sigma = 1/2")
        if t < 10.0:
            raise ValueError("Riemann-Siegel path needs t >= 10")
        z = _z_rs(t, RS_CHEB, config.rs_correction_order)
        th = _theta_rs(t)
        return z * cmath.exp(-1j * th)
    return complex(_zeta_em(sigma, t))


def chi_factor(s: complex) -> complex:
    """chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2) (functional equation)."""
    import mpmath as mp
    with mp.workdps(30):
        v = (mp.power(mp.pi, s - 0.5)
             * mp.exp(mp.loggamma((1 - s) / 2) - mp.loggamma(s / 2)))
        return complex(v)


def zsq_half(t: float, config: ZetaLineConfig = DEFAULT_CONFIG) -> float:
    return float(_zsq_half(t, RS_CHEB, config.rs_correction_order,
                           config.rs_min_t))


# ---------------------------------------------------------------------------
# cumulative table

@dataclass
class CumulativeZetaTable:
    h: float
    cum: np.ndarray    # cum[i] = int_0^{i h} |zeta(1/2+it)|^2 dt
    zsq: np.ndarray    # integrand at the panel boundaries

    @property
    def t_max(self):
        return (len(self.cum) - 1) * self.h


def build_cumulative(T_max: float, config: ZetaLineConfig = DEFAULT_CONFIG) -> CumulativeZetaTable:
    if T_max > config.t_max_half:
        raise ValueError(f"T_max={T_max} beyond configured maximum")
    # the adaptive width rule min(0.25, pi/(2 log(t/2pi + 2))) stays above
    # 0.125 for all t <= 1.9e6, so a uniform grid at panel_width satisfies it
    rule_floor = math.pi / (2.0 * math.log(T_max / TWO_PI + 2.0))
    h = min(config.panel_width, 0.25, rule_floor)
    n_panels = int(math.ceil(T_max / h))
    gx, gw = _gauss01(config.gauss_order)
    cum, zsq = _build_cum_kernel(n_panels, h, gx, gw, RS_CHEB,
                                 config.rs_correction_order, config.rs_min_t)
    return CumulativeZetaTable(h=h, cum=cum, zsq=zsq)


def store_cumulative(table: CumulativeZetaTable, path) -> None:
    header = struct.pack("<qd", len(table.cum), table.h)
    payload = (header + np.ascontiguousarray(table.cum).tobytes()
               + np.ascontiguousarray(table.zsq).tobytes())
    checksum = int(_fnv1a64(np.frombuffer(payload, np.uint8)))
    with open(path, "wb") as f:
        f.write(EZT_MAGIC)
        f.write(payload)
        f.write(struct.pack("<Q", checksum))


def load_cumulative(path) -> CumulativeZetaTable:
    from .arith_core import FormatError
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < 4 + 16 + 8 or blob[:4] != EZT_MAGIC:
        raise FormatError("bad magic or truncated file")
    payload, (checksum,) = blob[4:-8], struct.unpack("<Q", blob[-8:])
    if int(_fnv1a64(np.frombuffer(payload, np.uint8))) != checksum:
        raise FormatError("checksum mismatch")
    n, h = struct.unpack("<qd", payload[:16])
    if len(payload) != 16 + 16 * n:
        raise FormatError("payload length mismatch")
    cum = np.frombuffer(payload, np.float64, n, offset=16).copy()
    zsq = np.frombuffer(payload, np.float64, n, offset=16 + 8 * n).copy()
    return CumulativeZetaTable(h=h, cum=cum, zsq=zsq)


# ---------------------------------------------------------------------------
# E(x) and E*(t)

def _main_term(x):
    return x * (np.log(x / TWO_PI) + 2.0 * EULER_GAMMA - 1.0)


def e_of_x(table: CumulativeZetaTable, x: float,
           config: ZetaLineConfig = DEFAULT_CONFIG) -> float:
    """E(x): cumulative value with the partial panel re-evaluated by GL-8."""
    if x == 0:
        return 0.0
    if not 0 < x <= table.t_max:
        raise ValueError(f"x={x} outside table range (0, {table.t_max}]")
    i = int(x / table.h)
    lo = i * table.h
    integral = float(table.cum[i])
    if x > lo:
        gx, gw = _gauss01(config.gauss_order)
        w = x - lo
        integral += w * sum(
            gw[q] * zsq_half(lo + w * gx[q], config) for q in range(len(gx)))
    return integral - float(_main_term(x))


def e_handle(table: CumulativeZetaTable) -> ErrorTermHandle:
    """Bulk E(x) evaluation via cubic Hermite on the table grid.

    Grid values are exact partial integrals; grid derivatives are
    |zeta|^2 - d/dx main = zsq - log(x/2pi) - 2 gamma, so the interpolant
    matches both value and slope at every boundary.
    """
    h = table.h
    ts = np.arange(len(table.cum)) * h
    vals = table.cum.copy()
    vals[1:] -= _main_term(ts[1:])
    derivs = table.zsq - np.log(np.maximum(ts, h * 1e-6) / TWO_PI) - 2.0 * EULER_GAMMA
    derivs[0] = 0.0   # true slope is +inf at 0; the panel-0 error is O(h)

    def batch(xs):
        xs = np.asarray(xs, np.float64)
        out = np.empty_like(xs)
        _hermite_eval(xs, h, vals, derivs, out)
        return out

    return ErrorTermHandle(kind="e", domain=(0.0, table.t_max), batch=batch)


def e_star(t: float, table: CumulativeZetaTable, dtable: DivisorTable,
           config: ZetaLineConfig = DEFAULT_CONFIG) -> float:
    """E*(t) = E(t) - 2 pi Delta*(t / 2 pi)."""
    return e_of_x(table, t, config) - TWO_PI * delta_star(dtable, t / TWO_PI)


def e_star_handle(table: CumulativeZetaTable, dtable: DivisorTable) -> ErrorTermHandle:
    eh = e_handle(table)
    dsh = delta_star_handle(dtable)
    lo = TWO_PI * dsh.domain[0]
    hi = min(table.t_max, TWO_PI * dsh.domain[1])

    def batch(ts):
        ts = np.asarray(ts, np.float64)
        return eh.batch(ts) - TWO_PI * dsh.batch(ts / TWO_PI)

    return ErrorTermHandle(kind="e_star", domain=(lo, hi), batch=batch)


# ---------------------------------------------------------------------------
# fourth moment off the half line

def fourth_moment(sigma: float, T: float,
                  config: ZetaLineConfig = DEFAULT_CONFIG) -> float:
    """int_1^T |zeta(sigma+it)|^4 dt, composite GL-8 on 0.25-wide panels."""
    if not 0.5 < sigma <= 1.0:
        raise ValueError("sigma must lie in (1/2, 1]")
    if T > config.t_max_em:
        raise ValueError(f"T={T} beyond configured Euler-Maclaurin maximum")
    if T <= 1.0:
        return 0.0
    gx, gw = _gauss01(config.gauss_order)
    ppu = max(1, int(round(1.0 / min(0.25, config.panel_width * 2))))
    return float(_fourth_moment_kernel(sigma, float(T), ppu, gx, gw))
