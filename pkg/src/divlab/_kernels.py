"""Shared numba kernels: sieves, checksums, quadrature inner loops.

Everything here is deliberately free of Python object types so the whole
module compiles ahead of first use.  Public modules wrap these with the
argument checking / dataclasses.
"""
import math
import cmath

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# sieve

@njit(cache=True)
def _unit_convolve(vals):
    """out[m] = sum_{d | m} vals[d]  (Dirichlet convolution with the unit)."""
    n = vals.shape[0] - 1
    out = np.zeros(n + 1, np.int32)
    for d in range(1, n + 1):
        vd = vals[d]
        for m in range(d, n + 1, d):
            out[m] += vd
    return out


@njit(cache=True)
def _fnv1a64(buf):
    h = np.uint64(0xcbf29ce484222325)
    prime = np.uint64(0x100000001b3)
    for i in range(buf.shape[0]):
        h = np.uint64(h ^ np.uint64(buf[i]))
        h = np.uint64(h * prime)
    return h


# ---------------------------------------------------------------------------
# Gauss-Legendre nodes (on [0,1]) -- computed once at import

def _gauss01(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w

_GX8, _GW8 = _gauss01(8)
_GX16, _GW16 = _gauss01(16)


# ---------------------------------------------------------------------------
# exact-step x smooth-main-term moment integration
#
# On [n, n+1) the integrand is (F[n] - x*polyF(log x)) * (G[n] - x*polyG(log x)).
# The difference is evaluated first (it is ~x^{1/3}-sized while the two parts
# are ~x log^3 x sized), so there is no cancellation blow-up, and GL-8 on a
# unit interval integrates the smooth factor to ~1e-14 relative.

@njit(cache=True)
def _poly_eval(c, u):
    s = 0.0
    for j in range(c.shape[0] - 1, -1, -1):
        s = s * u + c[j]
    return s


@njit(cache=True)
def _cross_delta_gl(prefF, cF, prefG, cG, n0, n1, gx, gw, snaps, out):
    """Cumulative integral of the product over [n0, n1), snapshotting.

    prefF[n] is the exact step value on [n, n+1) (float64, exact below 2^53).
    snaps must be sorted ints with snaps[-1] == n1; out gets the cumulative
    integral from n0 up to each snapshot.  Kahan-compensated accumulation.
    """
    acc = 0.0
    comp = 0.0
    si = 0
    for n in range(n0, n1):
        fF = prefF[n]
        fG = prefG[n]
        val = 0.0
        for q in range(gx.shape[0]):
            x = n + gx[q]
            u = math.log(x)
            dF = fF - x * _poly_eval(cF, u)
            dG = fG - x * _poly_eval(cG, u)
            val += gw[q] * dF * dG
        y = val - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        while si < snaps.shape[0] and n + 1 >= snaps[si]:
            out[si] = acc
            si += 1
    while si < snaps.shape[0]:
        out[si] = acc
        si += 1
    return acc


@njit(cache=True)
def _cross_delta_partial(fF, cF, fG, cG, lo, hi, gx, gw):
    """Same integrand over a partial interval [lo, hi) with fixed step values."""
    w = hi - lo
    val = 0.0
    for q in range(gx.shape[0]):
        x = lo + w * gx[q]
        u = math.log(x)
        val += gw[q] * (fF - x * _poly_eval(cF, u)) * (fG - x * _poly_eval(cG, u))
    return val * w


# ---------------------------------------------------------------------------
# truncated Voronoi cosine sum

_SQRT2PI_INV = 1.0 / (math.pi * math.sqrt(2.0))


@njit(cache=True)
def _voronoi_sum_scalar(wts, n_trunc, x):
    s = 0.0
    comp = 0.0
    fourpi = 4.0 * math.pi
    for n in range(1, n_trunc + 1):
        term = wts[n] * math.cos(fourpi * math.sqrt(n * x) - 0.25 * math.pi)
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return _SQRT2PI_INV * x ** 0.25 * s


@njit(cache=True)
def _voronoi_sq_remainder(wts, n_trunc, pref, c2, X0, X1, panels_per_unit,
                          gx, gw):
    """integral over [X0, X1) of (Delta(x) - voronoi_sum(x))^2.

    Panels never straddle integers: each unit interval is cut into
    panels_per_unit equal GL panels.
    """
    acc = 0.0
    comp = 0.0
    h = 1.0 / panels_per_unit
    for n in range(X0, X1):
        fD = pref[n]
        for j in range(panels_per_unit):
            lo = n + j * h
            val = 0.0
            for q in range(gx.shape[0]):
                x = lo + h * gx[q]
                u = math.log(x)
                delta = fD - x * _poly_eval(c2, u)
                r = delta - _voronoi_sum_scalar(wts, n_trunc, x)
                val += gw[q] * r * r
            y = val * h - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
    return acc


# ---------------------------------------------------------------------------
# zeta on and off the critical line

_BERN = np.array([1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0])
_FACT2K = np.array([2.0, 24.0, 720.0, 40320.0])     # (2k)!


@njit(cache=True)
def _zeta_em(sigma, t):
    """Euler-Maclaurin zeta, N = max(10, 2|t|) terms, 4 Bernoulli corrections."""
    s = complex(sigma, t)
    N = max(10, int(2.0 * abs(t)))
    tot = 0.0 + 0.0j
    for n in range(1, N):
        tot += cmath.exp(-s * math.log(n))
    NmS = cmath.exp(-s * math.log(N))
    tot += NmS * N / (s - 1.0)
    tot += 0.5 * NmS
    pr = 1.0 + 0.0j
    j = 0
    for k in range(1, 5):
        while j <= 2 * k - 2:
            pr = pr * (s + j)
            j += 1
        tot += (_BERN[k - 1] / _FACT2K[k - 1]) * pr * NmS * N ** float(1 - 2 * k)
    return tot


@njit(cache=True)
def _theta_rs(t):
    return (t / 2.0 * math.log(t / (2.0 * math.pi)) - t / 2.0 - math.pi / 8.0
            + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3))


@njit(cache=True)
def _cheb_clenshaw(c, u):
    b1 = 0.0
    b2 = 0.0
    for j in range(c.shape[0] - 1, 0, -1):
        b1, b2 = 2.0 * u * b1 - b2 + c[j], b1
    return u * b1 - b2 + c[0]


@njit(cache=True)
def _z_rs(t, rs_cheb, order):
    """Riemann-Siegel Z(t) with `order`+1 correction terms (0 <= order <= 4)."""
    tau = math.sqrt(t / (2.0 * math.pi))
    M = int(tau)
    th = _theta_rs(t)
    s = 0.0
    for n in range(1, M + 1):
        s += math.cos(th - t * math.log(n)) / math.sqrt(n)
    s *= 2.0
    p = tau - M
    u = 2.0 * p - 1.0
    corr = 0.0
    tk = tau ** (-0.5)
    for k in range(order + 1):
        corr += _cheb_clenshaw(rs_cheb[k], u) * tk
        tk /= tau
    return s + (-1.0) ** (M - 1) * corr


@njit(cache=True)
def _zsq_half(t, rs_cheb, order, rs_min_t):
    """|zeta(1/2+it)|^2 via whichever method applies at this height."""
    if t < 1e-12:
        z = _zeta_em(0.5, 0.0)
        return abs(z) ** 2
    if t >= rs_min_t:
        z = _z_rs(t, rs_cheb, order)
        return z * z
    z = _zeta_em(0.5, t)
    return abs(z) ** 2


@njit(cache=True)
def _build_cum_kernel(n_panels, h, gx, gw, rs_cheb, order, rs_min_t):
    """Cumulative integral of |zeta(1/2+it)|^2 on the uniform panel grid.

    Returns (cum, zsq): cum[i] = integral over [0, i*h]; zsq[i] = integrand
    at the boundary t = i*h (kept for interpolation downstream).
    """
    cum = np.empty(n_panels + 1, np.float64)
    zsq = np.empty(n_panels + 1, np.float64)
    cum[0] = 0.0
    zsq[0] = _zsq_half(0.0, rs_cheb, order, rs_min_t)
    acc = 0.0
    comp = 0.0
    for i in range(n_panels):
        lo = i * h
        val = 0.0
        for q in range(gx.shape[0]):
            val += gw[q] * _zsq_half(lo + h * gx[q], rs_cheb, order, rs_min_t)
        y = val * h - comp
        tt = acc + y
        comp = (tt - acc) - y
        acc = tt
        cum[i + 1] = acc
        zsq[i + 1] = _zsq_half((i + 1) * h, rs_cheb, order, rs_min_t)
    return cum, zsq


@njit(cache=True)
def _fourth_moment_kernel(sigma, T, panels_per_unit, gx, gw):
    """integral over [1, T] of |zeta(sigma+it)|^4, Euler-Maclaurin integrand."""
    acc = 0.0
    comp = 0.0
    h = 1.0 / panels_per_unit
    n_panels = int(round((T - 1.0) * panels_per_unit))
    for i in range(n_panels):
        lo = 1.0 + i * h
        val = 0.0
        for q in range(gx.shape[0]):
            z = _zeta_em(sigma, lo + h * gx[q])
            a = abs(z)
            val += gw[q] * a * a * a * a
        y = val * h - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc


# ---------------------------------------------------------------------------
# cubic Hermite interpolation on a uniform grid (used for bulk E(x) values)

@njit(cache=True)
def _hermite_eval(xs, h, vals, derivs, out):
    n = vals.shape[0]
    for i in range(xs.shape[0]):
        x = xs[i]
        j = int(x / h)
        if j >= n - 1:
            j = n - 2
        u = x / h - j
        u2 = u * u
        u3 = u2 * u
        h00 = 2.0 * u3 - 3.0 * u2 + 1.0
        h10 = u3 - 2.0 * u2 + u
        h01 = -2.0 * u3 + 3.0 * u2
        h11 = u3 - u2
        out[i] = (h00 * vals[j] + h01 * vals[j + 1]
                  + h * (h10 * derivs[j] + h11 * derivs[j + 1]))
