"""Error terms Delta_k(x), Delta*(x) and the uniform evaluation handle.

A handle bundles the exact integer step data with the smooth main term so
the moment engine can integrate products of any two error terms through
one interface.  Delta-kind handles carry the per-unit-interval step values
(exact in float64 below 2^53) plus the main-term polynomial, which is what
the exact integration path consumes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .arith_core import DivisorTable, summatory
from .residue_poly import MainTermPoly, eval_main_term

TWO_GAMMA_MINUS_1 = None   # set lazily from the k=2 polynomial


@dataclass
class ErrorTermHandle:
    kind: str                       # delta2/delta3/delta4/delta_star/e/e_star
    domain: tuple                   # (lo, hi) valid x-range
    batch: Callable                 # xs (ndarray) -> values (ndarray)
    prefix: Optional[np.ndarray] = None   # step value on [n, n+1), delta kinds
    coeffs: Optional[np.ndarray] = None   # main-term poly coefficients

    @property
    def is_delta_kind(self):
        return self.prefix is not None

    def value(self, x: float) -> float:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise ValueError(f"x={x} outside handle domain [{lo}, {hi}]")
        return float(self.batch(np.array([x]))[0])

    def value_left(self, x: float) -> float:
        """Left limit at x (only differs from value at the step points)."""
        if self.prefix is None:
            return self.value(x)
        n = int(math.floor(x))
        step = self.prefix[n - 1] if x == n else self.prefix[n]
        u = math.log(x)
        return float(step - x * np.polynomial.polynomial.polyval(u, self.coeffs))


def _poly_main(coeffs, xs):
    return xs * np.polynomial.polynomial.polyval(np.log(xs), coeffs)


def delta_handle(table: DivisorTable, poly: MainTermPoly) -> ErrorTermHandle:
    if table.k != poly.k:
        raise ValueError(f"table k={table.k} but poly k={poly.k}")
    pref = table.prefix_float()
    coeffs = np.asarray(poly.coeffs, np.float64)

    def batch(xs):
        xs = np.asarray(xs, np.float64)
        idx = np.floor(xs).astype(np.int64)
        return pref[idx] - _poly_main(coeffs, xs)

    return ErrorTermHandle(kind=f"delta{table.k}", domain=(1.0, float(table.limit)),
                           batch=batch, prefix=pref, coeffs=coeffs)


def delta_k(table: DivisorTable, poly: MainTermPoly, x: float) -> float:
    """Delta_k(x) = Sigma_{n<=x} d_k(n) - x P_{k-1}(log x)."""
    if table.k != poly.k:
        raise ValueError(f"table k={table.k} but poly k={poly.k}")
    if not 1 <= x <= table.limit:
        raise ValueError(f"x={x} outside [1, {table.limit}]")
    return summatory(table, x) - eval_main_term(poly, x)


def _alternating_prefix(table: DivisorTable) -> np.ndarray:
    """A[m] = sum_{n<=m} (-1)^n d(n), exact int64."""
    signed = table.values.astype(np.int64)
    signed[1::2] *= -1
    out = np.zeros(table.limit + 1, np.int64)
    out[1:] = np.cumsum(signed[1:])
    return out


def delta_star(table: DivisorTable, x: float, gamma: float = 0.5772156649015329) -> float:
    """Delta*(x) = (1/2) Sigma_{n<=4x} (-1)^n d(n) - x (log x + 2 gamma - 1).

    Algebraically identical to -Delta(x) + 2 Delta(2x) - (1/2) Delta(4x);
    the alternating sum is taken exactly in integers and halved at the end.
    """
    if table.k != 2:
        raise ValueError("delta_star needs a k=2 table")
    if x < 1 or 4 * x > table.limit:
        raise ValueError(f"need 4x <= table limit, got x={x}, limit={table.limit}")
    m = int(math.floor(4 * x))
    signed = table.values[1:m + 1].astype(np.int64)
    signed[0::2] *= -1    # slice index i holds n = i+1, so even i means odd n
    alt = int(np.sum(signed))
    return 0.5 * alt - x * (math.log(x) + 2 * gamma - 1)


def delta_star_handle(table: DivisorTable,
                      gamma: float = 0.5772156649015329) -> ErrorTermHandle:
    if table.k != 2:
        raise ValueError("delta_star needs a k=2 table")
    alt = _alternating_prefix(table)

    def batch(xs):
        xs = np.asarray(xs, np.float64)
        idx = np.floor(4.0 * xs).astype(np.int64)
        return 0.5 * alt[idx] - xs * (np.log(xs) + 2 * gamma - 1)

    return ErrorTermHandle(kind="delta_star", domain=(1.0, table.limit / 4.0),
                           batch=batch)


@dataclass(frozen=True)
class SignChangePair:
    t1: float
    t2: float
    v1: float
    v2: float
    window: tuple


def sign_change_scan(handle: ErrorTermHandle, lo: float, hi: float,
                     window_exponent: float, C: float = 1.0,
                     step: float = 0.25):
    """Scan consecutive windows [T, T + C*T^w] for a +point and a -point.

    Returns one entry per window: a SignChangePair when both signs occur on
    the sampling grid inside the window, else None.
    """
    dlo, dhi = handle.domain
    if not (dlo <= lo and hi <= dhi):
        raise ValueError("scan range outside handle domain")
    results = []
    T = lo
    while T < hi:
        w = min(T + C * T ** window_exponent, hi)
        n = max(4, int(math.ceil((w - T) / step)) + 1)
        xs = np.linspace(T, w, n)
        vals = handle.batch(xs)
        imax = int(np.argmax(vals))
        imin = int(np.argmin(vals))
        if vals[imax] > 0 and vals[imin] < 0:
            results.append(SignChangePair(t1=float(xs[imax]), t2=float(xs[imin]),
                                          v1=float(vals[imax]), v2=float(vals[imin]),
                                          window=(T, w)))
        else:
            results.append(None)
        T = w
    return results


def doubled_handle(handle: ErrorTermHandle) -> ErrorTermHandle:
    """Synthetic 2*f handle (bilinearity spot checks)."""
    pref = None if handle.prefix is None else 2.0 * handle.prefix
    coeffs = None if handle.coeffs is None else 2.0 * handle.coeffs
    return ErrorTermHandle(kind=handle.kind, domain=handle.domain,
                           batch=lambda xs: 2.0 * handle.batch(xs),
                           prefix=pref, coeffs=coeffs)
