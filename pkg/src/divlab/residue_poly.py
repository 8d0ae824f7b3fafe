"""Stieltjes constants and the divisor-problem main-term polynomials.

P_{k-1}(log x) is the residue at s = 1 of x^{s-1} zeta^k(s) / s, obtained
here by formal Laurent arithmetic.  Normalization note: stieltjes(j)
returns the classical limit-definition constants

    gamma_j = lim_m [ sum_{n<=m} log^j n / n  -  log^{j+1} m / (j+1) ],

so gamma_1 = -0.0728158... .  The Laurent expansion of zeta about s = 1 is
then  zeta(s) = 1/(s-1) + sum_j (-1)^j gamma_j (s-1)^j / j! .  Texts that
write  zeta(s) = 1/(s-1) + gamma + sum gamma_k (s-1)^k  are using
gamma_k = (-1)^k gamma_k^{classical} / k!, i.e. their gamma_1 is
+0.0728158...; with that sign the closed form
P_2(t) = t^2/2 + (3 gamma - 1) t + (3 gamma^2 - 3 gamma + 3 gamma_1 + 1)
holds verbatim.  The k = 4 polynomial is cross-checked empirically against
the actual summatory function (a wrong constant makes Delta_4 grow
linearly), which pins the normalization down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp


class PrecisionError(Exception):
    pass


MAX_STIELTJES_INDEX = 4
_LAURENT_TERMS = 8


def stieltjes(j: int, precision: float = 1e-12) -> float:
    """gamma_j by Euler-Maclaurin applied to f(x) = log^j x / x.

    sum_{n<=m} f(n) - int_1^m f = f(m)/2 + f(1)/2 + sum_r B_{2r}/(2r)! *
    (f^{(2r-1)}(m) - f^{(2r-1)}(1)) + ...; sending the upper limit to
    infinity in the definition kills nothing but the m-terms, so with a
    modest m and a short Bernoulli tail the limit converges far past
    double precision.
    """
    if not 0 <= j <= MAX_STIELTJES_INDEX:
        raise ValueError(f"stieltjes index {j} outside 0..{MAX_STIELTJES_INDEX}")
    if precision < 1e-30:
        raise PrecisionError("requested precision below working precision")
    with mp.workdps(50):
        m = 200
        f = lambda x: mp.log(x) ** j / x
        s = mp.fsum(f(n) for n in range(1, m + 1))
        s -= mp.log(m) ** (j + 1) / (j + 1)
        s -= f(m) / 2
        for r in range(1, 11):
            d = mp.diff(f, m, 2 * r - 1)
            s -= mp.bernoulli(2 * r) / mp.factorial(2 * r) * d
        return float(s)


@dataclass(frozen=True)
class StieltjesSet:
    gamma_j: tuple   # classical normalization, gamma_j[0] = Euler's constant

    @classmethod
    def compute(cls, J: int = MAX_STIELTJES_INDEX, precision: float = 1e-12):
        return cls(gamma_j=tuple(stieltjes(j, precision) for j in range(J + 1)))


def store_constants(consts: StieltjesSet, path) -> None:
    with open(path, "w") as f:
        for j, g in enumerate(consts.gamma_j):
            f.write(f"gamma_{j}={g:.17g}\n")


def load_constants(path) -> StieltjesSet:
    vals = {}
    with open(path) as f:
        for line in f:
            key, _, sval = line.strip().partition("=")
            vals[key] = float(sval)
    return StieltjesSet(gamma_j=tuple(vals[f"gamma_{j}"] for j in range(len(vals))))


@dataclass(frozen=True)
class MainTermPoly:
    k: int
    coeffs: tuple    # c_0..c_{k-1}: P_{k-1}(t) = sum c_j t^j


def main_term_poly(k: int, consts: StieltjesSet | None = None) -> MainTermPoly:
    """Residue of x^{s-1} zeta^k(s)/s at s=1 as a polynomial in log x.

    With e = s-1:  e*zeta(1+e) = 1 + sum_n (-1)^n gamma_n e^{n+1}/n!,
    so zeta^k(s) x^{s-1}/s = [ (e zeta)^k / (1+e) ] * exp(e L) / e^k and the
    residue is the coefficient of e^{k-1} in the bracketed analytic part
    times exp(e L), read off as a polynomial in L = log x.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"k={k} outside 1..4")
    if consts is None:
        consts = StieltjesSet.compute()
    g = consts.gamma_j
    with mp.workdps(40):
        a = [mp.mpf(1)] + [(-1) ** n * mp.mpf(g[n]) / mp.factorial(n)
                           for n in range(min(len(g), _LAURENT_TERMS - 1))]

        def mul(p, q):
            return [mp.fsum(p[i] * q[m - i] for i in range(m + 1)
                            if i < len(p) and m - i < len(q))
                    for m in range(_LAURENT_TERMS)]

        ser = [mp.mpf(1)]
        for _ in range(k):
            ser = mul(ser, a)
        inv_one_plus_e = [mp.mpf((-1) ** n) for n in range(_LAURENT_TERMS)]
        h = mul(ser, inv_one_plus_e)
        coeffs = tuple(float(h[k - 1 - m] / mp.factorial(m)) for m in range(k))
    return MainTermPoly(k=k, coeffs=coeffs)


def eval_main_term(poly: MainTermPoly, x: float) -> float:
    """x * P_{k-1}(log x), compensated summation over the monomials."""
    if x < 1:
        raise ValueError("x must be >= 1")
    u = math.log(x)
    return x * math.fsum(c * u ** j for j, c in enumerate(poly.coeffs))
