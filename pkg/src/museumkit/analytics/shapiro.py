"""Shapiro-Wilk normality test, Royston's polynomial approximation.

Valid for sample sizes 3..50. The weight vector uses Blom-style normal
scores normalized with the two-coefficient polynomial corrections; the
p-value comes from Royston's transform of W to an approximately standard
normal deviate (with the closed form for n = 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

_ND = NormalDist()

# polynomial corrections for the two largest weights (ascending powers)
_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
# W -> normal deviate transforms
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)       # 4 <= n <= 11, mean
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)     # 4 <= n <= 11, log sd
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)    # n >= 12, mean
_C6 = (-0.4803, -0.082676, 0.0030302)              # n >= 12, log sd
_G = (-2.273, 0.459)                               # gamma for 4 <= n <= 11


class ShapiroError(ValueError):
    """Sample unusable for the test."""


@dataclass(frozen=True)
class SwReport:
    statistic: float  # W in (0, 1]
    df: int           # sample size
    p: float

    def to_dict(self) -> dict:
        return {"statistic": self.statistic, "df": self.df, "p": self.p}


def _poly(coeffs: tuple[float, ...], x: float) -> float:
    return sum(c * x ** i for i, c in enumerate(coeffs))


def _weights(n: int) -> np.ndarray:
    """The full antisymmetric weight vector a[0..n-1]."""
    a = np.zeros(n)
    half = n // 2
    if n == 3:
        a[0] = -math.sqrt(0.5)
        a[2] = math.sqrt(0.5)
        return a
    m = np.array([_ND.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)])
    ssq = float(m @ m)
    rsn = 1.0 / math.sqrt(n)
    a1 = _poly(_C1, rsn) + m[-1] / math.sqrt(ssq)
    if n <= 5:
        fac = math.sqrt((ssq - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * a1 ** 2))
        a[:] = m / fac
        a[-1] = a1
        a[0] = -a1
    else:
        a2 = _poly(_C2, rsn) + m[-2] / math.sqrt(ssq)
        fac = math.sqrt(
            (ssq - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2)
            / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2)
        )
        a[:] = m / fac
        a[-1] = a1
        a[-2] = a2
        a[0] = -a1
        a[1] = -a2
    # enforce exact antisymmetry of the inner weights
    a[:half] = -a[: n - half - 1 : -1][: half]
    if n % 2 == 1:
        a[half] = 0.0
    return a


def _p_value(w: float, n: int) -> float:
    if n == 3:
        pw = (6.0 / math.pi) * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        return min(max(pw, 0.0), 1.0)
    if w >= 1.0:
        return 1.0
    if n <= 11:
        gamma = _poly(_G, float(n))
        if gamma - math.log(1.0 - w) <= 0.0:
            return 0.0
        y = -math.log(gamma - math.log(1.0 - w))
        mean = _poly(_C3, float(n))
        sd = math.exp(_poly(_C4, float(n)))
    else:
        xx = math.log(float(n))
        y = math.log(1.0 - w)
        mean = _poly(_C5, xx)
        sd = math.exp(_poly(_C6, xx))
    z = (y - mean) / sd
    return 1.0 - _ND.cdf(z)


def shapiro_wilk(samples: list[float]) -> SwReport:
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if not 3 <= n <= 50:
        raise ShapiroError(f"sample size must be in 3..50, got {n}")
    ss = float(np.sum((x - x.mean()) ** 2))
    if ss <= 0.0 or x[-1] == x[0]:
        raise ShapiroError("all sample values are equal, variance is degenerate")
    a = _weights(n)
    b = float(a @ x)
    w = min(b * b / ss, 1.0)
    return SwReport(statistic=w, df=n, p=_p_value(w, n))
