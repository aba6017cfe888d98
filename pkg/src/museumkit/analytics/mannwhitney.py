"""Two-sided Mann-Whitney U test with midranks and tie correction.

U = min(U1, U2) with U_i = rank_sum_i - n_i(n_i+1)/2 and W = the smaller
rank sum. The normal approximation uses the tie-corrected variance

    sigma^2 = (n1*n2/12) * [(N+1) - sum(t^3 - t) / (N*(N-1))]

over tie-group sizes t. The exact two-sided p enumerates every labeling
when C(N, n1) is small enough, otherwise draws seeded Monte Carlo
relabelings.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from statistics import NormalDist
from typing import Iterable, Optional, Union

import numpy as np

EXACT_ENUMERATION_LIMIT = 10 ** 6  # max C(N, n1) for full enumeration
DEFAULT_MC_DRAWS = 200_000

_ND = NormalDist()


class MwuError(ValueError):
    """Unusable comparison input."""


@dataclass(frozen=True)
class MwuReport:
    n1: int
    n2: int
    mean_rank_1: float
    mean_rank_2: float
    rank_sum_1: float
    rank_sum_2: float
    U: float
    W: float
    Z: float
    p_asymptotic: float
    p_exact: Optional[float]
    exact_method: str  # "FullEnumeration", "MonteCarlo", or "None"
    mc_draws: Optional[int] = None
    mc_seed: Optional[int] = None

    def to_dict(self) -> dict:
        d = {
            "n1": self.n1,
            "n2": self.n2,
            "mean_rank_1": self.mean_rank_1,
            "mean_rank_2": self.mean_rank_2,
            "rank_sum_1": self.rank_sum_1,
            "rank_sum_2": self.rank_sum_2,
            "U": self.U,
            "W": self.W,
            "Z": self.Z,
            "p_asymptotic": self.p_asymptotic,
            "p_exact": self.p_exact,
            "exact_method": self.exact_method,
        }
        if self.exact_method == "MonteCarlo":
            d["mc_draws"] = self.mc_draws
            d["mc_seed"] = self.mc_seed
        return d

    def rendered(self) -> dict:
        """Report-precision view: U and W to 3 dp, mean ranks to 2 dp,
        Z to 3 dp, rounding halves away from zero."""
        return {
            "n1": self.n1,
            "n2": self.n2,
            "mean_rank_1": _round_half_up(self.mean_rank_1, 2),
            "mean_rank_2": _round_half_up(self.mean_rank_2, 2),
            "rank_sum_1": _round_half_up(self.rank_sum_1, 3),
            "rank_sum_2": _round_half_up(self.rank_sum_2, 3),
            "U": _round_half_up(self.U, 3),
            "W": _round_half_up(self.W, 3),
            "Z": _round_half_up(self.Z, 3),
        }


def _round_half_up(value: float, places: int) -> float:
    from decimal import Decimal, ROUND_HALF_UP

    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def midranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..N with ties replaced by the mean of their rank block."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _tie_term(values: np.ndarray) -> float:
    _, counts = np.unique(values, return_counts=True)
    return float(np.sum(counts.astype(float) ** 3 - counts))


def _two_sided_exact(pooled: np.ndarray, n1: int, r1: float,
                     draws: int, seed: int) -> tuple[float, str, Optional[int]]:
    """P that a random size-n1 subset has a rank sum at least as extreme
    (in either tail) as r1."""
    ranks = midranks(pooled)
    n = len(pooled)
    total = math.comb(n, n1)
    eps = 1e-9
    if total <= EXACT_ENUMERATION_LIMIT:
        lo = hi = 0
        for subset in combinations(range(n), n1):
            s = ranks[list(subset)].sum()
            lo += s <= r1 + eps
            hi += s >= r1 - eps
        p = 2.0 * min(lo, hi) / total
        return min(p, 1.0), "FullEnumeration", None
    rng = np.random.default_rng(seed)
    lo = hi = 0
    idx = np.arange(n)
    for _ in range(draws):
        pick = rng.choice(idx, size=n1, replace=False)
        s = ranks[pick].sum()
        lo += s <= r1 + eps
        hi += s >= r1 - eps
    p = 2.0 * min(lo, hi) / draws
    return min(p, 1.0), "MonteCarlo", draws


def mann_whitney_u(group1: list[float], group2: list[float],
                   exact: str = "auto", seed: int = 42,
                   mc_draws: int = DEFAULT_MC_DRAWS) -> MwuReport:
    """``exact`` is one of "auto" (enumerate or Monte Carlo), "never"."""
    if not group1 or not group2:
        raise MwuError("both groups must be non-empty")
    if exact not in ("auto", "never"):
        raise MwuError(f"exact must be 'auto' or 'never', got {exact!r}")
    g1 = np.asarray(group1, dtype=float)
    g2 = np.asarray(group2, dtype=float)
    n1, n2 = len(g1), len(g2)
    n = n1 + n2
    pooled = np.concatenate([g1, g2])
    ranks = midranks(pooled)
    r1 = float(ranks[:n1].sum())
    r2 = float(ranks[n1:].sum())
    u1 = r1 - n1 * (n1 + 1) / 2.0
    u2 = r2 - n2 * (n2 + 1) / 2.0
    u = min(u1, u2)
    w = min(r1, r2)

    mu = n1 * n2 / 2.0
    tie = _tie_term(pooled)
    var = (n1 * n2 / 12.0) * ((n + 1) - tie / (n * (n - 1))) if n > 1 else 0.0
    if var <= 0.0:
        raise MwuError("all pooled values are equal, variance is degenerate")
    z = (u - mu) / math.sqrt(var)
    p_asym = min(2.0 * _ND.cdf(-abs(z)), 1.0)

    if exact == "never":
        return MwuReport(n1, n2, r1 / n1, r2 / n2, r1, r2, u, w, z, p_asym,
                         p_exact=None, exact_method="None")
    p_exact, method, draws = _two_sided_exact(pooled, n1, r1, mc_draws, seed)
    return MwuReport(n1, n2, r1 / n1, r2 / n2, r1, r2, u, w, z, p_asym,
                     p_exact=p_exact, exact_method=method,
                     mc_draws=draws, mc_seed=seed if method == "MonteCarlo" else None)


def read_comparison_csv(source: Union[str, Path, Iterable[str]]) -> tuple[list[float], list[float]]:
    """Rows of (group_label, score); exactly two labels, in order of first
    appearance."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    groups: dict[str, list[float]] = {}
    order: list[str] = []
    for rownum, row in enumerate(rows, start=1):
        cells = [c.strip() for c in row if c.strip() != ""]
        if not cells:
            continue
        if len(cells) != 2:
            raise MwuError(f"row {rownum}: expected (group_label, score)")
        label, raw = cells
        try:
            value = float(raw)
        except ValueError:
            if rownum == 1:
                continue  # header
            raise MwuError(f"row {rownum}: non-numeric score {raw!r}")
        if label not in groups:
            groups[label] = []
            order.append(label)
        groups[label].append(value)
    if len(order) != 2:
        raise MwuError(f"expected exactly two group labels, got {order}")
    return groups[order[0]], groups[order[1]]
