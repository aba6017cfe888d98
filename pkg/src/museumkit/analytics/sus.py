"""System Usability Scale scoring with subscales and curved grading.

Score = 2.5 * [sum over odd items of (item - 1) + sum over even items of
(5 - item)]. The learnability subscale is items 4 and 10 (raw 0..8 scaled
by 12.5); usability is the other eight items (raw 0..32 scaled by 3.125).
Those scalings make the exact identity mean = 0.2*L + 0.8*U hold for
every dataset.

Percentiles come from a monotone piecewise-linear curve through anchor
points of the curved grading scale; letter grades from percentile bands
and the adjective rating from the standard four bands.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

LEARNABILITY_ITEMS = (4, 10)  # 1-based item numbers

# (score, percentile) anchors; interpolation is linear between them
PERCENTILE_ANCHORS = (
    (0.0, 0.0),
    (25.0, 1.0),
    (45.0, 8.0),
    (51.7, 13.0),
    (59.5, 30.0),
    (68.0, 50.0),
    (72.9, 64.0),
    (77.3, 81.0),
    (81.5, 92.0),
    (90.0, 99.0),
    (100.0, 100.0),
)

# (lower percentile bound inclusive, grade), highest first
GRADE_BANDS = (
    (96.0, "A+"),
    (90.0, "A"),
    (80.0, "B+"),
    (70.0, "B"),
    (60.0, "B-"),
    (45.0, "C+"),
    (35.0, "C"),
    (25.0, "C-"),
    (10.0, "D"),
    (0.0, "F"),
)


class SusError(ValueError):
    """Invalid questionnaire data."""


@dataclass(frozen=True)
class SusResponse:
    respondent_id: str
    items: tuple[int, ...]  # 10 Likert answers, each 1..5

    def __post_init__(self):
        if len(self.items) != 10:
            raise SusError(f"{self.respondent_id}: expected 10 items, got {len(self.items)}")
        for i, v in enumerate(self.items, start=1):
            if not isinstance(v, int) or not 1 <= v <= 5:
                raise SusError(f"{self.respondent_id}: item {i} must be an integer in 1..5, got {v!r}")


@dataclass(frozen=True)
class SusSummary:
    n: int
    mean_sus: float
    learnability: float
    usability: float
    percentile: float
    grade: str
    adjective: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_sus": self.mean_sus,
            "learnability": self.learnability,
            "usability": self.usability,
            "percentile": self.percentile,
            "grade": self.grade,
            "adjective": self.adjective,
        }


def _item_contribution(number: int, value: int) -> int:
    # odd-numbered statements are positive, even-numbered negative
    return value - 1 if number % 2 == 1 else 5 - value


def sus_score(response: SusResponse) -> float:
    raw = sum(_item_contribution(i, v) for i, v in enumerate(response.items, start=1))
    return 2.5 * raw


def sus_subscales(response: SusResponse) -> tuple[float, float]:
    """(learnability, usability), each on 0..100."""
    raw_l = sum(_item_contribution(i, v) for i, v in enumerate(response.items, start=1)
                if i in LEARNABILITY_ITEMS)
    raw_u = sum(_item_contribution(i, v) for i, v in enumerate(response.items, start=1)
                if i not in LEARNABILITY_ITEMS)
    return 12.5 * raw_l, 3.125 * raw_u


def percentile_for_score(score: float) -> float:
    if not 0.0 <= score <= 100.0:
        raise SusError(f"score {score} outside 0..100")
    anchors = PERCENTILE_ANCHORS
    for (x0, y0), (x1, y1) in zip(anchors, anchors[1:]):
        if x0 <= score <= x1:
            return y0 + (y1 - y0) * (score - x0) / (x1 - x0)
    return 100.0


def grade_for_percentile(percentile: float) -> str:
    for bound, grade in GRADE_BANDS:
        if percentile >= bound:
            return grade
    return "F"


def adjective_for_score(score: float) -> str:
    if score > 85.5:
        return "Excellent"
    if score > 72.9:
        return "Good"
    if score >= 51.7:
        return "OK"
    return "Poor"


def sus_summary(responses: list[SusResponse]) -> SusSummary:
    if not responses:
        raise SusError("at least one response is required")
    n = len(responses)
    mean = sum(sus_score(r) for r in responses) / n
    learn = sum(sus_subscales(r)[0] for r in responses) / n
    usab = sum(sus_subscales(r)[1] for r in responses) / n
    pct = percentile_for_score(mean)
    return SusSummary(
        n=n,
        mean_sus=mean,
        learnability=learn,
        usability=usab,
        percentile=pct,
        grade=grade_for_percentile(pct),
        adjective=adjective_for_score(mean),
    )


def read_sus_csv(source: Union[str, Path, Iterable[str]]) -> list[SusResponse]:
    """Rows of respondent id followed by 10 integers; a header row whose
    numeric cells do not parse is skipped."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    responses = []
    for rownum, row in enumerate(rows, start=1):
        cells = [c.strip() for c in row if c.strip() != ""]
        if not cells:
            continue
        if len(cells) != 11:
            raise SusError(f"row {rownum}: expected id plus 10 items, got {len(cells)} cells")
        try:
            items = tuple(int(c) for c in cells[1:])
        except ValueError:
            if rownum == 1:
                continue  # header
            raise SusError(f"row {rownum}: non-integer item value")
        responses.append(SusResponse(respondent_id=cells[0], items=items))
    if not responses:
        raise SusError("no responses in input")
    return responses
