import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from museumkit.analytics import (
    SusError,
    SusResponse,
    adjective_for_score,
    grade_for_percentile,
    percentile_for_score,
    read_sus_csv,
    sus_score,
    sus_subscales,
    sus_summary,
)

likert_items = st.tuples(*[st.integers(min_value=1, max_value=5)] * 10)


def test_score_extremes_and_midpoint():
    assert sus_score(SusResponse("a", (5, 1) * 5)) == 100.0
    assert sus_score(SusResponse("a", (1, 5) * 5)) == 0.0
    assert sus_score(SusResponse("a", (3,) * 10)) == 50.0


def test_hand_computed_example():
    assert sus_score(SusResponse("a", (4, 2, 4, 2, 4, 2, 4, 2, 4, 2))) == 75.0


def test_invalid_items_rejected():
    with pytest.raises(SusError):
        SusResponse("a", (3,) * 9)
    with pytest.raises(SusError):
        SusResponse("a", (3,) * 9 + (6,))
    with pytest.raises(SusError):
        SusResponse("a", (0,) + (3,) * 9)


@settings(max_examples=200)
@given(likert_items, st.integers(min_value=0, max_value=9))
def test_score_affine_in_each_item(items, idx):
    """Raising any answer by one step moves the score by exactly +2.5
    (odd item) or -2.5 (even item)."""
    if items[idx] == 5:
        items = items[:idx] + (4,) + items[idx + 1:]
    bumped = items[:idx] + (items[idx] + 1,) + items[idx + 1:]
    delta = sus_score(SusResponse("b", bumped)) - sus_score(SusResponse("a", items))
    assert delta == pytest.approx(2.5 if (idx + 1) % 2 == 1 else -2.5)


@settings(max_examples=200)
@given(st.lists(likert_items, min_size=1, max_size=20))
def test_subscale_identity_every_dataset(rows):
    responses = [SusResponse(str(i), r) for i, r in enumerate(rows)]
    summary = sus_summary(responses)
    assert summary.mean_sus == pytest.approx(
        0.2 * summary.learnability + 0.8 * summary.usability, abs=1e-9)
    assert 0.0 <= summary.mean_sus <= 100.0


def test_single_all_threes_summary():
    s = sus_summary([SusResponse("a", (3,) * 10)])
    assert (s.mean_sus, s.learnability, s.usability) == (50.0, 50.0, 50.0)


def test_subscales_split():
    learn, usab = sus_subscales(SusResponse("a", (3,) * 10))
    assert learn == 50.0
    assert usab == 50.0


def test_percentile_anchor_points():
    assert percentile_for_score(77.3) == pytest.approx(81.0)
    assert percentile_for_score(59.5) == pytest.approx(30.0)
    assert percentile_for_score(81.5) == pytest.approx(92.0)
    assert percentile_for_score(0.0) == 0.0
    assert percentile_for_score(100.0) == 100.0


def test_percentile_monotone():
    scores = [i * 0.5 for i in range(201)]
    pcts = [percentile_for_score(s) for s in scores]
    assert all(a <= b + 1e-12 for a, b in zip(pcts, pcts[1:]))


def test_grades_from_percentiles():
    assert grade_for_percentile(81.0) == "B+"
    assert grade_for_percentile(92.0) == "A"
    assert grade_for_percentile(30.0) == "C-"
    assert grade_for_percentile(97.0) == "A+"
    assert grade_for_percentile(5.0) == "F"


def test_adjective_bands():
    assert adjective_for_score(77.3) == "Good"
    assert adjective_for_score(90.0) == "Excellent"
    assert adjective_for_score(60.0) == "OK"
    assert adjective_for_score(30.0) == "Poor"


def test_empty_dataset_rejected():
    with pytest.raises(SusError):
        sus_summary([])


def test_frozen_dataset_mean_and_usability(sus_dataset):
    summary = sus_summary(sus_dataset)
    assert summary.n == 40
    assert summary.mean_sus == pytest.approx(77.3, abs=0.05)
    assert summary.usability == pytest.approx(81.5, abs=0.05)
    assert abs(summary.mean_sus - (0.2 * summary.learnability + 0.8 * summary.usability)) <= 0.3
    assert round(summary.percentile) == 81
    assert summary.grade == "B+"
    assert summary.adjective == "Good"


@pytest.mark.xfail(strict=True, reason=(
    "the three published subscale means are mutually inconsistent with the "
    "exact 0.2/0.8 identity; matching the overall mean and usability forces "
    "learnability to 60.625, not 59.5"))
def test_frozen_dataset_learnability(sus_dataset):
    summary = sus_summary(sus_dataset)
    assert summary.learnability == pytest.approx(59.5, abs=0.05)


def test_csv_reader():
    csv_text = "id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\np1,3,3,3,3,3,3,3,3,3,3\np2,5,1,5,1,5,1,5,1,5,1\n"
    rows = read_sus_csv(io.StringIO(csv_text))
    assert [r.respondent_id for r in rows] == ["p1", "p2"]
    assert sus_score(rows[1]) == 100.0
    with pytest.raises(SusError):
        read_sus_csv(io.StringIO("p1,1,2,3\n"))
