import json
import math

import numpy as np
import pytest

from surfcodes import experiments, projgeo
from surfcodes.gf import field_new

F3 = field_new(3)
F5 = field_new(5)


def test_trial_rng_is_independent_of_order():
    a = experiments.trial_rng(7, 3).integers(0, 1 << 30, 5)
    experiments.trial_rng(7, 2).integers(0, 1 << 30, 100)
    b = experiments.trial_rng(7, 3).integers(0, 1 << 30, 5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, experiments.trial_rng(7, 4).integers(0, 1 << 30, 5))


def test_run_trial_deterministic():
    r1 = experiments.run_trial(F3, 3, 1, (11, 0))
    r2 = experiments.run_trial(F3, 3, 1, (11, 0))
    assert r1 == r2 and r1.seed == [11, 0]
    assert r1.field == "3^1" and r1.degree == 3
    S = projgeo.parse_surface(r1.surface, F3)
    assert projgeo.is_smooth(S)
    assert r1.gap == (r1.n - r1.k) - r1.rank and r1.positive == (r1.gap == 0)
    json.loads(r1.to_json())


def test_rejections_are_counted():
    # over F_3 most random cubics are singular, so rejections show up quickly
    recs = [experiments.run_trial(F3, 3, 1, (5, i)) for i in range(6)]
    assert sum(r.rejected_singular for r in recs) > 0
    rng = experiments.trial_rng(5, 0)
    singular = 0
    while True:
        S = projgeo.random_surface(F3, 3, rng)
        if projgeo.is_smooth(S) and projgeo.surface_points(S)[0]:
            break
        singular += 1
    assert singular == recs[0].rejected_singular + recs[0].rejected_empty


def test_run_table_matches_records():
    seen = []
    s = experiments.run_table(F5, 3, 1, 4, 99, on_record=seen.append)
    assert s.trials == 4 == len(seen)
    assert s.positives == sum(r.positive for r in seen)
    assert s.rate == s.positives / 4
    assert s.mean_length == pytest.approx(np.mean([r.n for r in seen]))
    assert [r.seed for r in seen] == [[99, i] for i in range(4)]
    assert experiments.run_table(F5, 3, 1, 4, 99).csv_row() == s.csv_row()


def test_invalid_trials():
    with pytest.raises(ValueError):
        experiments.run_trial(F3, 4, 1, 0)
    with pytest.raises(ValueError):
        experiments.run_trial(field_new(2), 3, 1, 0)


def test_summary_nan_gap_and_csv_roundtrip():
    rec = experiments.TrialRecord([1], "5^1", 3, 1, 20, 4, 16, True, 0)
    s = experiments.summarize([rec, rec], F5, 3, 1, "full", 1)
    assert math.isnan(s.mean_gap_negative)
    text = experiments.summaries_to_csv([s])
    assert text.splitlines()[0] == ",".join(experiments.CSV_COLUMNS)
    row = experiments.summaries_from_csv(text)[0]
    assert row["mean_gap_negative"] == ""
    assert row["field"] == "5^1" and float(row["rate"]) == 1.0 and int(row["positives"]) == 2
    neg = experiments.TrialRecord([2], "5^1", 3, 1, 20, 4, 14, False, 2)
    s2 = experiments.summarize([rec, neg], F5, 3, 1, "full", 1)
    assert experiments.summaries_from_csv(experiments.summaries_to_csv([s2]))[0]["mean_gap_negative"] == "2.0"


def test_evaluate_explicit_surface():
    S = projgeo.parse_surface("X^3+Y^3+Z^3-Z*X^2-X*Y^2-Y*Z^2+X*Z^2+T^3", F3)
    rec = experiments.evaluate_surface(S, 1)
    assert (rec.n, rec.k, rec.rank, rec.positive) == (13, 4, 9, True)
