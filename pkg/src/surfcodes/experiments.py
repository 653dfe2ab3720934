"""Batch harness for the random-surface positivity tables.

Trial i of a table with master seed s draws its surfaces from
``np.random.default_rng(np.random.SeedSequence([s, i]))``, so every trial is
reproducible on its own and tables do not depend on execution order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .gf import FieldSpec
from .parity import is_positive_test
from .projgeo import Surface, is_smooth, random_surface, surface_points

CSV_COLUMNS = [
    "field", "degree", "m", "trials", "positives", "rate",
    "mean_gap_negative", "mean_length", "smooth_mode", "master_seed",
]


@dataclass(frozen=True)
class TrialRecord:
    seed: list
    field: str
    degree: int
    m: int
    n: int
    k: int
    rank: int
    positive: bool
    gap: int
    rejected_singular: int = 0
    rejected_empty: int = 0
    surface: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass(frozen=True)
class TableSummary:
    field: str
    degree: int
    m: int
    trials: int
    positives: int
    rate: float
    mean_gap_negative: float  # nan when every trial is positive
    mean_length: float
    smooth_mode: str
    master_seed: int
    rejected_singular: int = 0
    rejected_empty: int = 0

    def csv_row(self) -> dict:
        row = {c: getattr(self, c) for c in CSV_COLUMNS}
        if math.isnan(row["mean_gap_negative"]):
            row["mean_gap_negative"] = ""
        return row


def field_label(spec: FieldSpec) -> str:
    return f"{spec.p}^{spec.e}"


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def evaluate_surface(S: Surface, m: int, seed=None, points=None) -> TrialRecord:
    """Positivity record for a given surface (no sampling)."""
    if points is None:
        points, _ = surface_points(S)
    res = is_positive_test(S, m, points)
    return TrialRecord(seed, field_label(S.spec), S.degree, m, res.n, res.k, res.rank,
                       res.positive, res.gap, surface=str(S))


def run_trial(spec: FieldSpec, d: int, m: int, seed, smooth_mode: str = "full",
              max_retries: int = 10_000) -> TrialRecord:
    """Sample until a smooth surface with affine points appears, then test it.

    ``seed`` is either an int or a pair ``(master_seed, index)``.
    """
    if d != m + 2:
        raise ValueError("trials need d = m + 2")
    if spec.q <= 2:
        raise ValueError("trials need q > 2")
    if isinstance(seed, (tuple, list)):
        rng = trial_rng(*seed)
        seed_repr = [int(s) for s in seed]
    else:
        rng = np.random.default_rng(int(seed))
        seed_repr = [int(seed)]
    singular = empty = 0
    for _ in range(max_retries):
        S = random_surface(spec, d, rng)
        if not is_smooth(S, smooth_mode):
            singular += 1
            continue
        points, _ = surface_points(S)
        if not points:
            empty += 1
            continue
        rec = evaluate_surface(S, m, seed_repr, points)
        return TrialRecord(**{**asdict(rec), "rejected_singular": singular, "rejected_empty": empty})
    raise RuntimeError(f"no admissible surface after {max_retries} draws")


def summarize(records, spec: FieldSpec, d: int, m: int, smooth_mode: str, master_seed: int) -> TableSummary:
    records = list(records)
    trials = len(records)
    pos = sum(r.positive for r in records)
    neg = [r.gap for r in records if not r.positive]
    return TableSummary(
        field=field_label(spec), degree=d, m=m, trials=trials, positives=pos,
        rate=pos / trials if trials else float("nan"),
        mean_gap_negative=float(np.mean(neg)) if neg else float("nan"),
        mean_length=float(np.mean([r.n for r in records])) if records else float("nan"),
        smooth_mode=smooth_mode, master_seed=int(master_seed),
        rejected_singular=sum(r.rejected_singular for r in records),
        rejected_empty=sum(r.rejected_empty for r in records),
    )


def run_table(spec: FieldSpec, d: int, m: int, trials: int, seed: int, smooth_mode: str = "full",
              on_record=None) -> TableSummary:
    """Aggregate ``trials`` independent trials; ``on_record`` sees each record."""
    records = []
    for i in range(trials):
        rec = run_trial(spec, d, m, (seed, i), smooth_mode)
        if on_record is not None:
            on_record(rec)
        records.append(rec)
    return summarize(records, spec, d, m, smooth_mode, seed)


def summaries_to_csv(summaries) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for s in summaries:
        w.writerow(s.csv_row())
    return buf.getvalue()


def summaries_from_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
