"""Benchmark harness: dataset loading, threshold selection, evaluation.

Evaluation is binary: a pair is predicted consistent when its score reaches
the threshold chosen on the validation split. Balanced accuracy is reported
with a seeded percentile-bootstrap confidence interval, per subset and
averaged, optionally with one threshold shared across subsets.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DatasetError,
    DecompositionEmpty,
    DecompositionFailed,
    DegenerateLabels,
    EmptyFactSet,
    FizzError,
    NliUnavailable,
)
from .scoring import FizzReport

_SPLITS = ("validation", "test")
_UNSCOREABLE = (EmptyFactSet, DecompositionEmpty, DecompositionFailed, NliUnavailable)


@dataclass(frozen=True)
class LabeledPair:
    id: str
    document: str
    summary: str
    label: int
    split: str
    subset: str = "all"

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise DatasetError(f"pair {self.id}: label must be 0 or 1")
        if self.split not in _SPLITS:
            raise DatasetError(f"pair {self.id}: split must be one of {_SPLITS}")
        if not self.document or not self.summary:
            raise DatasetError(f"pair {self.id}: document and summary must be nonempty")


@dataclass(frozen=True)
class EvalResult:
    threshold: float
    balanced_accuracy: float
    ci_low: float
    ci_high: float
    n_validation: int
    n_test: int
    predictions: tuple[dict, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not 0.0 <= self.balanced_accuracy <= 1.0:
            raise FizzError("balanced accuracy outside [0, 1]")
        if not self.ci_low <= self.balanced_accuracy <= self.ci_high:
            raise FizzError("confidence interval does not bracket the estimate")

    def to_json_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "balanced_accuracy": self.balanced_accuracy,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "n_validation": self.n_validation,
            "n_test": self.n_test,
            "predictions": list(self.predictions),
        }


def _record_to_pair(record: dict, line_no: int) -> LabeledPair:
    required = ("id", "document", "summary", "label", "split")
    for key in required:
        if key not in record:
            raise DatasetError(f"line {line_no}: missing field {key!r}")
    try:
        return LabeledPair(
            id=str(record["id"]),
            document=record["document"],
            summary=record["summary"],
            label=int(record["label"]),
            split=record["split"],
            subset=str(record.get("subset", "all")),
        )
    except (TypeError, ValueError) as exc:
        raise DatasetError(f"line {line_no}: {exc}") from exc
    except DatasetError as exc:
        raise DatasetError(f"line {line_no}: {exc}") from exc


def load_dataset(path: str) -> list[LabeledPair]:
    """Read a JSONL benchmark file; one validated record per line."""
    pairs: list[LabeledPair] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"line {line_no}: invalid JSON: {exc}") from exc
            pair = _record_to_pair(record, line_no)
            if pair.id in seen:
                raise DatasetError(f"line {line_no}: duplicate id {pair.id!r}")
            seen.add(pair.id)
            pairs.append(pair)
    return pairs


def serialize_dataset(pairs: list[LabeledPair]) -> str:
    """Canonical JSONL form; load(serialize(x)) round-trips byte-identically."""
    lines = []
    for pair in pairs:
        lines.append(
            json.dumps(
                {
                    "id": pair.id,
                    "document": pair.document,
                    "summary": pair.summary,
                    "label": pair.label,
                    "split": pair.split,
                    "subset": pair.subset,
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def balanced_accuracy(preds: list[int], labels: list[int]) -> float:
    """(TPR + TNR) / 2 with the consistent class (1) as positive."""
    if len(preds) != len(labels):
        raise FizzError("predictions and labels differ in length")
    if not labels or len(set(labels)) < 2:
        raise DegenerateLabels("both classes must be present in labels")
    tp = sum(1 for p, y in zip(preds, labels) if y == 1 and p == 1)
    fn = sum(1 for p, y in zip(preds, labels) if y == 1 and p == 0)
    tn = sum(1 for p, y in zip(preds, labels) if y == 0 and p == 0)
    fp = sum(1 for p, y in zip(preds, labels) if y == 0 and p == 1)
    tpr = tp / (tp + fn)
    tnr = tn / (tn + fp)
    return (tpr + tnr) / 2


def threshold_candidates(scores: list[float]) -> list[float]:
    """Midpoints between distinct sorted scores plus sentinels past each end."""
    distinct = sorted(set(scores))
    candidates = [distinct[0] - 1.0]
    candidates.extend(
        (lo + hi) / 2 for lo, hi in zip(distinct, distinct[1:])
    )
    candidates.append(distinct[-1] + 1.0)
    return candidates


def select_threshold(scores: list[float], labels: list[int]) -> float:
    """The candidate threshold maximizing balanced accuracy (ties: smallest).

    Prediction rule: consistent iff score >= threshold.
    """
    if len(scores) != len(labels):
        raise FizzError("scores and labels differ in length")
    if not labels or len(set(labels)) < 2:
        raise DegenerateLabels("both classes must be present in labels")
    best_threshold = None
    best_ba = -1.0
    for candidate in threshold_candidates(scores):
        preds = [1 if score >= candidate else 0 for score in scores]
        ba = balanced_accuracy(preds, labels)
        if ba > best_ba:
            best_ba, best_threshold = ba, candidate
    assert best_threshold is not None
    return best_threshold


def bootstrap_ci(
    preds: list[int],
    labels: list[int],
    iters: int = 10000,
    level: float = 0.95,
    seed: int = 0,
) -> tuple[float, float]:
    """Seeded percentile bootstrap over resampled (pred, label) pairs.

    Resamples missing a label class are redrawn, with a bounded number of
    tries so a pathological input still terminates.
    """
    if len(preds) != len(labels):
        raise FizzError("predictions and labels differ in length")
    if not labels or len(set(labels)) < 2:
        raise DegenerateLabels("both classes must be present in labels")
    rng = np.random.default_rng(seed)
    preds_arr = np.asarray(preds, dtype=np.int64)
    labels_arr = np.asarray(labels, dtype=np.int64)
    n = len(labels)
    stats = np.empty(iters, dtype=np.float64)
    max_redraws = 1000
    for it in range(iters):
        for attempt in range(max_redraws + 1):
            idx = rng.integers(0, n, size=n)
            y = labels_arr[idx]
            if y.min() != y.max():
                break
        else:
            raise DegenerateLabels("bootstrap resampling kept drawing one class")
        p = preds_arr[idx]
        pos = y == 1
        tpr = float(np.mean(p[pos] == 1))
        tnr = float(np.mean(p[~pos] == 0))
        stats[it] = (tpr + tnr) / 2
    alpha = (1.0 - level) / 2
    low, high = np.quantile(stats, [alpha, 1.0 - alpha])
    return float(low), float(high)


@dataclass(frozen=True)
class BenchmarkResult:
    subsets: dict[str, EvalResult]
    aggregate_balanced_accuracy: float
    single_threshold: bool
    unscoreable: tuple[dict, ...]
    reports: dict[str, FizzReport]
    rows: tuple[dict, ...]

    def to_json_dict(self) -> dict:
        return {
            "single_threshold": self.single_threshold,
            "subsets": {
                name: result.to_json_dict() for name, result in self.subsets.items()
            },
            "aggregate": {
                "balanced_accuracy": self.aggregate_balanced_accuracy,
                "subsets_evaluated": len(self.subsets),
            },
            "unscoreable": list(self.unscoreable),
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("id,subset,split,label,score,prediction\n")
        for row in self.rows:
            out.write(
                f"{row['id']},{row['subset']},{row['split']},{row['label']},"
                f"{row['score']!r},{row['prediction']}\n"
            )
        return out.getvalue()


def run_benchmark(
    dataset: list[LabeledPair],
    pipeline,
    single_threshold: bool = False,
    iters: int = 10000,
    level: float = 0.95,
    seed: int = 0,
    workers: int = 1,
) -> BenchmarkResult:
    """Score every pair, pick thresholds on validation, evaluate on test."""
    if not dataset:
        raise DatasetError("dataset is empty")

    def score_one(pair: LabeledPair):
        try:
            return pipeline.run(pair.document, pair.summary, pair.id)
        except _UNSCOREABLE as exc:
            return exc

    if workers > 1 and len(dataset) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(score_one, dataset))
    else:
        outcomes = [score_one(pair) for pair in dataset]

    scores: dict[str, float] = {}
    reports: dict[str, FizzReport] = {}
    unscoreable: list[dict] = []
    for pair, outcome in zip(dataset, outcomes):
        if isinstance(outcome, Exception):
            unscoreable.append({"id": pair.id, "reason": str(outcome)})
            continue
        reports[pair.id] = outcome
        scores[pair.id] = outcome.fizz_score

    scored = [pair for pair in dataset if pair.id in scores]
    subset_names = sorted({pair.subset for pair in scored})
    by_subset = {
        name: [pair for pair in scored if pair.subset == name] for name in subset_names
    }

    for name, pairs in by_subset.items():
        for split in _SPLITS:
            if not any(pair.split == split for pair in pairs):
                raise DatasetError(f"subset {name!r}: no scoreable {split} pairs")

    shared_threshold: float | None = None
    if single_threshold:
        val = [pair for pair in scored if pair.split == "validation"]
        shared_threshold = select_threshold(
            [scores[p.id] for p in val], [p.label for p in val]
        )

    subset_results: dict[str, EvalResult] = {}
    thresholds: dict[str, float] = {}
    for name, pairs in by_subset.items():
        val = [pair for pair in pairs if pair.split == "validation"]
        test = [pair for pair in pairs if pair.split == "test"]
        threshold = (
            shared_threshold
            if shared_threshold is not None
            else select_threshold([scores[p.id] for p in val], [p.label for p in val])
        )
        thresholds[name] = threshold
        test_preds = [1 if scores[p.id] >= threshold else 0 for p in test]
        test_labels = [p.label for p in test]
        ba = balanced_accuracy(test_preds, test_labels)
        ci_low, ci_high = bootstrap_ci(
            test_preds, test_labels, iters=iters, level=level, seed=seed
        )
        # widen a degenerate percentile interval so it brackets the estimate
        ci_low, ci_high = min(ci_low, ba), max(ci_high, ba)
        subset_results[name] = EvalResult(
            threshold=threshold,
            balanced_accuracy=ba,
            ci_low=ci_low,
            ci_high=ci_high,
            n_validation=len(val),
            n_test=len(test),
            predictions=tuple(
                {
                    "id": p.id,
                    "score": scores[p.id],
                    "label": p.label,
                    "prediction": pred,
                }
                for p, pred in zip(test, test_preds)
            ),
        )

    aggregate = sum(r.balanced_accuracy for r in subset_results.values()) / len(
        subset_results
    )
    rows = tuple(
        {
            "id": pair.id,
            "subset": pair.subset,
            "split": pair.split,
            "label": pair.label,
            "score": scores[pair.id],
            "prediction": 1 if scores[pair.id] >= thresholds[pair.subset] else 0,
        }
        for pair in scored
    )
    return BenchmarkResult(
        subsets=subset_results,
        aggregate_balanced_accuracy=aggregate,
        single_threshold=single_threshold,
        unscoreable=tuple(unscoreable),
        reports=reports,
        rows=rows,
    )
