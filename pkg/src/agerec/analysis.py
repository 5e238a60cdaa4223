"""Evaluation reports and model-explanation procedures: per-bucket metric
tables, Pearson correlation ranking of features against mean age,
permutation feature importance, and per-category ablation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .features import REGISTRY
from .interval_metrics import MetricConfig, beta_ie, mu_e, theta_l2
from .models import ModelArtifact, RangePrediction, TrainConfig, ff_train, predict
from .ranges import AgeRange


def _bucket_scores(pairs, config: MetricConfig) -> dict:
    """Mean μE, θ-L2 and β-IE over (reference, prediction) pairs."""
    return {
        "count": len(pairs),
        "mu_e": float(np.mean([mu_e(r, h) for r, h in pairs])),
        "theta_l2": float(np.mean([theta_l2(r, h, config.alpha)
                                   for r, h in pairs])),
        "beta_ie": float(np.mean([beta_ie(r, h, config.beta)
                                  for r, h in pairs])),
    }


@dataclass
class EvalReport:
    overall: dict
    per_genre: dict[str, dict]
    per_age: dict[int, dict]
    per_range: dict[tuple[float, float], dict]


def _as_range(pred: RangePrediction) -> AgeRange:
    return AgeRange(pred.lo, pred.hi)


def evaluate(predictions: dict[str, RangePrediction], corpus,
             config: MetricConfig | None = None) -> EvalReport:
    """Score predictions against a corpus's reference ranges.

    Buckets: per genre, per integer age (an item counts toward every integer
    age inside its reference range), and per distinct reference range.
    """
    config = config or MetricConfig()
    refs = {doc.id: doc for doc in corpus}
    missing = sorted(set(predictions) - set(refs))
    if missing:
        raise ValueError(f"predictions without references: {missing[:5]}")
    if not predictions:
        raise ValueError("no predictions to evaluate")

    pairs = []       # (reference, hypothesis, doc)
    for doc_id, pred in predictions.items():
        doc = refs[doc_id]
        pairs.append((doc.age, _as_range(pred), doc))

    all_rh = [(r, h) for r, h, _ in pairs]
    report = EvalReport(overall=_bucket_scores(all_rh, config),
                        per_genre={}, per_age={}, per_range={})
    by_genre: dict[str, list] = {}
    by_age: dict[int, list] = {}
    by_range: dict[tuple[float, float], list] = {}
    for r, h, doc in pairs:
        by_genre.setdefault(doc.genre, []).append((r, h))
        for age in range(int(np.ceil(r.lo)), int(np.floor(r.hi)) + 1):
            by_age.setdefault(age, []).append((r, h))
        by_range.setdefault((r.lo, r.hi), []).append((r, h))
    for genre in sorted(by_genre):
        report.per_genre[genre] = _bucket_scores(by_genre[genre], config)
    for age in sorted(by_age):
        report.per_age[age] = {
            "count": len(by_age[age]),
            "mu_e": float(np.mean([mu_e(r, h) for r, h in by_age[age]])),
        }
    for rng in sorted(by_range):
        report.per_range[rng] = {
            "count": len(by_range[rng]),
            "mu_e": float(np.mean([mu_e(r, h) for r, h in by_range[rng]])),
        }
    return report


# --- correlation ---

def pearson(xs, ys) -> float | None:
    """Product-moment correlation; None when either side has no variance."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.size < 2:
        raise ValueError("need two equal-length series of length >= 2")
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    denom = np.sqrt((xc * xc).sum() * (yc * yc).sum())
    if denom == 0.0:
        return None
    return float(np.clip((xc * yc).sum() / denom, -1.0, 1.0))


@dataclass
class FeatureRankTable:
    rows: list[tuple[str, float, int]]          # (name, score, rank)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def rank_of(self, name: str) -> int | None:
        for n, _, rank in self.rows:
            if n == name:
                return rank
        return None

    def top_positive(self, n: int = 10):
        rows = sorted((r for r in self.rows if r[1] > 0), key=lambda r: -r[1])
        return rows[:n]

    def top_negative(self, n: int = 10):
        rows = sorted((r for r in self.rows if r[1] < 0), key=lambda r: r[1])
        return rows[:n]


def correlation_ranking(matrix, names, ages) -> FeatureRankTable:
    """Per-feature Pearson r against mean ages, ranked by descending |r|.
    Zero-variance features are reported as skipped, not ranked."""
    matrix = np.asarray(matrix, dtype=float)
    names = list(names)
    if matrix.shape[1] != len(names):
        raise ValueError("matrix width does not match the name list")
    scored = []
    skipped = []
    for j, name in enumerate(names):
        r = pearson(matrix[:, j], ages)
        if r is None:
            skipped.append((name, "degenerate variance"))
        else:
            scored.append((name, r))
    scored.sort(key=lambda t: -abs(t[1]))
    rows = [(name, r, rank) for rank, (name, r) in enumerate(scored, 1)]
    return FeatureRankTable(rows=rows, skipped=skipped)


# --- permutation importance ---

def _mu_e_of(model: ModelArtifact, X, refs) -> float:
    preds = predict(model, X)
    return float(np.mean([mu_e(ref, _as_range(p))
                          for ref, p in zip(refs, preds)]))


def permutation_importance(model: ModelArtifact, X, refs,
                           feature_index: int, repeats: int = 5,
                           seed: int = 0) -> float:
    """Mean increase in μE when one input column is shuffled; positive
    values mean the model relies on the feature."""
    if repeats <= 0:
        raise ValueError("repeats must be positive")
    X = np.asarray(X, dtype=float)
    if not 0 <= feature_index < X.shape[1]:
        raise ValueError(f"feature index {feature_index} out of range")
    baseline = _mu_e_of(model, X, refs)
    rng = np.random.default_rng(seed)
    drops = []
    for _ in range(repeats):
        shuffled = X.copy()
        rng.shuffle(shuffled[:, feature_index])
        drops.append(_mu_e_of(model, shuffled, refs) - baseline)
    return float(np.mean(drops))


def permutation_importance_all(model: ModelArtifact, X, refs, names,
                               repeats: int = 5,
                               seed: int = 0) -> FeatureRankTable:
    """Permutation importance for every column, ranked by descending drop.
    Columns get independent seeded streams, so the table is deterministic."""
    X = np.asarray(X, dtype=float)
    names = list(names)
    if X.shape[1] != len(names):
        raise ValueError("matrix width does not match the name list")
    scored = [(name,
               permutation_importance(model, X, refs, j, repeats,
                                      seed=seed * 100003 + j))
              for j, name in enumerate(names)]
    scored.sort(key=lambda t: -t[1])
    rows = [(name, drop, rank) for rank, (name, drop) in enumerate(scored, 1)]
    return FeatureRankTable(rows=rows)


# --- category ablation ---

def ablation(category: str, X_train, Y_train, X_test, refs_test,
             config: TrainConfig | None = None,
             registry=REGISTRY) -> tuple[float, float]:
    """Retrain the network without one feature category.

    Returns (μE without the category, signed Δ vs the full model); Δ > 0
    means removal hurt, i.e. the category helps. Standardization statistics
    are recomputed on the reduced matrix.
    """
    config = config or TrainConfig()
    drop = set(registry.category_indices(category))  # KeyError on unknown
    keep = [j for j in range(len(registry)) if j not in drop]
    X_train = np.asarray(X_train, dtype=float)
    X_test = np.asarray(X_test, dtype=float)
    full = ff_train(X_train, Y_train, config)
    reduced = ff_train(X_train[:, keep], Y_train, config)
    full_mu_e = _mu_e_of(full, X_test, refs_test)
    reduced_mu_e = _mu_e_of(reduced, X_test[:, keep], refs_test)
    return reduced_mu_e, reduced_mu_e - full_mu_e


# --- rendering ---

def _fmt(x) -> str:
    return f"{x:.2f}"


def render_report(report: EvalReport, fmt: str = "table") -> str:
    """Human table (2-decimal cells) or machine-readable JSON records."""
    if fmt == "records":
        payload = {
            "overall": report.overall,
            "per_genre": report.per_genre,
            "per_age": {str(k): v for k, v in report.per_age.items()},
            "per_range": {f"{lo},{hi}": v
                          for (lo, hi), v in report.per_range.items()},
        }
        return json.dumps(payload, sort_keys=True)
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = ["bucket\tcount\tmu_e\ttheta_l2\tbeta_ie"]

    def row(label, scores):
        lines.append("\t".join([
            label, str(scores["count"]), _fmt(scores["mu_e"]),
            _fmt(scores.get("theta_l2", float("nan"))) if "theta_l2" in scores else "-",
            _fmt(scores["beta_ie"]) if "beta_ie" in scores else "-",
        ]))

    row("overall", report.overall)
    for genre, scores in report.per_genre.items():
        row(f"genre:{genre}", scores)
    for age, scores in report.per_age.items():
        row(f"age:{age}", scores)
    for (lo, hi), scores in report.per_range.items():
        row(f"range:[{lo},{hi}]", scores)
    return "\n".join(lines)


def parse_report(text: str) -> EvalReport:
    """Inverse of render_report(..., "records")."""
    payload = json.loads(text)
    return EvalReport(
        overall=payload["overall"],
        per_genre=payload["per_genre"],
        per_age={int(k): v for k, v in payload["per_age"].items()},
        per_range={tuple(float(x) for x in k.split(",")): v
                   for k, v in payload["per_range"].items()},
    )


def render_rank_table(table: FeatureRankTable, fmt: str = "table") -> str:
    if fmt == "records":
        return json.dumps({"rows": table.rows, "skipped": table.skipped})
    lines = ["rank\tfeature\tscore"]
    for name, score, rank in table.rows:
        lines.append(f"{rank}\t{name}\t{_fmt(score)}")
    for name, reason in table.skipped:
        lines.append(f"-\t{name}\t({reason})")
    return "\n".join(lines)
