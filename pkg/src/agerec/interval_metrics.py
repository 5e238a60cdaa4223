"""Error metrics between a reference age range and a hypothesis age range.

All metrics take the reference first and the hypothesis second. With
r = [a, b] and h = [c, d], the bound-vector metrics (l1, l2, theta_l2) treat
the ranges as 2D vectors; the mean-based metrics (mu_e, bound_error) reduce
them to their midpoints; the integral metrics (sym_ie, beta_ie) accumulate a
local per-age error over the covering segment.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .ranges import AgeRange

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class MetricConfig:
    """Weights of the parametric metrics.

    The worked examples are reproduced with alpha=0.5 and beta=1/3; beta=0.4
    is also announced for the corpus-level score tables, so both are
    reachable here.
    """

    alpha: float = 0.5
    beta: float = 1.0 / 3.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if not 0 <= self.beta <= 1:
            raise ValueError("beta must be in [0, 1]")


def l1(r: AgeRange, h: AgeRange) -> float:
    return abs(h.lo - r.lo) + abs(h.hi - r.hi)


def l2(r: AgeRange, h: AgeRange) -> float:
    return math.hypot(h.lo - r.lo, h.hi - r.hi)


def cos_theta(r: AgeRange, h: AgeRange) -> float:
    """Cosine of the angle between h - r and the inward direction (1, -1)."""
    if r == h:
        return 1.0
    return (h.lo - r.lo - h.hi + r.hi) / (SQRT2 * l2(r, h))


def theta_l2(r: AgeRange, h: AgeRange, alpha: float = 0.5) -> float:
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    return l2(r, h) + alpha * (1.0 - cos_theta(r, h))


def jaccard(r: AgeRange, h: AgeRange) -> float:
    """Jaccard distance over interval lengths; 1 for any disjoint pair."""
    inter = min(r.hi, h.hi) - max(r.lo, h.lo)
    if inter < 0:
        return 1.0
    union = max(r.hi, h.hi) - min(r.lo, h.lo)
    if union == 0:
        # both degenerate and equal
        return 0.0
    return 1.0 - inter / union


def jaccard_year(r: AgeRange, h: AgeRange) -> float:
    return (r.length + h.length) / 2.0 * jaccard(r, h)


def mu_e(r: AgeRange, h: AgeRange) -> float:
    return abs(r.mean - h.mean)


def bound_error(r: AgeRange, h: AgeRange) -> float:
    m = h.mean
    if m < r.lo:
        return r.lo - m
    if m > r.hi:
        return m - r.hi
    return 0.0


def _dist(x: float, lo: float, hi: float) -> float:
    if lo <= x <= hi:
        return 0.0
    return min(abs(x - lo), abs(x - hi))


def local_error(x: float, r: AgeRange, h: AgeRange, beta: float) -> float:
    """Weighted per-age error: beta weighs ages covered by the reference only,
    (1 - beta) those covered by the hypothesis only."""
    e = 0.0
    if not h.contains(x):
        e += beta * _dist(x, h.lo, h.hi)
    if not r.contains(x):
        e += (1.0 - beta) * _dist(x, r.lo, r.hi)
    return e


def integral_error_numeric(r: AgeRange, h: AgeRange, beta: float,
                           step: float = 1e-3) -> float:
    """Midpoint quadrature of the weighted local error over the covering
    segment. Serves as the independent oracle for the closed-form beta_ie."""
    if step <= 0:
        raise ValueError("step must be > 0")
    lo = min(r.lo, h.lo)
    hi = max(r.hi, h.hi)
    if hi <= lo:
        return 0.0
    n = max(1, int(math.ceil((hi - lo) / step)))
    xs = lo + (np.arange(n) + 0.5) * (hi - lo) / n
    vals = np.fromiter((local_error(float(x), r, h, beta) for x in xs),
                       dtype=float, count=n)
    return float(vals.sum() * (hi - lo) / n)


def sym_ie(r: AgeRange, h: AgeRange) -> float:
    return l2(r, h) / SQRT2


def beta_ie(r: AgeRange, h: AgeRange, beta: float = 1.0 / 3.0) -> float:
    if not 0 <= beta <= 1:
        raise ValueError("beta must be in [0, 1]")
    inner = max(0.0, h.lo - r.lo) ** 2 + max(0.0, r.hi - h.hi) ** 2
    outer = max(0.0, r.lo - h.lo) ** 2 + max(0.0, h.hi - r.hi) ** 2
    return math.sqrt(beta * inner + (1.0 - beta) * outer)


# --- metric-design study harness ---

METRIC_NAMES = ("l1", "l2", "theta_l2", "jaccard", "jaccard_year",
                "mu_e", "bound_error", "sym_ie", "beta_ie")


def metric_fn(name: str, config: MetricConfig | None = None):
    """Resolve a metric name to a (reference, hypothesis) -> float callable."""
    config = config or MetricConfig()
    table = {
        "l1": l1,
        "l2": l2,
        "theta_l2": lambda r, h: theta_l2(r, h, config.alpha),
        "jaccard": jaccard,
        "jaccard_year": jaccard_year,
        "mu_e": mu_e,
        "bound_error": bound_error,
        "sym_ie": sym_ie,
        "beta_ie": lambda r, h: beta_ie(r, h, config.beta),
    }
    if name not in table:
        raise KeyError(f"unknown metric {name!r}; known: {', '.join(METRIC_NAMES)}")
    return table[name]


@dataclass
class RankStudy:
    """A reference range, candidate hypotheses, and a human oracle ranking."""

    reference: AgeRange
    hypotheses: list[AgeRange]
    oracle_ranks: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.hypotheses:
            raise ValueError("study needs at least one hypothesis")
        if len(self.oracle_ranks) != len(self.hypotheses):
            raise ValueError("oracle_ranks length must match hypotheses")
        # ranks must be a permutation of 1..n up to tie averaging
        expected = sum(range(1, len(self.oracle_ranks) + 1))
        if abs(sum(self.oracle_ranks) - expected) > 1e-9:
            raise ValueError("oracle_ranks is not a valid ranking")


def spearman_footrule(oracle, observed) -> float:
    oracle = list(oracle)
    observed = list(observed)
    if len(oracle) != len(observed):
        raise ValueError("rankings must have equal length")
    n = len(oracle)
    return sum(abs(a - b) for a, b in zip(oracle, observed)) / n


def rank_hypotheses(metric: str, study: RankStudy,
                    config: MetricConfig | None = None) -> list[float]:
    """Ranks 1..n by ascending metric value; ties get the average rank."""
    fn = metric_fn(metric, config)
    values = [fn(study.reference, h) for h in study.hypotheses]
    return list(rankdata(values, method="average"))


def random_metric_footrule(study: RankStudy, trials: int = 1000,
                           seed: int = 0) -> float:
    """Monte-Carlo mean footrule of a metric assigning random positive values."""
    rng = np.random.default_rng(seed)
    n = len(study.hypotheses)
    total = 0.0
    for _ in range(trials):
        ranks = rankdata(rng.random(n), method="average")
        total += spearman_footrule(study.oracle_ranks, ranks)
    return total / trials


def run_metric_study(study: RankStudy, metrics=METRIC_NAMES,
                     config: MetricConfig | None = None,
                     random_trials: int = 1000,
                     seed: int = 0) -> list[tuple[str, float]]:
    """Footrule distance S against the oracle for each metric, plus a
    random-metric baseline row; sorted ascending by S."""
    rows = []
    for name in metrics:
        ranks = rank_hypotheses(name, study, config)
        rows.append((name, spearman_footrule(study.oracle_ranks, ranks)))
    if random_trials > 0:
        rows.append(("random", random_metric_footrule(study, random_trials, seed)))
    rows.sort(key=lambda r: r[1])
    return rows


def load_study(path) -> RankStudy:
    """Study file: JSON lines; a header record {ref_lo, ref_hi} followed by
    one {lo, hi, oracle_rank} record per hypothesis."""
    reference = None
    hypotheses: list[AgeRange] = []
    ranks: list[float] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if "ref_lo" in rec:
                reference = AgeRange(rec["ref_lo"], rec["ref_hi"])
            else:
                hypotheses.append(AgeRange(rec["lo"], rec["hi"]))
                ranks.append(float(rec["oracle_rank"]))
    if reference is None:
        raise ValueError(f"{path}: missing header record with ref_lo/ref_hi")
    return RankStudy(reference, hypotheses, ranks)


def default_study_path():
    from importlib.resources import files
    return files("agerec").joinpath("resources/metric_study.jsonl")


def load_default_study() -> RankStudy:
    return load_study(default_study_path())
