"""Age-range regression models: naive mean baseline, Flesch-Kincaid,
feed-forward network, random forest; plus prediction normalization,
sentence-to-text aggregation, and artifact persistence.

The feed-forward network is implemented directly on numpy so that its
analytic gradients are available for verification against finite
differences; the random forest delegates to scikit-learn.
"""

from __future__ import annotations

import hashlib
import logging
import math
import pickle
from dataclasses import asdict, dataclass, field

import numpy as np
from sklearn.ensemble import RandomForestRegressor

from .ranges import AGE_DOMAIN

log = logging.getLogger(__name__)

ARTIFACT_MAGIC = "agerec-model"
ARTIFACT_VERSION = 1


@dataclass(frozen=True)
class RangePrediction:
    lo: float
    hi: float
    normalized: bool = False
    mu: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"prediction bounds out of order: "
                             f"[{self.lo}, {self.hi}]")
        object.__setattr__(self, "mu", (self.lo + self.hi) / 2.0)


def normalize_bounds(lo: float, hi: float) -> RangePrediction:
    """Swap out-of-order bounds, then clamp to the age domain; the
    `normalized` flag records whether anything was adjusted."""
    touched = False
    if lo > hi:
        lo, hi = hi, lo
        touched = True
    dlo, dhi = AGE_DOMAIN
    clo = min(max(lo, dlo), dhi)
    chi = min(max(hi, dlo), dhi)
    if (clo, chi) != (lo, hi):
        touched = True
    return RangePrediction(clo, chi, normalized=touched)


@dataclass(frozen=True)
class TrainConfig:
    kind: str = "ff"                 # "naive" | "ff" | "rf"
    hidden_layers: int = 6
    hidden_units: int = 200
    activation: str = "relu"
    epochs: int = 500
    n_estimators: int = 100
    seed: int = 0
    learning_rate: float = 1e-3
    batch_size: int = 128            # used only above full_batch_threshold
    full_batch_threshold: int = 1024

    def __post_init__(self):
        for name in ("hidden_layers", "hidden_units", "epochs",
                     "n_estimators", "batch_size", "full_batch_threshold"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.activation != "relu":
            raise ValueError(f"unsupported activation {self.activation!r}")


@dataclass
class ModelArtifact:
    kind: str
    version: int
    schema: str
    params: dict
    metadata: dict


def schema_fingerprint(names_or_dim) -> str:
    """Stable identifier of the model's input layout: a hash of the ordered
    feature names, or just the width for anonymous embedding inputs."""
    if isinstance(names_or_dim, int):
        return f"dim={names_or_dim}"
    digest = hashlib.sha256(
        "\n".join(names_or_dim).encode("utf-8")).hexdigest()[:16]
    return f"names:{len(list(names_or_dim))}:{digest}"


def _check_training_input(X, Y):
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or Y.ndim != 2 or Y.shape[1] != 2:
        raise ValueError("expected X of shape (n, d) and targets of "
                         "shape (n, 2)")
    if X.shape[0] != Y.shape[0]:
        raise ValueError("inputs and targets disagree on sample count")
    if X.shape[0] == 0:
        raise ValueError("cannot train on an empty sample set")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
        raise ValueError("training data contains NaN or infinite values")
    return X, Y


# --- naive baseline ---

def naive_fit(targets, schema: str = "any") -> ModelArtifact:
    """Stores the training means of the two bounds; ignores all inputs."""
    arr = np.asarray(list(targets), dtype=float)
    if arr.size == 0:
        raise ValueError("cannot fit the naive model on an empty train set")
    arr = arr.reshape(-1, 2)
    return ModelArtifact(
        kind="naive", version=ARTIFACT_VERSION, schema=schema,
        params={"mean_lo": float(arr[:, 0].mean()),
                "mean_hi": float(arr[:, 1].mean())},
        metadata={"n_train": int(arr.shape[0])},
    )


# --- Flesch-Kincaid ---

def flesch_kincaid_age(words: int, sentences: int, syllables: int,
                       base_age: float = 5.5) -> RangePrediction:
    """Grade level 0.39·(words/sentences) + 11.8·(syllables/words) − 15.59,
    shifted by the base age; returned as a degenerate range (lo = hi)."""
    if words < 1 or sentences < 1:
        raise ValueError("need at least one word and one sentence")
    grade = 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59
    age = grade + base_age
    return normalize_bounds(age, age)


# --- feed-forward network ---

def _init_params(dims, rng):
    params = []
    for d_in, d_out in zip(dims, dims[1:]):
        w = rng.normal(0.0, np.sqrt(2.0 / d_in), size=(d_in, d_out))
        params.append((w, np.zeros(d_out)))
    return params


def _ff_forward(params, X):
    h = X
    acts = [h]
    for w, b in params[:-1]:
        h = np.maximum(h @ w + b, 0.0)
        acts.append(h)
    w, b = params[-1]
    acts.append(h @ w + b)
    return acts


def ff_loss_and_grads(params, X, Y):
    """Mean over samples of the squared error summed over both bounds,
    with its analytic gradient for every weight and bias."""
    n = X.shape[0]
    acts = _ff_forward(params, X)
    pred = acts[-1]
    diff = pred - Y
    loss = float(np.sum(diff * diff) / n)
    grads = [None] * len(params)
    delta = 2.0 * diff / n
    for i in range(len(params) - 1, -1, -1):
        w, _ = params[i]
        grads[i] = (acts[i].T @ delta, delta.sum(axis=0))
        if i > 0:
            delta = (delta @ w.T) * (acts[i] > 0.0)
    return loss, grads


def ff_train(X, Y, config: TrainConfig, schema: str | None = None) -> ModelArtifact:
    """Multilayer perceptron with rectifier hidden layers and two linear
    outputs, trained by adaptive-moment estimation. Inputs and targets are
    standardized per column from the training set (stored in the artifact);
    deterministic for a fixed seed."""
    X, Y = _check_training_input(X, Y)
    n, d = X.shape
    x_mean, x_std = X.mean(axis=0), X.std(axis=0)
    x_std = np.where(x_std == 0.0, 1.0, x_std)
    y_mean, y_std = Y.mean(axis=0), Y.std(axis=0)
    y_std = np.where(y_std == 0.0, 1.0, y_std)
    Xs = (X - x_mean) / x_std
    Ys = (Y - y_mean) / y_std

    rng = np.random.default_rng(config.seed)
    dims = [d] + [config.hidden_units] * config.hidden_layers + [2]
    params = _init_params(dims, rng)
    m = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    v = [(np.zeros_like(w), np.zeros_like(b)) for w, b in params]
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    lr = config.learning_rate
    full_batch = n < config.full_batch_threshold
    step = 0
    for epoch in range(config.epochs):
        if full_batch:
            batches = [np.arange(n)]
        else:
            order = rng.permutation(n)
            batches = [order[i:i + config.batch_size]
                       for i in range(0, n, config.batch_size)]
        for idx in batches:
            loss, grads = ff_loss_and_grads(params, Xs[idx], Ys[idx])
            if not np.isfinite(loss):
                raise RuntimeError(
                    f"training diverged at epoch {epoch}: loss={loss}; "
                    "try a lower learning rate")
            step += 1
            c1 = 1.0 - beta1 ** step
            c2 = 1.0 - beta2 ** step
            for i, ((w, b), (gw, gb)) in enumerate(zip(params, grads)):
                mw, mb = m[i]
                vw, vb = v[i]
                mw = beta1 * mw + (1 - beta1) * gw
                mb = beta1 * mb + (1 - beta1) * gb
                vw = beta2 * vw + (1 - beta2) * gw * gw
                vb = beta2 * vb + (1 - beta2) * gb * gb
                m[i], v[i] = (mw, mb), (vw, vb)
                w = w - lr * (mw / c1) / (np.sqrt(vw / c2) + eps)
                b = b - lr * (mb / c1) / (np.sqrt(vb / c2) + eps)
                params[i] = (w, b)

    final_loss, _ = ff_loss_and_grads(params, Xs, Ys)
    return ModelArtifact(
        kind="ff", version=ARTIFACT_VERSION,
        schema=schema or schema_fingerprint(d),
        params={
            "weights": [w for w, _ in params],
            "biases": [b for _, b in params],
            "x_mean": x_mean, "x_std": x_std,
            "y_mean": y_mean, "y_std": y_std,
        },
        metadata={"config": asdict(config), "n_train": int(n),
                  "final_loss": final_loss},
    )


def ff_gradient_check(hidden_layers: int = 2, hidden_units: int = 3,
                      n_samples: int = 5, n_features: int = 4,
                      seed: int = 0, step: float = 1e-6) -> float:
    """Maximum relative error between analytic gradients and central
    finite differences on a tiny network."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n_samples, n_features))
    Y = rng.normal(size=(n_samples, 2))
    dims = [n_features] + [hidden_units] * hidden_layers + [2]
    params = _init_params(dims, rng)
    _, grads = ff_loss_and_grads(params, X, Y)

    worst = 0.0
    for i, (w, b) in enumerate(params):
        for arr, grad in ((w, grads[i][0]), (b, grads[i][1])):
            it = np.nditer(arr, flags=["multi_index"])
            for _ in it:
                j = it.multi_index
                orig = arr[j]
                arr[j] = orig + step
                up, _ = ff_loss_and_grads(params, X, Y)
                arr[j] = orig - step
                down, _ = ff_loss_and_grads(params, X, Y)
                arr[j] = orig
                numeric = (up - down) / (2 * step)
                denom = max(abs(numeric), abs(grad[j]), 1.0)
                worst = max(worst, abs(numeric - grad[j]) / denom)
    return worst


# --- random forest ---

def rf_train(X, Y, config: TrainConfig, schema: str | None = None) -> ModelArtifact:
    """Forest of regression trees with a variance-reduction split
    criterion, predicting both bounds jointly (leaf means over pairs).

    Deterministic for a fixed seed."""
    X, Y = _check_training_input(X, Y)
    forest = RandomForestRegressor(
        n_estimators=config.n_estimators,
        criterion="squared_error",
        random_state=config.seed,
    )
    forest.fit(X, Y)
    return ModelArtifact(
        kind="rf", version=ARTIFACT_VERSION,
        schema=schema or schema_fingerprint(X.shape[1]),
        params={"forest": forest},
        metadata={"config": asdict(config), "n_train": int(X.shape[0])},
    )


# --- prediction ---

def predict_raw(artifact: ModelArtifact, X) -> np.ndarray:
    """Raw (lo, hi) rows before normalization."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if artifact.kind == "naive":
        p = artifact.params
        return np.tile([p["mean_lo"], p["mean_hi"]], (X.shape[0], 1))
    if artifact.kind == "ff":
        p = artifact.params
        _check_schema(artifact, X)
        Xs = (X - p["x_mean"]) / p["x_std"]
        out = _ff_forward(list(zip(p["weights"], p["biases"])), Xs)[-1]
        return out * p["y_std"] + p["y_mean"]
    if artifact.kind == "rf":
        _check_schema(artifact, X)
        return np.atleast_2d(artifact.params["forest"].predict(X))
    raise ValueError(f"unknown model kind {artifact.kind!r}")


def _check_schema(artifact: ModelArtifact, X):
    got = f"dim={X.shape[1]}"
    want = artifact.schema
    want_dim = (int(want.split("=", 1)[1]) if want.startswith("dim=")
                else int(want.split(":")[1]))
    if X.shape[1] != want_dim:
        raise ValueError(f"input schema {got} does not match the model's "
                         f"training schema {want}")


def predict(artifact: ModelArtifact, X) -> list[RangePrediction]:
    """Model output per row, bounds swapped into order and clamped to the
    age domain; the flag records whether either adjustment fired."""
    return [normalize_bounds(lo, hi) for lo, hi in predict_raw(artifact, X)]


def aggregate_mean(predictions: list[RangePrediction]) -> RangePrediction:
    """Per-bound arithmetic mean over sentence predictions; any normalized
    member marks the aggregate as normalized too."""
    if not predictions:
        raise ValueError("cannot aggregate an empty prediction list")
    # fsum is correctly rounded, so the mean is permutation-invariant
    lo = math.fsum(p.lo for p in predictions) / len(predictions)
    hi = math.fsum(p.hi for p in predictions) / len(predictions)
    agg = normalize_bounds(lo, hi)
    if any(p.normalized for p in predictions) and not agg.normalized:
        agg = RangePrediction(agg.lo, agg.hi, normalized=True)
    return agg


# --- persistence ---
#
# Artifact file layout: a pickled dict with a header
# {magic, format_version, kind, schema, metadata} and a `params` block
# whose content depends on the kind.

def save_model(artifact: ModelArtifact, path) -> None:
    payload = {
        "magic": ARTIFACT_MAGIC,
        "format_version": artifact.version,
        "kind": artifact.kind,
        "schema": artifact.schema,
        "metadata": artifact.metadata,
        "params": artifact.params,
    }
    with open(path, "wb") as f:
        pickle.dump(payload, f)


def load_model(path) -> ModelArtifact:
    try:
        with open(path, "rb") as f:
            payload = pickle.load(f)
    except (pickle.UnpicklingError, EOFError, AttributeError) as exc:
        raise ValueError(f"{path}: not a valid model artifact: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("magic") != ARTIFACT_MAGIC:
        raise ValueError(f"{path}: not a model artifact file")
    version = payload.get("format_version")
    if version != ARTIFACT_VERSION:
        raise ValueError(f"{path}: unsupported artifact version {version!r}; "
                         f"this build reads version {ARTIFACT_VERSION}")
    return ModelArtifact(
        kind=payload["kind"], version=version, schema=payload["schema"],
        params=payload["params"], metadata=payload["metadata"],
    )
