"""Command-line interface over the whole toolkit.

Defaults may come from three places, highest priority first: explicit
flags, environment variables (AGEREC_<KEY>, e.g. AGEREC_RESOURCES), and a
config file of `key = value` lines passed with --config. Unknown config
keys are rejected. Every randomized subcommand takes a --seed and echoes
it, so runs are reproducible.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import analysis, corpus as corpus_mod, interval_metrics, models
from .annotation import write_conllu
from .features import REGISTRY, ResourceBundle
from .pipeline import annotate_sentence, corpus_matrix
from .ranges import AgeRange

log = logging.getLogger(__name__)

CONFIG_KEYS = {"corpus", "resources", "model", "report", "seed",
               "alpha", "beta", "host", "port"}


def load_run_config(path) -> dict:
    """`key = value` lines; # comments; unknown keys are an error."""
    config = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}; "
                                 f"known keys: {sorted(CONFIG_KEYS)}")
            config[key] = value
    return config


def _setting(args, key: str, default=None):
    """Flag > AGEREC_<KEY> env var > config file > default."""
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    env = os.environ.get(f"AGEREC_{key.upper()}")
    if env is not None:
        return env
    config = getattr(args, "_config", {})
    if key in config:
        return config[key]
    return default


def _resources(args) -> ResourceBundle:
    directory = _setting(args, "resources")
    if directory:
        return ResourceBundle.load(__import__("pathlib").Path(directory))
    return ResourceBundle.load_default()


def _echo_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _write_predictions(path, rows) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("id\tlo\thi\tmu\tnormalized\n")
        for item_id, p in rows:
            f.write(f"{item_id}\t{p.lo!r}\t{p.hi!r}\t{p.mu!r}\t"
                    f"{int(p.normalized)}\n")


def _read_predictions(path) -> dict:
    preds = {}
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        if header != ["id", "lo", "hi", "mu", "normalized"]:
            raise ValueError(f"{path}: not a prediction file (bad header)")
        for lineno, line in enumerate(f, 2):
            if not line.strip():
                continue
            item_id, lo, hi, _mu, normalized = line.rstrip("\n").split("\t")
            pred = models.normalize_bounds(float(lo), float(hi))
            if normalized == "1" and not pred.normalized:
                pred = models.RangePrediction(pred.lo, pred.hi,
                                              normalized=True)
            preds[item_id] = pred
    return preds


# --- subcommand handlers ---

def cmd_stats(args):
    stats = corpus_mod.corpus_stats(corpus_mod.load_corpus(args.input))
    print(json.dumps(stats, indent=2, sort_keys=True))


def cmd_split(args):
    _echo_seed(args.seed)
    corpus = corpus_mod.load_corpus(args.input)
    spec = corpus_mod.SplitSpec(args.train, args.val, args.test,
                                seed=args.seed)
    train, val, test = corpus_mod.split_corpus(corpus, spec)
    os.makedirs(args.out_dir, exist_ok=True)
    for name, part in (("train", train), ("validation", val), ("test", test)):
        path = os.path.join(args.out_dir, f"{name}.jsonl")
        corpus_mod.save_corpus(part, path)
        print(f"{name}: {len(part)} documents -> {path}")


def cmd_segment(args):
    corpus = corpus_mod.load_corpus(args.input)
    out = corpus_mod.segment_long_documents(corpus, args.max_chars,
                                            args.target_chars)
    corpus_mod.save_corpus(out, args.output)
    print(f"{len(corpus)} documents -> {len(out)} segments")


def cmd_synth(args):
    _echo_seed(args.seed)
    docs = corpus_mod.generate_synthetic_corpus(args.seed, args.size)
    corpus_mod.save_corpus(docs, args.output)
    print(f"wrote {len(docs)} synthetic documents to {args.output}")


def cmd_annotate(args):
    corpus = corpus_mod.load_corpus(args.input)
    annotations = [annotate_sentence(sent)
                   for doc in corpus for sent in doc.sentences]
    write_conllu(annotations, args.output)
    print(f"annotated {len(annotations)} sentences -> {args.output}")


def cmd_features(args):
    corpus = corpus_mod.load_corpus(args.input)
    resources = _resources(args)
    X, ids, _ = corpus_matrix(corpus, resources, level=args.level)
    with open(args.output, "w", encoding="utf-8") as f:
        f.write("id\t" + "\t".join(REGISTRY.names) + "\n")
        for item_id, row in zip(ids, X):
            f.write(item_id + "\t" + "\t".join(f"{v:.6g}" for v in row) + "\n")
    print(f"wrote {len(ids)} feature vectors ({len(REGISTRY)} columns) "
          f"to {args.output}")


def _train_config(args) -> models.TrainConfig:
    return models.TrainConfig(
        kind=args.kind, seed=args.seed, epochs=args.epochs,
        hidden_layers=args.hidden_layers, hidden_units=args.hidden_units,
        n_estimators=args.n_estimators, learning_rate=args.learning_rate,
    )


def cmd_train(args):
    _echo_seed(args.seed)
    corpus = corpus_mod.load_corpus(args.input)
    resources = _resources(args)
    X, _, Y = corpus_matrix(corpus, resources, level=args.level)
    config = _train_config(args)
    schema = models.schema_fingerprint(list(REGISTRY.names))
    if args.kind == "naive":
        artifact = models.naive_fit(Y, schema=schema)
    elif args.kind == "ff":
        artifact = models.ff_train(X, Y, config, schema=schema)
    elif args.kind == "rf":
        artifact = models.rf_train(X, Y, config, schema=schema)
    else:
        raise ValueError(f"unknown model kind {args.kind!r}")
    models.save_model(artifact, args.output)
    print(f"trained {args.kind} model on {len(X)} samples -> {args.output}")


def cmd_predict(args):
    artifact = models.load_model(args.model)
    corpus = corpus_mod.load_corpus(args.input)
    resources = _resources(args)
    X, ids, _ = corpus_matrix(corpus, resources, level=args.level)
    preds = models.predict(artifact, X)
    _write_predictions(args.output, list(zip(ids, preds)))
    print(f"wrote {len(ids)} predictions to {args.output}")


def cmd_evaluate(args):
    preds = _read_predictions(args.pred)
    corpus = corpus_mod.load_corpus(args.input)
    config = interval_metrics.MetricConfig(alpha=args.alpha, beta=args.beta)
    report = analysis.evaluate(preds, corpus, config)
    print(analysis.render_report(report, args.format))


def cmd_aggregate(args):
    preds = _read_predictions(args.pred)
    grouped: dict[str, list] = {}
    for item_id, pred in preds.items():
        doc_id = item_id.rsplit("::", 1)[0]
        grouped.setdefault(doc_id, []).append(pred)
    rows = [(doc_id, models.aggregate_mean(ps))
            for doc_id, ps in grouped.items()]
    _write_predictions(args.output, rows)
    print(f"aggregated {len(preds)} sentence predictions into "
          f"{len(rows)} text-level predictions -> {args.output}")


def cmd_metric_study(args):
    _echo_seed(args.seed)
    if args.study == "default":
        study = interval_metrics.load_default_study()
    else:
        study = interval_metrics.load_study(args.study)
    config = interval_metrics.MetricConfig(alpha=args.alpha, beta=args.beta)
    rows = interval_metrics.run_metric_study(
        study, config=config, random_trials=args.trials, seed=args.seed)
    print("metric\tfootrule_S")
    for name, s in rows:
        print(f"{name}\t{s:.3f}")


def cmd_rank_features(args):
    corpus = corpus_mod.load_corpus(args.input)
    resources = _resources(args)
    X, _, Y = corpus_matrix(corpus, resources, level=args.level)
    ages = Y.mean(axis=1)
    table = analysis.correlation_ranking(X, REGISTRY.names, ages)
    print(analysis.render_rank_table(table, args.format))


def cmd_ablate(args):
    _echo_seed(args.seed)
    corpus = corpus_mod.load_corpus(args.input)
    resources = _resources(args)
    spec = corpus_mod.SplitSpec(seed=args.seed)
    train, _, test = corpus_mod.split_corpus(corpus, spec)
    X_train, _, Y_train = corpus_matrix(train, resources)
    X_test, _, Y_test = corpus_matrix(test, resources)
    refs_test = [AgeRange(lo, hi) for lo, hi in Y_test]
    config = _train_config(args)
    reduced_mu_e, delta = analysis.ablation(
        args.category, X_train, Y_train, X_test, refs_test, config)
    print(f"category: {args.category}")
    print(f"mu_e without category: {reduced_mu_e:.2f}")
    print(f"delta vs full model: {delta:+.2f}")


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    artifact = models.load_model(args.model)
    resources = _resources(args)
    host = _setting(args, "host", "127.0.0.1")
    port = int(_setting(args, "port", 8000))
    app = create_app(artifact, resources,
                     model_id=os.path.basename(str(args.model)),
                     max_body_bytes=args.max_body)
    uvicorn.run(app, host=host, port=port)


# --- argument parsing ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agerec",
        description="Reader-age-range recommendation toolkit for French texts")
    parser.add_argument("--config", help="key = value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(handler=handler)
        return p

    p = add("stats", cmd_stats, help="corpus statistics")
    p.add_argument("--in", dest="input", required=True)

    p = add("split", cmd_split, help="train/validation/test split")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--train", type=float, default=0.683)
    p.add_argument("--val", type=float, default=0.165)
    p.add_argument("--test", type=float, default=0.152)
    p.add_argument("--seed", type=int, default=0)

    p = add("segment", cmd_segment, help="segment over-long documents")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--max-chars", type=int, default=10_000)
    p.add_argument("--target-chars", type=int, default=5_000)

    p = add("synth", cmd_synth, help="generate a synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("annotate", cmd_annotate,
            help="heuristic annotation as CoNLL-U")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("features", cmd_features, help="emit 107-column feature vectors")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--level", choices=("text", "sentence"), default="text")
    p.add_argument("--resources")

    p = add("train", cmd_train, help="train a model")
    p.add_argument("--kind", choices=("naive", "ff", "rf"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--level", choices=("text", "sentence"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--hidden-layers", type=int, default=6)
    p.add_argument("--hidden-units", type=int, default=200)
    p.add_argument("--n-estimators", type=int, default=100)
    p.add_argument("--learning-rate", type=float, default=1e-3)
    p.add_argument("--resources")

    p = add("predict", cmd_predict, help="predict age ranges")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--level", choices=("text", "sentence"), default="text")
    p.add_argument("--resources")

    p = add("evaluate", cmd_evaluate, help="score predictions")
    p.add_argument("--pred", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0 / 3.0)
    p.add_argument("--format", choices=("table", "records"), default="table")

    p = add("aggregate", cmd_aggregate,
            help="mean-aggregate sentence predictions per text")
    p.add_argument("--pred", required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("metric-study", cmd_metric_study,
            help="Spearman footrule per metric against the oracle ranking")
    p.add_argument("--study", default="default")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0 / 3.0)

    p = add("rank-features", cmd_rank_features,
            help="correlation ranking of features against mean age")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--level", choices=("text", "sentence"), default="text")
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.add_argument("--resources")

    p = add("ablate", cmd_ablate, help="retrain without a feature category")
    p.add_argument("--category", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", default="ff")
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--hidden-layers", type=int, default=6)
    p.add_argument("--hidden-units", type=int, default=200)
    p.add_argument("--n-estimators", type=int, default=100)
    p.add_argument("--learning-rate", type=float, default=1e-3)
    p.add_argument("--resources")

    p = add("serve", cmd_serve, help="run the recommendation HTTP service")
    p.add_argument("--model", required=True)
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--max-body", type=int, default=64 * 1024)
    p.add_argument("--resources")

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    args._config = load_run_config(args.config) if args.config else {}
    try:
        args.handler(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
