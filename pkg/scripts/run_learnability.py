#!/usr/bin/env python3
"""Train the naive, feed-forward, and random-forest models on a seeded
synthetic corpus and report test-set μE / θ-L2 / β-IE for each."""

import argparse
import time

import numpy as np

from agerec import corpus as corpus_mod
from agerec import models
from agerec.analysis import evaluate, render_report
from agerec.corpus import SplitSpec, generate_synthetic_corpus, split_corpus
from agerec.features import ResourceBundle
from agerec.pipeline import corpus_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=300)
    parser.add_argument("--seed", type=int, default=20)
    parser.add_argument("--epochs", type=int, default=500)
    args = parser.parse_args()
    print(f"seed: {args.seed}")

    corpus = generate_synthetic_corpus(seed=args.seed, size=args.size)
    resources = ResourceBundle.load_default()
    train, val, test = split_corpus(corpus,
                                    SplitSpec(0.7, 0.15, 0.15, seed=1))
    X_train, _, Y_train = corpus_matrix(train, resources)
    X_test, test_ids, _ = corpus_matrix(test, resources)
    print(f"train {len(train)} / validation {len(val)} / test {len(test)}")

    trained = {
        "naive": models.naive_fit(Y_train),
        "ff": models.ff_train(X_train, Y_train,
                              models.TrainConfig(kind="ff", seed=0,
                                                 epochs=args.epochs)),
        "rf": models.rf_train(X_train, Y_train,
                              models.TrainConfig(kind="rf", seed=0)),
    }
    for name, artifact in trained.items():
        start = time.perf_counter()
        preds = dict(zip(test_ids, models.predict(artifact, X_test)))
        report = evaluate(preds, test)
        print(f"\n=== {name} ({time.perf_counter() - start:.1f} s inference"
              f" + evaluation) ===")
        print(render_report(report).split("\n", 2)[0])
        print(render_report(report).split("\n", 2)[1])


if __name__ == "__main__":
    main()
