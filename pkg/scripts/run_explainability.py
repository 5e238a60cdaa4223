#!/usr/bin/env python3
"""Feature-level explanation on a synthetic corpus: Pearson correlation
ranking against mean age, permutation importance of the top features for a
random-forest model, and one category ablation."""

import argparse

import numpy as np

from agerec import models
from agerec.analysis import (
    ablation,
    correlation_ranking,
    permutation_importance_all,
    render_rank_table,
)
from agerec.corpus import SplitSpec, generate_synthetic_corpus, split_corpus
from agerec.features import REGISTRY, ResourceBundle
from agerec.pipeline import corpus_matrix
from agerec.ranges import AgeRange


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=200)
    parser.add_argument("--seed", type=int, default=5)
    parser.add_argument("--category", default="Lexicon",
                        help="feature category to ablate")
    parser.add_argument("--top", type=int, default=15)
    args = parser.parse_args()
    print(f"seed: {args.seed}")

    corpus = generate_synthetic_corpus(seed=args.seed, size=args.size)
    resources = ResourceBundle.load_default()
    train, _, test = split_corpus(corpus, SplitSpec(0.7, 0.15, 0.15, seed=1))
    X_train, _, Y_train = corpus_matrix(train, resources)
    X_test, _, Y_test = corpus_matrix(test, resources)
    refs = [AgeRange(lo, hi) for lo, hi in Y_test]

    print("\n=== correlation ranking vs mean age (top rows) ===")
    table = correlation_ranking(X_train, REGISTRY.names, Y_train.mean(axis=1))
    lines = render_rank_table(table).splitlines()
    print("\n".join(lines[:args.top + 1]))

    print("\n=== permutation importance (random forest, top rows) ===")
    model = models.rf_train(X_train, Y_train,
                            models.TrainConfig(kind="rf", seed=0))
    perm = permutation_importance_all(model, X_test, refs, REGISTRY.names,
                                      seed=args.seed)
    print("\n".join(render_rank_table(perm).splitlines()[:args.top + 1]))

    print(f"\n=== ablation of category {args.category!r} ===")
    cfg = models.TrainConfig(kind="ff", seed=0, epochs=300)
    reduced, delta = ablation(args.category, X_train, Y_train,
                              X_test, refs, cfg)
    print(f"muE without {args.category}: {reduced:.2f}  "
          f"delta vs full model: {delta:+.2f}")


if __name__ == "__main__":
    main()
