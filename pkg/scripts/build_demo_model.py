#!/usr/bin/env python3
"""End-to-end demo: synthesize a corpus, train a random-forest model, save
the artifact, and print the command that serves it over HTTP."""

import argparse

from agerec import corpus as corpus_mod
from agerec import models
from agerec.features import REGISTRY, ResourceBundle
from agerec.pipeline import corpus_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo-model.bin")
    parser.add_argument("--size", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(f"seed: {args.seed}")

    corpus = corpus_mod.generate_synthetic_corpus(seed=args.seed,
                                                  size=args.size)
    resources = ResourceBundle.load_default()
    X, _, Y = corpus_matrix(corpus, resources)
    artifact = models.rf_train(
        X, Y, models.TrainConfig(kind="rf", seed=args.seed),
        schema=models.schema_fingerprint(list(REGISTRY.names)))
    models.save_model(artifact, args.out)
    print(f"model saved to {args.out}")
    print(f"serve it with:  agerec serve --model {args.out} --port 8000")


if __name__ == "__main__":
    main()
