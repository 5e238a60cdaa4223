"""Text → annotation → features → model input, shared by the CLI and the
HTTP service."""

from __future__ import annotations

import numpy as np

from .annotation import heuristic_annotate, sentence_split, tokenize
from .features import (
    REGISTRY,
    FeatureVector,
    ResourceBundle,
    aggregate_text_features,
    extract_sentence_features,
)


def annotate_sentence(text: str):
    return heuristic_annotate(tokenize(text))


def sentence_features(text: str, resources: ResourceBundle) -> FeatureVector:
    return extract_sentence_features(annotate_sentence(text), resources)


def document_features(doc, resources: ResourceBundle) -> FeatureVector:
    vectors = [sentence_features(s, resources) for s in doc.sentences]
    return aggregate_text_features(vectors)


def corpus_matrix(corpus, resources: ResourceBundle,
                  level: str = "text"):
    """Feature matrix + ids + (lo, hi) target rows for a corpus.

    level "text": one row per document (sentence features averaged);
    level "sentence": one row per sentence, ids "docid::index".
    """
    ids, rows, targets = [], [], []
    if level == "text":
        for doc in corpus:
            ids.append(doc.id)
            rows.append(document_features(doc, resources).values)
            targets.append((doc.age.lo, doc.age.hi))
    elif level == "sentence":
        for doc in corpus:
            for i, sent in enumerate(doc.sentences):
                ids.append(f"{doc.id}::{i}")
                rows.append(sentence_features(sent, resources).values)
                targets.append((doc.age.lo, doc.age.hi))
    else:
        raise ValueError(f"unknown level {level!r}; use 'text' or 'sentence'")
    return np.asarray(rows), ids, np.asarray(targets)


def split_text(text: str) -> list[str]:
    return sentence_split(text)


__all__ = ["REGISTRY", "annotate_sentence", "sentence_features",
           "document_features", "corpus_matrix", "split_text"]
