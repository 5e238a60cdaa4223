"""The 107 expert linguistic features in 9 categories.

Features are computed per sentence from a SentenceAnnotation plus a
ResourceBundle of lexicons, then averaged to text level. Features whose
inputs are not available from the annotation (dependency trees, phonemes)
are masked, never silently fabricated.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from importlib.resources import files

import numpy as np

from .annotation import (
    COMPOUND_TENSES,
    MOOD_OF,
    SIMPLE_TENSES,
    STATE_VERB_LEMMAS,
    TEMPORAL_SYSTEM,
    SentenceAnnotation,
    canonical_tense,
)

log = logging.getLogger(__name__)

CATEGORIES = ("Lexicon", "Graphemes", "Morphosyntax", "VerbalTenses",
              "PersonNumber", "Dependencies", "Connectors", "Phonetics",
              "Sentiments")

CONNECTOR_CATEGORIES = (
    "addition", "time", "goal", "cause", "comparison", "concession",
    "conclusion", "condition", "consequence", "enumeration", "explanation",
    "illustration", "justification", "opposition", "restriction", "exclusion",
)

EMOTIONS = (
    "neutral", "admiration", "love", "appeasement", "daring", "anger",
    "behavior", "guilt", "disgust", "displeasure", "desire", "embarrassment",
    "empathy", "pride", "impassibility", "inhumanity", "jealousy", "joy",
    "contempt", "unspecified", "arrogance", "fear", "resentment", "surprise",
    "sadness",
)

_TENSE_FEATURE = {t: "Tense" + "".join(p.capitalize() for p in t.split("_"))
                  + "Proportion" for t in SIMPLE_TENSES + COMPOUND_TENSES}


def _build_registry() -> list[tuple[str, str]]:
    entries: list[tuple[str, str]] = []

    def add(category, *names):
        entries.extend((n, category) for n in names)

    add("Lexicon", "WordLogProbMean", "WordLogProbStd", "LemmaDiversity",
        "WordFreqMean", "WordFreqStd")
    add("Graphemes", "ConfusabilityMean", "ConfusabilityStd",
        "WordLengthMean", "WordLengthStd", "CharsPerWord", "PunctuationRatio")
    add("Morphosyntax", "VerbProportion", "StateVerbProportion",
        "NounProportion", "AdjectiveProportion", "CliticProportion",
        "TemporalAdverbProportion", "StopwordsProportion")
    add("VerbalTenses", "TenseDiversity",
        *[_TENSE_FEATURE[t] for t in SIMPLE_TENSES],
        *[_TENSE_FEATURE[t] for t in COMPOUND_TENSES],
        "TemporalSystemDiversity",
        "SystemPastProportion", "SystemPresentProportion",
        "SystemFutureProportion",
        "SimpleTenseProportion", "CompoundTenseProportion",
        "ModeInfinitiveProportion", "ModeIndicativeProportion",
        "ModeSubjunctiveProportion")
    add("PersonNumber", "FirstPersonProportion", "SecondPersonProportion",
        "ThirdPersonProportion", "SingularProportion", "PluralProportion")
    add("Dependencies", "SentenceLength", "HeadDistanceAvg", "HeadDistanceMax",
        "DependentsPerWordMean", "DependentsPerWordStd",
        "PointedDistanceMean", "PointedDistanceStd", "TreeDepth")
    add("Connectors", *[f"Connector{c.capitalize()}Proportion"
                        for c in CONNECTOR_CATEGORIES])
    add("Phonetics", "PhonemeNumberSentence", "PhonemeDiversitySentence",
        "PhonemeFrequency", "PhonemeProbAvg", "PhonemeProbStd",
        "PhonemeDiversityAvg", "PhonemeDiversityStd",
        "PhonemeNumberAvg", "PhonemeNumberStd")
    add("Sentiments", "SubjectivityScore", "PolarityScore",
        *[f"Emotion{e.capitalize()}Proportion" for e in EMOTIONS])
    return entries


class FeatureRegistry:
    """Ordered, immutable listing of the 107 feature names and categories."""

    def __init__(self):
        self.entries = _build_registry()
        self.names = tuple(n for n, _ in self.entries)
        self.categories = tuple(c for _, c in self.entries)
        self.index = {n: i for i, (n, _) in enumerate(self.entries)}
        counts = {c: self.categories.count(c) for c in CATEGORIES}
        expected = dict(zip(CATEGORIES, (5, 6, 7, 24, 5, 8, 16, 9, 27)))
        assert counts == expected, counts
        assert len(self.entries) == 107

    def __len__(self):
        return len(self.entries)

    def category_indices(self, category: str) -> list[int]:
        if category not in CATEGORIES:
            raise KeyError(f"unknown feature category {category!r}")
        return [i for i, c in enumerate(self.categories) if c == category]


REGISTRY = FeatureRegistry()

# features that are plain counts, defined (as 0) even on an empty sentence
_COUNT_FEATURES = {"SentenceLength", "PhonemeNumberSentence",
                   "PhonemeDiversitySentence", "TenseDiversity",
                   "TemporalSystemDiversity", "HeadDistanceMax", "TreeDepth"}


@dataclass
class FeatureVector:
    values: np.ndarray  # shape (107,)
    mask: np.ndarray    # shape (107,), True = actually computed

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.values.shape != (len(REGISTRY),) or self.mask.shape != (len(REGISTRY),):
            raise ValueError("feature vector must have exactly "
                             f"{len(REGISTRY)} entries")
        if np.any(self.values[~self.mask] != 0.0):
            raise ValueError("masked-off features must be zero")


def feature_by_name(vector: FeatureVector, name: str) -> float:
    if name not in REGISTRY.index:
        raise KeyError(f"unknown feature name {name!r}")
    return float(vector.values[REGISTRY.index[name]])


# --- resources ---

def _read_rows(path, n_cols):
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != n_cols:
                raise ValueError(f"{path}:{lineno}: expected {n_cols} "
                                 f"tab-separated columns")
            rows.append(cols)
    return rows


@dataclass
class ResourceBundle:
    """External lexical constants the features consume."""

    word_logprob: dict[str, float]
    stopwords: frozenset[str]
    grapheme_confusion: dict[tuple[str, str], float]
    phoneme_prob: dict[str, float]
    connectors: dict[str, str]
    emotions: dict[str, str]
    polarity: dict[str, tuple[float, float]]  # word -> (polarity, subjectivity)
    oov_logprob: float = field(init=False)

    def __post_init__(self):
        if len(self.stopwords) != 114:
            raise ValueError(f"stop-word list must have 114 entries, "
                             f"got {len(self.stopwords)}")
        bad = set(self.connectors.values()) - set(CONNECTOR_CATEGORIES)
        if bad:
            raise ValueError(f"unknown connector categories: {sorted(bad)}")
        bad = set(self.emotions.values()) - set(EMOTIONS)
        if bad:
            raise ValueError(f"unknown emotions: {sorted(bad)}")
        # out-of-lexicon words get the floor log probability
        self.oov_logprob = min(self.word_logprob.values(), default=-10.0) - 2.0

    @classmethod
    def load(cls, directory) -> "ResourceBundle":
        d = directory
        word_logprob = {w: float(lp) for w, lp in _read_rows(
            d / "word_logprob.tsv", 2)}
        stopwords = frozenset(r[0] for r in _read_rows(d / "stopwords.txt", 1))
        confusion = {(a, b): float(s) for a, b, s in _read_rows(
            d / "grapheme_confusion.tsv", 3)}
        try:
            phoneme_prob = {p: float(v) for p, v in _read_rows(
                d / "phoneme_prob.tsv", 2)}
        except FileNotFoundError:
            log.warning("phoneme probability table missing; "
                        "falling back to a uniform distribution")
            from .annotation import PHONEME_INVENTORY
            phoneme_prob = {p: 1.0 / len(PHONEME_INVENTORY)
                            for p in PHONEME_INVENTORY}
        connectors = {w: c for w, c in _read_rows(d / "connectors.tsv", 2)}
        emotions = {w: e for w, e in _read_rows(d / "emotions.tsv", 2)}
        polarity = {w: (float(p), float(s)) for w, p, s in _read_rows(
            d / "polarity.tsv", 3)}
        return cls(word_logprob, stopwords, confusion, phoneme_prob,
                   connectors, emotions, polarity)

    @classmethod
    def load_default(cls) -> "ResourceBundle":
        log.info("loading bundled sample lexicons; supply a resource "
                 "directory for full-coverage features")
        return cls.load(files("agerec").joinpath("resources"))


def _mean_std(xs) -> tuple[float, float]:
    arr = np.asarray(list(xs), dtype=float)
    if arr.size == 0:
        return 0.0, 0.0
    return float(arr.mean()), float(arr.std())


def extract_sentence_features(annotation: SentenceAnnotation,
                              resources: ResourceBundle) -> FeatureVector:
    """Compute all 107 features; mask the ones the annotation cannot support."""
    n = len(REGISTRY)
    values = np.zeros(n)
    mask = np.ones(n, dtype=bool)
    idx = REGISTRY.index

    def put(name, value):
        values[idx[name]] = float(value)

    def mask_off(names):
        for name in names:
            mask[idx[name]] = False
            values[idx[name]] = 0.0

    tokens = annotation.tokens
    words = [t for t in tokens if t.is_word]
    n_words = len(words)

    if n_words == 0:
        mask[:] = False
        for name in _COUNT_FEATURES:
            mask[idx[name]] = True
        return FeatureVector(values, mask)

    lowered = [t.surface.lower().replace("’", "'") for t in words]

    # Lexicon
    logprobs = [resources.word_logprob.get(w, resources.oov_logprob)
                for w in lowered]
    m, s = _mean_std(logprobs)
    put("WordLogProbMean", m)
    put("WordLogProbStd", s)
    lemmas = {(t.lemma or t.surface.lower()) for t in words}
    put("LemmaDiversity", len(lemmas) / n_words)
    freqs = [math.exp(lp) for lp in logprobs]
    m, s = _mean_std(freqs)
    put("WordFreqMean", m)
    put("WordFreqStd", s)

    # Graphemes
    def confusability(word):
        return sum(resources.grapheme_confusion.get((a, b), 0.0)
                   for a, b in zip(word, word[1:]))
    m, s = _mean_std(confusability(w) for w in lowered)
    put("ConfusabilityMean", m)
    put("ConfusabilityStd", s)
    m, s = _mean_std(len(w) for w in lowered)
    put("WordLengthMean", m)
    put("WordLengthStd", s)
    n_chars = sum(len(t.surface) for t in tokens)
    n_punct = sum(1 for t in tokens if not t.is_word)
    put("CharsPerWord", n_chars / n_words)
    put("PunctuationRatio", n_punct / n_words)

    # Morphosyntax, tenses, person/number need part-of-speech tags
    has_pos = any(t.upos for t in tokens)
    verbs = [t for t in words if t.upos in ("VERB", "AUX")]
    if has_pos:
        put("VerbProportion", len(verbs) / n_words)
        put("StateVerbProportion",
            sum(1 for t in verbs if (t.lemma or "") in STATE_VERB_LEMMAS)
            / n_words)
        put("NounProportion",
            sum(1 for t in words if t.upos in ("NOUN", "PROPN")) / n_words)
        put("AdjectiveProportion",
            sum(1 for t in words if t.upos == "ADJ") / n_words)
        put("CliticProportion",
            sum(1 for t in words if t.upos == "PRON") / n_words)
        put("TemporalAdverbProportion",
            sum(1 for t in words
                if t.upos == "ADV" and (t.feats or {}).get("AdvType") == "Tim")
            / n_words)
    else:
        mask_off(["VerbProportion", "StateVerbProportion", "NounProportion",
                  "AdjectiveProportion", "CliticProportion",
                  "TemporalAdverbProportion"])
    put("StopwordsProportion",
        sum(1 for w in lowered if w in resources.stopwords) / n_words)

    # Verbal tenses
    tense_names = [canonical_tense(t) for t in verbs]
    tenses = [t for t in tense_names if t]
    if has_pos:
        n_verbs = max(len(tenses), 1)
        put("TenseDiversity", len(set(tenses)))
        for t in SIMPLE_TENSES + COMPOUND_TENSES:
            put(_TENSE_FEATURE[t], tenses.count(t) / n_verbs)
        systems = [TEMPORAL_SYSTEM[t] for t in tenses]
        put("TemporalSystemDiversity", len(set(systems)))
        for sysname in ("past", "present", "future"):
            put(f"System{sysname.capitalize()}Proportion",
                systems.count(sysname) / n_verbs)
        put("SimpleTenseProportion",
            sum(1 for t in tenses if t in SIMPLE_TENSES) / n_verbs)
        put("CompoundTenseProportion",
            sum(1 for t in tenses if t in COMPOUND_TENSES) / n_verbs)
        moods = [MOOD_OF[t] for t in tenses]
        for mood in ("infinitive", "indicative", "subjunctive"):
            put(f"Mode{mood.capitalize()}Proportion",
                moods.count(mood) / n_verbs)

        # Person / number over conjugated verbs
        conj = [t for t in verbs
                if (t.feats or {}).get("VerbForm", "Fin") != "Inf"]
        n_conj = max(len(conj), 1)
        for person, name in (("1", "FirstPersonProportion"),
                             ("2", "SecondPersonProportion"),
                             ("3", "ThirdPersonProportion")):
            put(name, sum(1 for t in conj
                          if (t.feats or {}).get("Person") == person) / n_conj)
        put("SingularProportion",
            sum(1 for t in conj
                if (t.feats or {}).get("Number") == "Sing") / n_conj)
        put("PluralProportion",
            sum(1 for t in conj
                if (t.feats or {}).get("Number") == "Plur") / n_conj)
    else:
        mask_off([name for name, cat in REGISTRY.entries
                  if cat in ("VerbalTenses", "PersonNumber")])

    # Dependencies
    put("SentenceLength", n_words)
    if annotation.has_dependencies:
        head_dists = []
        dependents: dict[int, list[int]] = {}
        for i, t in enumerate(tokens, 1):
            if t.head and t.head > 0:
                head_dists.append(abs(i - t.head))
                dependents.setdefault(t.head, []).append(i)
        put("HeadDistanceAvg", np.mean(head_dists) if head_dists else 0.0)
        put("HeadDistanceMax", max(head_dists, default=0))
        dep_counts = [len(dependents.get(i, []))
                      for i in range(1, len(tokens) + 1)]
        m, s = _mean_std(dep_counts)
        put("DependentsPerWordMean", m)
        put("DependentsPerWordStd", s)
        pointed = [np.mean([abs(i - j) for j in deps])
                   for i, deps in dependents.items()]
        m, s = _mean_std(pointed)
        put("PointedDistanceMean", m)
        put("PointedDistanceStd", s)

        def depth(i, seen=()):
            children = dependents.get(i, [])
            if not children:
                return 0
            return 1 + max(depth(c) for c in children if c not in seen)
        roots = [i for i, t in enumerate(tokens, 1) if t.head == 0]
        put("TreeDepth", depth(roots[0]) if roots else 0)
    else:
        mask_off([name for name in
                  ("HeadDistanceAvg", "HeadDistanceMax",
                   "DependentsPerWordMean", "DependentsPerWordStd",
                   "PointedDistanceMean", "PointedDistanceStd", "TreeDepth")])

    # Connectors
    for cat in CONNECTOR_CATEGORIES:
        put(f"Connector{cat.capitalize()}Proportion",
            sum(1 for w in lowered if resources.connectors.get(w) == cat)
            / n_words)

    # Phonetics
    if annotation.phonemes is not None:
        word_phonemes = [ph for t, ph in zip(tokens, annotation.phonemes)
                         if t.is_word]
        flat = [p for ph in word_phonemes for p in ph]
        put("PhonemeNumberSentence", len(flat))
        put("PhonemeDiversitySentence", len(set(flat)))
        uniform = 1.0 / max(len(resources.phoneme_prob), 1)
        probs = [resources.phoneme_prob.get(p, uniform) for p in flat]
        put("PhonemeFrequency", np.mean(probs) if probs else 0.0)
        ordinariness = [np.mean([resources.phoneme_prob.get(p, uniform)
                                 for p in ph]) if ph else 0.0
                        for ph in word_phonemes]
        m, s = _mean_std(ordinariness)
        put("PhonemeProbAvg", m)
        put("PhonemeProbStd", s)
        m, s = _mean_std(len(set(ph)) for ph in word_phonemes)
        put("PhonemeDiversityAvg", m)
        put("PhonemeDiversityStd", s)
        m, s = _mean_std(len(ph) for ph in word_phonemes)
        put("PhonemeNumberAvg", m)
        put("PhonemeNumberStd", s)
    else:
        mask_off([name for name, cat in REGISTRY.entries
                  if cat == "Phonetics"])

    # Sentiments
    scored = [resources.polarity[w] for w in lowered
              if w in resources.polarity]
    if scored:
        pol = float(np.clip(np.mean([p for p, _ in scored]), -1.0, 1.0))
        subj = float(np.mean([s for _, s in scored]))
    else:
        pol, subj = 0.0, 0.0
    put("PolarityScore", pol)
    put("SubjectivityScore", subj)
    for emo in EMOTIONS:
        put(f"Emotion{emo.capitalize()}Proportion",
            sum(1 for w in lowered if resources.emotions.get(w) == emo)
            / n_words)

    return FeatureVector(values, mask)


def aggregate_text_features(sentence_vectors: list[FeatureVector]) -> FeatureVector:
    """Per-feature arithmetic mean over the sentences where the feature is
    unmasked; the aggregate mask is the conjunction of the sentence masks."""
    if not sentence_vectors:
        raise ValueError("cannot aggregate an empty list of feature vectors")
    values = np.stack([v.values for v in sentence_vectors])
    masks = np.stack([v.mask for v in sentence_vectors])
    counts = masks.sum(axis=0)
    sums = (values * masks).sum(axis=0)
    out = np.divide(sums, counts, out=np.zeros(len(REGISTRY)),
                    where=counts > 0)
    agg_mask = masks.all(axis=0)
    out[~agg_mask] = 0.0
    return FeatureVector(out, agg_mask)


# --- embeddings and input composition ---

class EmbeddingTable:
    """Externally computed sentence vectors keyed by an opaque string."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    def __len__(self):
        return len(self.vectors)

    def get(self, key: str) -> np.ndarray | None:
        return self.vectors.get(key)


def load_embeddings(path) -> EmbeddingTable:
    """File format: key <TAB> space-separated floats, one record per line."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            try:
                key, payload = line.split("\t", 1)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected key<TAB>floats")
            if key in vectors:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            vec = np.array([float(x) for x in payload.split()])
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise ValueError(f"{path}:{lineno}: dimension {vec.size} "
                                 f"does not match established {dim}")
            vectors[key] = vec
    return EmbeddingTable(vectors, dim or 0)


def compose_input(keys: list[str], sources: list) -> tuple[np.ndarray, list[str], int]:
    """Column-wise concatenation of per-key vectors from each source.

    A source is anything with .get(key) -> vector-or-None (EmbeddingTable,
    dict of expert vectors, dict of prediction columns). Keys missing from
    any source are dropped; the drop count is returned.
    """
    if not sources:
        raise ValueError("need at least one vector source")
    rows = []
    kept = []
    dropped = 0
    for key in keys:
        parts = []
        for src in sources:
            vec = src.get(key)
            if vec is None:
                parts = None
                break
            parts.append(np.asarray(vec, dtype=float).ravel())
        if parts is None:
            dropped += 1
            continue
        rows.append(np.concatenate(parts))
        kept.append(key)
    if dropped:
        log.info("compose_input dropped %d of %d records lacking a source",
                 dropped, len(keys))
    matrix = np.stack(rows) if rows else np.empty((0, 0))
    return matrix, kept, dropped


def expert_source(vectors: dict[str, FeatureVector]):
    """Adapt a dict of FeatureVector to the compose_input source protocol."""
    class _Source:
        def get(self, key):
            v = vectors.get(key)
            return None if v is None else v.values
    return _Source()
