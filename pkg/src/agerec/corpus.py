"""Corpus ingestion, segmentation, splitting, statistics, and a synthetic
corpus generator for tests and demos.

Wire format: one JSON record per line with fields
{id, genre, age_min, age_max, text, optional sentences[], optional
conllu_path, optional source}. When `sentences` is absent the text is split
by the annotation module's sentence splitter.
"""

from __future__ import annotations

import json
import logging
import random
import re
from dataclasses import dataclass, field, replace

from .annotation import sentence_split
from .ranges import AgeRange

log = logging.getLogger(__name__)

GENRES = ("encyclopedia", "newspaper", "fiction", "other")

SEGMENT_SEP = "#"


@dataclass(frozen=True)
class Document:
    id: str
    genre: str
    age: AgeRange
    sentences: tuple[str, ...]
    text: str = ""
    source: str | None = None
    conllu_path: str | None = None

    @property
    def origin(self) -> str:
        """Id of the original text this document was segmented from."""
        return self.id.split(SEGMENT_SEP, 1)[0]

    @property
    def n_chars(self) -> int:
        return len(self.text) if self.text else sum(len(s) for s in self.sentences)


@dataclass(frozen=True)
class SentenceRecord:
    doc_id: str
    index: int
    text: str
    age: AgeRange


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.683
    validation_fraction: float = 0.165
    test_fraction: float = 0.152
    seed: int = 0

    def __post_init__(self):
        fracs = (self.train_fraction, self.validation_fraction, self.test_fraction)
        if not all(0 < f < 1 for f in fracs):
            raise ValueError("split fractions must lie in (0, 1)")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise ValueError(f"split fractions must sum to 1, got {sum(fracs)}")


Corpus = list[Document]


def load_corpus(path) -> Corpus:
    """Read and validate a line-delimited corpus file.

    Structural violations (bad JSON, lo > hi, duplicate id) are hard errors
    naming the line; an unknown genre degrades to "other" with a warning.
    """
    docs: Corpus = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed record: {exc}") from exc
            doc_id = rec.get("id")
            if not doc_id:
                raise ValueError(f"{path}:{lineno}: record missing id")
            if doc_id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            try:
                age = AgeRange(float(rec["age_min"]), float(rec["age_max"]))
            except KeyError as exc:
                raise ValueError(f"{path}:{lineno}: id {doc_id!r} missing "
                                 f"age bound {exc}") from exc
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: id {doc_id!r}: {exc}") from exc
            genre = rec.get("genre", "other")
            if genre not in GENRES:
                log.warning("%s:%d: id %r has unknown genre %r, using 'other'",
                            path, lineno, doc_id, genre)
                genre = "other"
            text = rec.get("text", "")
            sentences = rec.get("sentences")
            if sentences is None:
                sentences = sentence_split(text)
            if not sentences:
                raise ValueError(f"{path}:{lineno}: id {doc_id!r} has no "
                                 "sentences and no splittable text")
            docs.append(Document(
                id=doc_id, genre=genre, age=age, sentences=tuple(sentences),
                text=text, source=rec.get("source"),
                conllu_path=rec.get("conllu_path"),
            ))
    return docs


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for doc in corpus:
            rec = {"id": doc.id, "genre": doc.genre,
                   "age_min": doc.age.lo, "age_max": doc.age.hi,
                   "text": doc.text, "sentences": list(doc.sentences)}
            if doc.source:
                rec["source"] = doc.source
            if doc.conllu_path:
                rec["conllu_path"] = doc.conllu_path
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


_PARA_SPLIT = re.compile(r"\n\s*\n")


def segment_long_documents(corpus: Corpus, max_chars: int = 10_000,
                           target_chars: int = 5_000) -> Corpus:
    """Split documents above max_chars on paragraph (blank-line) boundaries
    into segments of roughly target_chars; segments keep the source age and
    get suffixed ids (doc#1, doc#2, ...)."""
    out: Corpus = []
    for doc in corpus:
        if doc.n_chars <= max_chars:
            out.append(doc)
            continue
        paragraphs = [p for p in _PARA_SPLIT.split(doc.text) if p.strip()]
        if len(paragraphs) <= 1:
            log.warning("document %r exceeds %d chars but has no paragraph "
                        "boundaries; left unsegmented", doc.id, max_chars)
            out.append(doc)
            continue
        groups: list[list[str]] = [[]]
        size = 0
        for para in paragraphs:
            if groups[-1] and size + len(para) > target_chars:
                groups.append([])
                size = 0
            groups[-1].append(para)
            size += len(para)
        for i, group in enumerate(groups, 1):
            text = "\n\n".join(group)
            out.append(replace(
                doc,
                id=f"{doc.id}{SEGMENT_SEP}{i}",
                text=text,
                sentences=tuple(s for p in group for s in sentence_split(p)),
            ))
    return out


def split_corpus(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Partition at original-text granularity: all segments of one source
    text land in the same subset. Deterministic for a fixed seed."""
    by_origin: dict[str, list[Document]] = {}
    for doc in corpus:
        by_origin.setdefault(doc.origin, []).append(doc)
    origins = sorted(by_origin)
    if len(origins) < 3:
        raise ValueError(f"corpus has {len(origins)} original texts; "
                         "need at least 3 to populate train/validation/test")
    rng = random.Random(spec.seed)
    rng.shuffle(origins)
    n = len(origins)
    n_train = max(1, round(n * spec.train_fraction))
    n_val = max(1, round(n * spec.validation_fraction))
    n_train = min(n_train, n - 2)
    n_val = min(n_val, n - n_train - 1)
    buckets = (origins[:n_train],
               origins[n_train:n_train + n_val],
               origins[n_train + n_val:])
    order = {doc.id: i for i, doc in enumerate(corpus)}
    splits = []
    for bucket in buckets:
        docs = [d for o in bucket for d in by_origin[o]]
        docs.sort(key=lambda d: order[d.id])
        splits.append(docs)
    return tuple(splits)


def explode_sentences(corpus: Corpus) -> list[SentenceRecord]:
    """One record per sentence, doc-major order, age inherited from the text."""
    return [SentenceRecord(doc.id, i, sent, doc.age)
            for doc in corpus
            for i, sent in enumerate(doc.sentences)]


def _word_count(sentence: str) -> int:
    return sum(1 for t in sentence.split() if any(c.isalpha() for c in t))


def corpus_stats(corpus: Corpus) -> dict:
    """Per-genre and overall counts plus average age range and mean age.

    Genres with no documents are absent from the table."""
    def bucket(docs: Corpus) -> dict:
        n_sent = sum(len(d.sentences) for d in docs)
        n_tok = sum(_word_count(s) for d in docs for s in d.sentences)
        return {
            "texts": len(docs),
            "sentences": n_sent,
            "tokens": n_tok,
            "avg_age_lo": sum(d.age.lo for d in docs) / len(docs),
            "avg_age_hi": sum(d.age.hi for d in docs) / len(docs),
            "avg_mean_age": sum(d.age.mean for d in docs) / len(docs),
        }

    stats: dict = {"genres": {}}
    for genre in GENRES:
        docs = [d for d in corpus if d.genre == genre]
        if docs:
            stats["genres"][genre] = bucket(docs)
    stats["overall"] = bucket(corpus) if corpus else {
        "texts": 0, "sentences": 0, "tokens": 0,
        "avg_age_lo": 0.0, "avg_age_hi": 0.0, "avg_mean_age": 0.0}
    return stats


def age_distribution(corpus: Corpus, max_age: int = 18) -> dict:
    """Counts per integer age: an item with range [a, b] is counted for
    every integer x with a <= x <= b."""
    texts = [0] * (max_age + 1)
    sentences = [0] * (max_age + 1)
    for doc in corpus:
        for x in range(max_age + 1):
            if doc.age.contains(x):
                texts[x] += 1
                sentences[x] += len(doc.sentences)
    return {"texts": texts, "sentences": sentences}


# --- synthetic corpus generator ---

# age ranges observed in the reference statistics tables
OBSERVED_AGE_RANGES = (
    (0, 3), (3, 5), (3, 6), (3, 7), (3, 8), (4, 8), (4, 9), (5, 9),
    (6, 8), (6, 9), (7, 11), (7, 12), (8, 10), (8, 11), (8, 12), (8, 13),
    (10, 12), (10, 13), (10, 14), (11, 13), (12, 14), (14, 18),
)

_EASY_WORDS = (
    "le chat la vache un ami une pomme il rit elle dort on joue papa "
    "maman bébé jeu eau lit vélo sac bol riz thé mer roi fée loup ours "
    "nid oeuf pain lait miel coq âne chien oiseau poisson fleur arbre "
    "soleil lune ciel").split()
_MID_WORDS = (
    "maison jardin histoire animal voyage montagne rivière village "
    "fenêtre cheval travail musique couleur semaine toujours pendant "
    "famille chambre cuisine bateau avion train route forêt île plage "
    "marché école classe cahier").split()
_HARD_WORDS = (
    "gouvernement extraordinaire développement caractéristique "
    "indépendance révolutionnaire métamorphose paléontologie "
    "constitutionnel parallélépipède incompréhensible institutionnaliser "
    "interdisciplinaire phosphorescence anticonstitutionnellement "
    "bureaucratie photosynthèse jurisprudence épistémologie "
    "thermodynamique").split()


def generate_synthetic_corpus(seed: int, size: int,
                              difficulty_model: str = "default") -> Corpus:
    """Deterministic corpus whose sentence length, word length, and
    rare-word rate grow with the assigned age, so regressors have signal
    to learn. Not natural French."""
    if size <= 0:
        raise ValueError("size must be > 0")
    if difficulty_model != "default":
        raise ValueError(f"unknown difficulty profile {difficulty_model!r}")
    rng = random.Random(seed)
    docs: Corpus = []
    for i in range(size):
        lo, hi = OBSERVED_AGE_RANGES[rng.randrange(len(OBSERVED_AGE_RANGES))]
        mu = (lo + hi) / 2
        genre = GENRES[rng.randrange(3)]
        # difficulty in [0, 1] drives sentence length and vocabulary
        diff = min(1.0, mu / 16.0)
        n_sentences = rng.randint(4, 8)
        sentences = []
        for _ in range(n_sentences):
            n_words = max(3, int(round(3 + 12 * diff + rng.gauss(0, 1))))
            words = []
            for _ in range(n_words):
                u = rng.random()
                if u < diff * 0.5:
                    pool = _HARD_WORDS
                elif u < diff:
                    pool = _MID_WORDS
                else:
                    pool = _EASY_WORDS if diff < 0.5 else _MID_WORDS
                words.append(pool[rng.randrange(len(pool))])
            sentence = " ".join(words)
            sentences.append(sentence[0].upper() + sentence[1:] + ".")
        text = "\n\n".join(" ".join(sentences[j:j + 3])
                           for j in range(0, len(sentences), 3))
        docs.append(Document(
            id=f"synth-{seed}-{i:04d}", genre=genre,
            age=AgeRange(float(lo), float(hi)),
            sentences=tuple(sentences), text=text, source="synthetic",
        ))
    return docs
