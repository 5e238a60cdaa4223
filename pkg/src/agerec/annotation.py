"""Sentence annotation: tokens, part-of-speech, morphology, dependencies,
phonemes.

Annotation is pluggable. The built-in heuristic annotator covers French with
closed-class lexicons and conjugation-suffix tables; it deliberately does not
produce dependency trees, which must come from ingested CoNLL-U files
produced by a real parser.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum

log = logging.getLogger(__name__)

VOWELS = "aeiouyàâäéèêëîïôöùûü"

# abbreviations protected from sentence splitting (must end with a period)
DEFAULT_ABBREVIATIONS = (
    "M.", "MM.", "Mme.", "Mlle.", "Dr.", "St.", "Ste.", "etc.", "cf.",
    "ex.", "p.", "pp.", "av.", "env.", "vol.", "n°.",
)


class Provenance(str, Enum):
    heuristic = "heuristic"
    ingested = "ingested"
    mixed = "mixed"


@dataclass
class Token:
    surface: str
    lemma: str | None = None
    upos: str | None = None
    feats: dict[str, str] | None = None
    head: int | None = None  # 1-based index into the sentence, 0 = root
    deprel: str | None = None

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")

    @property
    def is_word(self) -> bool:
        return any(c.isalpha() for c in self.surface)


@dataclass
class SentenceAnnotation:
    tokens: list[Token] = field(default_factory=list)
    phonemes: list[list[str]] | None = None  # per-token phoneme sequences
    provenance: Provenance = Provenance.heuristic

    @property
    def has_dependencies(self) -> bool:
        return bool(self.tokens) and all(t.head is not None for t in self.tokens)

    def capabilities(self) -> set[str]:
        caps: set[str] = set()
        if any(t.upos for t in self.tokens):
            caps.add("pos")
        if any(t.lemma for t in self.tokens):
            caps.add("lemma")
        if any(t.feats for t in self.tokens):
            caps.add("feats")
        if self.has_dependencies:
            caps.add("dependency")
        if self.phonemes is not None:
            caps.add("phoneme")
        return caps


# --- sentence splitting and tokenization ---

_SENT_END = re.compile(r"([.!?…]+)(\s+)(?=[A-ZÀÂÄÇÉÈÊËÎÏÔÖÙÛÜŒ0-9«\"'])")


def sentence_split(text: str, abbreviations=DEFAULT_ABBREVIATIONS) -> list[str]:
    """Split on sentence-final punctuation followed by whitespace and an
    upper-case letter or digit, protecting known abbreviations."""
    if not text.strip():
        return []
    abbrevs = set(abbreviations)
    sentences = []
    start = 0
    for m in _SENT_END.finditer(text):
        last_word = text[start:m.end(1)].split()[-1] if text[start:m.end(1)].split() else ""
        if last_word in abbrevs:
            continue
        sentences.append(text[start:m.end(1)].strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return [s for s in sentences if s]


_ELISION = re.compile(r"^(qu|[ldjnstcm])['’]", re.IGNORECASE)
_TOKEN = re.compile(
    r"qu['’]|[ldjnstcm]['’](?=\w)|[\w]+(?:-[\w]+)*|[^\w\s]",
    re.IGNORECASE | re.UNICODE,
)


def tokenize(sentence: str) -> list[str]:
    """Whitespace and punctuation tokenization keeping French elisions
    ("l'", "d'", "qu'") as separate apostrophe-final tokens."""
    return _TOKEN.findall(sentence)


# --- heuristic French annotation ---

DETERMINERS = {
    "le", "la", "les", "l'", "un", "une", "des", "du", "au", "aux",
    "ce", "cet", "cette", "ces", "mon", "ton", "son", "ma", "ta", "sa",
    "mes", "tes", "ses", "notre", "votre", "leur", "nos", "vos", "leurs",
    "quel", "quelle", "quels", "quelles", "chaque", "plusieurs", "quelques",
}
CLITICS = {
    "je", "j'", "tu", "il", "elle", "on", "nous", "vous", "ils", "elles",
    "me", "m'", "te", "t'", "se", "s'", "y", "en", "lui", "moi", "toi",
}
PREPOSITIONS = {
    "à", "de", "d'", "dans", "par", "pour", "sur", "avec", "sans", "sous",
    "chez", "entre", "vers", "contre", "depuis", "pendant", "avant",
    "après", "dès", "jusque", "malgré", "parmi", "selon",
}
CONJUNCTIONS = {
    "et", "ou", "mais", "donc", "or", "ni", "car", "que", "qu'", "quand",
    "si", "comme", "lorsque", "puisque", "quoique",
}
TEMPORAL_ADVERBS = {
    "hier", "demain", "aujourd'hui", "bientôt", "tôt", "tard", "souvent",
    "toujours", "jamais", "maintenant", "puis", "ensuite", "alors", "déjà",
    "encore", "autrefois", "désormais", "soudain", "aussitôt", "longtemps",
}
OTHER_ADVERBS = {
    "très", "trop", "peu", "beaucoup", "bien", "mal", "plus", "moins",
    "aussi", "ne", "n'", "pas", "point", "vite", "ici", "là", "ailleurs",
    "presque", "assez", "vraiment", "enfin", "même",
}
ADJECTIVES = {
    "petit", "petite", "petits", "petites", "grand", "grande", "grands",
    "grandes", "beau", "belle", "joli", "jolie", "bon", "bonne", "mauvais",
    "mauvaise", "jeune", "vieux", "vieille", "nouveau", "nouvelle", "gros",
    "grosse", "long", "longue", "rouge", "bleu", "vert", "noir", "blanc",
    "difficile", "facile", "heureux", "heureuse", "triste", "compliqué",
    "compliquée",
}
STATE_VERB_LEMMAS = {
    "être", "sembler", "paraître", "devenir", "demeurer", "rester",
    "avoir", "exister",
}

# (form -> (lemma, tense, person, number)) for the two auxiliaries
AUX_FORMS = {
    "suis": ("être", "present", "1", "Sing"), "es": ("être", "present", "2", "Sing"),
    "est": ("être", "present", "3", "Sing"), "sommes": ("être", "present", "1", "Plur"),
    "êtes": ("être", "present", "2", "Plur"), "sont": ("être", "present", "3", "Plur"),
    "étais": ("être", "imperfect", "1", "Sing"), "était": ("être", "imperfect", "3", "Sing"),
    "étions": ("être", "imperfect", "1", "Plur"), "étiez": ("être", "imperfect", "2", "Plur"),
    "étaient": ("être", "imperfect", "3", "Plur"),
    "fus": ("être", "past_simple", "1", "Sing"), "fut": ("être", "past_simple", "3", "Sing"),
    "furent": ("être", "past_simple", "3", "Plur"),
    "serai": ("être", "future", "1", "Sing"), "sera": ("être", "future", "3", "Sing"),
    "serons": ("être", "future", "1", "Plur"), "seront": ("être", "future", "3", "Plur"),
    "serais": ("être", "conditional_present", "1", "Sing"),
    "serait": ("être", "conditional_present", "3", "Sing"),
    "seraient": ("être", "conditional_present", "3", "Plur"),
    "sois": ("être", "subjunctive_present", "1", "Sing"),
    "soit": ("être", "subjunctive_present", "3", "Sing"),
    "soient": ("être", "subjunctive_present", "3", "Plur"),
    "ai": ("avoir", "present", "1", "Sing"), "as": ("avoir", "present", "2", "Sing"),
    "a": ("avoir", "present", "3", "Sing"), "avons": ("avoir", "present", "1", "Plur"),
    "avez": ("avoir", "present", "2", "Plur"), "ont": ("avoir", "present", "3", "Plur"),
    "avais": ("avoir", "imperfect", "1", "Sing"), "avait": ("avoir", "imperfect", "3", "Sing"),
    "avions": ("avoir", "imperfect", "1", "Plur"), "aviez": ("avoir", "imperfect", "2", "Plur"),
    "avaient": ("avoir", "imperfect", "3", "Plur"),
    "eus": ("avoir", "past_simple", "1", "Sing"), "eut": ("avoir", "past_simple", "3", "Sing"),
    "eurent": ("avoir", "past_simple", "3", "Plur"),
    "aurai": ("avoir", "future", "1", "Sing"), "aura": ("avoir", "future", "3", "Sing"),
    "aurons": ("avoir", "future", "1", "Plur"), "aurez": ("avoir", "future", "2", "Plur"),
    "auront": ("avoir", "future", "3", "Plur"),
    "aurais": ("avoir", "conditional_present", "1", "Sing"),
    "aurait": ("avoir", "conditional_present", "3", "Sing"),
    "auraient": ("avoir", "conditional_present", "3", "Plur"),
    "aie": ("avoir", "subjunctive_present", "1", "Sing"),
    "ait": ("avoir", "subjunctive_present", "3", "Sing"),
    "aient": ("avoir", "subjunctive_present", "3", "Plur"),
}

# maps an auxiliary's simple tense to the compound tense of aux + participle
COMPOUND_OF = {
    "present": "compound_past",
    "imperfect": "pluperfect",
    "future": "future_past",
    "past_simple": "past_past",
    "subjunctive_present": "subjunctive_past",
    "conditional_present": "conditional_past",
    "infinitive": "past_infinitive",
}

SIMPLE_TENSES = ("present", "past_simple", "future", "imperfect",
                 "subjunctive_present", "conditional_present", "infinitive")
COMPOUND_TENSES = ("compound_past", "past_past", "future_past", "pluperfect",
                   "subjunctive_past", "conditional_past", "past_infinitive")

TEMPORAL_SYSTEM = {
    "present": "present", "subjunctive_present": "present",
    "conditional_present": "present", "infinitive": "present",
    "compound_past": "past", "past_simple": "past", "imperfect": "past",
    "pluperfect": "past", "past_past": "past", "subjunctive_past": "past",
    "conditional_past": "past", "past_infinitive": "past",
    "future": "future", "future_past": "future",
}

MOOD_OF = {
    "present": "indicative", "past_simple": "indicative",
    "future": "indicative", "imperfect": "indicative",
    "compound_past": "indicative", "past_past": "indicative",
    "future_past": "indicative", "pluperfect": "indicative",
    "subjunctive_present": "subjunctive", "subjunctive_past": "subjunctive",
    "conditional_present": "conditional", "conditional_past": "conditional",
    "infinitive": "infinitive", "past_infinitive": "infinitive",
}

# conjugation suffixes, longest first: suffix -> (tense, person, number)
_VERB_SUFFIXES = [
    ("eraient", ("conditional_present", "3", "Plur")),
    ("iraient", ("conditional_present", "3", "Plur")),
    ("erions", ("conditional_present", "1", "Plur")),
    ("erait", ("conditional_present", "3", "Sing")),
    ("irait", ("conditional_present", "3", "Sing")),
    ("erais", ("conditional_present", "1", "Sing")),
    ("erons", ("future", "1", "Plur")),
    ("eront", ("future", "3", "Plur")),
    ("irons", ("future", "1", "Plur")),
    ("iront", ("future", "3", "Plur")),
    ("èrent", ("past_simple", "3", "Plur")),
    ("irent", ("past_simple", "3", "Plur")),
    ("aient", ("imperfect", "3", "Plur")),
    ("erez", ("future", "2", "Plur")),
    ("irez", ("future", "2", "Plur")),
    ("era", ("future", "3", "Sing")),
    ("ira", ("future", "3", "Sing")),
    ("erai", ("future", "1", "Sing")),
    ("irai", ("future", "1", "Sing")),
    ("ait", ("imperfect", "3", "Sing")),
    ("ais", ("imperfect", "1", "Sing")),
    ("iez", ("present", "2", "Plur")),
    ("ions", ("present", "1", "Plur")),
    ("ons", ("present", "1", "Plur")),
    ("ez", ("present", "2", "Plur")),
    ("ent", ("present", "3", "Plur")),
]

_PARTICIPLE_SUFFIXES = ("é", "ée", "és", "ées", "i", "is", "it", "u", "us")
_INFINITIVE_SUFFIXES = ("er", "ir", "re")


def _lower(s: str) -> str:
    return s.lower().replace("’", "'")


def _strip_participle(word: str) -> bool:
    return any(word.endswith(s) for s in _PARTICIPLE_SUFFIXES) and len(word) > 2


def _naive_lemma(word: str, upos: str) -> str:
    if upos == "VERB":
        for suf, repl in (("eraient", "er"), ("erait", "er"), ("erons", "er"),
                          ("eront", "er"), ("èrent", "er"), ("era", "er"),
                          ("aient", "er"), ("ait", "er"), ("ons", "er"),
                          ("ez", "er"), ("ent", "er"), ("ées", "er"),
                          ("ée", "er"), ("és", "er"), ("é", "er")):
            if word.endswith(suf):
                return word[: -len(suf)] + repl
        return word
    for suf in ("s", "x"):
        if word.endswith(suf) and len(word) > 3:
            return word[:-1]
    return word


def heuristic_annotate(tokens: list[str],
                       phonemizer=None) -> SentenceAnnotation:
    """Tag a token sequence with lexicon and suffix rules.

    Declares pos, lemma, feats and phoneme capabilities; never dependencies
    (wrong trees are worse than no trees for downstream feature analysis).
    """
    phonemizer = phonemizer or phonemize
    ann = SentenceAnnotation(provenance=Provenance.heuristic)
    out: list[Token] = []
    for i, surface in enumerate(tokens):
        word = _lower(surface)
        prev = out[-1] if out else None
        tok = Token(surface=surface)
        if not any(c.isalpha() for c in surface):
            tok.upos = "PUNCT"
            tok.lemma = surface
        elif word in AUX_FORMS:
            lemma, tense, person, number = AUX_FORMS[word]
            tok.upos = "AUX"
            tok.lemma = lemma
            tok.feats = {"Tense": tense, "Person": person, "Number": number,
                         "VerbForm": "Fin"}
        elif word in DETERMINERS:
            tok.upos, tok.lemma = "DET", word
        elif word in CLITICS:
            tok.upos, tok.lemma = "PRON", word
            number = "Plur" if word in {"nous", "vous", "ils", "elles"} else "Sing"
            person = ("1" if word in {"je", "j'", "me", "m'", "moi", "nous"}
                      else "2" if word in {"tu", "t'", "te", "toi", "vous"}
                      else "3")
            tok.feats = {"Person": person, "Number": number}
        elif word in PREPOSITIONS:
            tok.upos, tok.lemma = "ADP", word
        elif word in CONJUNCTIONS:
            tok.upos, tok.lemma = "CCONJ", word
        elif word in TEMPORAL_ADVERBS:
            tok.upos, tok.lemma = "ADV", word
            tok.feats = {"AdvType": "Tim"}
        elif word in OTHER_ADVERBS:
            tok.upos, tok.lemma = "ADV", word
        elif word in ADJECTIVES:
            tok.upos, tok.lemma = "ADJ", _naive_lemma(word, "ADJ")
        else:
            tagged = False
            # participle after an auxiliary -> compound tense on the verb
            if prev is not None and prev.upos == "AUX" and _strip_participle(word):
                aux_tense = prev.feats["Tense"]
                tok.upos = "VERB"
                tok.lemma = _naive_lemma(word, "VERB")
                tok.feats = {
                    "Tense": COMPOUND_OF.get(aux_tense, "compound_past"),
                    "Person": prev.feats.get("Person", "3"),
                    "Number": prev.feats.get("Number", "Sing"),
                    "VerbForm": "Part",
                }
                tagged = True
            if not tagged:
                for suf, (tense, person, number) in _VERB_SUFFIXES:
                    if word.endswith(suf) and len(word) > len(suf) + 1:
                        tok.upos = "VERB"
                        tok.lemma = _naive_lemma(word, "VERB")
                        tok.feats = {"Tense": tense, "Person": person,
                                     "Number": number, "VerbForm": "Fin"}
                        tagged = True
                        break
            if not tagged and prev is not None and prev.upos == "PRON" \
                    and word.endswith(("t", "d", "e", "s")):
                # clitic + short suffix: 3sg/-s present ("il dort", "tu dors")
                tok.upos = "VERB"
                tok.lemma = _naive_lemma(word, "VERB")
                tok.feats = {"Tense": "present",
                             "Person": prev.feats.get("Person", "3"),
                             "Number": prev.feats.get("Number", "Sing"),
                             "VerbForm": "Fin"}
                tagged = True
            if not tagged and prev is not None and prev.upos == "NOUN" \
                    and word.endswith(("t", "d")):
                tok.upos = "VERB"
                tok.lemma = _naive_lemma(word, "VERB")
                tok.feats = {"Tense": "present", "Person": "3",
                             "Number": "Sing", "VerbForm": "Fin"}
                tagged = True
            if not tagged and word.endswith(_INFINITIVE_SUFFIXES) \
                    and prev is not None and prev.upos in ("VERB", "AUX", "ADP"):
                tok.upos = "VERB"
                tok.lemma = word
                tok.feats = {"Tense": "infinitive", "VerbForm": "Inf"}
                tagged = True
            if not tagged and word.endswith(("eux", "euse", "ible", "able",
                                             "if", "ive")):
                tok.upos = "ADJ"
                tok.lemma = _naive_lemma(word, "ADJ")
                tagged = True
            if not tagged:
                tok.upos = "NOUN"
                tok.lemma = _naive_lemma(word, "NOUN")
        out.append(tok)
    ann.tokens = out
    ann.phonemes = [phonemizer(t.surface) if t.is_word else [] for t in out]
    return ann


def canonical_tense(token: Token) -> str | None:
    """Map a token's morphological feats to one of the 14 tense names.

    Accepts both the heuristic annotator's names and UD-style values
    (Tense=Pres|Mood=Ind etc.) from ingested CoNLL-U.
    """
    if token.upos not in ("VERB", "AUX") or not token.feats:
        return None
    tense = token.feats.get("Tense")
    if tense in TEMPORAL_SYSTEM:
        return tense
    mood = token.feats.get("Mood")
    form = token.feats.get("VerbForm")
    if form == "Inf":
        return "infinitive"
    ud = {("Pres", "Ind"): "present", ("Past", "Ind"): "past_simple",
          ("Fut", "Ind"): "future", ("Imp", "Ind"): "imperfect",
          ("Pres", "Sub"): "subjunctive_present",
          ("Past", "Sub"): "subjunctive_past",
          ("Pres", "Cnd"): "conditional_present",
          ("Past", "Cnd"): "conditional_past"}
    return ud.get((tense, mood))


# --- CoNLL-U ingestion ---

def _check_tree(heads: list[int]) -> bool:
    """True when the head vector forms a single-rooted tree."""
    n = len(heads)
    roots = [i for i, h in enumerate(heads) if h == 0]
    if len(roots) != 1:
        return False
    for start in range(n):
        seen = set()
        i = start
        while heads[i] != 0:
            if i in seen or not (1 <= heads[i] <= n):
                return False
            seen.add(i)
            i = heads[i] - 1
    return True


def load_conllu(path) -> list[SentenceAnnotation]:
    """Parse a 10-column CoNLL-U file into annotations.

    Multiword-token ranges are skipped with a warning; non-tree dependency
    structures drop the dependency fields for that sentence.
    """
    annotations: list[SentenceAnnotation] = []
    tokens: list[Token] = []

    def flush():
        if not tokens:
            return
        heads = [t.head for t in tokens]
        if any(h is None for h in heads) or not _check_tree(heads):
            if any(h is not None for h in heads):
                log.warning("non-tree dependency structure; dropping heads "
                            "for sentence starting %r", tokens[0].surface)
            for t in tokens:
                t.head = None
                t.deprel = None
        annotations.append(SentenceAnnotation(
            tokens=list(tokens), provenance=Provenance.ingested))
        tokens.clear()

    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise ValueError(f"{path}:{lineno}: expected 10 columns, "
                                 f"got {len(cols)}")
            tok_id = cols[0]
            if "-" in tok_id or "." in tok_id:
                log.warning("%s:%d: skipping multiword/empty token line %r",
                            path, lineno, tok_id)
                continue
            feats = None
            if cols[5] not in ("_", ""):
                feats = dict(kv.split("=", 1) for kv in cols[5].split("|"))
            head = None if cols[6] in ("_", "") else int(cols[6])
            tokens.append(Token(
                surface=cols[1],
                lemma=None if cols[2] == "_" else cols[2],
                upos=None if cols[3] == "_" else cols[3],
                feats=feats,
                head=head,
                deprel=None if cols[7] == "_" else cols[7],
            ))
    flush()
    return annotations


def write_conllu(annotations: list[SentenceAnnotation], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for ann in annotations:
            for i, t in enumerate(ann.tokens, 1):
                feats = "|".join(f"{k}={v}" for k, v in sorted(
                    (t.feats or {}).items())) or "_"
                f.write("\t".join([
                    str(i), t.surface, t.lemma or "_", t.upos or "_", "_",
                    feats, "_" if t.head is None else str(t.head),
                    t.deprel or "_", "_", "_",
                ]) + "\n")
            f.write("\n")


# --- grapheme-to-phoneme and syllables ---

# ordered rule table; longest graphemes first, applied left to right
_G2P_RULES = [
    ("eaux", "o"), ("eau", "o"), ("aient", "ɛ"),
    ("ain", "ɛ̃"), ("ein", "ɛ̃"), ("oin", "wɛ̃"),
    ("ien", "jɛ̃"), ("ion", "jɔ̃"),
    ("eill", "ɛj"), ("ill", "ij"),
    ("ou", "u"), ("oi", "wa"), ("au", "o"),
    ("ai", "ɛ"), ("ei", "ɛ"), ("eu", "ø"), ("œu", "ø"), ("œ", "ø"),
    ("ch", "ʃ"), ("ph", "f"), ("th", "t"), ("gn", "ɲ"), ("qu", "k"),
    ("ç", "s"),
    ("é", "e"), ("è", "ɛ"), ("ê", "ɛ"), ("ë", "ɛ"),
    ("à", "a"), ("â", "a"), ("î", "i"), ("ï", "i"),
    ("ô", "o"), ("ö", "o"), ("û", "y"), ("ù", "y"), ("ü", "y"),
]

_NASALS = {"a": "ɑ̃", "e": "ɑ̃", "i": "ɛ̃", "o": "ɔ̃", "u": "œ̃", "y": "ɛ̃"}
_SIMPLE = {
    "a": "a", "e": "ə", "i": "i", "o": "o", "u": "y", "y": "i",
    "b": "b", "d": "d", "f": "f", "k": "k", "l": "l", "m": "m",
    "n": "n", "p": "p", "r": "ʁ", "t": "t", "v": "v", "z": "z",
    "j": "ʒ", "w": "w", "x": "ks",
}
_FINAL_SILENT = set("tdspxzeg")

PHONEME_INVENTORY = sorted({
    "a", "e", "ɛ", "ə", "i", "o", "ɔ", "u", "y", "ø", "œ",
    "ɑ̃", "ɛ̃", "ɔ̃", "œ̃",
    "b", "d", "f", "g", "k", "l", "m", "n", "ɲ", "p", "ʁ", "s", "t",
    "v", "z", "ʃ", "ʒ", "j", "w", "ɥ", "ks",
})


def phonemize(token: str) -> list[str]:
    """Rule-table French grapheme-to-phoneme conversion.

    Total: any string yields a (possibly empty) phoneme list. Not a real
    phonemizer; an external tool can be plugged in wherever a `phonemizer`
    callable is accepted.
    """
    word = "".join(c for c in _lower(token) if c.isalpha()
                   or unicodedata.category(c).startswith("M"))
    if not word:
        return []
    # final silent letters: single trailing consonant or mute e
    while len(word) > 1 and word[-1] in _FINAL_SILENT:
        if word[-1] == "e" and word[-2] in VOWELS:
            break  # "vie", "joue": keep the vowel group intact
        if word[-1] == "s" and len(word) > 2 and word[-2] in _FINAL_SILENT:
            word = word[:-1]
            continue
        word = word[:-1]
        break
    phonemes: list[str] = []
    i = 0
    n = len(word)
    while i < n:
        matched = False
        for graph, ph in _G2P_RULES:
            if word.startswith(graph, i):
                phonemes.extend(ph.split())
                i += len(graph)
                matched = True
                break
        if matched:
            continue
        c = word[i]
        nxt = word[i + 1] if i + 1 < n else ""
        nxt2 = word[i + 2] if i + 2 < n else ""
        if c in "aeiouy" and nxt and nxt in "nm" \
                and (not nxt2 or nxt2 not in VOWELS + "nm"):
            # nasal vowel: vowel + n/m not followed by a vowel
            phonemes.append(_NASALS[c])
            i += 2
            continue
        if c == "c":
            phonemes.append("s" if nxt and nxt in "eiyéè" else "k")
        elif c == "g":
            phonemes.append("ʒ" if nxt and nxt in "eiyéè" else "g")
        elif c == "s":
            prev = word[i - 1] if i > 0 else ""
            if nxt == "s":
                phonemes.append("s")
                i += 2
                continue
            inter = bool(prev) and prev in VOWELS and bool(nxt) and nxt in VOWELS
            phonemes.append("z" if inter else "s")
        elif c == "h":
            pass  # silent
        elif c == "e" and i == n - 1 and n > 1:
            pass  # final mute e
        elif c in _SIMPLE:
            phonemes.append(_SIMPLE[c])
        elif c in VOWELS:
            phonemes.append("a")
        # unknown characters are dropped silently: conversion is total
        i += 1
    return phonemes


_VOWEL_GROUP = re.compile(f"[{VOWELS}]+")


def syllable_count(token: str) -> int:
    """Number of vowel groups; a final mute 'e' after a consonant does not
    add a syllable. Minimum 1 for any token containing a letter."""
    word = _lower(token)
    word = "".join(c for c in word if c.isalpha())
    if not word:
        return 0
    groups = _VOWEL_GROUP.findall(word)
    count = len(groups)
    if count > 1 and word.endswith("e") and word[-2] not in VOWELS:
        count -= 1
    if count > 1 and (word.endswith("es") and len(word) > 2
                      and word[-3] not in VOWELS):
        count -= 1
    return max(count, 1)
