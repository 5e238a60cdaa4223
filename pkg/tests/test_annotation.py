import pytest
from hypothesis import given
from hypothesis import strategies as st

from agerec.annotation import (
    Provenance,
    SentenceAnnotation,
    Token,
    canonical_tense,
    heuristic_annotate,
    load_conllu,
    phonemize,
    sentence_split,
    syllable_count,
    tokenize,
    write_conllu,
)


class TestSentenceSplit:
    def test_basic(self):
        assert sentence_split("Bonjour. Ça va?") == ["Bonjour.", "Ça va?"]

    def test_abbreviation_protected(self):
        assert sentence_split("M. Dupont arrive.") == ["M. Dupont arrive."]

    def test_empty(self):
        assert sentence_split("") == []
        assert sentence_split("   \n ") == []

    def test_ellipsis_and_exclamation(self):
        out = sentence_split("Attends… Voilà! Il pleut.")
        assert out == ["Attends…", "Voilà!", "Il pleut."]

    def test_no_split_before_lowercase(self):
        assert sentence_split("env. 3 km plus loin.") == ["env. 3 km plus loin."]


class TestTokenize:
    def test_punctuation_detached(self):
        assert tokenize("Miam, voilà un moucheron!") == \
            ["Miam", ",", "voilà", "un", "moucheron", "!"]

    def test_empty(self):
        assert tokenize("") == []

    def test_elision(self):
        assert tokenize("l'ami") == ["l'", "ami"]
        assert tokenize("qu'il d'or") == ["qu'", "il", "d'", "or"]

    def test_hyphenated_word_stays_whole(self):
        assert tokenize("après-midi") == ["après-midi"]

    @given(st.text(alphabet="abc àé,.!l'", max_size=40))
    def test_concatenation_reproduces_modulo_whitespace(self, s):
        joined = "".join(tokenize(s))
        assert joined == "".join(s.split()).replace("’", "'")


class TestHeuristicAnnotate:
    def test_det_noun_verb(self):
        ann = heuristic_annotate(["le", "chat", "dort"])
        assert [t.upos for t in ann.tokens] == ["DET", "NOUN", "VERB"]

    def test_compound_past(self):
        ann = heuristic_annotate(["a", "mangé"])
        assert ann.tokens[0].upos == "AUX"
        assert ann.tokens[1].feats["Tense"] == "compound_past"

    def test_empty(self):
        ann = heuristic_annotate([])
        assert ann.tokens == []

    def test_capabilities_exclude_dependency(self):
        ann = heuristic_annotate(["le", "chat", "dort"])
        caps = ann.capabilities()
        assert "pos" in caps and "phoneme" in caps
        assert "dependency" not in caps

    def test_clitic_verb(self):
        ann = heuristic_annotate(["il", "mange"])
        assert ann.tokens[1].upos == "VERB"
        assert ann.tokens[1].feats["Person"] == "3"

    def test_future_suffix(self):
        ann = heuristic_annotate(["ils", "mangeront"])
        assert ann.tokens[1].feats["Tense"] == "future"

    def test_provenance(self):
        assert heuristic_annotate(["chat"]).provenance == Provenance.heuristic


class TestCanonicalTense:
    def test_heuristic_names_pass_through(self):
        t = Token("mange", upos="VERB", feats={"Tense": "present"})
        assert canonical_tense(t) == "present"

    def test_ud_mapping(self):
        t = Token("mangeait", upos="VERB",
                  feats={"Tense": "Imp", "Mood": "Ind"})
        assert canonical_tense(t) == "imperfect"

    def test_infinitive_by_verbform(self):
        t = Token("manger", upos="VERB", feats={"VerbForm": "Inf"})
        assert canonical_tense(t) == "infinitive"

    def test_non_verb_none(self):
        assert canonical_tense(Token("chat", upos="NOUN")) is None


CONLLU_SAMPLE = """\
# sent_id = 1
1\tLe\tle\tDET\t_\t_\t2\tdet\t_\t_
2\tchat\tchat\tNOUN\t_\tGender=Masc|Number=Sing\t3\tnsubj\t_\t_
3\tdort\tdormir\tVERB\t_\tMood=Ind|Tense=Pres\t0\troot\t_\t_

1\tIl\til\tPRON\t_\t_\t2\tnsubj\t_\t_
2\tpleut\tpleuvoir\tVERB\t_\t_\t0\troot\t_\t_

"""


class TestConllu:
    def test_load(self, tmp_path):
        p = tmp_path / "sample.conllu"
        p.write_text(CONLLU_SAMPLE, encoding="utf-8")
        anns = load_conllu(p)
        assert len(anns) == 2
        assert anns[0].provenance == Provenance.ingested
        assert anns[0].has_dependencies
        assert anns[0].tokens[1].feats == {"Gender": "Masc", "Number": "Sing"}

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.conllu"
        p.write_text("", encoding="utf-8")
        assert load_conllu(p) == []

    def test_cyclic_heads_degrade(self, tmp_path, caplog):
        p = tmp_path / "cyclic.conllu"
        p.write_text("1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n"
                     "2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n\n", encoding="utf-8")
        anns = load_conllu(p)
        assert len(anns) == 1
        assert all(t.head is None for t in anns[0].tokens)

    def test_malformed_line(self, tmp_path):
        p = tmp_path / "bad.conllu"
        p.write_text("1\tonly\tthree\n", encoding="utf-8")
        with pytest.raises(ValueError, match="10 columns"):
            load_conllu(p)

    def test_multiword_token_skipped(self, tmp_path):
        p = tmp_path / "mwt.conllu"
        p.write_text("1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
                     "1\tde\tde\tADP\t_\t_\t2\tcase\t_\t_\n"
                     "2\tle\tle\tDET\t_\t_\t0\troot\t_\t_\n\n",
                     encoding="utf-8")
        anns = load_conllu(p)
        assert [t.surface for t in anns[0].tokens] == ["de", "le"]

    def test_round_trip(self, tmp_path):
        p = tmp_path / "sample.conllu"
        p.write_text(CONLLU_SAMPLE, encoding="utf-8")
        anns = load_conllu(p)
        q = tmp_path / "rt.conllu"
        write_conllu(anns, q)
        again = load_conllu(q)
        assert len(again) == len(anns)
        for a, b in zip(anns, again):
            for ta, tb in zip(a.tokens, b.tokens):
                assert (ta.surface, ta.lemma, ta.upos, ta.feats, ta.head,
                        ta.deprel) == (tb.surface, tb.lemma, tb.upos,
                                       tb.feats, tb.head, tb.deprel)


class TestPhonemize:
    def test_chat(self):
        assert phonemize("chat") == ["ʃ", "a"]

    def test_nasal(self):
        assert phonemize("on") == ["ɔ̃"]

    def test_empty(self):
        assert phonemize("") == []
        assert phonemize("123") == []

    @given(st.text(max_size=30))
    def test_total(self, s):
        out = phonemize(s)
        assert isinstance(out, list)
        assert all(isinstance(p, str) for p in out)


class TestSyllables:
    @pytest.mark.parametrize("word,n", [
        ("chat", 1), ("moucheron", 3), ("à", 1), ("maison", 2),
        ("table", 1), ("animal", 3),
    ])
    def test_counts(self, word, n):
        assert syllable_count(word) == n

    def test_non_alpha(self):
        assert syllable_count("!!") == 0

    @given(st.text(alphabet="abcdeéfgilmnorstu", min_size=1, max_size=20))
    def test_minimum_one_for_words(self, s):
        assert syllable_count(s) >= 1


class TestTokenInvariants:
    def test_empty_surface_rejected(self):
        with pytest.raises(ValueError):
            Token("")

    def test_capability_report(self):
        ann = SentenceAnnotation(tokens=[Token("chat", upos="NOUN")])
        assert ann.capabilities() == {"pos"}
