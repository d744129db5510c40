import difflib
import json
import os
import random
import subprocess
from pathlib import Path

import pytest

import ner_lab

FIXTURES = Path(os.environ.get("NERLAB_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def reference_similarity(a: str, b: str) -> float:
    a, b = sorted((a.lower(), b.lower()))
    if not a and not b:
        return 1.0
    return difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()


def test_version():
    assert ner_lab.__version__ == "0.1.0"


def test_ratcliff_agrees_with_difflib():
    rng = random.Random(7)
    alphabet = "абвгдaбвab "
    for _ in range(3000):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        assert ner_lab.ratcliff_similarity(a, b) == pytest.approx(reference_similarity(a, b), abs=1e-12)
    assert ner_lab.ratcliff_similarity("abc", "abd") == pytest.approx(2 / 3)
    assert ner_lab.ratcliff_similarity("головная боль", "головные боли") == pytest.approx(20 / 26)


def test_grouping():
    groups = ner_lab.group_mentions(["Боль", "тошнота", "боль"], 0.8)
    assert [g["size"] for g in groups] == [2, 1]
    assert sum(len(g["members"]) for g in groups) == 3


def test_chunk_prf_repair_rule():
    report = ner_lab.chunk_prf([["O", "B-ADR", "I-ADR"]], [["O", "I-ADR", "I-ADR"]])
    assert report["micro"]["f1"] == 100.0
    assert ner_lab.extract_chunks(["B-ADR", "B-ADR", "I-ADR"]) == [("ADR", 0, 1), ("ADR", 1, 3)]


def test_agreement_fixtures():
    a = ner_lab.load_corpus(str(FIXTURES / "ann_a.json"))
    b = ner_lab.load_corpus(str(FIXTURES / "ann_b.json"))
    assert ner_lab.agreement({"a": a, "b": b})["agreement"] == 50.0
    assert ner_lab.agreement({"a": a, "b": b}, span="intersection", tag="ignored")["agreement"] == 100.0
    with pytest.raises(ValueError):
        ner_lab.agreement({"a": a, "b": b}, span="fuzzy")


def test_coref_fixtures():
    gold = ner_lab.load_corpus(str(FIXTURES / "coref_gold.json"))
    pred = ner_lab.load_corpus(str(FIXTURES / "coref_pred.json"))
    r = ner_lab.coref(gold, pred)
    assert r["muc"]["recall"] == pytest.approx(66.7)
    assert r["b3"]["recall"] == pytest.approx(50.0)


def test_corpus_round_trip_is_byte_identical():
    raw = (FIXTURES / "corpus_small.json").read_text(encoding="utf-8")
    assert ner_lab.dump_corpus(json.loads(raw)) == raw
    with pytest.raises(ner_lab.ValidationError):
        ner_lab.dump_corpus({"version": "1.0", "documents": [{"id": "d", "text": "ab", "sentences": [],
                             "mentions": [{"id": "T1", "entity": "ADR", "spans": [[0, 9]]}], "chains": []}]})


def test_encode_bio_marks_each_mention_start():
    corpus = ner_lab.load_corpus(str(FIXTURES / "corpus_small.json"))
    sentences = ner_lab.encode_bio(corpus, "ADR")
    assert len(sentences) == sum(len(d["sentences"]) for d in corpus["documents"])
    starts = sum(tag == "B-ADR" for s in sentences for tag in s)
    assert starts == sum(m["entity"] == "ADR" for d in corpus["documents"] for m in d["mentions"])


def test_stats():
    s = ner_lab.stats(ner_lab.load_corpus(str(FIXTURES / "corpus_small.json")))
    assert s["documents"] == 2


def test_cli_in_process():
    code, out, err = ner_lab.run_cli(["validate", str(FIXTURES / "corpus_small.json")])
    assert code == 0, err
    assert "valid" in out
    assert ner_lab.run_cli(["nope"])[0] == 2


@pytest.mark.skipif(not os.environ.get("NER_LAB_BIN"), reason="binary path not provided")
def test_cli_binary_matches_in_process():
    args = ["eval-coref", "--gold", str(FIXTURES / "coref_gold.json"), "--pred", str(FIXTURES / "coref_pred.json"),
            "--format", "json"]
    proc = subprocess.run([os.environ["NER_LAB_BIN"], *args], capture_output=True, text=True, check=True)
    assert proc.stdout == ner_lab.run_cli(args)[1]
