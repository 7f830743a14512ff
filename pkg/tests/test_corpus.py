import random

import pytest

from styleprof.corpus import (
    STOPWORDS,
    Sentence,
    Split,
    load_dataset,
    load_parallel,
    parse_config,
    tokenize,
    write_parallel,
)
from styleprof.errors import (
    ConfigError,
    EmptySplit,
    IoError,
    LineCountMismatch,
    MissingTrainSplit,
)


def surfaces(text):
    return [t.surface for t in tokenize(text)]


class TestTokenize:
    def test_punctuation_detachment(self):
        assert surfaces("Hello, world!") == ["Hello", ",", "world", "!"]

    def test_contraction_split(self):
        assert surfaces("don't") == ["do", "n't"]

    def test_trailing_punct_flag(self):
        toks = tokenize("the cat sat.")
        assert len(toks) == 4
        assert toks[-1].is_punct
        assert not toks[0].is_punct

    def test_all_contractions(self):
        assert surfaces("it's") == ["it", "'s"]
        assert surfaces("they're") == ["they", "'re"]
        assert surfaces("we've") == ["we", "'ve"]
        assert surfaces("she'll") == ["she", "'ll"]
        assert surfaces("he'd") == ["he", "'d"]
        assert surfaces("I'm") == ["I", "'m"]

    def test_empty_input(self):
        assert tokenize("") == []
        assert tokenize("   \t ") == []

    def test_lower_field(self):
        for tok in tokenize("The QUICK Brown fox"):
            assert tok.lower == tok.surface.lower()

    def test_stopword_flag(self):
        toks = tokenize("the mountain")
        assert toks[0].is_stopword
        assert not toks[1].is_stopword

    def test_multiple_punct(self):
        assert surfaces('"Wait!"') == ['"', "Wait", "!", '"']

    def test_idempotence_random(self):
        rng = random.Random(99)
        words = ["don't", "hello,", "world!", "it's", "x", "(yes)", "a...b", "I'm", "-", "end."]
        for _ in range(200):
            text = " ".join(rng.choices(words, k=rng.randint(1, 8)))
            once = surfaces(text)
            assert surfaces(" ".join(once)) == once


class TestLoadParallel:
    def test_basic(self, tmp_path):
        (tmp_path / "s.txt").write_text("a b\nc d\ne f\n")
        (tmp_path / "t.txt").write_text("x\ny\nz\n")
        split = load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")
        assert len(split) == 3
        assert split.pairs[1].source.raw == "c d"
        assert split.pairs[1].id == 1

    def test_line_count_mismatch(self, tmp_path):
        (tmp_path / "s.txt").write_text("a\nb\nc\nd\n")
        (tmp_path / "t.txt").write_text("x\ny\nz\n")
        with pytest.raises(LineCountMismatch):
            load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")

    def test_empty_files(self, tmp_path):
        (tmp_path / "s.txt").write_text("")
        (tmp_path / "t.txt").write_text("")
        with pytest.raises(EmptySplit):
            load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")

    def test_missing_file(self, tmp_path):
        (tmp_path / "t.txt").write_text("x\n")
        with pytest.raises(IoError):
            load_parallel(tmp_path / "missing.txt", tmp_path / "t.txt")

    def test_invalid_utf8(self, tmp_path):
        (tmp_path / "s.txt").write_bytes(b"\xff\xfe bad bytes\n")
        (tmp_path / "t.txt").write_text("x\n")
        with pytest.raises(IoError):
            load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")

    def test_round_trip(self, tmp_path):
        (tmp_path / "s.txt").write_text("the cat sat.\ndon't stop\n")
        (tmp_path / "t.txt").write_text("a cat was sitting.\nplease continue\n")
        split = load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")
        write_parallel(split, tmp_path / "s2.txt", tmp_path / "t2.txt")
        again = load_parallel(tmp_path / "s2.txt", tmp_path / "t2.txt")
        assert again == split

    def test_pairs_independently_valid(self, tmp_path):
        (tmp_path / "s.txt").write_text("one two\nthree\n")
        (tmp_path / "t.txt").write_text("four\nfive six\n")
        split = load_parallel(tmp_path / "s.txt", tmp_path / "t.txt")
        for pair in split.pairs:
            assert pair.source.tokens
            assert pair.target.tokens


def write_dataset(tmp_path, splits=("train", "dev", "test"), annotation="manual"):
    lines = [
        "name = toy",
        "style_task = informal->formal",
        "source_class = informal",
        "target_class = formal",
        "domain = testing",
        f"annotation = {annotation}",
    ]
    for s in splits:
        (tmp_path / f"{s}.src").write_text(f"{s} source one\n{s} source two\n")
        (tmp_path / f"{s}.tgt").write_text(f"{s} target one\n{s} target two\n")
        lines.append(f"{s}_source = {s}.src")
        lines.append(f"{s}_target = {s}.tgt")
    cfg = tmp_path / "toy.cfg"
    cfg.write_text("\n".join(lines) + "\n")
    return cfg


class TestLoadDataset:
    def test_three_splits(self, tmp_path):
        ds = load_dataset(write_dataset(tmp_path))
        assert set(ds.splits) == {"train", "dev", "test"}
        assert ds.card.sizes == {"train": 2, "dev": 2, "test": 2}

    def test_missing_train(self, tmp_path):
        cfg = write_dataset(tmp_path, splits=("dev", "test"))
        with pytest.raises(MissingTrainSplit):
            load_dataset(cfg)

    def test_annotation_field(self, tmp_path):
        ds = load_dataset(write_dataset(tmp_path, annotation="manual"))
        assert ds.card.annotation == "manual"

    def test_bad_annotation(self, tmp_path):
        cfg = write_dataset(tmp_path, annotation="crowdsourced")
        with pytest.raises(ConfigError):
            load_dataset(cfg)

    def test_config_parse_errors(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("no equals sign here\n")
        with pytest.raises(ConfigError):
            parse_config(bad)


def test_stopword_list_size():
    assert len(STOPWORDS) == 179


def test_sentence_words_excludes_punct():
    s = Sentence.from_raw("Hello, world!")
    assert [t.surface for t in s.words()] == ["Hello", "world"]
