"""Per-sentence linguistic feature extraction over nine feature groups.

Groups: lexical complexity (LexC), readability (Read), lexical diversity
(LexD), Universal/Treebank POS distributions (UPOS/XPOS), sentence length
(SenL), phrase measures (Phr), subjectivity (Sub), bag-of-words (BoW).
Features whose schema entry is flagged `normalized` are divided by the
sentence length in words. Degenerate denominators map to 0 so every
vector is finite.
"""
from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

import numpy as np

from .corpus import Sentence, Split
from .annotate import TaggedSentence, TaggerModel, UPOS_TAGS, XPOS_TAGS, chunk, tag
from .errors import LexiconNotLoaded, NoWords, NonAlphabetic, TagsUnavailable

_VOWELS = set("aeiouy")

PRONOUNS_1ST = frozenset({"i", "me", "my", "mine", "we", "us", "our", "ours", "myself", "ourselves"})
PRONOUNS_2ND = frozenset({"you", "your", "yours", "yourself", "yourselves"})
PRONOUNS_3RD = frozenset({
    "he", "him", "his", "she", "her", "hers", "it", "its", "they", "them",
    "their", "theirs", "himself", "herself", "itself", "themselves",
})

BOW_MIN_DF = 2
BOW_MAX_VOCAB = 10_000


class FeatureGroup(str, Enum):
    LexC = "LexC"
    Read = "Read"
    LexD = "LexD"
    UPOS = "UPOS"
    XPOS = "XPOS"
    SenL = "SenL"
    Phr = "Phr"
    Sub = "Sub"
    BoW = "BoW"


GROUP_ORDER = tuple(FeatureGroup)
TAG_GROUPS = frozenset({FeatureGroup.UPOS, FeatureGroup.XPOS, FeatureGroup.Phr})


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    group: FeatureGroup
    normalized: bool  # divided by sentence length in words


@dataclass
class FeatureVector:
    specs: tuple[FeatureSpec, ...]
    values: np.ndarray

    def as_dict(self) -> dict[str, float]:
        return {s.name: float(v) for s, v in zip(self.specs, self.values)}


@dataclass
class FeatureMatrix:
    X: np.ndarray  # (n_rows, n_features)
    labels: np.ndarray  # 0 = source class, 1 = target class
    schema: tuple[FeatureSpec, ...]
    bow_vocab: tuple[str, ...] = ()

    def __post_init__(self):
        if self.X.shape[0] != len(self.labels):
            raise ValueError("label count does not match row count")
        if self.X.shape[1] != len(self.schema):
            raise ValueError("schema length does not match column count")

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    def rows(self):
        for i in range(self.X.shape[0]):
            yield FeatureVector(self.schema, self.X[i])


@dataclass
class ScalingParams:
    mean: np.ndarray
    std: np.ndarray

    @property
    def constant(self) -> np.ndarray:
        return self.std == 0.0


class SentimentLexicon:
    """word -> (polarity in [-1,1], subjectivity in [0,1]) lookup table."""

    def __init__(self, entries: dict[str, tuple[float, float]]):
        for word, (pol, subj) in entries.items():
            if not (-1.0 <= pol <= 1.0 and 0.0 <= subj <= 1.0):
                raise ValueError(f"lexicon entry {word!r} out of bounds: {pol}, {subj}")
        self.entries = dict(entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path) -> "SentimentLexicon":
        entries = {}
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip():
                continue
            word, pol, subj = line.split("\t")
            entries[word] = (float(pol), float(subj))
        return cls(entries)

    @classmethod
    def bundled(cls) -> "SentimentLexicon":
        with resources.as_file(
            resources.files("styleprof.data").joinpath("sentiment_lexicon.tsv")
        ) as p:
            return cls.load(p)


def count_syllables(word: str) -> int:
    """Heuristic syllable count: vowel groups, silent-e rule, minimum 1."""
    letters = "".join(c for c in word.lower() if c.isalpha())
    if not letters:
        raise NonAlphabetic(f"no alphabetic characters in {word!r}")
    groups = 0
    in_group = False
    for c in letters:
        if c in _VOWELS:
            if not in_group:
                groups += 1
            in_group = True
        else:
            in_group = False
    if letters.endswith("e") and not letters.endswith(("ee", "ye", "ae", "oe", "ie", "ue")):
        consonant_le = (
            len(letters) >= 3
            and letters.endswith("le")
            and letters[-3] not in _VOWELS
        )
        if not consonant_le and groups > 1:
            groups -= 1
    return max(groups, 1)


def _word_syllables(tok) -> int:
    try:
        return count_syllables(tok.lower)
    except NonAlphabetic:
        return 1  # tokens like "3" or "---" that slip through word filters


def lexical_complexity(sentence: Sentence) -> dict[str, float]:
    words = sentence.words()
    if not words:
        return {"avg_word_len": 0.0, "avg_syllables": 0.0, "avg_syllables_nostop": 0.0}
    nonstop = [t for t in words if not t.is_stopword]
    return {
        "avg_word_len": sum(len(t.surface) for t in words) / len(words),
        "avg_syllables": sum(_word_syllables(t) for t in words) / len(words),
        "avg_syllables_nostop": (
            sum(_word_syllables(t) for t in nonstop) / len(nonstop) if nonstop else 0.0
        ),
    }


def readability(sentence: Sentence) -> dict[str, float]:
    """Complex-word ratio plus single-sentence Flesch formulas."""
    words = sentence.words()
    if not words:
        raise NoWords(f"no word tokens in {sentence.raw!r}")
    n = len(words)
    syllables = [_word_syllables(t) for t in words]
    total_syl = sum(syllables)
    complex_count = sum(1 for s in syllables if s >= 3)
    return {
        "complex_word_ratio": complex_count / n,
        "flesch_reading_ease": 206.835 - 1.015 * n - 84.6 * (total_syl / n),
        "fk_grade_level": 0.39 * n + 11.8 * (total_syl / n) - 15.59,
    }


def lexical_diversity(sentence: Sentence) -> dict[str, float]:
    lowers = [t.lower for t in sentence.words()]
    n = len(lowers)
    if n == 0:
        return {"unique_unigram_ratio": 0.0, "unique_bigram_ratio": 0.0}
    bigrams = set(zip(lowers, lowers[1:]))
    return {
        "unique_unigram_ratio": len(set(lowers)) / n,
        "unique_bigram_ratio": len(bigrams) / n,
    }


def pos_distribution(tagged: TaggedSentence, tagset: str) -> dict[str, float]:
    inventory = UPOS_TAGS if tagset == "upos" else XPOS_TAGS
    n = len(tagged.tags)
    counts = Counter(getattr(t, tagset) for t in tagged.tags)
    return {f"{tagset}={name}": counts.get(name, 0) / n if n else 0.0 for name in inventory}


def sentence_length(sentence: Sentence) -> dict[str, float]:
    return {
        "len_words": float(len(sentence.words())),
        "len_tokens": float(len(sentence.tokens)),
    }


def phrase_features(tagged: TaggedSentence) -> dict[str, float]:
    n_words = len(tagged.sentence.words())
    out = {}
    spans = chunk(tagged)
    for kind, prefix in (("NP", "np"), ("VP", "vp"), ("DepClause", "depclause")):
        kind_spans = [s for s in spans if s.kind == kind]
        if n_words and kind_spans:
            avg_len = sum(len(s) for s in kind_spans) / len(kind_spans)
            out[f"{prefix}_count"] = len(kind_spans) / n_words
            out[f"{prefix}_avg_len"] = avg_len / n_words
        else:
            out[f"{prefix}_count"] = 0.0
            out[f"{prefix}_avg_len"] = 0.0
    return out


def subjectivity_features(sentence: Sentence, lexicon: SentimentLexicon) -> dict[str, float]:
    if lexicon is None:
        raise LexiconNotLoaded("no sentiment lexicon supplied")
    n_words = len(sentence.words())
    lowers = [t.lower for t in sentence.tokens]
    counts = {
        "pron_1st": sum(1 for w in lowers if w in PRONOUNS_1ST),
        "pron_2nd": sum(1 for w in lowers if w in PRONOUNS_2ND),
        "pron_3rd": sum(1 for w in lowers if w in PRONOUNS_3RD),
    }
    out = {k: (v / n_words if n_words else 0.0) for k, v in counts.items()}
    matched = [lexicon.entries[w] for w in lowers if w in lexicon]
    if matched:
        out["polarity"] = sum(m[0] for m in matched) / len(matched)
        out["subjectivity"] = sum(m[1] for m in matched) / len(matched)
    else:
        out["polarity"] = 0.0
        out["subjectivity"] = 0.0
    return out


def build_bow_vocab(split: Split, min_df: int = BOW_MIN_DF, max_vocab: int = BOW_MAX_VOCAB) -> tuple[str, ...]:
    """Vocabulary from a training split: frequency >= min_df, capped by frequency."""
    counts: Counter[str] = Counter()
    for pair in split.pairs:
        for sent in (pair.source, pair.target):
            counts.update(t.lower for t in sent.words())
    kept = [(w, c) for w, c in counts.items() if c >= min_df]
    kept.sort(key=lambda wc: (-wc[1], wc[0]))
    return tuple(w for w, _ in kept[:max_vocab])


def bow_features(sentence: Sentence, vocab: tuple[str, ...]) -> dict[str, float]:
    counts = Counter(t.lower for t in sentence.words())
    return {f"bow={w}": float(counts.get(w, 0)) for w in vocab}


def build_schema(groups, bow_vocab: tuple[str, ...] = ()) -> tuple[FeatureSpec, ...]:
    groups = set(groups)
    specs: list[FeatureSpec] = []

    def add(group, names, normalized):
        if group in groups:
            specs.extend(FeatureSpec(n, group, normalized) for n in names)

    add(FeatureGroup.LexC, ("avg_word_len", "avg_syllables", "avg_syllables_nostop"), False)
    if FeatureGroup.Read in groups:
        specs.append(FeatureSpec("complex_word_ratio", FeatureGroup.Read, True))
        specs.append(FeatureSpec("flesch_reading_ease", FeatureGroup.Read, False))
        specs.append(FeatureSpec("fk_grade_level", FeatureGroup.Read, False))
    add(FeatureGroup.LexD, ("unique_unigram_ratio", "unique_bigram_ratio"), True)
    add(FeatureGroup.UPOS, tuple(f"upos={t}" for t in UPOS_TAGS), True)
    add(FeatureGroup.XPOS, tuple(f"xpos={t}" for t in XPOS_TAGS), True)
    add(FeatureGroup.SenL, ("len_words", "len_tokens"), False)
    add(
        FeatureGroup.Phr,
        ("np_count", "np_avg_len", "vp_count", "vp_avg_len", "depclause_count", "depclause_avg_len"),
        True,
    )
    if FeatureGroup.Sub in groups:
        specs.extend(FeatureSpec(n, FeatureGroup.Sub, True) for n in ("pron_1st", "pron_2nd", "pron_3rd"))
        specs.append(FeatureSpec("polarity", FeatureGroup.Sub, False))
        specs.append(FeatureSpec("subjectivity", FeatureGroup.Sub, False))
    add(FeatureGroup.BoW, tuple(f"bow={w}" for w in bow_vocab), False)
    return tuple(specs)


def extract_vector(
    sentence: Sentence,
    groups,
    tagged: TaggedSentence | None = None,
    lexicon: SentimentLexicon | None = None,
    bow_vocab: tuple[str, ...] = (),
) -> dict[str, float]:
    groups = set(groups)
    values: dict[str, float] = {}
    if FeatureGroup.LexC in groups:
        values.update(lexical_complexity(sentence))
    if FeatureGroup.Read in groups:
        if sentence.words():
            values.update(readability(sentence))
        else:
            values.update(
                {"complex_word_ratio": 0.0, "flesch_reading_ease": 0.0, "fk_grade_level": 0.0}
            )
    if FeatureGroup.LexD in groups:
        values.update(lexical_diversity(sentence))
    if FeatureGroup.UPOS in groups:
        values.update(pos_distribution(tagged, "upos"))
    if FeatureGroup.XPOS in groups:
        values.update(pos_distribution(tagged, "xpos"))
    if FeatureGroup.SenL in groups:
        values.update(sentence_length(sentence))
    if FeatureGroup.Phr in groups:
        values.update(phrase_features(tagged))
    if FeatureGroup.Sub in groups:
        values.update(subjectivity_features(sentence, lexicon))
    if FeatureGroup.BoW in groups:
        values.update(bow_features(sentence, bow_vocab))
    return values


def build_matrix(
    split: Split,
    groups=GROUP_ORDER,
    tagger: TaggerModel | None = None,
    tagged_lookup: dict[str, TaggedSentence] | None = None,
    lexicon: SentimentLexicon | None = None,
    bow_vocab: tuple[str, ...] | None = None,
) -> FeatureMatrix:
    """Extract one row per sentence: source rows get label 0, target label 1.

    Tags come either from `tagger` (built-in perceptron) or from
    `tagged_lookup` (raw text -> pre-tagged sentence, e.g. from CoNLL-U).
    `bow_vocab` must be the training-split vocabulary when extracting
    dev/test matrices; when omitted it is built from this split.
    """
    groups = set(groups)
    need_tags = bool(groups & TAG_GROUPS)
    if need_tags and tagger is None and tagged_lookup is None:
        raise TagsUnavailable("requested POS/phrase groups but no tag source supplied")
    if FeatureGroup.Sub in groups and lexicon is None:
        lexicon = SentimentLexicon.bundled()
    if FeatureGroup.BoW in groups and bow_vocab is None:
        bow_vocab = build_bow_vocab(split)
    bow_vocab = tuple(bow_vocab or ())

    schema = build_schema(groups, bow_vocab)
    names = [s.name for s in schema]

    def get_tagged(sentence: Sentence) -> TaggedSentence | None:
        if not need_tags:
            return None
        if tagged_lookup is not None and sentence.raw in tagged_lookup:
            return tagged_lookup[sentence.raw]
        if tagger is not None:
            return tag(sentence, tagger)
        raise TagsUnavailable(f"no tags available for {sentence.raw!r}")

    rows = []
    labels = []
    for pair in split.pairs:
        for sent, label in ((pair.source, 0), (pair.target, 1)):
            values = extract_vector(
                sent, groups, tagged=get_tagged(sent), lexicon=lexicon, bow_vocab=bow_vocab
            )
            rows.append([values[n] for n in names])
            labels.append(label)
    return FeatureMatrix(
        X=np.asarray(rows, dtype=float),
        labels=np.asarray(labels, dtype=int),
        schema=schema,
        bow_vocab=bow_vocab,
    )


def fit_scaler(matrix: FeatureMatrix) -> ScalingParams:
    return ScalingParams(
        mean=matrix.X.mean(axis=0),
        std=matrix.X.std(axis=0),
    )


def apply_scaler(matrix: FeatureMatrix, params: ScalingParams) -> FeatureMatrix:
    """Z-score transform; constant (std = 0) columns map to 0."""
    std = np.where(params.std == 0.0, 1.0, params.std)
    Z = (matrix.X - params.mean) / std
    Z[:, params.constant] = 0.0
    return FeatureMatrix(X=Z, labels=matrix.labels, schema=matrix.schema, bow_vocab=matrix.bow_vocab)


def invert_scaler(matrix: FeatureMatrix, params: ScalingParams) -> FeatureMatrix:
    std = np.where(params.std == 0.0, 1.0, params.std)
    X = matrix.X * std + params.mean
    X[:, params.constant] = params.mean[params.constant]
    return FeatureMatrix(X=X, labels=matrix.labels, schema=matrix.schema, bow_vocab=matrix.bow_vocab)


def save_matrix(matrix: FeatureMatrix, csv_path, params: ScalingParams | None = None) -> None:
    """CSV of rows + JSON sidecar (schema, groups, scaling, BoW vocab)."""
    csv_path = Path(csv_path)
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["label"] + [s.name for s in matrix.schema])
        for label, row in zip(matrix.labels, matrix.X):
            writer.writerow([int(label)] + [repr(float(v)) for v in row])
    sidecar = {
        "features": [
            {"name": s.name, "group": s.group.value, "normalized": s.normalized}
            for s in matrix.schema
        ],
        "bow_vocab": list(matrix.bow_vocab),
        "scaling": None
        if params is None
        else {"mean": params.mean.tolist(), "std": params.std.tolist()},
    }
    csv_path.with_suffix(".schema.json").write_text(
        json.dumps(sidecar, indent=2), encoding="utf-8"
    )


def load_matrix(csv_path) -> tuple[FeatureMatrix, ScalingParams | None]:
    csv_path = Path(csv_path)
    sidecar = json.loads(csv_path.with_suffix(".schema.json").read_text("utf-8"))
    schema = tuple(
        FeatureSpec(e["name"], FeatureGroup(e["group"]), e["normalized"])
        for e in sidecar["features"]
    )
    with open(csv_path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        next(reader)  # header
        labels, rows = [], []
        for rec in reader:
            labels.append(int(rec[0]))
            rows.append([float(v) for v in rec[1:]])
    params = None
    if sidecar["scaling"] is not None:
        params = ScalingParams(
            mean=np.asarray(sidecar["scaling"]["mean"]),
            std=np.asarray(sidecar["scaling"]["std"]),
        )
    matrix = FeatureMatrix(
        X=np.asarray(rows, dtype=float),
        labels=np.asarray(labels, dtype=int),
        schema=schema,
        bow_vocab=tuple(sidecar["bow_vocab"]),
    )
    return matrix, params
