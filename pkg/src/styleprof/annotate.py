"""POS tagging (Universal + Penn Treebank tagsets) and shallow chunking.

Two tag sources are supported: a built-in averaged-perceptron tagger
trainable from any CoNLL-U treebank (a mini treebank is bundled), and
direct ingestion of pre-tagged CoNLL-U files produced by an external
tagger.
"""
from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import Sentence, Token
from .errors import EmptySentence, MalformedConllu, ModelNotLoaded, UnknownTag

UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)

XPOS_TAGS = (
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
    "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
    "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
    "VBZ", "WDT", "WP", "WP$", "WRB",
    # PTB punctuation tags
    ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "#", "$", "HYPH",
)

MODEL_MAGIC = "STYLEPROF-TAGGER"
MODEL_VERSION = "1"

_NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})
_ADJ_TAGS = frozenset({"JJ", "JJR", "JJS"})
_VERB_TAGS = frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"})
_ADV_TAGS = frozenset({"RB", "RBR", "RBS"})
_WH_TAGS = frozenset({"WDT", "WP", "WRB"})
_CLAUSE_BOUNDARY_XPOS = frozenset({".", ",", ":"})


@dataclass(frozen=True)
class PosTag:
    upos: str
    xpos: str


@dataclass(frozen=True)
class TaggedSentence:
    sentence: Sentence
    tags: tuple[PosTag, ...]

    def __post_init__(self):
        if len(self.tags) != len(self.sentence.tokens):
            raise ValueError("tag count does not match token count")


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    kind: str  # NP, VP, or DepClause

    def __len__(self) -> int:
        return self.end - self.start


def punct_xpos(surface: str) -> str:
    if surface in (".", "!", "?") or all(c in ".!?" for c in surface):
        return "."
    if surface == ",":
        return ","
    if surface in ("``", "`") or surface in ("“", "‘"):
        return "``"
    if surface in ("''", "'", '"') or surface in ("”", "’"):
        return "''"
    if surface in ("(", "[", "{"):
        return "-LRB-"
    if surface in (")", "]", "}"):
        return "-RRB-"
    if surface == "#":
        return "#"
    if surface == "$":
        return "$"
    if all(c in "-–—" for c in surface):
        return "HYPH"
    return ":"


class _Perceptron:
    """Averaged perceptron over one tag inventory, greedy decoding."""

    def __init__(self, tags):
        self.tags = tuple(tags)
        self.weights: dict[str, dict[str, float]] = {}
        self.default_tag = self.tags[0]
        # Averaging accumulators, cleared by _finalize after training.
        self._totals = defaultdict(float)
        self._stamps = defaultdict(int)
        self._step = 0

    @staticmethod
    def features(i, word_lowers, prev, prev2):
        w = word_lowers[i]
        feats = [
            "bias",
            "w=" + w,
            "suf1=" + w[-1:],
            "suf2=" + w[-2:],
            "suf3=" + w[-3:],
            "pre1=" + w[:1],
            "pre2=" + w[:2],
            "pre3=" + w[:3],
            "t-1=" + prev,
            "t-2=" + prev2,
            "t-1t-2=" + prev + "+" + prev2,
            "w-1=" + (word_lowers[i - 1] if i > 0 else "<s>"),
            "w+1=" + (word_lowers[i + 1] if i + 1 < len(word_lowers) else "</s>"),
        ]
        return feats

    def score_best(self, feats):
        scores = dict.fromkeys(self.tags, 0.0)
        for f in feats:
            for tag, w in self.weights.get(f, {}).items():
                scores[tag] += w
        # Deterministic tiebreak: score, then default tag, then tag name.
        return max(self.tags, key=lambda t: (scores[t], t == self.default_tag, t))

    def _update(self, truth, guess, feats):
        self._step += 1
        if truth == guess:
            return
        for f in feats:
            for tag, delta in ((truth, 1.0), (guess, -1.0)):
                key = (f, tag)
                w = self.weights.setdefault(f, {}).get(tag, 0.0)
                self._totals[key] += (self._step - self._stamps[key]) * w
                self._stamps[key] = self._step
                self.weights[f][tag] = w + delta

    def _finalize(self):
        for f, tag_ws in self.weights.items():
            for tag, w in list(tag_ws.items()):
                key = (f, tag)
                total = self._totals[key] + (self._step - self._stamps[key]) * w
                avg = total / self._step if self._step else 0.0
                if avg:
                    tag_ws[tag] = round(avg, 6)
                else:
                    del tag_ws[tag]
        self.weights = {f: ws for f, ws in self.weights.items() if ws}
        self._totals.clear()
        self._stamps.clear()


class TaggerModel:
    """Pair of averaged perceptrons (UPOS + XPOS); immutable once trained."""

    def __init__(self, upos: _Perceptron, xpos: _Perceptron, version: str = MODEL_VERSION):
        self._upos = upos
        self._xpos = xpos
        self.version = version

    def save(self, path) -> None:
        payload = {
            "upos": {"default": self._upos.default_tag, "weights": self._upos.weights},
            "xpos": {"default": self._xpos.default_tag, "weights": self._xpos.weights},
        }
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"{MODEL_MAGIC} v{self.version}\n")
            json.dump(payload, f, sort_keys=True)

    @classmethod
    def load(cls, path) -> "TaggerModel":
        with open(path, encoding="utf-8") as f:
            header = f.readline().strip()
            if not header.startswith(MODEL_MAGIC):
                raise ModelNotLoaded(f"{path}: bad magic header {header!r}")
            version = header.split("v")[-1]
            payload = json.load(f)
        upos = _Perceptron(UPOS_TAGS)
        upos.default_tag = payload["upos"]["default"]
        upos.weights = payload["upos"]["weights"]
        xpos = _Perceptron(XPOS_TAGS)
        xpos.default_tag = payload["xpos"]["default"]
        xpos.weights = payload["xpos"]["weights"]
        return cls(upos, xpos, version=version)


def train_tagger(annotated: list[TaggedSentence], epochs: int = 5, seed: int = 1) -> TaggerModel:
    """Train averaged perceptrons for both tagsets; deterministic given seed."""
    if not annotated:
        raise EmptySentence("no training sentences")
    for ts in annotated:
        for tag in ts.tags:
            if tag.upos not in UPOS_TAGS:
                raise UnknownTag(f"unknown UPOS tag {tag.upos!r}")
            if tag.xpos not in XPOS_TAGS:
                raise UnknownTag(f"unknown XPOS tag {tag.xpos!r}")

    upos_counts = Counter(t.upos for ts in annotated for t in ts.tags)
    xpos_counts = Counter(t.xpos for ts in annotated for t in ts.tags)
    upos = _Perceptron(UPOS_TAGS)
    upos.default_tag = upos_counts.most_common(1)[0][0]
    xpos = _Perceptron(XPOS_TAGS)
    xpos.default_tag = xpos_counts.most_common(1)[0][0]

    rng = random.Random(seed)
    order = list(range(len(annotated)))
    for _ in range(epochs):
        rng.shuffle(order)
        for idx in order:
            ts = annotated[idx]
            lowers = ts.sentence.lowers()
            for perc, attr in ((upos, "upos"), (xpos, "xpos")):
                prev, prev2 = "<s>", "<s2>"
                for i, tok in enumerate(ts.sentence.tokens):
                    truth = getattr(ts.tags[i], attr)
                    if tok.is_punct:
                        prev2, prev = prev, truth
                        continue
                    feats = _Perceptron.features(i, lowers, prev, prev2)
                    guess = perc.score_best(feats)
                    perc._update(truth, guess, feats)
                    prev2, prev = prev, guess
    upos._finalize()
    xpos._finalize()
    return TaggerModel(upos, xpos)


def tag(sentence: Sentence, model: TaggerModel) -> TaggedSentence:
    """Greedy left-to-right tagging; pure-punctuation tokens forced to PUNCT."""
    if model is None:
        raise ModelNotLoaded("no tagger model supplied")
    if not sentence.tokens:
        raise EmptySentence("cannot tag an empty sentence")
    lowers = sentence.lowers()
    tags = []
    state = {"upos": ("<s>", "<s2>"), "xpos": ("<s>", "<s2>")}
    for i, tok in enumerate(sentence.tokens):
        if tok.is_punct:
            chosen = PosTag(upos="PUNCT", xpos=punct_xpos(tok.surface))
        else:
            picked = {}
            for name, perc in (("upos", model._upos), ("xpos", model._xpos)):
                prev, prev2 = state[name]
                picked[name] = perc.score_best(_Perceptron.features(i, lowers, prev, prev2))
            chosen = PosTag(upos=picked["upos"], xpos=picked["xpos"])
        for name, value in (("upos", chosen.upos), ("xpos", chosen.xpos)):
            prev, _ = state[name]
            state[name] = (value, prev)
        tags.append(chosen)
    return TaggedSentence(sentence=sentence, tags=tuple(tags))


_default_model_cache: TaggerModel | None = None


def default_model() -> TaggerModel:
    """Tagger trained on the bundled mini treebank (cached)."""
    global _default_model_cache
    if _default_model_cache is None:
        with resources.as_file(
            resources.files("styleprof.data").joinpath("mini_treebank.conllu")
        ) as p:
            sents = load_conllu(p)
        _default_model_cache = train_tagger(sents, epochs=8, seed=1)
    return _default_model_cache


def load_conllu(path) -> list[TaggedSentence]:
    """Read a CoNLL-U file into tagged sentences.

    Multiword-token ranges ("3-4") and empty nodes ("3.1") are skipped;
    the component rows are kept. The file's own FORM tokens are adopted.
    """
    sentences: list[TaggedSentence] = []
    forms: list[str] = []
    tags: list[PosTag] = []
    raw_text: str | None = None

    def flush(line_no):
        nonlocal forms, tags, raw_text
        if forms:
            raw = raw_text if raw_text is not None else " ".join(forms)
            sent = Sentence(raw=raw, tokens=tuple(Token.from_surface(f) for f in forms))
            sentences.append(TaggedSentence(sentence=sent, tags=tuple(tags)))
        forms, tags, raw_text = [], [], None

    with open(path, encoding="utf-8") as f:
        line_no = 0
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                flush(line_no)
                continue
            if line.startswith("#"):
                if line[1:].strip().startswith("text ="):
                    raw_text = line.split("=", 1)[1].strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise MalformedConllu(f"expected 10 columns, got {len(cols)}", line_no)
            tok_id = cols[0]
            if "-" in tok_id or "." in tok_id:
                continue  # multiword range or empty node
            if not tok_id.isdigit():
                raise MalformedConllu(f"bad token id {tok_id!r}", line_no)
            forms.append(cols[1])
            tags.append(PosTag(upos=cols[3], xpos=cols[4]))
        flush(line_no)
    return sentences


def write_conllu(sentences: list[TaggedSentence], path) -> None:
    lines = []
    for k, ts in enumerate(sentences, start=1):
        lines.append(f"# sent_id = {k}")
        lines.append(f"# text = {ts.sentence.raw}")
        for i, (tok, t) in enumerate(zip(ts.sentence.tokens, ts.tags), start=1):
            lines.append(f"{i}\t{tok.surface}\t_\t{t.upos}\t{t.xpos}\t_\t0\t_\t_\t_")
        lines.append("")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def chunk(tagged: TaggedSentence) -> list[Span]:
    """Shallow NP/VP/dependent-clause spans over the XPOS sequence.

    NP:  (DT|PRP$)? (JJ|JJR|JJS)* (NN|NNS|NNP|NNPS)+
    VP:  (MD)? (RB|RBR|RBS)* (VB|VBD|VBG|VBN|VBP|VBZ)+
    Dependent clauses start at a subordinating IN that is followed by a
    verb before the next clause boundary, or at WDT/WP/WRB, and extend to
    the next boundary punctuation (./,/:) or sentence end.
    Matches are greedy left-to-right and non-overlapping per kind.
    """
    xpos = [t.xpos for t in tagged.tags]
    n = len(xpos)
    spans: list[Span] = []

    i = 0
    while i < n:
        j = i
        if j < n and xpos[j] in ("DT", "PRP$"):
            j += 1
        while j < n and xpos[j] in _ADJ_TAGS:
            j += 1
        k = j
        while k < n and xpos[k] in _NOUN_TAGS:
            k += 1
        if k > j:
            spans.append(Span(i, k, "NP"))
            i = k
        else:
            i += 1

    i = 0
    while i < n:
        j = i
        if j < n and xpos[j] == "MD":
            j += 1
        while j < n and xpos[j] in _ADV_TAGS:
            j += 1
        k = j
        while k < n and xpos[k] in _VERB_TAGS:
            k += 1
        if k > j:
            spans.append(Span(i, k, "VP"))
            i = k
        else:
            i += 1

    i = 0
    while i < n:
        starts_clause = False
        if xpos[i] in _WH_TAGS:
            starts_clause = True
        elif xpos[i] == "IN":
            k = i + 1
            while k < n and xpos[k] not in _CLAUSE_BOUNDARY_XPOS:
                if xpos[k] in _VERB_TAGS or xpos[k] == "MD":
                    starts_clause = True
                    break
                k += 1
        if starts_clause:
            end = i + 1
            while end < n and xpos[end] not in _CLAUSE_BOUNDARY_XPOS:
                end += 1
            spans.append(Span(i, end, "DepClause"))
            i = end
        else:
            i += 1

    return spans
