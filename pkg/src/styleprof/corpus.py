"""Corpus ingestion and the shared sentence-pair data model.

Parallel corpora are plain UTF-8 text files, one sentence per line, with
line i of the source file aligned to line i of the target file. Dataset
configs are key-value text files (see :func:`load_dataset`).
"""
from __future__ import annotations

import string
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    ConfigError,
    EmptySplit,
    IoError,
    LineCountMismatch,
    MissingTrainSplit,
)

TOKENIZER_VERSION = "1"

# Suffixes detached from the ends of words ("don't" -> "do" + "n't").
_CONTRACTION_SUFFIXES = ("n't", "'s", "'re", "'ve", "'ll", "'d", "'m")

SPLIT_NAMES = ("train", "dev", "test")


def _load_stopwords() -> frozenset[str]:
    text = resources.files("styleprof.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


STOPWORDS = _load_stopwords()


def is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P") or ch in string.punctuation


def is_punct_token(text: str) -> bool:
    return len(text) > 0 and all(is_punct_char(c) for c in text)


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    is_punct: bool
    is_stopword: bool

    @classmethod
    def from_surface(cls, surface: str) -> "Token":
        lower = surface.lower()
        return cls(
            surface=surface,
            lower=lower,
            is_punct=is_punct_token(surface),
            is_stopword=lower in STOPWORDS,
        )


@dataclass(frozen=True)
class Sentence:
    raw: str
    tokens: tuple[Token, ...]

    @classmethod
    def from_raw(cls, raw: str) -> "Sentence":
        return cls(raw=raw, tokens=tuple(tokenize(raw)))

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def lowers(self) -> list[str]:
        return [t.lower for t in self.tokens]

    def words(self) -> list[Token]:
        """Non-punctuation tokens."""
        return [t for t in self.tokens if not t.is_punct]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class SentencePair:
    id: int
    source: Sentence
    target: Sentence


@dataclass(frozen=True)
class Split:
    name: str
    pairs: tuple[SentencePair, ...]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class DatasetCard:
    name: str
    style_task: str = ""
    source_class: str = ""
    target_class: str = ""
    domain: str = ""
    annotation: str = ""
    sizes: dict[str, int] = field(default_factory=dict)


@dataclass
class ParallelDataset:
    card: DatasetCard
    splits: dict[str, Split]


def _split_contraction(chunk: str) -> list[str]:
    low = chunk.lower()
    for suf in _CONTRACTION_SUFFIXES:
        if low.endswith(suf) and len(chunk) > len(suf):
            head = chunk[: -len(suf)]
            # Keep pure-punctuation heads intact ("''s" never arises in practice).
            if any(not is_punct_char(c) for c in head):
                return [head, chunk[-len(suf):]]
    return [chunk]


def tokenize(text: str) -> list[Token]:
    """Rule tokenizer: whitespace split, punctuation detachment, contraction split.

    Deterministic and idempotent: re-tokenizing the space-joined output
    reproduces the same token sequence.
    """
    out: list[str] = []
    for chunk in text.split():
        # A bare contraction suffix (from a previous tokenization round)
        # must survive unchanged.
        if chunk.lower() in _CONTRACTION_SUFFIXES:
            out.append(chunk)
            continue
        leading: list[str] = []
        trailing: list[str] = []
        while chunk and is_punct_char(chunk[0]):
            leading.append(chunk[0])
            chunk = chunk[1:]
        while chunk and is_punct_char(chunk[-1]):
            low = chunk.lower()
            if low in _CONTRACTION_SUFFIXES or any(low.endswith(s) for s in _CONTRACTION_SUFFIXES):
                break
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        out.extend(leading)
        if chunk:
            out.extend(_split_contraction(chunk))
        out.extend(reversed(trailing))
    return [Token.from_surface(s) for s in out]


def _read_lines(path: Path) -> list[str]:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IoError(f"{path} is not valid UTF-8: {exc}") from exc
    return text.splitlines()


def load_parallel(source_path, target_path, name: str = "train") -> Split:
    """Load an aligned pair of one-sentence-per-line files into a Split."""
    src_lines = _read_lines(Path(source_path))
    tgt_lines = _read_lines(Path(target_path))
    if len(src_lines) != len(tgt_lines):
        raise LineCountMismatch(
            f"{source_path} has {len(src_lines)} lines but {target_path} has {len(tgt_lines)}"
        )
    if not src_lines:
        raise EmptySplit(f"{source_path} and {target_path} are empty")
    pairs = tuple(
        SentencePair(id=i, source=Sentence.from_raw(s), target=Sentence.from_raw(t))
        for i, (s, t) in enumerate(zip(src_lines, tgt_lines))
    )
    return Split(name=name, pairs=pairs)


def write_parallel(split: Split, source_path, target_path) -> None:
    Path(source_path).write_text(
        "".join(p.source.raw + "\n" for p in split.pairs), encoding="utf-8"
    )
    Path(target_path).write_text(
        "".join(p.target.raw + "\n" for p in split.pairs), encoding="utf-8"
    )


_CARD_KEYS = ("name", "style_task", "source_class", "target_class", "domain", "annotation")


def parse_config(config_path) -> dict[str, str]:
    """Parse a key=value config file; '#' starts a comment line."""
    path = Path(config_path)
    entries: dict[str, str] = {}
    for lineno, line in enumerate(_read_lines(path), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        entries[key.strip()] = value.strip()
    return entries


def load_dataset(config_path) -> ParallelDataset:
    """Load a dataset described by a config file.

    Recognized keys: the card fields (name, style_task, source_class,
    target_class, domain, annotation) and per-split file paths
    (<split>_source / <split>_target for train, dev, test). Paths are
    resolved relative to the config file.
    """
    path = Path(config_path)
    entries = parse_config(path)
    base = path.parent
    card = DatasetCard(name=entries.get("name", path.stem))
    for key in _CARD_KEYS[1:]:
        setattr(card, key, entries.get(key, ""))
    if card.annotation and card.annotation not in ("manual", "automatic"):
        raise ConfigError(f"annotation must be 'manual' or 'automatic', got {card.annotation!r}")

    splits: dict[str, Split] = {}
    for split_name in SPLIT_NAMES:
        src_key, tgt_key = f"{split_name}_source", f"{split_name}_target"
        if src_key in entries or tgt_key in entries:
            if src_key not in entries or tgt_key not in entries:
                raise ConfigError(f"split {split_name!r} needs both {src_key} and {tgt_key}")
            splits[split_name] = load_parallel(
                base / entries[src_key], base / entries[tgt_key], name=split_name
            )
    if "train" not in splits:
        raise MissingTrainSplit(f"{path} declares no train split")
    card.sizes = {name: len(split) for name, split in splits.items()}
    return ParallelDataset(card=card, splits=splits)
