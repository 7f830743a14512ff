"""Pairwise source/target similarity metrics and corpus-level averages.

All four metrics operate on lowercased tokens and are symmetric in
source/target. Set-based metrics (jaccard, f1) use unique token types;
levenshtein is a word-level edit distance over token sequences.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .corpus import SentencePair, Split
from .errors import EmptySentence, EmptySplit


@dataclass(frozen=True)
class SimilarityReport:
    jaccard_mean: float
    ld_mean: float
    ld_norm_mean: float
    f1_mean: float
    n_pairs: int

    CSV_HEADER = "dataset,jaccard,ld,ld_norm,f1,n_pairs"

    def csv_row(self, dataset: str) -> str:
        return (
            f"{dataset},{self.jaccard_mean:.6f},{self.ld_mean:.6f},"
            f"{self.ld_norm_mean:.6f},{self.f1_mean:.6f},{self.n_pairs}"
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "jaccard_mean": self.jaccard_mean,
                "ld_mean": self.ld_mean,
                "ld_norm_mean": self.ld_norm_mean,
                "f1_mean": self.f1_mean,
                "n_pairs": self.n_pairs,
            },
            indent=2,
        )


def _token_lists(pair: SentencePair) -> tuple[list[str], list[str]]:
    s = pair.source.lowers()
    t = pair.target.lowers()
    if not s or not t:
        raise EmptySentence(f"pair {pair.id} has an empty sentence")
    return s, t


def jaccard(pair: SentencePair) -> float:
    """|V_s ∩ V_t| / |V_s ∪ V_t| over lowercased token sets."""
    s, t = _token_lists(pair)
    vs, vt = set(s), set(t)
    return len(vs & vt) / len(vs | vt)


def levenshtein(pair: SentencePair) -> int:
    """Word-level edit distance, unit cost insert/delete/substitute."""
    s, t = _token_lists(pair)
    return _edit_distance(s, t)


def _edit_distance(s: list[str], t: list[str]) -> int:
    if len(s) < len(t):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, a in enumerate(s, start=1):
        curr = [i] + [0] * len(t)
        for j, b in enumerate(t, start=1):
            cost = 0 if a == b else 1
            curr[j] = min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost)
        prev = curr
    return prev[-1]


def levenshtein_norm(pair: SentencePair) -> float:
    """Edit distance divided by the longer sentence's token count."""
    s, t = _token_lists(pair)
    return _edit_distance(s, t) / max(len(s), len(t))


def f1_overlap(pair: SentencePair) -> float:
    """F1 over lowercased token sets; 0 when the intersection is empty."""
    s, t = _token_lists(pair)
    vs, vt = set(s), set(t)
    tp = len(vs & vt)
    if tp == 0:
        return 0.0
    precision = tp / (tp + len(vs - vt))
    recall = tp / (tp + len(vt - vs))
    return 2 * precision * recall / (precision + recall)


def summarize(split: Split) -> SimilarityReport:
    """Arithmetic means of the four metrics over all pairs in a split."""
    if not split.pairs:
        raise EmptySplit(f"split {split.name!r} has no pairs")
    n = len(split.pairs)
    jac = ld = ldn = f1 = 0.0
    for pair in split.pairs:
        jac += jaccard(pair)
        ld += levenshtein(pair)
        ldn += levenshtein_norm(pair)
        f1 += f1_overlap(pair)
    return SimilarityReport(
        jaccard_mean=jac / n,
        ld_mean=ld / n,
        ld_norm_mean=ldn / n,
        f1_mean=f1 / n,
        n_pairs=n,
    )
