"""Corpus-level BLEU with a single reference per hypothesis.

Matches the classic multi-bleu behavior: modified n-gram precisions for
n = 1..4 clipped per sentence and aggregated over the corpus, uniform
geometric mean, brevity penalty min(1, exp(1 - ref_len/hyp_len)), no
smoothing, case-sensitive over surface tokens. Inputs are pre-tokenized;
this module never re-tokenizes.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyCorpus, LengthMismatch

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuScore:
    score: float  # 0..100
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def __str__(self) -> str:
        p = "/".join(f"{x * 100:.1f}" for x in self.precisions)
        return (
            f"BLEU = {self.score:.2f}, {p} "
            f"(BP={self.brevity_penalty:.3f}, hyp_len={self.hyp_length}, ref_len={self.ref_length})"
        )


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(hypotheses, references) -> BleuScore:
    """Corpus BLEU over aligned token lists (or objects with .surfaces())."""
    if len(hypotheses) != len(references):
        raise LengthMismatch(
            f"{len(hypotheses)} hypotheses but {len(references)} references"
        )
    if not hypotheses:
        raise EmptyCorpus("no sentences to score")

    def toks(sent) -> list[str]:
        return sent.surfaces() if hasattr(sent, "surfaces") else list(sent)

    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_len = ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        h, r = toks(hyp), toks(ref)
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, MAX_ORDER + 1):
            hc = _ngrams(h, n)
            rc = _ngrams(r, n)
            totals[n - 1] += sum(hc.values())
            matches[n - 1] += sum(min(c, rc[g]) for g, c in hc.items())

    precisions = tuple(
        (m / t) if t > 0 else 0.0 for m, t in zip(matches, totals)
    )
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / max(hyp_len, 1))
    if min(precisions) > 0:
        score = bp * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER) * 100
    else:
        score = 0.0
    return BleuScore(
        score=score,
        precisions=precisions,
        brevity_penalty=bp,
        hyp_length=hyp_len,
        ref_length=ref_len,
    )
