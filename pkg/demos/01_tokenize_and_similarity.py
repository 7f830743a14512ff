"""Tokenization and source/target similarity on a tiny parallel corpus.

Four formality pairs are tokenized with the rule-based tokenizer, then
scored with the four pairwise metrics (Jaccard, word edit distance,
normalized edit distance, set F1) and averaged into a corpus summary.
"""
from styleprof.corpus import Sentence, SentencePair, Split, tokenize
from styleprof.similarity import f1_overlap, jaccard, levenshtein, levenshtein_norm, summarize

PAIRS = [
    ("gotta go , can't stay any longer .", "I have to leave now ."),
    ("that movie was awesome !", "The film was excellent ."),
    ("he ain't coming tonight .", "He will not attend this evening ."),
    ("thx for the help !", "Thank you for your assistance ."),
]

# ------------------------------------------------------------------
# Tokenization: punctuation is detached and contractions are split.
print("tokenization")
for src, _ in PAIRS:
    print(f"  {src!r:45} -> {[t.surface for t in tokenize(src)]}")

# ------------------------------------------------------------------
# Pairwise metrics. All four are symmetric in source/target; the set
# metrics use lowercased token types, the edit distance whole tokens.
pairs = [
    SentencePair(id=i, source=Sentence.from_raw(s), target=Sentence.from_raw(t))
    for i, (s, t) in enumerate(PAIRS)
]
print("\npairwise metrics")
print(f"  {'jaccard':>8} {'LD':>4} {'LD-norm':>8} {'F1':>6}")
for pair in pairs:
    print(
        f"  {jaccard(pair):8.4f} {levenshtein(pair):4d}"
        f" {levenshtein_norm(pair):8.4f} {f1_overlap(pair):6.4f}"
    )

# ------------------------------------------------------------------
# Corpus-level summary: the arithmetic mean of each metric.
report = summarize(Split(name="demo", pairs=pairs))
print("\ncorpus summary")
print(report.to_json())
