"""Corpus BLEU against a single reference.

BLEU multiplies a brevity penalty by the geometric mean of clipped
1- to 4-gram precisions. The demo walks through three cases: a perfect
hypothesis, the classic clipping pathology, and gradual corruption.
"""
import random

from styleprof.bleu import corpus_bleu

REFS = [
    "the cat sat on the mat .".split(),
    "there is a book on the desk .".split(),
    "the weather is cold today .".split(),
]

# A hypothesis identical to the reference scores exactly 100.
print("self-BLEU:", corpus_bleu(REFS, REFS))

# Clipping: "the" occurs at most twice in the reference, so only two of
# the seven hypothesis tokens count toward unigram precision (2/7).
clip = corpus_bleu(["the the the the the the the".split()],
                   ["the cat is on the mat".split()])
print("\nclipping example:", clip)
print("unigram precision:", clip.precisions[0])

# Corrupting more and more tokens drives the score down monotonically.
print("\ncorruption sweep")
rng = random.Random(0)
for n_bad in range(4):
    hyps = [r[:] for r in REFS]
    for sent in hyps:
        for pos in rng.sample(range(len(sent)), n_bad):
            sent[pos] = "noise"
    print(f"  {n_bad} corrupted tokens/sentence -> {corpus_bleu(hyps, REFS)}")
