"""Feature extraction and single-group ablation on a planted corpus.

The corpus is built so that the only difference between the two classes
is token count: every target word is followed by a comma, doubling the
token length while leaving the words themselves drawn from the same
distribution. A classifier restricted to the sentence-length group
should separate the classes almost perfectly, while word-level groups
should stay near chance. This is the group-ablation logic used to
localize where style signal lives.
"""
import random

from styleprof.classify import TrainConfig, ablate
from styleprof.corpus import DatasetCard, ParallelDataset, Sentence, SentencePair, Split
from styleprof.features import GROUP_ORDER, FeatureGroup, build_matrix

WORDS = ["table", "river", "stone", "window", "garden", "paper", "bottle", "copper"]
rng = random.Random(1)


def make_split(name, n):
    pairs = []
    for i in range(n):
        src = " ".join(rng.choice(WORDS) for _ in range(rng.randint(5, 9)))
        tgt_words = [rng.choice(WORDS) for _ in range(rng.randint(5, 9))]
        tgt = " ".join(w + " ," for w in tgt_words)
        pairs.append(
            SentencePair(id=i, source=Sentence.from_raw(src), target=Sentence.from_raw(tgt))
        )
    return Split(name=name, pairs=pairs)


dataset = ParallelDataset(
    card=DatasetCard(name="planted-length"),
    splits={"train": make_split("train", 200), "test": make_split("test", 100)},
)

# ------------------------------------------------------------------
# What the feature matrix looks like for one group.
matrix = build_matrix(dataset.splits["train"], [FeatureGroup.SenL])
print("SenL feature matrix:", matrix.X.shape)
print("features:", [s.name for s in matrix.schema])
print("first source row: ", matrix.X[0])
print("first target row: ", matrix.X[1])

# ------------------------------------------------------------------
# Full-feature row plus one ablation row per group. Tag-based groups
# use the bundled perceptron tagger.
groups = (FeatureGroup.SenL, FeatureGroup.LexD, FeatureGroup.Read, FeatureGroup.BoW)
result = ablate(dataset, config=TrainConfig(lam=1.0), groups=groups)

print("\ntest accuracy by feature group (chance = 0.50)")
print(f"  {'FF':5} {result.cells['FF']:.3f}   (all groups together)")
for g in GROUP_ORDER:
    if g in groups:
        print(f"  {g.value:5} {result.cells[g.value]:.3f}")
