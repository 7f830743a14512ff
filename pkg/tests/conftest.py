import random

import pytest

from styleprof.corpus import (
    DatasetCard,
    ParallelDataset,
    Sentence,
    SentencePair,
    Split,
)

# Plain content words: not stopwords, not pronouns, absent from the
# bundled sentiment lexicon, so Sub features stay at zero.
SHARED_VOCAB = (
    "table", "river", "stone", "window", "garden", "paper", "music", "mountain",
    "bridge", "forest", "bottle", "ladder", "hammer", "engine", "carpet", "mirror",
    "jacket", "pillow", "wallet", "butter",
)

# Two class-exclusive sets with matched surface profiles: six letters,
# two syllables each.
SOURCE_EXCLUSIVE = ("marble", "pencil", "ribbon", "turtle", "barrel", "copper")
TARGET_EXCLUSIVE = ("valley", "meadow", "candle", "basket", "napkin", "velvet")


def make_pair(source_text: str, target_text: str, pair_id: int = 0) -> SentencePair:
    return SentencePair(
        id=pair_id,
        source=Sentence.from_raw(source_text),
        target=Sentence.from_raw(target_text),
    )


def make_split(pairs_text, name="train") -> Split:
    pairs = tuple(make_pair(s, t, i) for i, (s, t) in enumerate(pairs_text))
    return Split(name=name, pairs=pairs)


def length_planted_split(n_pairs: int, rng: random.Random, name="train") -> Split:
    """Classes identical except target sentences are twice as long in tokens.

    Source: 6-10 content words. Target: same word sampling process, padded
    with one comma per word, so word-based features match but the token
    count doubles.
    """
    pairs_text = []
    for _ in range(n_pairs):
        w = rng.randint(6, 10)
        src_words = rng.choices(SHARED_VOCAB, k=w)
        w2 = rng.randint(6, 10)
        tgt_words = rng.choices(SHARED_VOCAB, k=w2)
        tgt_tokens = []
        for word in tgt_words:
            tgt_tokens.extend([word, ","])
        pairs_text.append((" ".join(src_words), " ".join(tgt_tokens)))
    return make_split(pairs_text, name=name)


def vocab_planted_split(n_pairs: int, rng: random.Random, name="train") -> Split:
    """Classes identical except each side draws half its words from its own
    exclusive vocabulary."""
    pairs_text = []
    for _ in range(n_pairs):
        src = rng.choices(SHARED_VOCAB, k=4) + rng.choices(SOURCE_EXCLUSIVE, k=4)
        tgt = rng.choices(SHARED_VOCAB, k=4) + rng.choices(TARGET_EXCLUSIVE, k=4)
        rng.shuffle(src)
        rng.shuffle(tgt)
        pairs_text.append((" ".join(src), " ".join(tgt)))
    return make_split(pairs_text, name=name)


def planted_dataset(builder, seed: int, n_train: int = 300, n_test: int = 150) -> ParallelDataset:
    rng = random.Random(seed)
    train = builder(n_train, rng, name="train")
    test = builder(n_test, rng, name="test")
    card = DatasetCard(name="planted", sizes={"train": n_train, "test": n_test})
    return ParallelDataset(card=card, splits={"train": train, "test": test})


@pytest.fixture(scope="session")
def length_dataset():
    return planted_dataset(length_planted_split, seed=11)


@pytest.fixture(scope="session")
def vocab_dataset():
    return planted_dataset(vocab_planted_split, seed=12)
