import math
import random

import pytest

from styleprof.bleu import BleuScore, corpus_bleu
from styleprof.errors import EmptyCorpus, LengthMismatch


REFS = [
    "the cat sat on the mat .".split(),
    "there is a book on the desk .".split(),
    "the weather is cold today .".split(),
]


class TestCorpusBleu:
    def test_self_bleu_is_exactly_100(self):
        result = corpus_bleu(REFS, REFS)
        assert result.score == 100.0
        assert result.precisions == (1.0, 1.0, 1.0, 1.0)
        assert result.brevity_penalty == 1.0

    def test_unigram_clipping(self):
        # "the" appears at most twice in the reference, so only two of the
        # seven hypothesis tokens count: p1 = 2/7.
        hyp = ["the the the the the the the".split()]
        ref = ["the cat is on the mat".split()]
        result = corpus_bleu(hyp, ref)
        assert result.precisions[0] == pytest.approx(2 / 7)
        assert result.score == 0.0  # no higher-order matches

    def test_zero_fourgram_overlap_scores_zero(self):
        hyp = ["the cat the dog the bird the fish".split()]
        ref = ["a cat a dog a bird a fish".split()]
        result = corpus_bleu(hyp, ref)
        assert result.precisions[3] == 0.0
        assert result.score == 0.0

    def test_geometric_mean_and_bp(self):
        hyp = ["the cat sat on a mat .".split()]
        ref = ["the cat sat on the mat .".split()]
        result = corpus_bleu(hyp, ref)
        expected = math.exp(sum(math.log(p) for p in result.precisions) / 4)
        assert result.brevity_penalty == 1.0
        assert result.score == pytest.approx(100.0 * expected)

    def test_brevity_penalty_short_hypothesis(self):
        hyp = ["the cat sat".split()]
        ref = ["the cat sat on the mat".split()]
        result = corpus_bleu(hyp, ref)
        assert result.brevity_penalty == pytest.approx(math.exp(1 - 6 / 3))
        assert result.hyp_length == 3
        assert result.ref_length == 6

    def test_long_hypothesis_no_penalty(self):
        hyp = ["the cat sat on the mat tonight again".split()]
        ref = ["the cat sat on the mat".split()]
        assert corpus_bleu(hyp, ref).brevity_penalty == 1.0

    def test_case_sensitive(self):
        hyp = ["The Cat Sat On The Mat .".split()]
        ref = ["the cat sat on the mat .".split()]
        assert corpus_bleu(hyp, ref).score < 100.0

    def test_pair_permutation_invariance(self):
        hyps = [r[:] for r in REFS]
        hyps[0][0] = "a"
        base = corpus_bleu(hyps, REFS)
        order = [2, 0, 1]
        shuffled = corpus_bleu([hyps[i] for i in order], [REFS[i] for i in order])
        assert shuffled.score == pytest.approx(base.score)
        assert shuffled.precisions == pytest.approx(base.precisions)

    def test_corruption_lowers_score(self):
        rng = random.Random(7)
        vocab = ["zig", "zag", "foo", "bar"]
        prev = 100.0
        for n_corrupt in (1, 2, 3):
            hyps = [r[:] for r in REFS]
            for sent in hyps:
                for pos in rng.sample(range(len(sent)), n_corrupt):
                    sent[pos] = rng.choice(vocab)
            score = corpus_bleu(hyps, REFS).score
            assert score < prev
            prev = score

    def test_bounds(self):
        rng = random.Random(8)
        vocab = ["the", "cat", "dog", "sat", "ran", "."]
        for _ in range(50):
            hyps = [[rng.choice(vocab) for _ in range(rng.randint(4, 9))] for _ in range(4)]
            refs = [[rng.choice(vocab) for _ in range(rng.randint(4, 9))] for _ in range(4)]
            result = corpus_bleu(hyps, refs)
            assert 0.0 <= result.score <= 100.0
            assert all(0.0 <= p <= 1.0 for p in result.precisions)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            corpus_bleu(REFS[:2], REFS)

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            corpus_bleu([], [])

    def test_str_rendering(self):
        text = str(corpus_bleu(REFS, REFS))
        assert "100.00" in text
        assert "BP" in text
