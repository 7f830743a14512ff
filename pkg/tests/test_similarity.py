import random

import pytest

from styleprof.errors import EmptySplit
from styleprof.similarity import (
    f1_overlap,
    jaccard,
    levenshtein,
    levenshtein_norm,
    summarize,
)

from conftest import make_pair, make_split


def brute_force_edit(s, t):
    """Exponential edit-script search, independent of the DP implementation."""
    if not s:
        return len(t)
    if not t:
        return len(s)
    sub = brute_force_edit(s[1:], t[1:]) + (0 if s[0] == t[0] else 1)
    ins = brute_force_edit(s, t[1:]) + 1
    dele = brute_force_edit(s[1:], t) + 1
    return min(sub, ins, dele)


def swap(pair):
    return make_pair(pair.target.raw, pair.source.raw)


class TestJaccard:
    def test_identity(self):
        assert jaccard(make_pair("a b c", "a b c")) == 1.0

    def test_disjoint(self):
        assert jaccard(make_pair("a b", "c d")) == 0.0

    def test_cat_sat(self):
        assert jaccard(make_pair("the cat sat", "the cat ran")) == pytest.approx(0.5)

    def test_case_insensitive(self):
        assert jaccard(make_pair("The Cat", "the cat")) == 1.0


class TestLevenshtein:
    def test_identical(self):
        assert levenshtein(make_pair("x y z", "x y z")) == 0

    def test_single_substitution(self):
        assert levenshtein(make_pair("the cat sat", "the cat ran")) == 1

    def test_sub_plus_insertions(self):
        assert levenshtein(make_pair("a", "x y z")) == 3

    def test_norm(self):
        assert levenshtein_norm(make_pair("the cat sat", "the cat ran")) == pytest.approx(1 / 3)
        assert levenshtein_norm(make_pair("a b", "a b")) == 0.0
        assert levenshtein_norm(make_pair("a b c", "x y z")) == 1.0


class TestF1:
    def test_identity(self):
        assert f1_overlap(make_pair("a b c", "c b a")) == 1.0

    def test_cat_sat(self):
        assert f1_overlap(make_pair("the cat sat", "the cat ran")) == pytest.approx(2 / 3)

    def test_disjoint_returns_zero(self):
        assert f1_overlap(make_pair("a b", "c d")) == 0.0


class TestProperties:
    def random_pairs(self, n, seed=7, max_len=6, vocab=5):
        rng = random.Random(seed)
        words = [f"w{i}" for i in range(vocab)]
        for _ in range(n):
            s = " ".join(rng.choices(words, k=rng.randint(1, max_len)))
            t = " ".join(rng.choices(words, k=rng.randint(1, max_len)))
            yield make_pair(s, t)

    def test_symmetry(self):
        for pair in self.random_pairs(300):
            rev = swap(pair)
            assert jaccard(pair) == jaccard(rev)
            assert levenshtein(pair) == levenshtein(rev)
            assert levenshtein_norm(pair) == levenshtein_norm(rev)
            assert f1_overlap(pair) == pytest.approx(f1_overlap(rev), abs=1e-15)

    def test_bounds(self):
        for pair in self.random_pairs(300, seed=8):
            assert 0.0 <= jaccard(pair) <= 1.0
            assert 0.0 <= levenshtein_norm(pair) <= 1.0
            assert 0.0 <= f1_overlap(pair) <= 1.0
            assert levenshtein(pair) <= max(len(pair.source), len(pair.target))

    def test_brute_force_oracle(self):
        for pair in self.random_pairs(200, seed=9):
            expected = brute_force_edit(pair.source.lowers(), pair.target.lowers())
            assert levenshtein(pair) == expected

    def test_triangle_inequality(self):
        rng = random.Random(10)
        words = ["a", "b", "c"]
        for _ in range(100):
            seqs = [
                " ".join(rng.choices(words, k=rng.randint(1, 5))) for _ in range(3)
            ]
            d_ab = levenshtein(make_pair(seqs[0], seqs[1]))
            d_bc = levenshtein(make_pair(seqs[1], seqs[2]))
            d_ac = levenshtein(make_pair(seqs[0], seqs[2]))
            assert d_ac <= d_ab + d_bc

    def test_full_agreement_iff_equal_sets(self):
        for pair in self.random_pairs(300, seed=11):
            sets_equal = set(pair.source.lowers()) == set(pair.target.lowers())
            assert (jaccard(pair) == 1.0) == sets_equal
            assert (f1_overlap(pair) == 1.0) == sets_equal


class TestSummarize:
    def test_identical_pairs(self):
        split = make_split([("a b c", "a b c")] * 4)
        rep = summarize(split)
        assert rep.jaccard_mean == 1.0
        assert rep.ld_mean == 0.0
        assert rep.ld_norm_mean == 0.0
        assert rep.f1_mean == 1.0
        assert rep.n_pairs == 4

    def test_single_pair_values(self):
        rep = summarize(make_split([("the cat sat", "the cat ran")]))
        assert rep.jaccard_mean == pytest.approx(0.5)
        assert rep.ld_mean == pytest.approx(1.0)
        assert rep.ld_norm_mean == pytest.approx(1 / 3)
        assert rep.f1_mean == pytest.approx(2 / 3)

    def test_empty_split(self):
        with pytest.raises(EmptySplit):
            summarize(make_split([]))
