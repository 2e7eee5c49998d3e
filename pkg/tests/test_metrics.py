import pytest
from hypothesis import given
from hypothesis import strategies as st

from intentsum.exceptions import InvalidArgumentError, UndefinedMetricError
from intentsum.metrics import RougeScore, fkgl, lcs_length, novel_ngram_ratio, rouge_l, rouge_n
from intentsum.segmentation import tokenize_words

from oracles import fkgl_oracle, lcs_exhaustive, novel_ratio_oracle, rouge_l_oracle, rouge_n_oracle, syllables

tokens = st.lists(st.sampled_from("abcd"), max_size=9)
nonempty = st.lists(st.sampled_from("abcd"), min_size=1, max_size=9)


def test_rouge_n_identity_and_disjoint():
    assert rouge_n(["x", "y"], ["x", "y"], 2) == (1.0, 1.0, 1.0)
    assert rouge_n(["x"], ["y"]) == (0.0, 0.0, 0.0)


def test_rouge_n_worked_example():
    ref = ["thompson", "sampling", "variational", "inference"]
    cand = ["variational", "thompson", "methods"]
    score = rouge_n(cand, ref, 1)
    assert score.recall == 0.5
    assert score.precision == pytest.approx(2 / 3)
    assert score.f1 == pytest.approx(0.5714, abs=1e-4)


def test_rouge_n_clips_repeats():
    score = rouge_n(["the", "the", "the"], ["the", "cat"], 1)
    assert score.precision == pytest.approx(1 / 3)
    assert score.recall == 0.5


def test_rouge_n_empty_inputs():
    assert rouge_n([], ["a"]) == (0.0, 0.0, 0.0)
    assert rouge_n(["a"], ["a"], 3) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("n", [0, -2, 2.0])
def test_rouge_n_rejects_bad_n(n):
    with pytest.raises(InvalidArgumentError):
        rouge_n(["a"], ["a"], n)


def test_rouge_rejects_strings():
    with pytest.raises(InvalidArgumentError):
        rouge_n("abc", ["a"])
    with pytest.raises(InvalidArgumentError):
        rouge_l(["a"], "abc")


def test_rouge_l_examples():
    assert rouge_l(list("abcd"), list("abcd")) == (1.0, 1.0, 1.0)
    score = rouge_l(["a", "c", "d"], ["a", "b", "c", "d"])
    assert score.recall == 0.75 and score.precision == 1.0
    assert score.f1 == pytest.approx(0.8571, abs=1e-4)
    assert rouge_l(["x"], ["y"]) == (0.0, 0.0, 0.0)


@given(tokens, tokens, st.integers(1, 3))
def test_rouge_n_matches_oracle(cand, ref, n):
    assert rouge_n(cand, ref, n) == pytest.approx(rouge_n_oracle(cand, ref, n), abs=0)


@given(tokens, tokens)
def test_rouge_l_matches_oracle(cand, ref):
    assert rouge_l(cand, ref) == pytest.approx(rouge_l_oracle(cand, ref), abs=0)


@given(tokens, tokens, st.integers(1, 3))
def test_rouge_swap_symmetry(cand, ref, n):
    for fn in (lambda a, b: rouge_n(a, b, n), rouge_l):
        p, r, f = fn(cand, ref)
        p2, r2, f2 = fn(ref, cand)
        assert (p, r, f) == (r2, p2, f2)


@given(tokens, tokens, st.integers(1, 2))
def test_recall_one_when_reference_contained(extra, ref, n):
    cand = ref + extra
    if len(ref) >= n:
        assert rouge_n(cand, ref, n).recall == 1.0


@given(st.text(alphabet="ab", max_size=60), st.text(alphabet="abc", max_size=60))
def test_lcs_longer_inputs_against_dp(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            table[i + 1][j + 1] = table[i][j] + 1 if x == y else max(table[i][j + 1], table[i + 1][j])
    assert lcs_length(a, b) == table[-1][-1]


@given(st.lists(st.sampled_from("abc"), max_size=7), st.lists(st.sampled_from("abc"), max_size=7))
def test_lcs_small_exhaustive(a, b):
    assert lcs_length(a, b) == lcs_exhaustive(a, b)


def test_rouge_score_from_counts():
    assert RougeScore.from_counts(0, 0, 0) == (0.0, 0.0, 0.0)
    assert RougeScore.from_counts(1, 2, 4).f1 == pytest.approx(1 / 3)


def test_novel_ngram_examples():
    assert novel_ngram_ratio(["a", "b", "c", "d"], ["a", "b", "c", "d"]) == 0.0
    assert novel_ngram_ratio(["x", "y", "z"], ["a", "b", "c"]) == 100.0
    assert novel_ngram_ratio(["a", "b", "d"], ["a", "b", "c"], 2) == 50.0


def test_novel_ngram_set_semantics():
    # distinct bigrams xy, yx, ya, ab; only ab is in the source
    assert novel_ngram_ratio(["x", "y", "x", "y", "a", "b"], ["a", "b"]) == 75.0


def test_novel_ngram_too_short():
    with pytest.raises(UndefinedMetricError):
        novel_ngram_ratio(["a"], ["a", "b"], 2)


@given(nonempty, tokens, st.integers(1, 3), st.randoms())
def test_novel_ngram_oracle_and_permutation(summary, source, n, rnd):
    if len(summary) < n:
        return
    value = novel_ngram_ratio(summary, source, n)
    assert value == novel_ratio_oracle(summary, source, n)
    shuffled = list(source)
    rnd.shuffle(shuffled)
    grams = lambda s: {tuple(s[i : i + n]) for i in range(len(s) - n + 1)}
    if grams(shuffled) == grams(source):
        assert novel_ngram_ratio(summary, shuffled, n) == value


def test_fkgl_examples():
    assert fkgl("The cat sat on the mat.") == pytest.approx(-1.45, abs=5e-3)
    assert fkgl("We propose variational inference.") == pytest.approx(15.47, abs=5e-3)
    with pytest.raises(UndefinedMetricError):
        fkgl("")
    with pytest.raises(UndefinedMetricError):
        fkgl("... !!")


def test_fkgl_multi_sentence_oracle():
    text = "Bandits explore. Thompson sampling balances exploration and exploitation!"
    words = tokenize_words(text)
    expected = fkgl_oracle(len(words), 2, sum(syllables(w) for w in words))
    assert fkgl(text) == pytest.approx(expected, abs=1e-12)


def test_fkgl_increasing_in_syllables_per_word():
    # four words, one sentence; swap monosyllables for longer words one at a time
    series = [
        "Cats sat on mats.",
        "Cats sat on carpets.",
        "Cats rested on carpets.",
        "Tigers rested on carpets.",
        "Tigers rested upon carpets.",
        "Tigers rested upon variational carpets.",
    ]
    values = [fkgl(s) for s in series[:-1]]
    assert all(a < b for a, b in zip(values, values[1:]))
