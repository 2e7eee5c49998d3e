"""Surface summary metrics: ROUGE-N, ROUGE-L, novel n-grams and FKGL.

ROUGE here works on already tokenized input (see
:func:`intentsum.segmentation.tokenize_words`): no stemming and no stopword
removal, so absolute values are not comparable with the Perl toolkit.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from ._validation import check_int, check_tokens
from .exceptions import InvalidArgumentError, UndefinedMetricError
from .segmentation import count_syllables, ngrams, split_sentences, tokenize_words

__all__ = ["RougeScore", "rouge_n", "ngram_overlap", "rouge_l", "lcs_length", "novel_ngram_ratio", "fkgl"]


class RougeScore(NamedTuple):
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap, candidate_total, reference_total):
        precision = overlap / candidate_total if candidate_total else 0.0
        recall = overlap / reference_total if reference_total else 0.0
        if precision + recall == 0:
            return cls(precision, recall, 0.0)
        return cls(precision, recall, 2 * precision * recall / (precision + recall))


@lru_cache(maxsize=1 << 16)
def _ngram_counts(tokens: tuple, n: int):
    counts = ngrams(tokens, n).counts
    return counts, max(0, len(tokens) - n + 1)


def rouge_n(candidate, reference, n: int = 1) -> RougeScore:
    """Clipped n-gram overlap between a candidate and a reference token list.

    >>> rouge_n(["a", "b"], ["a", "b"], 1)
    RougeScore(precision=1.0, recall=1.0, f1=1.0)
    """
    return RougeScore.from_counts(*ngram_overlap(candidate, reference, n))


def ngram_overlap(candidate, reference, n: int = 1) -> tuple[int, int, int]:
    """Clipped n-gram match count with the candidate and reference n-gram totals."""
    if type(n) is not int or n < 1:
        n = check_int(n, "n", minimum=1)
    if isinstance(candidate, str) or isinstance(reference, str):
        raise InvalidArgumentError("rouge_n expects token lists, not strings")
    cand, cand_total = _ngram_counts(tuple(candidate), n)
    ref, ref_total = _ngram_counts(tuple(reference), n)
    if len(cand) > len(ref):
        cand, ref = ref, cand
    overlap = 0
    for gram, count in cand.items():
        other = ref.get(gram)
        if other:
            overlap += count if count < other else other
    return overlap, cand_total, ref_total


@lru_cache(maxsize=1 << 16)
def _match_masks(tokens: tuple) -> dict:
    masks = {}
    for i, tok in enumerate(tokens):
        masks[tok] = masks.get(tok, 0) | (1 << i)
    return masks


def lcs_length(a, b) -> int:
    """Length of the longest common subsequence of two sequences.

    Bit-vector form of the standard LCS dynamic program: bit ``j`` of ``v``
    is cleared once row ``i`` of the DP table steps up at column ``j``, so the
    final number of cleared bits is the table's bottom-right value.
    """
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    masks = _match_masks(tuple(b))
    full = (1 << len(b)) - 1
    v = full
    for x in a:
        m = masks.get(x)
        if m:
            u = v & m
            v = ((v + u) | (v - u)) & full
    return len(b) - v.bit_count()


def rouge_l(candidate, reference) -> RougeScore:
    """ROUGE-L from the longest common subsequence of the two token lists."""
    if isinstance(candidate, str) or isinstance(reference, str):
        raise InvalidArgumentError("rouge_l expects token lists, not strings")
    return RougeScore.from_counts(lcs_length(candidate, reference), len(candidate), len(reference))


def novel_ngram_ratio(summary_tokens, source_tokens, n: int = 2) -> float:
    """Percentage of distinct summary n-grams that never occur in the source."""
    n = check_int(n, "n", minimum=1)
    summary_tokens = check_tokens(summary_tokens, "summary_tokens")
    if len(summary_tokens) < n:
        raise UndefinedMetricError(f"summary has fewer than {n} tokens")
    summary_grams = set(ngrams(summary_tokens, n).counts)
    source_grams = ngrams(check_tokens(source_tokens, "source_tokens"), n).counts
    novel = sum(1 for gram in summary_grams if gram not in source_grams)
    return 100.0 * novel / len(summary_grams)


def fkgl(text: str) -> float:
    """Flesch-Kincaid grade level of ``text``.

    0.39 * words/sentences + 11.8 * syllables/words - 15.59, with sentences,
    words and syllables from :mod:`intentsum.segmentation`.
    """
    sentences = split_sentences(text)
    words = tokenize_words(text)
    if not sentences or not words:
        raise UndefinedMetricError("FKGL needs at least one sentence and one word")
    syllables = sum(count_syllables(w) for w in words)
    return 0.39 * (len(words) / len(sentences)) + 11.8 * (syllables / len(words)) - 15.59
