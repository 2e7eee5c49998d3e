"""Brute-force reference implementations, independent of the package code."""

import itertools
import math
import re
from collections import Counter


def all_subsequences(seq):
    out = set()
    for k in range(len(seq) + 1):
        for idx in itertools.combinations(range(len(seq)), k):
            out.add(tuple(seq[i] for i in idx))
    return out


def lcs_exhaustive(a, b):
    common = all_subsequences(a) & all_subsequences(b)
    return max(len(s) for s in common)


def clipped_overlap(cand, ref, n):
    """Greedy one-to-one pairing of identical n-gram occurrences."""
    cand_grams = [tuple(cand[i : i + n]) for i in range(len(cand) - n + 1)]
    ref_grams = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
    used = [False] * len(ref_grams)
    matched = 0
    for g in cand_grams:
        for j, h in enumerate(ref_grams):
            if not used[j] and h == g:
                used[j] = True
                matched += 1
                break
    return matched, len(cand_grams), len(ref_grams)


def prf(overlap, cand_total, ref_total):
    p = overlap / cand_total if cand_total else 0.0
    r = overlap / ref_total if ref_total else 0.0
    f = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return p, r, f


def rouge_n_oracle(cand, ref, n):
    return prf(*clipped_overlap(cand, ref, n))


def rouge_l_oracle(cand, ref):
    return prf(lcs_exhaustive(cand, ref) if cand and ref else 0, len(cand), len(ref))


def novel_ratio_oracle(summary, source, n):
    summary_set = {tuple(summary[i : i + n]) for i in range(len(summary) - n + 1)}
    source_set = {tuple(source[i : i + n]) for i in range(len(source) - n + 1)}
    return 100.0 * len(summary_set - source_set) / len(summary_set)


def words(text):
    return [w.lower() for w in re.findall(r"[^\W_]+", text)]


def syllables(word):
    groups = re.findall(r"[aeiouy]+", word.lower())
    n = len(groups)
    if n > 1 and groups[-1] == "e" and word.lower().endswith("e"):
        n -= 1
    return max(n, 1)


def fkgl_oracle(n_words, n_sentences, n_syllables):
    return 0.39 * n_words / n_sentences + 11.8 * n_syllables / n_words - 15.59


def bigram_table(corpus_tokens, vocab):
    """Add-one smoothed P(next | prev) from explicit counting."""
    pair = Counter(zip(corpus_tokens, corpus_tokens[1:]))
    first = Counter(corpus_tokens[:-1])
    return {
        (p, q): (pair[(p, q)] + 1) / (first[p] + len(vocab)) for p in vocab for q in vocab
    }


def log_softmax(values):
    m = max(values)
    z = math.log(sum(math.exp(v - m) for v in values))
    return [v - m - z for v in values]
