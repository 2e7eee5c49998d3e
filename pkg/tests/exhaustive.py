"""Exhaustive enumeration of token-list pairs for the ROUGE equivalence check.

Pairs are enumerated up to two symmetries that leave every ROUGE score
unchanged or mirrored: a permutation of the alphabet applied to both lists,
and swapping candidate with reference (precision and recall trade places).
A pair (c, r) is kept when c + r is in restricted-growth form (symbols
appear for the first time in the order 0, 1, 2, ...) and, for the swap,
len(c) < len(r) or (len(c) == len(r) and c + r is not larger than the
restricted-growth form of r + c).
"""

import bisect
import itertools
from collections import Counter


def all_lists(alphabet_size, max_len):
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(range(alphabet_size), repeat=n))
    return out


def restricted_growth(seq):
    mapping = {}
    out = []
    for x in seq:
        if x not in mapping:
            mapping[x] = len(mapping)
        out.append(mapping[x])
    return tuple(out)


def _continues(seq, used):
    """New state if ``seq`` may follow a prefix that used symbols 0..used-1."""
    for x in seq:
        if x == used:
            used += 1
        elif x > used:
            return None
    return used


def representative_pairs(alphabet_size, max_len):
    """Yield (c, r) covering every pair orbit at least once."""
    lists = all_lists(alphabet_size, max_len)
    by_state = {m: [[] for _ in range(max_len + 1)] for m in range(alphabet_size + 1)}
    for seq in lists:
        for m in range(alphabet_size + 1):
            if _continues(seq, m) is not None:
                by_state[m][len(seq)].append(seq)
    for c in by_state[0][0] + [s for n in range(1, max_len + 1) for s in by_state[0][n]]:
        used = _continues(c, 0)
        for lr in range(len(c), max_len + 1):
            for r in by_state[used][lr]:
                if lr == len(c) and c + r > restricted_growth(r + c):
                    continue
                yield c, r


def pair_orbit(c, r):
    """Canonical key of the orbit of (c, r) under relabeling and swapping."""
    return min((len(c), restricted_growth(c + r)), (len(r), restricted_growth(r + c)))


class SubsequenceOracle:
    """Brute-force scores from precomputed subsequence sets and n-gram counts.

    Every list is mapped to a bitset over all lists of length <= max_len,
    one bit per subsequence it contains; bit positions grow with length, so
    the top bit of the intersection of two bitsets is a longest common
    subsequence.
    """

    def __init__(self, alphabet_size, max_len):
        self.lists = all_lists(alphabet_size, max_len)
        index = {s: i for i, s in enumerate(self.lists)}
        self.starts = [sum(alphabet_size**k for k in range(n)) for n in range(max_len + 2)]
        self.subseq = {}
        self.grams = {}
        for s in self.lists:
            bits = 0
            for k in range(len(s) + 1):
                for idx in itertools.combinations(range(len(s)), k):
                    bits |= 1 << index[tuple(s[i] for i in idx)]
            self.subseq[s] = bits
            uni, bi = Counter(s), Counter(zip(s, s[1:]))
            self.grams[s] = (
                tuple(uni[a] for a in range(alphabet_size)),
                tuple(bi[g] for g in itertools.product(range(alphabet_size), repeat=2)),
            )
        self.length_of_bit = [bisect.bisect_right(self.starts, i) - 1 for i in range(len(self.lists))]

    def lcs(self, a, b):
        return self.length_of_bit[(self.subseq[a] & self.subseq[b]).bit_length() - 1]

    def counts(self, c, r):
        """(overlap, |c| units, |r| units) for ROUGE-1, ROUGE-2 and ROUGE-L."""
        u_c, b_c = self.grams[c]
        u_r, b_r = self.grams[r]
        return (
            (sum(map(min, u_c, u_r)), len(c), len(r)),
            (sum(map(min, b_c, b_r)), max(len(c) - 1, 0), max(len(r) - 1, 0)),
            (self.lcs(c, r), len(c), len(r)),
        )
