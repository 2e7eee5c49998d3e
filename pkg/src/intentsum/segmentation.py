"""Deterministic text segmentation: sentences, word tokens, n-grams, syllables.

Every metric in the package is computed on top of these primitives, so the
rules here are deliberately simple and fully documented:

* sentences end at ``.``, ``!`` or ``?`` (optionally followed by closing
  quotes or brackets) when the next non-space character is uppercase or the
  text ends; a period that closes a listed abbreviation is not a boundary;
* word tokens are maximal runs of Unicode letters/digits, lowercased;
* syllables are vowel groups with a silent final ``e`` removed.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ._validation import check_int, check_tokens
from .exceptions import InvalidArgumentError

__all__ = [
    "Sentence",
    "NgramMultiset",
    "load_abbreviations",
    "split_sentences",
    "tokenize_words",
    "tokenize_for_tagging",
    "ngrams",
    "count_syllables",
]

_WORD = re.compile(r"[^\W_]+")
_TAGGING_TOKEN = re.compile(r"[^\W_]+|[^\w\s]|_")
_TERMINATOR = re.compile(r"[.!?]+[\"'”’)\]]*")
_VOWEL_GROUP = re.compile(r"[aeiouy]+")
_NON_SPACE = re.compile(r"\S")


@dataclass(frozen=True)
class Sentence:
    """A sentence span of a source text."""

    text: str
    start_offset: int
    tokens: tuple[str, ...] = field(default=None)

    def __post_init__(self):
        if not self.text:
            raise InvalidArgumentError("sentence text must be non-empty")
        if self.tokens is None:
            object.__setattr__(self, "tokens", tuple(tokenize_words(self.text)))


@dataclass(frozen=True)
class NgramMultiset:
    """Multiset of n-grams; ``counts`` maps n-token tuples to occurrences."""

    n: int
    counts: Counter

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)


def load_abbreviations(path: str | Path | None = None) -> tuple[str, ...]:
    """Read an abbreviation list (one per line, ``#`` starts a comment).

    Without ``path`` the list shipped with the package is returned.
    """
    if path is None:
        text = resources.files("intentsum").joinpath("data/abbreviations.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            entries.append(line.lower())
    return tuple(entries)


@lru_cache(maxsize=None)
def _default_abbreviations():
    return load_abbreviations()


def _ends_with_abbreviation(head: str, abbreviations) -> bool:
    lowered = head.lower()
    for abbr in abbreviations:
        if lowered.endswith(abbr):
            cut = len(lowered) - len(abbr)
            if cut == 0 or not lowered[cut - 1].isalnum():
                return True
    return False


def split_sentences(text: str, abbreviations=None) -> list[Sentence]:
    """Split ``text`` into sentences.

    >>> [s.text for s in split_sentences("We do X. It works.")]
    ['We do X.', 'It works.']
    """
    if abbreviations is None:
        abbreviations = _default_abbreviations()
    else:
        abbreviations = tuple(a.lower() for a in abbreviations)

    boundaries = []
    for match in _TERMINATOR.finditer(text):
        end = match.end()
        nxt = _NON_SPACE.search(text, end)
        if nxt is not None:
            if nxt.start() == end or not nxt.group().isupper():
                continue
            if text[match.start()] == "." and _ends_with_abbreviation(
                text[: match.start() + 1], abbreviations
            ):
                continue
        boundaries.append(end)

    sentences = []
    start = 0
    for end in boundaries + [len(text)]:
        span = text[start:end]
        body = span.strip()
        if body:
            offset = start + (len(span) - len(span.lstrip()))
            sentences.append(Sentence(body, offset))
        start = end
    return sentences


def tokenize_words(text: str) -> list[str]:
    """Lowercased maximal runs of alphanumeric characters, in order."""
    return [tok.lower() for tok in _WORD.findall(text)]


def tokenize_for_tagging(text: str) -> list[str]:
    """Case-preserving tokens for the POS tagger.

    Word runs follow :func:`tokenize_words` (without lowercasing); every other
    non-space character becomes a one-character token.
    """
    return _TAGGING_TOKEN.findall(text)


def ngrams(tokens, n: int) -> NgramMultiset:
    """Sliding-window n-gram multiset over ``tokens``."""
    n = check_int(n, "n", minimum=1)
    tokens = check_tokens(tokens, "tokens")
    counts = Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return NgramMultiset(n, counts)


def count_syllables(word: str) -> int:
    """Heuristic syllable count: vowel groups minus a silent final ``e``.

    >>> count_syllables("summary"), count_syllables("she")
    (3, 1)
    """
    if not word:
        raise InvalidArgumentError("cannot count syllables of an empty word")
    lowered = word.lower()
    groups = _VOWEL_GROUP.findall(lowered)
    count = len(groups)
    if count > 1 and groups[-1] == "e" and lowered.endswith("e"):
        count -= 1
    return max(count, 1)
