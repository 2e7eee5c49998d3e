"""Reference-free intention control metrics.

``k_conciseness`` is the absolute deviation from a target sentence count,
``k_narrative`` the percentage of sentences in a target perspective and
``k_keywords`` the ROUGE-1 recall of a keyword list. Dataset-level values are
plain means of the per-summary values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from ._validation import check_int
from .exceptions import InvalidArgumentError, UndefinedMetricError
from .metrics import ngram_overlap
from .segmentation import Sentence, tokenize_words

__all__ = [
    "NarrativeLabel",
    "IntentTarget",
    "FIRST_PERSON_PRONOUNS",
    "classify_narrative",
    "k_conciseness",
    "k_narrative",
    "k_keywords",
    "aggregate_metric",
]

# "us"/"ours" are deliberately absent: only these two pronouns trigger.
FIRST_PERSON_PRONOUNS = ("we", "our")
_COMMA_FPP = re.compile(r",\s*(?:%s)\b" % "|".join(FIRST_PERSON_PRONOUNS), re.IGNORECASE)


class NarrativeLabel(str, Enum):
    FIRST = "first"
    THIRD = "third"


@dataclass(frozen=True)
class IntentTarget:
    """Target value for one intention; only the field matching ``kind`` is set."""

    kind: str
    conciseness_target: int | None = None
    narrative_target: NarrativeLabel | None = None
    keyword_set: tuple[str, ...] | None = None

    def __post_init__(self):
        fields = {
            "conciseness": self.conciseness_target,
            "narrative": self.narrative_target,
            "keywords": self.keyword_set,
        }
        if self.kind not in fields:
            raise InvalidArgumentError(f"unknown intent kind {self.kind!r}")
        for kind, value in fields.items():
            if (value is not None) != (kind == self.kind):
                raise InvalidArgumentError(f"IntentTarget({self.kind}) must set exactly the {self.kind} field")
        if self.kind == "conciseness":
            check_int(self.conciseness_target, "conciseness_target", minimum=1)
        elif self.kind == "narrative":
            object.__setattr__(self, "narrative_target", NarrativeLabel(self.narrative_target))
        else:
            keywords = tuple(k.lower() for k in self.keyword_set)
            if not keywords:
                raise InvalidArgumentError("keyword_set must be non-empty")
            object.__setattr__(self, "keyword_set", keywords)

    def score(self, summary: list[Sentence]) -> float:
        if self.kind == "conciseness":
            return k_conciseness(self.conciseness_target, summary)
        if self.kind == "narrative":
            return k_narrative(self.narrative_target, summary)
        return k_keywords(self.keyword_set, [t for s in summary for t in s.tokens])


def _sentence_text(sentence):
    return sentence.text if isinstance(sentence, Sentence) else sentence


def classify_narrative(sentence) -> NarrativeLabel:
    """Label a sentence ``first`` or ``third`` person.

    First person when the first word is "we"/"our", or when a comma is
    followed by one of them as a whole word (", well" does not count).
    Accepts a :class:`Sentence` or a plain string.
    """
    text = _sentence_text(sentence)
    if not text or not text.strip():
        raise InvalidArgumentError("cannot classify an empty sentence")
    tokens = sentence.tokens if isinstance(sentence, Sentence) else tokenize_words(text)
    if tokens and tokens[0] in FIRST_PERSON_PRONOUNS:
        return NarrativeLabel.FIRST
    if _COMMA_FPP.search(text):
        return NarrativeLabel.FIRST
    return NarrativeLabel.THIRD


def k_conciseness(target: int, summary) -> int:
    target = check_int(target, "target", minimum=1)
    return abs(target - len(summary))


def k_narrative(target, summary) -> float:
    target = NarrativeLabel(target)
    if not summary:
        raise UndefinedMetricError("narrative control is undefined for an empty summary")
    hits = sum(1 for s in summary if classify_narrative(s) is target)
    return 100.0 * hits / len(summary)


def k_keywords(keywords, summary_tokens) -> float:
    """Keyword coverage: 100 x ROUGE-1 recall with the keywords as reference.

    Multi-word keywords are flattened into unigrams first.
    """
    if isinstance(keywords, str):
        raise InvalidArgumentError("keywords must be a list of strings")
    reference = [tok for kw in keywords for tok in tokenize_words(kw)]
    if not reference:
        raise InvalidArgumentError("keyword list is empty")
    matched, _, total = ngram_overlap(list(summary_tokens), reference, 1)
    return 100.0 * matched / total


def aggregate_metric(values) -> float:
    values = list(values)
    if not values:
        raise UndefinedMetricError("cannot average an empty list of values")
    return math.fsum(values) / len(values)
