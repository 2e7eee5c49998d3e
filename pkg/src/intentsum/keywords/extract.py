"""Keyword model: POS-filter a draft summary down to guidance keywords."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from sklearn.base import BaseEstimator, TransformerMixin

from ..exceptions import InvalidArgumentError
from ..segmentation import tokenize_for_tagging
from .tagger import PerceptronTagger

__all__ = [
    "KEYWORD_TAGS",
    "KeywordSet",
    "extract_keywords",
    "load_bundled_tagger",
    "KeywordExtractor",
]

# Penn Treebank classes kept as keywords: foreign words, adjectives, nouns,
# symbols and verbs.
KEYWORD_TAGS = frozenset(
    {"FW", "JJ", "JJR", "JJS", "NN", "NNS", "NNP", "NNPS", "SYM",
     "VB", "VBD", "VBG", "VBN", "VBP", "VBZ"}
)

BUNDLED_MODEL = "keywords/data/tagger-oanc.txt.gz"


@dataclass(frozen=True)
class KeywordSet:
    """Ordered, duplicate-free lowercase keywords."""

    keywords: tuple[str, ...] = ()

    def __post_init__(self):
        seen = dict.fromkeys(k.lower() for k in self.keywords)
        object.__setattr__(self, "keywords", tuple(seen))

    def __iter__(self):
        return iter(self.keywords)

    def __len__(self):
        return len(self.keywords)

    def __bool__(self):
        return bool(self.keywords)

    def render(self) -> str:
        """Comma-separated list, as it appears inside a prompt."""
        return ", ".join(self.keywords)

    @classmethod
    def parse(cls, rendered: str) -> "KeywordSet":
        rendered = rendered.strip().rstrip(".")
        return cls(tuple(k.strip() for k in rendered.split(",") if k.strip()))


@lru_cache(maxsize=1)
def load_bundled_tagger() -> PerceptronTagger:
    """The tagger trained on the bundled OANC sample (every 10th sentence held out)."""
    with resources.as_file(resources.files("intentsum").joinpath(BUNDLED_MODEL)) as path:
        return PerceptronTagger.load(path)


def extract_keywords(draft_summary: str, model=None, tags=KEYWORD_TAGS) -> KeywordSet:
    """Keep tokens of ``draft_summary`` whose POS tag is a keyword class.

    ``model`` is anything with a ``tag(tokens) -> [(token, tag), ...]``
    method; the bundled tagger is used when omitted.
    """
    if model is None:
        model = load_bundled_tagger()
    tokens = tokenize_for_tagging(draft_summary)
    if not tokens:
        return KeywordSet()
    tagged = model.tag(tokens)
    if len(tagged) != len(tokens):
        raise InvalidArgumentError("tagger returned a different number of tags than tokens")
    return KeywordSet(tuple(tok for tok, t in tagged if t in tags))


class KeywordExtractor(TransformerMixin, BaseEstimator):
    """Transformer mapping draft summaries to keyword lists.

    Parameters
    ----------
    tagger : object or None
        A fitted tagger exposing ``tag(tokens)``. ``None`` selects the
        bundled averaged-perceptron model.
    tags : iterable of str or None
        Tag classes to keep; ``None`` means :data:`KEYWORD_TAGS`.
    """

    def __init__(self, tagger=None, tags=None):
        self.tagger = tagger
        self.tags = tags

    def fit(self, X=None, y=None):
        self.tagger_ = self.tagger if self.tagger is not None else load_bundled_tagger()
        self.tags_ = frozenset(self.tags) if self.tags is not None else KEYWORD_TAGS
        return self

    def transform(self, X):
        if not hasattr(self, "tagger_"):
            self.fit()
        if isinstance(X, str):
            raise InvalidArgumentError("transform expects a list of texts, not a single string")
        return [list(extract_keywords(text, self.tagger_, self.tags_)) for text in X]
