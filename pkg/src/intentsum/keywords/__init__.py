from .extract import KEYWORD_TAGS, KeywordExtractor, KeywordSet, extract_keywords, load_bundled_tagger
from .tagger import PerceptronTagger, TaggedToken, read_tagged_corpus, tag, train_tagger

__all__ = [
    "KEYWORD_TAGS",
    "KeywordExtractor",
    "KeywordSet",
    "PerceptronTagger",
    "TaggedToken",
    "extract_keywords",
    "load_bundled_tagger",
    "read_tagged_corpus",
    "tag",
    "train_tagger",
]
