"""Greedy averaged-perceptron part-of-speech tagger.

A left-to-right tagger in the style of the classic averaged perceptron: each
token is scored from a sparse binary feature template (word form, suffixes,
the two previous predicted tags, neighbouring words, shape flags) and the
weights used at prediction time are the average of all intermediate weight
vectors seen during training. Frequent words whose tag is practically
unambiguous go into a lexicon and skip the perceptron entirely.
"""

from __future__ import annotations

import ast
import gzip
import io
import random
from collections import Counter, defaultdict
from pathlib import Path
from typing import NamedTuple

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .._validation import check_int
from ..exceptions import InvalidArgumentError

__all__ = [
    "TaggedToken",
    "PerceptronTagger",
    "read_tagged_corpus",
    "train_tagger",
    "tag",
    "MODEL_MAGIC",
]

MODEL_MAGIC = "intentsum-perceptron-tagger"
MODEL_VERSION = 1
_START = ("-START-", "-START2-")
_END = ("-END-", "-END2-")


class TaggedToken(NamedTuple):
    token: str
    tag: str


def read_tagged_corpus(path) -> list[list[TaggedToken]]:
    """Read ``word_TAG`` tokens, one sentence per line (UTF-8).

    The tag is everything after the last underscore, so words may contain
    underscores themselves.
    """
    sentences = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            items = line.split()
            if not items:
                continue
            sentence = []
            for item in items:
                word, sep, tag_ = item.rpartition("_")
                if not sep or not word or not tag_:
                    raise InvalidArgumentError(f"{path}:{lineno}: malformed token {item!r}")
                sentence.append(TaggedToken(word, tag_))
            sentences.append(sentence)
    return sentences


def _normalize(word):
    if "-" in word and word[0] != "-":
        return "!HYPHEN"
    if word.isdigit() and len(word) == 4:
        return "!YEAR"
    if word[:1].isdigit():
        return "!DIGITS"
    return word.lower()


def _features(i, word, context, prev, prev2):
    """Active feature names for position ``i`` (offset by the two START pads)."""
    w = context[i]
    feats = [
        "bias",
        "i word " + w,
        "i suffix1 " + w[-1:],
        "i suffix2 " + w[-2:],
        "i suffix3 " + w[-3:],
        "i pref1 " + w[:1],
        "i-1 tag " + prev,
        "i-2 tag " + prev2,
        "i-1 tag+i-2 tag " + prev + " " + prev2,
        "i-1 tag+i word " + prev + " " + w,
        "i-1 word " + context[i - 1],
        "i-1 suffix3 " + context[i - 1][-3:],
        "i-2 word " + context[i - 2],
        "i+1 word " + context[i + 1],
        "i+1 suffix3 " + context[i + 1][-3:],
        "i+2 word " + context[i + 2],
    ]
    if word[:1].isupper():
        feats.append("i cap")
        if i == 2:
            feats.append("i cap initial")
    if word.isupper() and len(word) > 1:
        feats.append("i allcaps")
    if any(ch.isdigit() for ch in word):
        feats.append("i has digit")
    if "-" in word:
        feats.append("i has hyphen")
    return feats


class PerceptronTagger(BaseEstimator):
    """Averaged-perceptron POS tagger with a scikit-learn style interface.

    Parameters
    ----------
    n_iter : int
        Training epochs over the corpus.
    random_state : int
        Seed for the per-epoch sentence shuffle.
    lexicon_min_count, lexicon_min_ratio : int, float
        A word enters the lexicon when it occurs at least ``lexicon_min_count``
        times and one tag accounts for at least ``lexicon_min_ratio`` of them.

    ``fit`` takes either tagged sentences (lists of ``(word, tag)`` pairs) or
    word sentences together with ``y`` holding the tag sequences.
    """

    def __init__(self, n_iter=5, random_state=0, lexicon_min_count=20, lexicon_min_ratio=0.97):
        self.n_iter = n_iter
        self.random_state = random_state
        self.lexicon_min_count = lexicon_min_count
        self.lexicon_min_ratio = lexicon_min_ratio

    # -- training -----------------------------------------------------------

    def fit(self, X, y=None):
        corpus = _as_tagged(X, y)
        if not corpus:
            raise InvalidArgumentError("cannot train a tagger on an empty corpus")
        n_iter = check_int(self.n_iter, "n_iter", minimum=1)

        self.classes_ = sorted({t for sent in corpus for _, t in sent})
        self.lexicon_ = self._build_lexicon(corpus)

        weights = {}
        totals = defaultdict(float)
        stamps = defaultdict(int)
        clock = 0

        def update(feats, truth, guess):
            for f in feats:
                row = weights.setdefault(f, {})
                for label, delta in ((truth, 1.0), (guess, -1.0)):
                    key = (f, label)
                    w = row.get(label, 0.0)
                    totals[key] += (clock - stamps[key]) * w
                    stamps[key] = clock
                    row[label] = w + delta

        self.weights_ = weights
        rng = random.Random(self.random_state)
        order = list(range(len(corpus)))
        for _ in range(n_iter):
            for idx in order:
                sentence = corpus[idx]
                words = [w for w, _ in sentence]
                context = _START + tuple(_normalize(w) for w in words) + _END
                prev, prev2 = _START
                for i, (word, truth) in enumerate(sentence):
                    guess = self.lexicon_.get(word)
                    if guess is None:
                        feats = _features(i + 2, word, context, prev, prev2)
                        guess = self._best(feats)
                        clock += 1
                        if guess != truth:
                            update(feats, truth, guess)
                    prev2, prev = prev, guess
            rng.shuffle(order)

        averaged = {}
        for f, row in weights.items():
            avg_row = {}
            for label, w in row.items():
                key = (f, label)
                total = totals[key] + (clock - stamps[key]) * w
                value = total / clock if clock else w
                if value:
                    avg_row[label] = value
            if avg_row:
                averaged[f] = avg_row
        self.weights_ = averaged
        return self

    def _build_lexicon(self, corpus):
        counts = defaultdict(Counter)
        for sentence in corpus:
            for word, t in sentence:
                counts[word][t] += 1
        lexicon = {}
        for word, tag_counts in counts.items():
            best, n = max(tag_counts.items(), key=lambda kv: (kv[1], kv[0]))
            total = sum(tag_counts.values())
            if total >= self.lexicon_min_count and n / total >= self.lexicon_min_ratio:
                lexicon[word] = best
        return lexicon

    def _best(self, feats):
        scores = dict.fromkeys(self.classes_, 0.0)
        weights = self.weights_
        for f in feats:
            row = weights.get(f)
            if row:
                for label, w in row.items():
                    scores[label] += w
        return max(self.classes_, key=lambda c: (scores[c], c))

    # -- inference ----------------------------------------------------------

    def tag(self, tokens) -> list[TaggedToken]:
        """Tag one tokenized sentence, greedily from left to right."""
        check_is_fitted(self, "weights_")
        tokens = list(tokens)
        context = _START + tuple(_normalize(w) for w in tokens) + _END
        prev, prev2 = _START
        out = []
        for i, word in enumerate(tokens):
            guess = self.lexicon_.get(word)
            if guess is None:
                guess = self._best(_features(i + 2, word, context, prev, prev2))
            out.append(TaggedToken(word, guess))
            prev2, prev = prev, guess
        return out

    def predict(self, X):
        return [[t for _, t in self.tag(tokens)] for tokens in X]

    def score(self, X, y=None):
        """Token-level accuracy on tagged sentences (or words + ``y``)."""
        corpus = _as_tagged(X, y)
        correct = total = 0
        for sentence in corpus:
            predicted = self.tag([w for w, _ in sentence])
            correct += sum(p.tag == t for p, (_, t) in zip(predicted, sentence))
            total += len(sentence)
        return correct / total if total else 0.0

    # -- persistence --------------------------------------------------------

    def dumps(self) -> str:
        """Serialize the fitted model to the plain-text model format."""
        check_is_fitted(self, "weights_")
        lines = [f"{MODEL_MAGIC}\t{MODEL_VERSION}"]
        for name, value in sorted(self.get_params().items()):
            lines.append(f"param\t{name}\t{value!r}")
        lines.append("classes\t" + "\t".join(self.classes_))
        for word in sorted(self.lexicon_):
            lines.append(f"lexicon\t{word}\t{self.lexicon_[word]}")
        for f in sorted(self.weights_):
            row = self.weights_[f]
            for label in sorted(row):
                lines.append(f"w\t{f}\t{label}\t{row[label]!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PerceptronTagger":
        lines = text.splitlines()
        if not lines or lines[0].split("\t")[0] != MODEL_MAGIC:
            raise InvalidArgumentError("not a perceptron tagger model file")
        version = int(lines[0].split("\t")[1])
        if version != MODEL_VERSION:
            raise InvalidArgumentError(f"unsupported model version {version}")
        params, lexicon, weights, classes = {}, {}, {}, []
        for line in lines[1:]:
            kind, *fields = line.split("\t")
            if kind == "w":
                weights.setdefault(fields[0], {})[fields[1]] = float(fields[2])
            elif kind == "lexicon":
                lexicon[fields[0]] = fields[1]
            elif kind == "param":
                params[fields[0]] = _literal(fields[1])
            elif kind == "classes":
                classes = fields
            else:
                raise InvalidArgumentError(f"unknown model record {kind!r}")
        model = cls(**params)
        model.classes_ = classes
        model.lexicon_ = lexicon
        model.weights_ = weights
        return model

    def save(self, path):
        """Write the model; paths ending in ``.gz`` are gzip-compressed (mtime 0)."""
        data = self.dumps().encode("utf-8")
        path = Path(path)
        if path.suffix == ".gz":
            buf = io.BytesIO()
            with gzip.GzipFile(filename="", mode="wb", fileobj=buf, mtime=0) as gz:
                gz.write(data)
            data = buf.getvalue()
        path.write_bytes(data)

    @classmethod
    def load(cls, path) -> "PerceptronTagger":
        data = Path(path).read_bytes()
        if data[:2] == b"\x1f\x8b":
            data = gzip.decompress(data)
        return cls.loads(data.decode("utf-8"))


def _literal(text):
    return ast.literal_eval(text)


def _as_tagged(X, y):
    if y is None:
        return [[TaggedToken(*pair) for pair in sentence] for sentence in X]
    X, y = list(X), list(y)
    if len(X) != len(y):
        raise InvalidArgumentError("X and y must hold the same number of sentences")
    corpus = []
    for words, tags in zip(X, y):
        words, tags = list(words), list(tags)
        if len(words) != len(tags):
            raise InvalidArgumentError("every sentence needs exactly one tag per token")
        corpus.append([TaggedToken(w, t) for w, t in zip(words, tags)])
    return corpus


def train_tagger(corpus, epochs=5, random_state=0) -> PerceptronTagger:
    """Train a :class:`PerceptronTagger` on tagged sentences."""
    corpus = list(corpus)
    if not corpus:
        raise InvalidArgumentError("cannot train a tagger on an empty corpus")
    return PerceptronTagger(n_iter=epochs, random_state=random_state).fit(corpus)


def tag(model, tokens) -> list[TaggedToken]:
    return model.tag(tokens)
