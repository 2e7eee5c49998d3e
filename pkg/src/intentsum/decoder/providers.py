"""Next-token providers: the provider contract, a word tokenizer, an
analytically tractable bigram toy LM, and an HTTP client/server pair for the
JSON logprob wire protocol."""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Protocol, Sequence, runtime_checkable

import httpx
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .._validation import check_int, check_real
from ..exceptions import InvalidArgumentError, ProviderError
from .guidance import LOGPROB_FLOOR, TokenDistribution

__all__ = [
    "Provider",
    "WordTokenizer",
    "ToyLMSpec",
    "ToyBigramLM",
    "build_toy_lm",
    "HTTPProvider",
    "serve_provider",
    "WIRE_VERSION",
]

WIRE_VERSION = 1
DEFAULT_TRIGGER = "Focus on the following keywords"


@runtime_checkable
class Provider(Protocol):
    """What the decoder needs from a language model.

    ``next_logprobs`` must be deterministic for a given context; all
    randomness lives in the sampler. ``concurrency_safe`` tells the harness
    whether several generations may call the provider at once.
    """

    tokenizer: object
    end_token: int
    concurrency_safe: bool

    def next_logprobs(self, context: Sequence[int]) -> TokenDistribution: ...


class WordTokenizer:
    """Lowercased word/punctuation tokenizer over a closed vocabulary.

    Id 0 is ``<unk>`` and id 1 is the end token ``</s>``.
    """

    UNK = "<unk>"
    END = "</s>"
    _TOKEN = re.compile(r"[^\W_]+|[.!?,;:]")

    def __init__(self, vocabulary=()):
        self.vocabulary = [self.UNK, self.END]
        self.index = {self.UNK: 0, self.END: 1}
        for word in vocabulary:
            self.add(word)

    def __len__(self):
        return len(self.vocabulary)

    def add(self, word):
        if word not in self.index:
            self.index[word] = len(self.vocabulary)
            self.vocabulary.append(word)
        return self.index[word]

    @classmethod
    def split(cls, text):
        return [t.lower() for t in cls._TOKEN.findall(text)]

    def encode(self, text: str) -> list[int]:
        return [self.index.get(t, 0) for t in self.split(text)]

    def decode(self, ids) -> str:
        """Join tokens into text: punctuation attaches left, sentences are capitalized."""
        out = []
        capitalize = True
        for i in ids:
            word = self.vocabulary[i]
            if word == self.END:
                continue
            if word in ".!?,;:":
                if out:
                    out[-1] += word
                else:
                    out.append(word)
                capitalize = capitalize or word in ".!?"
                continue
            if capitalize:
                word = word[:1].upper() + word[1:]
                capitalize = False
            out.append(word)
        return " ".join(out)

    def save(self, path):
        Path(path).write_text("\n".join(self.vocabulary) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path):
        words = Path(path).read_text(encoding="utf-8").splitlines()
        if words[:2] != [cls.UNK, cls.END]:
            raise InvalidArgumentError(f"{path}: vocabulary must start with {cls.UNK} and {cls.END}")
        return cls(words[2:])


@dataclass(frozen=True)
class ToyLMSpec:
    """Keyword bonus settings for :class:`ToyBigramLM`.

    ``keyword_tokens=None`` takes the keywords from the context itself: the
    words following the trigger phrase up to the next sentence terminator.
    """

    beta: float = 0.0
    keyword_tokens: tuple[str, ...] | None = None
    trigger_phrase: str = DEFAULT_TRIGGER


def _find(haystack, needle):
    """Index just past the first occurrence of ``needle`` in ``haystack``, or -1."""
    n = len(needle)
    if n == 0 or n > len(haystack):
        return -1
    first = needle[0]
    for i in range(len(haystack) - n + 1):
        if haystack[i] == first and list(haystack[i : i + n]) == needle:
            return i + n
    return -1


class ToyBigramLM(BaseEstimator):
    """Add-one smoothed word bigram model with a prompt-triggered keyword bonus.

    The next-token distribution depends only on the last context token.
    When the context contains the trigger phrase, ``beta`` is added to the
    logits of the keyword tokens before normalizing, which makes the effect
    of guidance on those tokens exactly computable.
    """

    concurrency_safe = True

    def __init__(self, beta=0.0, keyword_tokens=None, trigger_phrase=DEFAULT_TRIGGER):
        self.beta = beta
        self.keyword_tokens = keyword_tokens
        self.trigger_phrase = trigger_phrase

    def fit(self, X, y=None):
        """Count bigrams over ``X`` (texts or lists of word tokens)."""
        sequences = [WordTokenizer.split(x) if isinstance(x, str) else [w.lower() for w in x] for x in X]
        sequences = [s for s in sequences if s]
        if not sequences:
            raise InvalidArgumentError("cannot build a toy LM from an empty corpus")
        check_real(self.beta, "beta", minimum=0.0)

        tokenizer = WordTokenizer()
        for seq in sequences:
            for w in seq:
                tokenizer.add(w)
        for w in WordTokenizer.split(self.trigger_phrase):
            tokenizer.add(w)
        for w in self.keyword_tokens or ():
            for part in WordTokenizer.split(w):
                tokenizer.add(part)

        size = len(tokenizer)
        counts = np.zeros((size, size))
        for seq in sequences:
            ids = [tokenizer.index[w] for w in seq] + [tokenizer.index[WordTokenizer.END]]
            for prev, nxt in zip(ids, ids[1:]):
                counts[prev, nxt] += 1
        self.tokenizer_ = tokenizer
        self.counts_ = counts
        self.log_table_ = np.log((counts + 1.0) / (counts.sum(axis=1, keepdims=True) + size))
        self.trigger_ids_ = tokenizer.encode(self.trigger_phrase)
        if self.keyword_tokens is None:
            self.keyword_ids_ = None
        else:
            self.keyword_ids_ = sorted({i for w in self.keyword_tokens for i in tokenizer.encode(w)} - {0})
        return self

    # provider contract
    @property
    def tokenizer(self):
        check_is_fitted(self, "log_table_")
        return self.tokenizer_

    @property
    def end_token(self):
        return 1

    @property
    def vocabulary_size(self):
        return len(self.tokenizer)

    def base_logprobs(self, context) -> np.ndarray:
        """Smoothed bigram log-probabilities given the last context token."""
        last = context[-1] if len(context) else 0
        return self.log_table_[last]

    def keyword_ids(self, context):
        """Keyword token ids active for ``context`` (empty without the trigger)."""
        end = _find(context, self.trigger_ids_)
        if end < 0:
            return []
        if self.keyword_ids_ is not None:
            return self.keyword_ids_
        stops = {self.tokenizer_.index.get(p) for p in ".!?"}
        ids = []
        for tok in context[end:]:
            if tok in stops:
                break
            if tok not in (0, self.tokenizer_.index.get(":"), self.tokenizer_.index.get(",")):
                ids.append(tok)
        return sorted(set(ids))

    def next_logits(self, context) -> np.ndarray:
        """Pre-normalization logits: base log-probabilities plus the keyword bonus."""
        logits = np.array(self.base_logprobs(context))
        if self.beta:
            ids = self.keyword_ids(context)
            if ids:
                logits[ids] += self.beta
        return logits

    def next_logprobs(self, context) -> TokenDistribution:
        return TokenDistribution.from_logits(self.next_logits(context))


def build_toy_lm(corpus, spec: ToyLMSpec = ToyLMSpec()) -> ToyBigramLM:
    return ToyBigramLM(
        beta=spec.beta, keyword_tokens=spec.keyword_tokens, trigger_phrase=spec.trigger_phrase
    ).fit(corpus)


class HTTPProvider:
    """Client for a remote provider speaking the JSON logprob protocol.

    Request: ``{"context": [ids], "top_k": k}`` (or ``{"context": {"text": s}}``).
    Response: ``{"logprobs": [{"token": id, "logprob": x}, ...],
    "eos_token": id, "vocab_size": n}``. Tokens missing from a top-k response
    are set to the floor and the distribution is marked approximate.
    """

    def __init__(self, endpoint, tokenizer=None, top_k=100, timeout=30.0, retries=2,
                 concurrency_safe=False, client=None):
        self.endpoint = endpoint
        self.tokenizer = tokenizer
        self.top_k = check_int(top_k, "top_k", minimum=100)
        self.timeout = timeout
        self.retries = check_int(retries, "retries", minimum=0)
        self.concurrency_safe = concurrency_safe
        self._client = client or httpx.Client(timeout=timeout)
        self._end_token = None

    @property
    def end_token(self):
        if self._end_token is None:
            raise ProviderError("end token unknown until the provider has answered once")
        return self._end_token

    def request(self, payload) -> dict:
        last_error = None
        for attempt in range(self.retries + 1):
            try:
                response = self._client.post(self.endpoint, json=payload, timeout=self.timeout)
                response.raise_for_status()
                return response.json()
            except (httpx.HTTPError, ValueError) as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(min(0.1 * 2**attempt, 2.0))
        raise ProviderError(f"request to {self.endpoint} failed: {last_error}")

    def next_logprobs(self, context) -> TokenDistribution:
        if isinstance(context, str):
            payload = {"context": {"text": context}, "top_k": self.top_k}
        else:
            payload = {"context": [int(t) for t in context], "top_k": self.top_k}
        body = self.request(payload)
        try:
            size = int(body["vocab_size"])
            self._end_token = int(body["eos_token"])
            entries = body["logprobs"]
            logits = np.full(size, LOGPROB_FLOOR)
            for entry in entries:
                logits[int(entry["token"])] = float(entry["logprob"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ProviderError(f"malformed provider response: {exc}") from exc
        return TokenDistribution.from_logits(logits, approximate=len(entries) < size)

    def close(self):
        self._client.close()


def _response_for(provider, payload):
    context = payload.get("context")
    if isinstance(context, dict):
        context = provider.tokenizer.encode(context["text"])
    if not isinstance(context, list):
        raise ValueError("context must be a token-id list or {'text': ...}")
    top_k = int(payload.get("top_k", 100))
    dist = provider.next_logprobs(context)
    order = np.argsort(-dist.logprobs, kind="stable")[:top_k]
    return {
        "logprobs": [{"token": int(i), "logprob": float(dist.logprobs[i])} for i in order],
        "eos_token": int(provider.end_token),
        "vocab_size": int(dist.vocabulary_size),
        "version": WIRE_VERSION,
    }


def serve_provider(provider, host="127.0.0.1", port=0):
    """Expose a local provider over HTTP; returns the running server.

    The server runs in a daemon thread; ``server.server_address`` gives the
    bound port and ``server.shutdown()`` stops it.
    """

    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            try:
                length = int(self.headers.get("Content-Length", 0))
                body = _response_for(provider, json.loads(self.rfile.read(length)))
                status = 200
            except Exception as exc:  # reported to the client as a 400
                body, status = {"error": str(exc)}, 400
            data = json.dumps(body).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def log_message(self, *args):
            pass

    server = ThreadingHTTPServer((host, port), Handler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    return server
