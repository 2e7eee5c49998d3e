"""End-to-end guided summarizer: prompts in, decoded summaries out."""

from __future__ import annotations

import zlib

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .decoder.guidance import GuidanceConfig, generate
from .exceptions import InvalidArgumentError
from .keywords.extract import KeywordExtractor, KeywordSet
from .prompts import (
    BASELINE_INSTRUCTION,
    ChatWrapper,
    IntentSpec,
    assemble_prompt,
    build_instruction,
    get_wrapper,
    wrap_chat,
)

__all__ = ["GuidedSummarizer", "derive_seed"]


def derive_seed(seed: int, key) -> int:
    """Per-item seed that depends only on the run seed and the item key."""
    if isinstance(key, str):
        key = zlib.crc32(key.encode("utf-8"))
    return int(np.random.SeedSequence([int(seed) & 0xFFFFFFFF, int(key)]).generate_state(1)[0])


class GuidedSummarizer(BaseEstimator):
    """Summarize articles with intention prompts and classifier-free guidance.

    The conditional context is the article followed by the intention
    instruction; the unconditional context is the same article followed by
    the baseline instruction. Both are wrapped with the chat template.

    ``predict`` takes a list of articles (and optionally matching draft
    summaries for keyword extraction) and returns summary strings; use
    :meth:`summarize` for the prompts and decoding metadata of one article.
    """

    def __init__(
        self,
        provider=None,
        gamma=1.5,
        temperature=0.8,
        top_p=0.95,
        max_new_tokens=256,
        seed=0,
        greedy=False,
        conciseness=None,
        narrative_first_person=False,
        use_keywords=False,
        task_variant="generic",
        wrapper="llama-inst",
        keyword_extractor=None,
        context_budget=None,
    ):
        self.provider = provider
        self.gamma = gamma
        self.temperature = temperature
        self.top_p = top_p
        self.max_new_tokens = max_new_tokens
        self.seed = seed
        self.greedy = greedy
        self.conciseness = conciseness
        self.narrative_first_person = narrative_first_person
        self.use_keywords = use_keywords
        self.task_variant = task_variant
        self.wrapper = wrapper
        self.keyword_extractor = keyword_extractor
        self.context_budget = context_budget

    def fit(self, X=None, y=None):
        if self.provider is None:
            raise InvalidArgumentError("GuidedSummarizer needs a provider")
        self.config_ = GuidanceConfig(
            gamma=self.gamma,
            temperature=self.temperature,
            top_p=self.top_p,
            max_new_tokens=self.max_new_tokens,
            seed=self.seed,
            greedy=self.greedy,
        )
        self.wrapper_ = self.wrapper if isinstance(self.wrapper, ChatWrapper) else get_wrapper(self.wrapper)
        # validates conciseness / task_variant early
        IntentSpec(conciseness=self.conciseness, task_variant=self.task_variant)
        if self.use_keywords:
            extractor = self.keyword_extractor or KeywordExtractor()
            self.keyword_extractor_ = extractor.fit() if not hasattr(extractor, "tagger_") else extractor
        else:
            self.keyword_extractor_ = None
        if self.context_budget is not None and self.context_budget <= self.max_new_tokens:
            raise InvalidArgumentError("context_budget must exceed max_new_tokens")
        return self

    def intent_spec(self, draft_summary=None, conciseness=None) -> IntentSpec:
        keywords = None
        if self.use_keywords and draft_summary:
            keywords = KeywordSet(tuple(self.keyword_extractor_.transform([draft_summary])[0]))
        return IntentSpec(
            conciseness=conciseness if conciseness is not None else self.conciseness,
            narrative_first_person=self.narrative_first_person,
            keywords=keywords,
            task_variant=self.task_variant,
        )

    def build_prompts(self, article, draft_summary=None, conciseness=None) -> dict:
        """Conditional and unconditional prompt strings for one article.

        With a ``context_budget`` the article tail is cut, word by word, until
        the longer prompt plus ``max_new_tokens`` fits; ``truncated`` reports it.
        """
        check_is_fitted(self, "config_")
        spec = self.intent_spec(draft_summary, conciseness)
        instruction = build_instruction(spec)

        def render(text):
            return (
                wrap_chat(assemble_prompt(text, instruction), self.wrapper_),
                wrap_chat(assemble_prompt(text, BASELINE_INSTRUCTION), self.wrapper_),
            )

        cond, uncond = render(article)
        truncated = False
        if self.context_budget is not None:
            encode = self.provider.tokenizer.encode
            limit = self.context_budget - self.max_new_tokens

            def fits(text):
                c, u = render(text)
                return max(len(encode(c)), len(encode(u))) <= limit

            if not fits(article):
                words = article.split()
                lo, hi = 1, len(words)
                while lo < hi:
                    mid = (lo + hi + 1) // 2
                    if fits(" ".join(words[:mid])):
                        lo = mid
                    else:
                        hi = mid - 1
                cond, uncond = render(" ".join(words[:lo]))
                truncated = True
        return {
            "prompt": cond,
            "uncond_prompt": uncond,
            "instruction": instruction,
            "keywords": list(spec.keywords or ()),
            "truncated": truncated,
        }

    def summarize(self, article, draft_summary=None, conciseness=None, seed=None) -> dict:
        """Summary text plus prompts and decoding metadata for one article."""
        prompts = self.build_prompts(article, draft_summary, conciseness)
        tokenizer = self.provider.tokenizer
        config = self.config_
        if seed is not None:
            config = GuidanceConfig(**{**config.__dict__, "seed": int(seed)})
        info = {}
        tokens = generate(
            self.provider,
            tokenizer.encode(prompts["prompt"]),
            tokenizer.encode(prompts["uncond_prompt"]),
            config,
            info=info,
        )
        return {
            "summary": tokenizer.decode(tokens),
            "tokens": tokens,
            **prompts,
            "gamma": config.gamma,
            "seed": config.seed,
            **info,
        }

    def predict(self, X, draft_summaries=None):
        check_is_fitted(self, "config_")
        if isinstance(X, str):
            raise InvalidArgumentError("predict expects a list of articles")
        X = list(X)
        drafts = list(draft_summaries) if draft_summaries is not None else [None] * len(X)
        if len(drafts) != len(X):
            raise InvalidArgumentError("draft_summaries must match the number of articles")
        return [
            self.summarize(article, draft, seed=derive_seed(self.seed, i))["summary"]
            for i, (article, draft) in enumerate(zip(X, drafts))
        ]
