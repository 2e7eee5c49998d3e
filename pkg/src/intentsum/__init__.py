"""Controllable summarization with intention prompts and classifier-free guidance."""

__version__ = "0.1.0"

from .decoder import GuidanceConfig, TokenDistribution, cfg_combine, generate, sample_token
from .intent import classify_narrative, k_conciseness, k_keywords, k_narrative
from .keywords import KeywordExtractor, PerceptronTagger, extract_keywords
from .metrics import fkgl, novel_ngram_ratio, rouge_l, rouge_n
from .prompts import IntentSpec, assemble_prompt, build_instruction, wrap_chat
from .summarizer import GuidedSummarizer

__all__ = [
    "GuidanceConfig",
    "GuidedSummarizer",
    "IntentSpec",
    "KeywordExtractor",
    "PerceptronTagger",
    "TokenDistribution",
    "assemble_prompt",
    "build_instruction",
    "cfg_combine",
    "classify_narrative",
    "extract_keywords",
    "fkgl",
    "generate",
    "k_conciseness",
    "k_keywords",
    "k_narrative",
    "novel_ngram_ratio",
    "rouge_l",
    "rouge_n",
    "sample_token",
    "wrap_chat",
]
