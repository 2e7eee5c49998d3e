from .guidance import (
    LOGPROB_FLOOR,
    GuidanceConfig,
    TokenDistribution,
    cfg_combine,
    cfg_logits,
    generate,
    sample_token,
)
from .providers import (
    HTTPProvider,
    Provider,
    ToyBigramLM,
    ToyLMSpec,
    WordTokenizer,
    build_toy_lm,
    serve_provider,
)

__all__ = [
    "LOGPROB_FLOOR",
    "GuidanceConfig",
    "TokenDistribution",
    "cfg_combine",
    "cfg_logits",
    "generate",
    "sample_token",
    "HTTPProvider",
    "Provider",
    "ToyBigramLM",
    "ToyLMSpec",
    "WordTokenizer",
    "build_toy_lm",
    "serve_provider",
]
