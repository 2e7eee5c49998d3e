"""Run configuration: a single JSON document describing a generate/eval run."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

from ..decoder.guidance import GuidanceConfig
from ..decoder.providers import HTTPProvider, ToyBigramLM, WordTokenizer
from ..exceptions import InvalidArgumentError
from ..prompts import TASK_PHRASES, WRAPPER_PRESETS

__all__ = [
    "ENDPOINT_ENV",
    "DATASET_PRESETS",
    "METRICS",
    "PromptDefaults",
    "ProviderConfig",
    "RunConfig",
    "load_config",
    "build_provider",
]

ENDPOINT_ENV = "INTENTSUM_PROVIDER_ENDPOINT"

# Sentence targets and perspective per benchmark style.
DATASET_PRESETS = {
    "arxiv": {"conciseness": 6, "narrative_first_person": True},
    "pubmed": {"conciseness": 8, "narrative_first_person": True},
    "elife": {"conciseness": 14, "narrative_first_person": False},
}

METRICS = (
    "rouge1",
    "rouge2",
    "rougeL",
    "k_conciseness",
    "k_narrative",
    "k_keywords",
    "fkgl",
    "novel_bigrams",
    "tokens",
)


def _from_dict(cls, data, where):
    if not isinstance(data, dict):
        raise InvalidArgumentError(f"{where} must be a JSON object")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise InvalidArgumentError(f"{where}: unknown keys {unknown}")
    return cls(**data)


@dataclass
class PromptDefaults:
    conciseness: int | None = None
    narrative_first_person: bool | None = None
    use_keywords: bool = False
    task_variant: str = "generic"

    def __post_init__(self):
        if self.task_variant not in TASK_PHRASES:
            raise InvalidArgumentError(f"unknown task_variant {self.task_variant!r}")


@dataclass
class ProviderConfig:
    """``type`` is ``toy`` (bundled bigram fixture) or ``http`` (remote)."""

    type: str = "toy"
    # toy
    corpus: str | None = None
    beta: float = 1.0
    keywords: list[str] | None = None
    trigger: str = "Focus on the following keywords"
    # http
    endpoint: str | None = None
    vocab: str | None = None
    top_k: int = 100
    timeout: float = 30.0
    retries: int = 2
    concurrency_safe: bool = False

    def __post_init__(self):
        if self.type not in ("toy", "http"):
            raise InvalidArgumentError(f"unknown provider type {self.type!r}")


@dataclass
class RunConfig:
    dataset: str | None = None
    output_dir: str = "runs/default"
    preset: str | None = None
    prompt: PromptDefaults = field(default_factory=PromptDefaults)
    guidance: GuidanceConfig = field(default_factory=GuidanceConfig)
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    wrapper: str = "llama-inst"
    metrics: list[str] = field(default_factory=lambda: list(METRICS))
    tagger_model: str | None = None
    context_budget: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.preset is not None and self.preset not in DATASET_PRESETS:
            raise InvalidArgumentError(f"unknown preset {self.preset!r}; choose from {sorted(DATASET_PRESETS)}")
        if self.wrapper not in WRAPPER_PRESETS:
            raise InvalidArgumentError(f"unknown wrapper preset {self.wrapper!r}")
        bad = sorted(set(self.metrics) - set(METRICS))
        if bad:
            raise InvalidArgumentError(f"unknown metrics {bad}")
        if self.workers < 1:
            raise InvalidArgumentError("workers must be >= 1")

    @classmethod
    def from_dict(cls, data, base_dir=None) -> "RunConfig":
        if not isinstance(data, dict):
            raise InvalidArgumentError("config must be a JSON object")
        data = dict(data)
        data["prompt"] = _from_dict(PromptDefaults, data.get("prompt", {}), "prompt")
        data["guidance"] = _from_dict(GuidanceConfig, data.get("guidance", {}), "guidance")
        data["provider"] = _from_dict(ProviderConfig, data.get("provider", {}), "provider")
        config = _from_dict(cls, data, "config")
        if base_dir is not None:
            config.resolve_paths(Path(base_dir))
        return config

    def resolve_paths(self, base: Path):
        def fix(value):
            if value is None or Path(value).is_absolute():
                return value
            return str(base / value)

        self.dataset = fix(self.dataset)
        self.output_dir = fix(self.output_dir)
        self.tagger_model = fix(self.tagger_model)
        self.provider.corpus = fix(self.provider.corpus)
        self.provider.vocab = fix(self.provider.vocab)

    @property
    def conciseness(self):
        if self.prompt.conciseness is not None:
            return self.prompt.conciseness
        return DATASET_PRESETS.get(self.preset, {}).get("conciseness")

    @property
    def narrative_first_person(self) -> bool:
        if self.prompt.narrative_first_person is not None:
            return self.prompt.narrative_first_person
        return DATASET_PRESETS.get(self.preset, {}).get("narrative_first_person", False)

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path, environ=None) -> RunConfig:
    """Load a JSON config; relative paths are resolved against its directory.

    The provider endpoint, and only it, can be overridden through the
    ``INTENTSUM_PROVIDER_ENDPOINT`` environment variable.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"{path}: invalid JSON: {exc}") from exc
    config = RunConfig.from_dict(data, base_dir=path.parent)
    environ = os.environ if environ is None else environ
    if environ.get(ENDPOINT_ENV):
        config.provider.endpoint = environ[ENDPOINT_ENV]
    return config


def _toy_corpus(path):
    if path is None:
        text = resources.files("intentsum").joinpath("data/toy_corpus.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return [line for line in text.splitlines() if line.strip() and not line.startswith("#")]


def build_provider(config: ProviderConfig):
    if config.type == "toy":
        return ToyBigramLM(
            beta=config.beta,
            keyword_tokens=tuple(config.keywords) if config.keywords is not None else None,
            trigger_phrase=config.trigger,
        ).fit(_toy_corpus(config.corpus))
    if not config.endpoint:
        raise InvalidArgumentError(f"http provider needs an endpoint (or set {ENDPOINT_ENV})")
    if not config.vocab:
        raise InvalidArgumentError("http provider needs a 'vocab' file for the local tokenizer")
    return HTTPProvider(
        config.endpoint,
        tokenizer=WordTokenizer.load(config.vocab),
        top_k=config.top_k,
        timeout=config.timeout,
        retries=config.retries,
        concurrency_safe=config.concurrency_safe,
    )
