"""Classifier-free guidance decoding over a next-token provider.

At every step the provider is queried twice, once with the intention prompt
and once with the non-intentional prompt (both contain the article). The two
log-distributions are combined as

    gamma * logp_cond - (gamma - 1) * logp_uncond

and renormalized; temperature and nucleus truncation are applied to the
combined distribution, and the sampled token is appended to both contexts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._validation import check_fraction, check_int, check_real
from ..exceptions import DecodeFailureError, InvalidArgumentError, ProviderError

__all__ = [
    "LOGPROB_FLOOR",
    "TokenDistribution",
    "GuidanceConfig",
    "cfg_logits",
    "cfg_combine",
    "sample_token",
    "generate",
]

# Log-probabilities are clamped here so that -inf never enters the arithmetic.
LOGPROB_FLOOR = -1e9
NORMALIZATION_TOL = 1e-6


def _log_softmax(logits):
    top = np.max(logits)
    shifted = logits - top
    return shifted - np.log(np.sum(np.exp(shifted)))


@dataclass(frozen=True, eq=False)
class TokenDistribution:
    """Next-token log-probabilities over a provider vocabulary.

    ``approximate`` marks distributions rebuilt from a truncated (top-k)
    provider response, where unlisted tokens sit at the floor.
    """

    logprobs: np.ndarray
    approximate: bool = False

    def __post_init__(self):
        arr = np.asarray(self.logprobs, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidArgumentError("logprobs must be a non-empty 1-D array")
        if np.isnan(arr).any():
            raise InvalidArgumentError("logprobs contain NaN")
        arr = np.maximum(arr, LOGPROB_FLOOR)
        arr.setflags(write=False)
        object.__setattr__(self, "logprobs", arr)

    @property
    def vocabulary_size(self) -> int:
        return self.logprobs.size

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.logprobs)

    @classmethod
    def from_logits(cls, logits, approximate=False):
        logits = np.maximum(np.asarray(logits, dtype=np.float64), LOGPROB_FLOOR)
        return cls(_log_softmax(logits), approximate)

    @classmethod
    def from_probs(cls, probs):
        probs = np.asarray(probs, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return cls(np.log(probs))

    def is_normalized(self, tol=NORMALIZATION_TOL) -> bool:
        return abs(float(np.sum(self.probs)) - 1.0) <= tol


@dataclass(frozen=True)
class GuidanceConfig:
    """Decoding hyperparameters.

    Defaults: guidance strength 1.5, nucleus sampling at temperature 0.8 and
    top-p 0.95, at most 256 new tokens.
    """

    gamma: float = 1.5
    temperature: float = 0.8
    top_p: float = 0.95
    max_new_tokens: int = 256
    seed: int = 0
    greedy: bool = False

    def __post_init__(self):
        check_real(self.gamma, "gamma", minimum=1.0)
        check_real(self.temperature, "temperature", minimum=0.0, exclusive=True)
        check_fraction(self.top_p, "top_p")
        check_int(self.max_new_tokens, "max_new_tokens", minimum=1)
        check_int(self.seed, "seed")


def _check_pair(cond, uncond, gamma):
    gamma = check_real(gamma, "gamma", minimum=1.0)
    if cond.vocabulary_size != uncond.vocabulary_size:
        raise InvalidArgumentError(
            f"vocabulary mismatch: {cond.vocabulary_size} vs {uncond.vocabulary_size}"
        )
    return gamma


def cfg_logits(cond: TokenDistribution, uncond: TokenDistribution, gamma: float) -> np.ndarray:
    """Unnormalized guided logits ``gamma*cond - (gamma-1)*uncond``."""
    gamma = _check_pair(cond, uncond, gamma)
    return gamma * cond.logprobs - (gamma - 1.0) * uncond.logprobs


def cfg_combine(cond: TokenDistribution, uncond: TokenDistribution, gamma: float) -> TokenDistribution:
    """Guided next-token distribution; ``gamma == 1`` returns ``cond`` unchanged.

    A token at the floor in either stream (missing from a top-k response, or
    of zero probability) stays at the floor: without this, ``-(gamma-1) *
    floor`` would hand it an enormous positive logit.
    """
    gamma = _check_pair(cond, uncond, gamma)
    if gamma == 1.0:
        return cond
    approximate = cond.approximate or uncond.approximate
    logits = cfg_logits(cond, uncond, gamma)
    dead = (cond.logprobs <= LOGPROB_FLOOR) | (uncond.logprobs <= LOGPROB_FLOOR)
    if dead.all():
        return TokenDistribution(np.full(logits.size, LOGPROB_FLOOR), approximate)
    logits[dead] = LOGPROB_FLOOR
    return TokenDistribution.from_logits(logits, approximate=approximate)


def sample_token(dist: TokenDistribution, temperature: float, top_p: float, rng, greedy: bool = False) -> int:
    """Draw one token id with temperature scaling and nucleus truncation.

    The nucleus is the smallest set of most probable tokens (ties broken by
    lower id) whose mass reaches ``top_p``. ``greedy=True`` returns the argmax
    and ignores the other sampling settings.
    """
    logprobs = dist.logprobs
    if np.max(logprobs) <= LOGPROB_FLOOR:
        raise DecodeFailureError("every token has zero probability")
    if greedy:
        return int(np.argmax(logprobs))
    temperature = check_real(temperature, "temperature", minimum=0.0, exclusive=True)
    top_p = check_fraction(top_p, "top_p")

    scaled = logprobs / temperature
    probs = np.exp(scaled - np.max(scaled))
    probs /= probs.sum()
    order = np.argsort(-probs, kind="stable")
    sorted_probs = probs[order]
    cumulative = np.cumsum(sorted_probs)
    keep = min(int(np.searchsorted(cumulative, top_p, side="left")) + 1, len(order))
    nucleus = cumulative[:keep]
    draw = rng.random() * nucleus[-1]
    pick = min(int(np.searchsorted(nucleus, draw, side="right")), keep - 1)
    return int(order[pick])


def generate(provider, cond_prompt, uncond_prompt, config: GuidanceConfig, info=None) -> list[int]:
    """Decode with classifier-free guidance.

    Both contexts receive the same sampled token after every step. Decoding
    stops when the provider's end token is drawn (it is not included in the
    output) or after ``config.max_new_tokens`` tokens. With ``gamma == 1``
    the unconditional stream is tracked but never queried. If ``info`` is a
    dict it receives ``stop_reason`` and ``approximate``.
    """
    cond = list(cond_prompt)
    uncond = list(uncond_prompt)
    if not cond or not uncond:
        raise InvalidArgumentError("both prompts must be non-empty")
    rng = np.random.default_rng(config.seed)
    guided = config.gamma != 1.0
    approximate = False
    stop_reason = "max_new_tokens"
    out = []
    for step in range(config.max_new_tokens):
        try:
            dist = provider.next_logprobs(cond)
            if guided:
                dist = cfg_combine(dist, provider.next_logprobs(uncond), config.gamma)
        except ProviderError as exc:
            raise ProviderError(str(exc), step=step) from exc
        except InvalidArgumentError:
            raise
        except Exception as exc:
            raise ProviderError(f"{type(exc).__name__}: {exc}", step=step) from exc
        approximate = approximate or dist.approximate
        token = sample_token(dist, config.temperature, config.top_p, rng, greedy=config.greedy)
        if token == provider.end_token:
            stop_reason = "end_token"
            break
        out.append(token)
        cond.append(token)
        uncond.append(token)
    if info is not None:
        info["stop_reason"] = stop_reason
        info["approximate"] = approximate
    return out
