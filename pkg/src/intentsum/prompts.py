"""Intention prompts and chat wrapping.

An instruction is a sequence of intention sentences joined by single spaces,
always in the order conciseness (or task phrase), keywords, narrative. The
article is prepended as ``Article: <text>`` on its own line and the result is
optionally wrapped in a model-specific chat template.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._validation import check_int
from .exceptions import InvalidArgumentError
from .keywords.extract import KeywordSet

__all__ = [
    "BASELINE_INSTRUCTION",
    "TASK_PHRASES",
    "NARRATIVE_INSTRUCTION",
    "IntentSpec",
    "ChatWrapper",
    "WRAPPER_PRESETS",
    "build_instruction",
    "assemble_prompt",
    "wrap_chat",
    "get_wrapper",
]

BASELINE_INSTRUCTION = "Write a summary of the article above."
TASK_PHRASES = {
    "generic": BASELINE_INSTRUCTION,
    "abstract": "Write an abstract of the article above.",
    "lay": "Write a lay summary of the article above.",
}
CONCISENESS_TEMPLATE = "Write a summary of the article above in {} sentences."
KEYWORDS_TEMPLATE = "Focus on the following keywords: {}."
NARRATIVE_INSTRUCTION = 'Write in first person "we" when applicable.'


@dataclass(frozen=True)
class IntentSpec:
    """Target intentions for one prompt.

    With nothing set (and the generic task variant) the instruction
    degenerates to the non-intentional baseline prompt.
    """

    conciseness: int | None = None
    narrative_first_person: bool = False
    keywords: KeywordSet | None = None
    task_variant: str = "generic"

    def __post_init__(self):
        if self.conciseness is not None:
            check_int(self.conciseness, "conciseness", minimum=1)
        if self.task_variant not in TASK_PHRASES:
            raise InvalidArgumentError(f"unknown task variant {self.task_variant!r}")
        if self.keywords is not None and not isinstance(self.keywords, KeywordSet):
            object.__setattr__(self, "keywords", KeywordSet(tuple(self.keywords)))

    @property
    def is_baseline(self) -> bool:
        return (
            self.conciseness is None
            and not self.narrative_first_person
            and not self.keywords
            and self.task_variant == "generic"
        )


@dataclass(frozen=True)
class ChatWrapper:
    prefix: str = ""
    suffix: str = ""


WRAPPER_PRESETS = {
    "llama-inst": ChatWrapper("[INST] ", " [/INST]"),
    "identity": ChatWrapper("", ""),
}


def get_wrapper(name: str) -> ChatWrapper:
    try:
        return WRAPPER_PRESETS[name]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown wrapper preset {name!r}; choose from {sorted(WRAPPER_PRESETS)}"
        ) from None


def build_instruction(spec: IntentSpec) -> str:
    """Render the instruction for ``spec``.

    >>> build_instruction(IntentSpec(conciseness=6))
    'Write a summary of the article above in 6 sentences.'
    """
    if spec.conciseness is not None:
        parts = [CONCISENESS_TEMPLATE.format(spec.conciseness)]
    else:
        parts = [TASK_PHRASES[spec.task_variant]]
    if spec.keywords:
        parts.append(KEYWORDS_TEMPLATE.format(spec.keywords.render()))
    if spec.narrative_first_person:
        parts.append(NARRATIVE_INSTRUCTION)
    return " ".join(parts)


def assemble_prompt(article: str, instruction: str) -> str:
    if not article:
        raise InvalidArgumentError("article must be non-empty")
    return "Article: " + article + "\n" + instruction


def wrap_chat(prompt: str, wrapper: ChatWrapper) -> str:
    return wrapper.prefix + prompt + wrapper.suffix
