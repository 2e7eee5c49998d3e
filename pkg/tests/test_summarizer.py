import pytest
from sklearn.base import clone

from intentsum import GuidedSummarizer
from intentsum.decoder import ToyLMSpec, build_toy_lm
from intentsum.exceptions import InvalidArgumentError
from intentsum.keywords import extract_keywords
from intentsum.summarizer import derive_seed

CORPUS = [
    "We propose variational Thompson sampling for bandits.",
    "The method improves regret on every benchmark.",
    "Our experiments confirm the theory.",
]
ARTICLE = "Bandits trade exploration against exploitation. Thompson sampling is a popular heuristic."
DRAFT = "We propose variational Thompson sampling."


@pytest.fixture(scope="module")
def lm():
    return build_toy_lm(CORPUS, ToyLMSpec(beta=1.0))


def test_params_and_clone(lm):
    model = GuidedSummarizer(provider=lm, gamma=2.0, conciseness=6)
    params = model.get_params()
    assert params["gamma"] == 2.0 and params["conciseness"] == 6
    cloned = clone(model)
    assert cloned.get_params()["gamma"] == 2.0
    assert not hasattr(cloned, "config_")


def test_fit_validation(lm):
    with pytest.raises(InvalidArgumentError):
        GuidedSummarizer().fit()
    with pytest.raises(InvalidArgumentError):
        GuidedSummarizer(provider=lm, gamma=0.5).fit()
    with pytest.raises(InvalidArgumentError):
        GuidedSummarizer(provider=lm, conciseness=0).fit()
    with pytest.raises(InvalidArgumentError):
        GuidedSummarizer(provider=lm, max_new_tokens=50, context_budget=40).fit()


def test_prompts(lm):
    model = GuidedSummarizer(provider=lm, conciseness=6, narrative_first_person=True, use_keywords=True).fit()
    prompts = model.build_prompts(ARTICLE, DRAFT)
    expected_kw = list(extract_keywords(DRAFT))
    assert prompts["keywords"] == expected_kw
    assert prompts["prompt"] == (
        "[INST] Article: " + ARTICLE + "\nWrite a summary of the article above in 6 sentences. "
        "Focus on the following keywords: " + ", ".join(expected_kw) + ". "
        'Write in first person "we" when applicable. [/INST]'
    )
    assert prompts["uncond_prompt"] == "[INST] Article: " + ARTICLE + "\nWrite a summary of the article above. [/INST]"
    assert not prompts["truncated"]
    # per-record conciseness override
    assert "in 3 sentences" in model.build_prompts(ARTICLE, DRAFT, conciseness=3)["prompt"]


def test_keywords_skipped_without_draft(lm):
    model = GuidedSummarizer(provider=lm, use_keywords=True, wrapper="identity").fit()
    assert model.build_prompts(ARTICLE)["prompt"] == "Article: " + ARTICLE + "\nWrite a summary of the article above."


def test_truncation(lm):
    long_article = " ".join(["bandits"] * 300)
    model = GuidedSummarizer(provider=lm, max_new_tokens=10, context_budget=60, wrapper="identity").fit()
    out = model.build_prompts(long_article)
    assert out["truncated"]
    encode = lm.tokenizer.encode
    assert len(encode(out["prompt"])) + 10 <= 60
    # one more word would not fit
    kept = out["prompt"].split("\n")[0].removeprefix("Article: ").split()
    longer = "Article: " + " ".join(kept + ["bandits"]) + "\n" + out["instruction"]
    assert len(encode(longer)) + 10 > 60
    assert not model.build_prompts("short text")["truncated"]


def test_summarize_metadata_and_determinism(lm):
    model = GuidedSummarizer(provider=lm, max_new_tokens=20, seed=3).fit()
    a = model.summarize(ARTICLE)
    b = model.summarize(ARTICLE)
    assert a == b
    assert a["gamma"] == 1.5 and a["seed"] == 3
    assert a["stop_reason"] in {"end_token", "max_new_tokens"}
    assert len(a["tokens"]) <= 20
    assert a["summary"] == lm.tokenizer.decode(a["tokens"])
    assert model.summarize(ARTICLE, seed=4)["seed"] == 4


def test_predict(lm):
    model = GuidedSummarizer(provider=lm, max_new_tokens=15, use_keywords=True).fit()
    out = model.predict([ARTICLE, ARTICLE], [DRAFT, None])
    assert len(out) == 2 and all(isinstance(s, str) for s in out)
    assert out == model.predict([ARTICLE, ARTICLE], [DRAFT, None])
    with pytest.raises(InvalidArgumentError):
        model.predict(ARTICLE)
    with pytest.raises(InvalidArgumentError):
        model.predict([ARTICLE], [DRAFT, DRAFT])


def test_derive_seed():
    assert derive_seed(0, "a") == derive_seed(0, "a")
    assert derive_seed(0, "a") != derive_seed(0, "b")
    assert derive_seed(0, 1) != derive_seed(1, 1)
    assert 0 <= derive_seed(2**40, "x") < 2**32
