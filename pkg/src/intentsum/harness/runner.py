"""Run orchestration: generate summaries for a dataset and score them."""

from __future__ import annotations

import json
import logging
import math
import os
import platform
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import quote, unquote

import numpy

from .. import __version__
from ..exceptions import DatasetError, InvalidArgumentError, UndefinedMetricError
from ..intent import NarrativeLabel, k_conciseness, k_keywords, k_narrative
from ..keywords.extract import KeywordExtractor, extract_keywords, load_bundled_tagger
from ..keywords.tagger import PerceptronTagger
from ..metrics import fkgl, novel_ngram_ratio, rouge_l, rouge_n
from ..segmentation import split_sentences, tokenize_words
from ..summarizer import GuidedSummarizer, derive_seed
from .config import RunConfig, build_provider
from .report import METRIC_FIELDS, Report, ReportRow

log = logging.getLogger(__name__)

__all__ = [
    "GenerateResult",
    "summary_path",
    "load_summaries",
    "run_generate",
    "score_record",
    "run_eval",
    "write_run_meta",
]


def summary_path(output_dir, record_id) -> Path:
    return Path(output_dir) / "summaries" / (quote(record_id, safe="-_.") + ".json")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write_atomic(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def load_summaries(directory) -> dict[str, dict]:
    """Read every ``<id>.json`` summary file of a run, keyed by record id."""
    directory = Path(directory)
    if (directory / "summaries").is_dir():
        directory = directory / "summaries"
    out = {}
    for path in sorted(directory.glob("*.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        rid = data.get("id", unquote(path.stem))
        if not isinstance(data.get("summary"), str):
            raise DatasetError(f"{path}: summary file lacks a 'summary' string")
        out[rid] = data
    return out


def _tagger(config: RunConfig):
    if config.tagger_model:
        return PerceptronTagger.load(config.tagger_model)
    return load_bundled_tagger()


class _SerializedProvider:
    """Forward to a provider while allowing one in-flight request at a time."""

    concurrency_safe = True

    def __init__(self, provider):
        self._provider = provider
        self._lock = threading.Lock()

    def __getattr__(self, name):
        return getattr(self._provider, name)

    def next_logprobs(self, context):
        with self._lock:
            return self._provider.next_logprobs(context)


def write_run_meta(config: RunConfig, extra=None):
    meta = {
        "config": config.to_dict(),
        "versions": {
            "intentsum": __version__,
            "numpy": numpy.__version__,
            "python": platform.python_version(),
        },
    }
    meta.update(extra or {})
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_atomic(out / "run-meta.json", _dump(meta))


@dataclass
class GenerateResult:
    generated: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    failed: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failed


def run_generate(records, config: RunConfig, provider=None) -> GenerateResult:
    """Generate one summary file per record, skipping records already done.

    Each record is decoded with a seed derived from the run seed and its id,
    so results do not depend on ordering, worker count or resumption.
    Failures are logged, collected and do not stop the run.
    """
    provider = provider if provider is not None else build_provider(config.provider)
    if config.workers > 1 and not getattr(provider, "concurrency_safe", False):
        provider = _SerializedProvider(provider)
    extractor = KeywordExtractor(tagger=_tagger(config)) if config.prompt.use_keywords else None
    g = config.guidance
    summarizer = GuidedSummarizer(
        provider=provider,
        gamma=g.gamma,
        temperature=g.temperature,
        top_p=g.top_p,
        max_new_tokens=g.max_new_tokens,
        seed=g.seed,
        greedy=g.greedy,
        conciseness=config.conciseness,
        narrative_first_person=config.narrative_first_person,
        use_keywords=config.prompt.use_keywords,
        task_variant=config.prompt.task_variant,
        wrapper=config.wrapper,
        keyword_extractor=extractor,
        context_budget=config.context_budget,
    ).fit()

    out_dir = Path(config.output_dir) / "summaries"
    out_dir.mkdir(parents=True, exist_ok=True)
    result = GenerateResult()
    todo = []
    for record in records:
        if summary_path(config.output_dir, record.id).exists():
            result.skipped.append(record.id)
        else:
            todo.append(record)

    def work(record):
        out = summarizer.summarize(
            record.article,
            draft_summary=record.draft_summary,
            conciseness=record.conciseness_target,
            seed=derive_seed(g.seed, record.id),
        )
        payload = {
            "id": record.id,
            "summary": out["summary"],
            "keywords": out["keywords"],
            "prompt": out["prompt"],
            "uncond_prompt": out["uncond_prompt"],
            "metadata": {
                "gamma": out["gamma"],
                "seed": out["seed"],
                "truncated": out["truncated"],
                "approximate_logprobs": out["approximate"],
                "stop_reason": out["stop_reason"],
                "n_tokens": len(out["tokens"]),
            },
        }
        _write_atomic(summary_path(config.output_dir, record.id), _dump(payload))

    def guarded(record):
        try:
            work(record)
            return record.id, None
        except Exception as exc:  # recorded per record; the run continues
            log.error("record %s failed: %s", record.id, exc)
            return record.id, f"{type(exc).__name__}: {exc}"

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(guarded, todo))
    else:
        outcomes = [guarded(r) for r in todo]
    for rid, error in outcomes:
        if error is None:
            result.generated.append(rid)
        else:
            result.failed[rid] = error

    write_run_meta(config, {"failed": dict(sorted(result.failed.items()))})
    return result


def _safe(fn, *args):
    try:
        return fn(*args)
    except UndefinedMetricError:
        return None


def score_record(record, summary: dict, config: RunConfig, tagger=None) -> ReportRow:
    """Metric row for one record and its generated summary."""
    text = summary["summary"]
    tokens = tokenize_words(text)
    sentences = split_sentences(text)
    wanted = set(config.metrics)
    row = ReportRow(id=record.id)

    if record.reference_summary:
        reference = tokenize_words(record.reference_summary)
        if "rouge1" in wanted:
            row.rouge1 = 100.0 * rouge_n(tokens, reference, 1).f1
        if "rouge2" in wanted:
            row.rouge2 = 100.0 * rouge_n(tokens, reference, 2).f1
        if "rougeL" in wanted:
            row.rougeL = 100.0 * rouge_l(tokens, reference).f1

    target = record.conciseness_target or config.conciseness
    if "k_conciseness" in wanted and target is not None:
        row.k_conciseness = float(k_conciseness(target, sentences))
    if "k_narrative" in wanted:
        label = NarrativeLabel.FIRST if config.narrative_first_person else NarrativeLabel.THIRD
        row.k_narrative = _safe(k_narrative, label, sentences)
    if "k_keywords" in wanted:
        keywords = summary.get("keywords") or None
        if keywords is None and record.draft_summary:
            keywords = list(extract_keywords(record.draft_summary, tagger or _tagger(config))) or None
        if keywords is not None:
            try:
                row.k_keywords = k_keywords(keywords, tokens)
            except InvalidArgumentError:
                row.k_keywords = None
    if "fkgl" in wanted:
        row.fkgl = _safe(fkgl, text)
    if "novel_bigrams" in wanted:
        row.novel_bigrams = _safe(novel_ngram_ratio, tokens, tokenize_words(record.article), 2)
    if "tokens" in wanted:
        row.tokens = len(tokens)

    meta = summary.get("metadata", {})
    row.gamma = meta.get("gamma")
    row.seed = meta.get("seed")
    row.truncated = meta.get("truncated")
    row.check_ranges()
    return row


def mean_row(rows) -> tuple[ReportRow, dict[str, int]]:
    """Arithmetic mean of the non-null values of every metric."""
    mean = ReportRow(id="mean")
    excluded = {}
    for name in METRIC_FIELDS:
        values = [getattr(r, name) for r in rows]
        present = [v for v in values if v is not None]
        excluded[name] = len(values) - len(present)
        if present:
            setattr(mean, name, math.fsum(present) / len(present))
    return mean, excluded


def run_eval(records, summaries: dict, config: RunConfig) -> Report:
    """Score every record that has a summary and add the dataset mean row."""
    by_id = {r.id: r for r in records}
    unmatched = sorted(set(summaries) - set(by_id))
    if unmatched:
        raise DatasetError(f"summaries without a matching record: {unmatched}")
    tagger = None
    if "k_keywords" in config.metrics and any(
        not summaries[r.id].get("keywords") and r.draft_summary for r in records if r.id in summaries
    ):
        tagger = _tagger(config)
    rows = [score_record(r, summaries[r.id], config, tagger) for r in records if r.id in summaries]
    mean, excluded = mean_row(rows)
    return Report(rows, mean, excluded)
