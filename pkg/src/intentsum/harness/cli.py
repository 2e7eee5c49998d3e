"""Command line interface: ``intentsum <command> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from ..exceptions import DatasetError, InvalidArgumentError
from ..keywords.extract import extract_keywords
from ..keywords.tagger import PerceptronTagger, read_tagged_corpus
from .config import load_config
from .dataset import load_dataset
from .report import emit_report, read_report
from .runner import load_summaries, run_eval, run_generate

log = logging.getLogger("intentsum")

REPORT_SUFFIX = {"csv": "csv", "json": "json", "markdown": "md"}


def _config(args):
    config = load_config(args.config)
    if getattr(args, "dataset", None):
        config.dataset = str(Path(args.dataset).resolve())
    if getattr(args, "gamma", None) is not None or getattr(args, "seed", None) is not None:
        changes = {}
        if args.gamma is not None:
            changes["gamma"] = args.gamma
        if args.seed is not None:
            changes["seed"] = args.seed
        config.guidance = dataclasses.replace(config.guidance, **changes)
    return config


def cmd_generate(args):
    config = _config(args)
    if not config.dataset:
        raise InvalidArgumentError("no dataset given (config 'dataset' or --dataset)")
    records = load_dataset(config.dataset)
    result = run_generate(records, config)
    log.info(
        "generated %d, skipped %d, failed %d",
        len(result.generated), len(result.skipped), len(result.failed),
    )
    return 0 if result.ok else 1


def cmd_eval(args):
    config = _config(args)
    if not config.dataset:
        raise InvalidArgumentError("no dataset given (config 'dataset' or --dataset)")
    records = load_dataset(config.dataset)
    summaries = load_summaries(args.summaries)
    report = run_eval(records, summaries, config)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit_report(report, "json", out / "report.json")
    print(f"scored {len(report.rows)} records -> {out / 'report.json'}")
    return 0


def cmd_report(args):
    run_dir = Path(args.run_dir) if args.run_dir else Path(load_config(args.config).output_dir)
    report = read_report(run_dir / "report.json")
    path = Path(args.out) if args.out else run_dir / f"report.{REPORT_SUFFIX[args.format]}"
    emit_report(report, args.format, path)
    print(path)
    return 0


def cmd_train_tagger(args):
    corpus = read_tagged_corpus(args.corpus)
    train, heldout = corpus, []
    if args.heldout_every:
        k = args.heldout_every
        train = [s for i, s in enumerate(corpus) if i % k != k - 1]
        heldout = [s for i, s in enumerate(corpus) if i % k == k - 1]
    model = PerceptronTagger(n_iter=args.epochs, random_state=args.seed).fit(train)
    model.save(args.out)
    print(f"trained on {len(train)} sentences -> {args.out}")
    if heldout:
        print(f"held-out token accuracy: {model.score(heldout):.4f} ({len(heldout)} sentences)")
    return 0


def cmd_extract_keywords(args):
    model = PerceptronTagger.load(args.model) if args.model else None
    text = Path(args.input).read_text(encoding="utf-8") if args.input != "-" else sys.stdin.read()
    drafts = [line for line in text.splitlines() if line.strip()] if args.lines else [text]
    for draft in drafts:
        print(", ".join(extract_keywords(draft, model)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intentsum", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="decode summaries for a dataset")
    p.add_argument("--config", required=True)
    p.add_argument("--dataset")
    p.add_argument("--gamma", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="score generated summaries")
    p.add_argument("--config", required=True)
    p.add_argument("--summaries", required=True, help="run directory or its summaries/ folder")
    p.add_argument("--dataset")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", help="render report.json as csv, json or markdown")
    p.add_argument("--format", choices=sorted(REPORT_SUFFIX), required=True)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--config")
    where.add_argument("--run-dir")
    p.add_argument("--out", help="output path (default: <run dir>/report.<ext>)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("train-tagger", help="train the averaged-perceptron POS tagger")
    p.add_argument("--corpus", required=True, help="word_TAG corpus, one sentence per line")
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--heldout-every", type=int, default=0, help="hold out every k-th sentence")
    p.set_defaults(func=cmd_train_tagger)

    p = sub.add_parser("extract-keywords", help="POS-filter a draft summary into keywords")
    p.add_argument("--model", help="tagger model (default: bundled)")
    p.add_argument("--in", dest="input", required=True, help="text file, or - for stdin")
    p.add_argument("--lines", action="store_true", help="treat each line as its own draft")
    p.set_defaults(func=cmd_extract_keywords)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (InvalidArgumentError, DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
