"""Regenerate expected.json from the brute-force oracles and hand annotations.

Uses only tests/oracles.py, never the package under test.
"""

import json
import math
from pathlib import Path

import sys

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE.parent.parent))

from oracles import fkgl_oracle, novel_ratio_oracle, rouge_l_oracle, rouge_n_oracle, syllables, words  # noqa: E402

FIELDS = ["rouge1", "rouge2", "rougeL", "k_conciseness", "k_narrative", "k_keywords", "fkgl", "novel_bigrams", "tokens"]


def expected_rows():
    records = [json.loads(line) for line in (HERE / "dataset.jsonl").read_text().splitlines() if line.strip()]
    notes = json.loads((HERE / "annotations.json").read_text())
    rows = {}
    for rec in records:
        rid = rec["id"]
        name = rid.replace("/", "%2F")
        summary = json.loads((HERE / "summaries" / f"{name}.json").read_text())
        text = summary["summary"]
        note = notes[rid]
        assert " ".join(note["sentences"]) == text
        toks = words(text)
        ref = words(rec["reference_summary"])
        row = {
            "rouge1": 100 * rouge_n_oracle(toks, ref, 1)[2],
            "rouge2": 100 * rouge_n_oracle(toks, ref, 2)[2],
            "rougeL": 100 * rouge_l_oracle(toks, ref)[2],
            "k_conciseness": float(abs(note["conciseness_target"] - len(note["sentences"]))),
            "k_narrative": 100 * note["narrative"].count("first") / len(note["narrative"]),
            "k_keywords": None,
            "fkgl": fkgl_oracle(len(toks), len(note["sentences"]), sum(syllables(w) for w in toks)),
            "novel_bigrams": novel_ratio_oracle(toks, words(rec["article"]), 2),
            "tokens": len(toks),
        }
        if summary["keywords"]:
            kw = summary["keywords"]
            row["k_keywords"] = 100 * rouge_n_oracle(toks, kw, 1)[1]
        rows[rid] = row
    mean = {}
    for f in FIELDS:
        vals = [r[f] for r in rows.values() if r[f] is not None]
        mean[f] = math.fsum(vals) / len(vals)
    return {"rows": rows, "mean": mean, "excluded": {f: sum(r[f] is None for r in rows.values()) for f in FIELDS}}


if __name__ == "__main__":
    (HERE / "expected.json").write_text(json.dumps(expected_rows(), indent=2, sort_keys=True) + "\n")
