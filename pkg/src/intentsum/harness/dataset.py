"""JSON-lines dataset records."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from ..exceptions import DatasetError

log = logging.getLogger(__name__)

__all__ = ["DatasetRecord", "load_dataset"]


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    article: str
    reference_summary: str | None = None
    draft_summary: str | None = None
    conciseness_target: int | None = None
    line: int | None = None

    @classmethod
    def from_dict(cls, obj, line=None) -> "DatasetRecord":
        if not isinstance(obj, dict):
            raise DatasetError("record must be a JSON object", line)
        rid = obj.get("id")
        if isinstance(rid, int) and not isinstance(rid, bool):
            rid = str(rid)
        if not isinstance(rid, str) or not rid:
            raise DatasetError("missing or empty 'id'", line)
        article = obj.get("article")
        if not isinstance(article, str) or not article.strip():
            raise DatasetError(f"record {rid!r}: missing or empty 'article'", line)
        for key in ("reference_summary", "draft_summary"):
            if obj.get(key) is not None and not isinstance(obj[key], str):
                raise DatasetError(f"record {rid!r}: '{key}' must be a string", line)
        target = obj.get("conciseness_target")
        if target is not None and (isinstance(target, bool) or not isinstance(target, int) or target < 1):
            raise DatasetError(f"record {rid!r}: 'conciseness_target' must be an integer >= 1", line)
        return cls(rid, article, obj.get("reference_summary"), obj.get("draft_summary"), target, line)

    def to_dict(self) -> dict:
        out = {"id": self.id, "article": self.article}
        for key in ("reference_summary", "draft_summary", "conciseness_target"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def load_dataset(path) -> list[DatasetRecord]:
    """Parse a JSON-lines file; blank lines are skipped, errors cite the line."""
    records = []
    seen = {}
    with open(Path(path), encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"invalid JSON: {exc.msg}", lineno) from exc
            record = DatasetRecord.from_dict(obj, lineno)
            if record.id in seen:
                raise DatasetError(f"duplicate id {record.id!r} (first seen on line {seen[record.id]})", lineno)
            seen[record.id] = lineno
            records.append(record)
    if not records:
        log.warning("dataset %s contains no records", path)
    return records
