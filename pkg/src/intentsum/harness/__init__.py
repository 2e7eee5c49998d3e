from .config import DATASET_PRESETS, ENDPOINT_ENV, ProviderConfig, RunConfig, build_provider, load_config
from .dataset import DatasetRecord, load_dataset
from .report import Report, ReportRow, emit_report, read_report
from .runner import load_summaries, run_eval, run_generate, score_record

__all__ = [
    "DATASET_PRESETS",
    "DatasetRecord",
    "ENDPOINT_ENV",
    "ProviderConfig",
    "Report",
    "ReportRow",
    "RunConfig",
    "build_provider",
    "emit_report",
    "load_config",
    "load_dataset",
    "load_summaries",
    "read_report",
    "run_eval",
    "run_generate",
    "score_record",
]
