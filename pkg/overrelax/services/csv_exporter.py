# overrelax/services/csv_exporter.py
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import numpy as np
import pandas as pd

from overrelax.core.config import settings
from overrelax.core.exceptions import ConfigError, DiagnosticsError
from overrelax.models.pump import PumpDataset
from overrelax.schemas.diagnostics import AcfReport
from overrelax.schemas.sampler import UpdateAudit
from overrelax.schemas.trace import ChainTrace, sampler_spec_adapter
from overrelax.utils.keyvalue import format_pairs, read_pairs, write_pairs

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SAMPLER_META_KEYS = ("method", "adler_alpha", "k", "impl")


def meta_path(csv_path: PathLike) -> Path:
    return Path(csv_path).with_suffix(".meta")


class CSVExporter:
    """Writes traces, ACF reports, datasets and summaries under one output directory"""

    def __init__(self, out_dir: PathLike):
        self.out_dir = Path(out_dir)
        os.makedirs(self.out_dir, exist_ok=True)

    def _write_frame(self, frame: pd.DataFrame, filename: str, header: Optional[Mapping[str, Any]] = None) -> Path:
        filepath = self.out_dir / filename
        with open(filepath, "w", newline="", encoding="utf-8") as csvfile:
            if header:
                csvfile.write(format_pairs(header, prefix="# "))
            frame.to_csv(csvfile, index=False, float_format=settings.FLOAT_FORMAT, lineterminator="\n")
        return filepath

    def export_trace(self, trace: ChainTrace, name: str, metadata: Optional[Mapping[str, Any]] = None) -> Path:
        """
        Export a chain trace as ``iter,<fn names>`` with a key=value sidecar

        Returns the filepath to the generated CSV
        """
        frame = pd.DataFrame(trace.values, columns=trace.names)
        frame.insert(0, "iter", np.arange(trace.n_iter))
        filepath = self._write_frame(frame, f"{name}.trace.csv")

        meta: Dict[str, Any] = dict(metadata or {})
        meta.update(trace.spec.model_dump())
        meta.update(
            {
                "run_seed": trace.seed,
                "chain_index": trace.chain_index,
                "burn_in": trace.burn_in,
                "n_iter": trace.n_iter,
                "functions": trace.names,
            }
        )
        write_pairs(meta_path(filepath), meta)
        logger.info(f"Wrote trace {filepath} ({trace.n_iter} rows)")
        return filepath

    def export_audits(
        self, audits: List[UpdateAudit], name: str, metadata: Optional[Mapping[str, Any]] = None
    ) -> Path:
        """One row per component update, with the run's config in a sidecar"""
        frame = pd.DataFrame([audit.model_dump() for audit in audits], columns=list(UpdateAudit.model_fields))
        filepath = self._write_frame(frame, f"{name}.audit.csv")
        if metadata:
            write_pairs(meta_path(filepath), metadata)
        logger.info(f"Wrote {len(audits)} update audits to {filepath}")
        return filepath

    def export_acf(self, report: AcfReport, name: str, metadata: Optional[Mapping[str, Any]] = None) -> Path:
        """
        ACF estimates as ``lag,acf`` preceded by ``# key=value`` lines: the
        report summary, then the resolved config of the run it came from
        """
        header = report.summary()
        header.update({key: value for key, value in (metadata or {}).items() if key not in header})
        frame = pd.DataFrame({"lag": report.lags, "acf": report.acf_estimates})
        filepath = self._write_frame(frame, f"{name}.{report.name}.acf.csv", header=header)
        logger.info(f"Wrote ACF for {name}/{report.name}: act={report.act:.4g}")
        return filepath

    def export_dataset(self, dataset: PumpDataset, name: str = "pump-data") -> Path:
        frame = pd.DataFrame({"i": np.arange(1, dataset.p + 1), "t": dataset.t, "s": dataset.s})
        filepath = self._write_frame(frame, f"{name}.csv")
        write_pairs(meta_path(filepath), dataset.metadata())
        logger.info(f"Wrote pump dataset {filepath} (p={dataset.p})")
        return filepath

    def export_table(
        self, rows: List[Dict[str, Any]], name: str, metadata: Optional[Mapping[str, Any]] = None
    ) -> Path:
        frame = pd.DataFrame(rows)
        filepath = self._write_frame(frame, f"{name}.csv")
        if metadata:
            write_pairs(meta_path(filepath), metadata)
        return filepath

    def export_columns(
        self, columns: Mapping[str, np.ndarray], name: str, metadata: Optional[Mapping[str, Any]] = None
    ) -> Path:
        filepath = self._write_frame(pd.DataFrame(dict(columns)), f"{name}.csv")
        if metadata:
            write_pairs(meta_path(filepath), metadata)
        return filepath


def load_dataset(path: PathLike) -> PumpDataset:
    """Read an ``i,t,s`` dataset; the sidecar metadata is optional"""
    try:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    except (OSError, pd.errors.ParserError) as e:
        raise ConfigError(f"Cannot read dataset {path}: {e}", field="data")
    missing = {"t", "s"} - set(frame.columns)
    if missing:
        raise ConfigError(f"Dataset {path} lacks column(s) {sorted(missing)}", field="data")
    if "i" in frame.columns:
        frame = frame.sort_values("i")

    meta: Dict[str, str] = {}
    sidecar = meta_path(path)
    if sidecar.is_file():
        meta = read_pairs(sidecar)
    return PumpDataset(
        t=frame["t"].to_numpy(dtype=float),
        s=frame["s"].to_numpy(dtype=np.int64),
        true_tau=float(meta.get("true_tau", "nan")),
        seed=int(meta.get("seed", -1)),
        gamma_shape=float(meta.get("gamma_shape", "nan")),
        beta_true=float(meta.get("beta_true", "nan")),
    )


def load_trace(path: PathLike) -> ChainTrace:
    """Read a trace CSV and its sidecar back into a ChainTrace"""
    sidecar = meta_path(path)
    if not sidecar.is_file():
        raise DiagnosticsError(f"Trace {path} has no metadata file {sidecar}")
    meta = read_pairs(sidecar)
    frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    names = [column for column in frame.columns if column != "iter"]
    spec = sampler_spec_adapter.validate_python({key: meta[key] for key in SAMPLER_META_KEYS if key in meta})
    return ChainTrace(
        names=names,
        values=frame[names].to_numpy(dtype=float),
        burn_in=int(meta.get("burn_in", 0)),
        seed=int(meta.get("run_seed", meta.get("seed", 0))),
        spec=spec,
        chain_index=int(meta.get("chain_index", 0)),
        metadata=meta,
    )
