# overrelax/services/experiment_runner.py
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from overrelax.core.config import settings
from overrelax.core.exceptions import NumericalError
from overrelax.models.distributions import Gaussian
from overrelax.models.pump import PumpDataset, PumpModel, init_pump_chain
from overrelax.models.targets import BivariateGaussianModel, ConditionalModel, MultiquadraticModel
from overrelax.schemas.diagnostics import AcfReport
from overrelax.schemas.experiment import ExperimentConfig
from overrelax.schemas.sampler import AdlerSpec, GibbsSpec
from overrelax.schemas.trace import ChainTrace
from overrelax.services.chain import run_chain, update_path
from overrelax.services.config_loader import parse_config
from overrelax.services.csv_exporter import CSVExporter, load_dataset, load_trace
from overrelax.services.diagnostics import acf_for_trace
from overrelax.services.kernels import equivalent_K, overrelax_uniform_batch
from overrelax.services.monitors import resolve_monitors
from overrelax.services.presets import FIG3, PATH_START, bundle_members
from overrelax.services.pump_data import generate_pump_data
from overrelax.services.variates import RngStream, quantile
from overrelax.utils.seeding import derive_seed

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

BASELINE_LABEL = "gibbs"
DATASET_LABEL = "pump-data"

# Trace sidecar keys that describe the stored run rather than its config
TRACE_ONLY_KEYS = ("run_seed", "chain_index", "functions")


class ExperimentRunner:
    """Runs configured chains and writes their traces, ACF reports and summaries"""

    def __init__(self, out_dir: PathLike):
        self.out_dir = Path(out_dir)
        self.exporter = CSVExporter(self.out_dir)
        self._datasets: Dict[Tuple[Any, ...], PumpDataset] = {}
        self._written: List[Path] = []

    # Targets

    def _pump_dataset(self, config: ExperimentConfig) -> PumpDataset:
        if config.data is not None:
            return load_dataset(config.data)
        key = (config.seed, config.p, config.gamma_shape, config.beta_true)
        if key not in self._datasets:
            dataset = generate_pump_data(
                config.p, config.gamma_shape, config.beta_true, derive_seed(config.seed, DATASET_LABEL)
            )
            self._datasets[key] = dataset
            self._written.append(self.exporter.export_dataset(dataset, DATASET_LABEL))
        return self._datasets[key]

    def build_target(self, config: ExperimentConfig) -> Tuple[ConditionalModel, np.ndarray]:
        if config.model == "bivariate-gaussian":
            model = BivariateGaussianModel(config.rho)
            return model, model.default_state()
        if config.model == "multiquadratic":
            model = MultiquadraticModel()
            return model, model.default_state()
        dataset = self._pump_dataset(config)
        model = PumpModel.from_dataset(
            dataset,
            gamma_shape=config.gamma_shape,
            hyper_gamma=config.hyper_gamma,
            hyper_delta=config.hyper_delta,
        )
        return model, init_pump_chain(dataset, model)

    # Runs

    def run_trace(
        self, config: ExperimentConfig, init: Optional[Sequence[float]] = None
    ) -> Tuple[ChainTrace, float]:
        model, default_init = self.build_target(config)
        init = default_init if init is None else np.asarray(init, dtype=float)
        monitors = resolve_monitors(config.monitors, model)
        run_seed = derive_seed(config.seed, config.run_label)
        logger.info(f"Running {config.run_label}: {config.n_iter} sweeps of {config.model} (run seed {run_seed})")
        started = time.perf_counter()
        try:
            trace = run_chain(
                model,
                config.sampler,
                config.n_iter,
                init,
                monitors,
                seed=run_seed,
                burn_in=config.burn_in,
                audit=config.audit,
            )
        except NumericalError as e:
            logger.error(f"Run {config.run_label} failed at iteration {e.iteration}, component {e.component}: {e}")
            raise
        elapsed = time.perf_counter() - started
        logger.info(f"Finished {config.run_label} in {elapsed:.2f}s")
        return trace, elapsed

    def _diagnose(self, trace: ChainTrace, fn_name: str, rule: str) -> AcfReport:
        available = trace.n_iter - trace.burn_in
        if available < settings.ACT_MIN_SAMPLES:
            logger.warning(
                f"{trace.label}/{fn_name}: only {available} post-burn-in sweeps; "
                f"autocorrelation time estimates will be rough"
            )
        return acf_for_trace(trace, fn_name, rule=rule, min_samples=settings.EXPERIMENT_MIN_SAMPLES)

    def _write_run(self, config: ExperimentConfig, trace: ChainTrace) -> Dict[str, AcfReport]:
        label = config.run_label
        resolved = config.flat()
        self._written.append(self.exporter.export_trace(trace, label, metadata=resolved))
        if trace.audits is not None:
            self._written.append(self.exporter.export_audits(trace.audits, label, metadata=resolved))
        reports = {}
        for fn_name in trace.names:
            report = self._diagnose(trace, fn_name, config.truncation_rule)
            self._written.append(self.exporter.export_acf(report, label, metadata=resolved))
            reports[fn_name] = report
        return reports

    def _write_summary(
        self,
        name: str,
        runs: Sequence[Tuple[ExperimentConfig, Dict[str, AcfReport]]],
        baseline: Optional[Dict[str, AcfReport]],
        metadata: Mapping[str, Any],
    ) -> None:
        rows = []
        extra: Dict[str, Any] = dict(metadata)
        for config, reports in runs:
            for key, value in config.flat().items():
                extra[f"{config.run_label}.{key}"] = value
            for fn_name, report in reports.items():
                ratio = baseline[fn_name].act / report.act if baseline and fn_name in baseline else float("nan")
                rows.append(
                    {
                        "run": config.run_label,
                        "function": fn_name,
                        "act": report.act,
                        "truncation_lag": report.truncation_lag,
                        "near_zero_lag": report.near_zero_lag if report.near_zero_lag is not None else -1,
                        "efficiency_vs_gibbs": ratio,
                    }
                )
            if isinstance(config.sampler, AdlerSpec) and config.sampler.adler_alpha <= 0:
                extra[f"equivalent_k.{config.run_label}"] = round(equivalent_K(config.sampler.adler_alpha), 4)
        self._written.append(self.exporter.export_table(rows, f"{name}.summary", metadata=extra))

    def _log_timing(self, timings: Mapping[str, float]) -> None:
        base = timings.get(BASELINE_LABEL)
        if not base:
            return
        for label, seconds in timings.items():
            if label != BASELINE_LABEL:
                logger.info(f"Wall-clock ratio {label}/gibbs: {seconds / base:.2f}")

    def execute_experiment(self, config: ExperimentConfig) -> List[Path]:
        """Run one configured chain, plus a Gibbs baseline when requested"""
        self._written = []
        trace, elapsed = self.run_trace(config)
        reports = self._write_run(config, trace)
        runs = [(config, reports)]
        timings = {config.run_label: elapsed}

        baseline_reports = None
        if isinstance(config.sampler, GibbsSpec):
            baseline_reports = reports
        elif config.baseline:
            baseline_config = config.model_copy(update={"sampler": GibbsSpec(), "label": BASELINE_LABEL})
            baseline_trace, timings[BASELINE_LABEL] = self.run_trace(baseline_config)
            baseline_reports = self._write_run(baseline_config, baseline_trace)
            runs.insert(0, (baseline_config, baseline_reports))

        self._write_summary(config.run_label, runs, baseline_reports, {"master_seed": config.seed})
        self._log_timing(timings)
        return list(self._written)

    def reproduce(self, name: str, overrides: Optional[Mapping[str, Any]] = None) -> List[Path]:
        """Run a named bundle of presets sharing one master seed (and pump dataset)"""
        overrides = dict(overrides or {})
        if name == "fig1":
            return self.reproduce_fig1(overrides)
        if name == "fig3":
            seed = overrides.get("seed")
            return self.reproduce_fig3(settings.DEFAULT_SEED if seed is None else seed)

        self._written = []
        runs = []
        timings = {}
        baseline_reports = None
        for preset in bundle_members(name):
            config = parse_config(overrides={**overrides, "preset": preset, "baseline": False})
            trace, timings[config.run_label] = self.run_trace(config)
            reports = self._write_run(config, trace)
            if isinstance(config.sampler, GibbsSpec):
                baseline_reports = reports
            runs.append((config, reports))

        self._write_summary(name, runs, baseline_reports, {"bundle": name, "master_seed": runs[0][0].seed})
        self._log_timing(timings)
        return list(self._written)

    def reproduce_fig1(self, overrides: Optional[Mapping[str, Any]] = None) -> List[Path]:
        """Gibbs and Adler paths on the correlated Gaussian, one row per single-variable update"""
        self._written = []
        for preset in bundle_members("fig1"):
            config = parse_config(
                overrides={**dict(overrides or {}), "preset": preset, "baseline": False, "audit": True}
            )
            trace, _ = self.run_trace(config, init=PATH_START)
            path = update_path(trace, PATH_START)
            components = [-1] + [entry.component for entry in trace.audits]
            iterations = [-1] + [entry.iteration for entry in trace.audits]
            columns = {
                "update": np.arange(path.shape[0]),
                "iteration": np.array(iterations),
                "component": np.array(components),
            }
            columns.update({name: path[:, index] for index, name in enumerate(("x1", "x2"))})
            metadata = {"bundle": "fig1", **config.flat(), "run_seed": trace.seed, "start": PATH_START}
            self._written.append(
                self.exporter.export_columns(columns, f"fig1.{config.run_label}.path", metadata=metadata)
            )
        return list(self._written)

    def reproduce_fig3(self, seed: int) -> List[Path]:
        """Uniform points overrelaxed with K = 100, and their Gaussian-transformed counterparts"""
        k, n_points = FIG3["k"], FIG3["n_points"]
        rng = RngStream(derive_seed(seed, "fig3"))
        u = rng.generator.random(n_points)
        u_prime = overrelax_uniform_batch(u, k, rng)
        eps = settings.CDF_CLAMP_EPS
        standard = Gaussian(0.0, 1.0)
        x = np.array([quantile(standard, min(max(v, eps), 1.0 - eps)) for v in u])
        x_prime = np.array([quantile(standard, min(max(v, eps), 1.0 - eps)) for v in u_prime])
        path = self.exporter.export_columns(
            {"u": u, "u_prime": u_prime, "x": x, "x_prime": x_prime},
            "fig3.pairs",
            metadata={"bundle": "fig3", "master_seed": seed, "k": k, "n_points": n_points},
        )
        logger.info(f"Wrote {n_points} overrelaxed pairs to {path}")
        return [path]

    def generate_data(
        self, p: int, gamma_shape: float, beta_true: float, seed: int, name: str = DATASET_LABEL
    ) -> List[Path]:
        dataset = generate_pump_data(p, gamma_shape, beta_true, seed)
        return [self.exporter.export_dataset(dataset, name)]

    def diagnose(self, trace_path: PathLike, functions: Optional[Sequence[str]] = None, rule: Optional[str] = None) -> List[Path]:
        trace = load_trace(trace_path)
        name = Path(trace_path).name
        for suffix in (".csv", ".trace"):
            name = name[: -len(suffix)] if name.endswith(suffix) else name
        rule = rule or settings.DEFAULT_TRUNCATION_RULE
        resolved = {key: value for key, value in trace.metadata.items() if key not in TRACE_ONLY_KEYS}
        resolved["truncation_rule"] = rule
        return [
            self.exporter.export_acf(self._diagnose(trace, fn, rule), name, metadata=resolved)
            for fn in (functions or trace.names)
        ]


def execute_experiment(config: ExperimentConfig) -> List[Path]:
    return ExperimentRunner(config.out_dir).execute_experiment(config)
