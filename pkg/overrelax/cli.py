# overrelax/cli.py
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from overrelax import __version__
from overrelax.core.config import settings
from overrelax.core.exceptions import OverrelaxError
from overrelax.services.config_loader import parse_config
from overrelax.services.diagnostics import TRUNCATION_RULES
from overrelax.services.experiment_runner import ExperimentRunner
from overrelax.services.presets import PRESETS, REPRODUCIBLE

logger = logging.getLogger(__name__)

EXIT_FAILURE = 2


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Master seed (default: settings.DEFAULT_SEED)")
    parser.add_argument("--out-dir", help=f"Output directory (default: {settings.OUTPUT_DIR})")
    parser.add_argument("--iters", type=int, help="Number of sweeps")
    parser.add_argument("--burn-in", type=int, help="Sweeps excluded from diagnostics")
    parser.add_argument("--truncation-rule", choices=TRUNCATION_RULES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overrelax", description="Gibbs sampling with ordered overrelaxation: runs, diagnostics, reproductions"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate-data", help="Write a synthetic pump dataset")
    generate.add_argument("--p", type=int, default=100, help="Number of pumps")
    generate.add_argument("--gamma-shape", type=float, default=20.0)
    generate.add_argument("--beta-true", type=float, default=0.2)
    generate.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    generate.add_argument("--out-dir", default=settings.OUTPUT_DIR)
    generate.add_argument("--name", default="pump-data", help="Output file stem")

    run = commands.add_parser("run", help="Run one configured chain")
    run.add_argument("--preset", choices=sorted(PRESETS))
    run.add_argument("--config", help="key=value configuration file")
    run.add_argument("--model", choices=["bivariate-gaussian", "multiquadratic", "pump"])
    run.add_argument("--method", choices=["gibbs", "adler", "ordered-over", "ordered-under"])
    run.add_argument("--k", type=int, help="Number of extra draws K")
    run.add_argument("--impl", choices=["direct", "cdf"])
    run.add_argument("--alpha", type=float, help="Adler's alpha")
    run.add_argument("--rho", type=float)
    run.add_argument("--data", help="Pump dataset CSV")
    run.add_argument("--monitors", help="Comma-separated monitored functions")
    run.add_argument("--label", help="Output file stem")
    run.add_argument("--no-baseline", action="store_true", help="Skip the Gibbs baseline run")
    run.add_argument("--audit", action="store_true", help="Also write <label>.audit.csv, one row per update")
    _add_run_flags(run)

    diagnose = commands.add_parser("diagnose", help="ACF and autocorrelation time of a trace CSV")
    diagnose.add_argument("trace", help="Trace CSV written by 'run'")
    diagnose.add_argument("--functions", help="Comma-separated columns (default: all)")
    diagnose.add_argument("--truncation-rule", choices=TRUNCATION_RULES)
    diagnose.add_argument("--out-dir", help="Output directory (default: the trace's directory)")

    reproduce = commands.add_parser("reproduce", help="Run a reproduction bundle")
    reproduce.add_argument("name", choices=REPRODUCIBLE)
    _add_run_flags(reproduce)

    return parser


def _run_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides = {
        "seed": args.seed,
        "out_dir": args.out_dir,
        "n_iter": args.iters,
        "burn_in": args.burn_in,
        "truncation_rule": args.truncation_rule,
    }
    if args.command == "run":
        overrides.update(
            {
                "preset": args.preset,
                "model": args.model,
                "method": args.method,
                "k": args.k,
                "impl": args.impl,
                "adler_alpha": args.alpha,
                "rho": args.rho,
                "data": args.data,
                "monitors": args.monitors,
                "label": args.label,
                "baseline": False if args.no_baseline else None,
                "audit": True if args.audit else None,
            }
        )
    return {key: value for key, value in overrides.items() if value is not None}


def _split(value: Optional[str]) -> Optional[List[str]]:
    if not value:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )

    stage = args.command
    try:
        if args.command == "generate-data":
            paths = ExperimentRunner(args.out_dir).generate_data(
                args.p, args.gamma_shape, args.beta_true, args.seed, name=args.name
            )
        elif args.command == "run":
            stage = "config"
            config = parse_config(args.config, _run_overrides(args))
            stage = "run"
            paths = ExperimentRunner(config.out_dir).execute_experiment(config)
        elif args.command == "diagnose":
            out_dir = args.out_dir or Path(args.trace).parent
            paths = ExperimentRunner(out_dir).diagnose(args.trace, _split(args.functions), args.truncation_rule)
        else:
            overrides = _run_overrides(args)
            out_dir = overrides.pop("out_dir", settings.OUTPUT_DIR)
            paths = ExperimentRunner(out_dir).reproduce(args.name, overrides)
    except OverrelaxError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"{stage}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as e:
        print(f"{stage}: {e}", file=sys.stderr)
        return EXIT_FAILURE

    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
