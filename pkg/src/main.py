"""
Command-line entry point for the ResamplePilot resampling toolkit.

Example usage:
    python src/main.py resample --input data/glass4.dat --seed 7 --output out/glass4_evo.csv
    python src/main.py evaluate --input data/glass4.dat --method smote --n-seeds 10
    python src/main.py ablate --input data/glass4.dat --log out/glass4_ablation.jsonl
    python src/main.py gb-inspect --input data/glass4.dat --format jsonl
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from cli.commands import cmd_ablate, cmd_evaluate, cmd_gb_inspect, cmd_resample, cmd_synth
from config.run_config import INPUT_FORMATS, METHODS, PipelineConfig
from config.settings import Config
from utils.errors import ConfigError, DatasetError, ResamplePilotError
from utils.logging_utils import log_system_error, log_system_startup, setup_logger

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_PIPELINE = 3

class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the configuration status."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")

def _add_common(parser: argparse.ArgumentParser, needs_input: bool = True) -> None:
    parser.add_argument("--config", help="flat json5 key-value config file")
    parser.add_argument("--seed", type=int, help=f"master seed (default: ${Config.SEED_ENV_VAR} or {Config.DEFAULT_SEED})")
    parser.add_argument("--workers", type=int, help="parallel workers for task evolution")
    parser.add_argument("--verbose", action="store_true", default=None, help="debug-level console logging")
    if not needs_input:
        return
    parser.add_argument("--input", dest="input_path", help="KEEL .dat or CSV dataset")
    parser.add_argument("--input-format", choices=INPUT_FORMATS, help="input format (default: by file suffix)")
    parser.add_argument("--label-column", help="CSV class column name or 0-based index (default: class)")
    parser.add_argument("--minority-class", help="class name to treat as Minority")
    parser.add_argument("--scale", dest="scaling", action="store_true", default=None,
                        help="min-max scale features before resampling")
    parser.add_argument("--output", dest="output_path", help="output file")
    parser.add_argument("--report", dest="report_path", help="run report JSON file")

def _add_evolution(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=METHODS, help="resampling method (default: evosampling)")
    parser.add_argument("--no-transfer", dest="transfer_enabled", action="store_false", default=None,
                        help="disable transfer crossover")
    parser.add_argument("--generations", type=int)
    parser.add_argument("--population", dest="population_size_per_task", type=int)
    parser.add_argument("--threshold", dest="gb_quality_threshold", type=float, help="granular-ball quality threshold")
    parser.add_argument("--gb-neighbors", type=int)
    parser.add_argument("--smote-k", dest="smote_neighbors", type=int)
    parser.add_argument("--log", dest="log_path", help="per-generation JSON lines log")

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resamplepilot", description="GP oversampling and granular-ball undersampling toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    resample = sub.add_parser("resample", help="resample a dataset and write it as CSV")
    _add_common(resample)
    _add_evolution(resample)

    evaluate = sub.add_parser("evaluate", help="split, resample train, score test with kNN")
    _add_common(evaluate)
    _add_evolution(evaluate)
    evaluate.add_argument("--train-fraction", type=float)
    evaluate.add_argument("--knn-k", dest="knn_neighbors", type=int)
    evaluate.add_argument("--n-seeds", type=int, help="evaluate seeds seed .. seed + n - 1")
    evaluate.add_argument("--metrics", dest="metrics_path", help="metrics CSV (rows are appended)")

    ablate = sub.add_parser("ablate", help="convergence with and without knowledge transfer")
    _add_common(ablate)
    _add_evolution(ablate)

    inspect = sub.add_parser("gb-inspect", help="dump the granular balls of a dataset")
    _add_common(inspect)
    inspect.add_argument("--threshold", dest="gb_quality_threshold", type=float)
    inspect.add_argument("--format", dest="dump_format", choices=("table", "jsonl"), default="table")

    synth = sub.add_parser("synth", help="write the synthetic benchmark suite")
    _add_common(synth, needs_input=False)
    synth.add_argument("--output-dir", required=True)
    synth.add_argument("--n-cases", type=int, default=20)
    synth.add_argument("--max-rows", type=int, default=500)
    synth.add_argument("--max-features", type=int, default=10)
    return parser

_NON_CONFIG_ARGS = {"command", "config", "dump_format", "output_dir", "n_cases", "max_rows", "max_features"}

def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    """Defaults, then config file, then the seed environment variable, then flags."""
    cfg = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    try:
        env_seed = Config.env_seed()
    except ValueError as e:
        raise ConfigError(f"{Config.SEED_ENV_VAR} must be an integer") from e
    cfg = cfg.with_overrides(seed=env_seed)
    flags = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG_ARGS}
    return cfg.with_overrides(**flags)

def setup_logging(verbose: bool = False) -> bool:
    """Configure logging settings with proper initialization."""
    try:
        setup_logger("resample_pilot", verbose=verbose)
        return True
    except Exception as e:
        print(f"Failed to setup logging: {e}", file=sys.stderr)
        return False

def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as e:
        print(f"resamplepilot: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    if not setup_logging(cfg.verbose):
        print("Warning: Logging setup failed, continuing without proper logging", file=sys.stderr)
    log_system_startup(f"ResamplePilot {args.command}")

    try:
        if args.command == "synth":
            cmd_synth(Path(args.output_dir), args.n_cases, cfg.seed, args.max_rows, args.max_features)
            return EXIT_OK
        cfg.validate(require_input=True)
        if args.command == "resample":
            cmd_resample(cfg)
        elif args.command == "evaluate":
            cmd_evaluate(cfg)
        elif args.command == "ablate":
            cmd_ablate(cfg)
        else:
            cmd_gb_inspect(cfg, args.dump_format)
        return EXIT_OK
    except ConfigError as e:
        log_system_error("Configuration", str(e))
        return EXIT_CONFIG
    except DatasetError as e:
        log_system_error("Data", str(e))
        return EXIT_DATA
    except ResamplePilotError as e:
        log_system_error(f"Pipeline stage '{getattr(e, 'stage', args.command)}'", str(e))
        return EXIT_PIPELINE
    except OSError as e:
        log_system_error("I/O", str(e))
        return EXIT_DATA
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return EXIT_PIPELINE

if __name__ == "__main__":
    sys.exit(main())
