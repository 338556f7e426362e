"""cli: command-line interface for ergodic-lab experiments."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from ergodic_lab.config import get_settings
from ergodic_lab.schemas.experiment import ExperimentConfig, GridSpec

# entropy enumerates all 2^n words of each length
ENTROPY_DEFAULT_N = 12


def _common(settings_seed: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", dest="model_file", help="Measure specification (JSON)")
    common.add_argument(
        "--n", type=int, default=None, help="Prefix length / n_max (entropy: 12, otherwise 4096)"
    )
    common.add_argument("--seed", type=int, default=settings_seed)
    common.add_argument("--replicas", type=int, default=1)
    common.add_argument("--grid", default=None, help="Geometric n-grid start:factor:count")
    common.add_argument("--out", dest="output", default=None, help="Output file (stdout if absent)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--input", dest="input_file", default=None, help="Word file to analyse")
    common.add_argument("--packed", action="store_true", help="Packed binary word framing")
    return common


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = _common(settings.default_seed)
    parser = argparse.ArgumentParser(
        prog="ergodic-lab",
        description="ergodic-lab: entropy, SMB and randomness-deficiency experiments",
    )
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("sample", parents=[common], help="Sample prefixes from a model")
    sub.add_parser("entropy", parents=[common], help="Block-entropy table up to --n")
    sub.add_parser("smb-report", parents=[common], help="−(1/n)log μ[x↾n] against h(μ)")

    fk_p = sub.add_parser("fk", parents=[common], help="Conditional information profile f_k")
    fk_p.add_argument("--K", type=int, default=32)

    dim_p = sub.add_parser("dimension", parents=[common], help="Compression-rate dim/Dim proxies")
    dim_p.add_argument("--coder", choices=["lz78", "ideal"], default="lz78")
    dim_p.add_argument("--tail-fraction", type=float, default=0.25)

    sub.add_parser("deficiency", parents=[common], help="Ideal minus LZ78 code length trace")

    inv_p = sub.add_parser("invariance", parents=[common], help="Shift-invariance check")
    inv_p.add_argument("--depth", type=int, default=12)
    inv_p.add_argument("--tolerance", type=float, default=None)

    cor_p = sub.add_parser("correlation", parents=[common], help="Cesàro correlation of [u], [v]")
    cor_p.add_argument("--u", default="1")
    cor_p.add_argument("--v", default="1")
    cor_p.add_argument("--tolerance", type=float, default=None)

    split_p = sub.add_parser("split", parents=[common], help="Birkhoff / error split of the rate")
    split_p.add_argument("--K", type=int, default=32)

    sum_p = sub.add_parser("summarize", parents=[common], help="Aggregate report files")
    sum_p.add_argument("report_files", nargs="+", help="CSV or JSON report files")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    settings = get_settings()
    values = {k: v for k, v in vars(args).items() if v is not None}
    if "n" not in values and values.get("command") == "entropy":
        values["n"] = ENTROPY_DEFAULT_N
    grid_text = values.pop("grid", None)
    values["grid"] = (
        GridSpec.parse(grid_text)
        if grid_text
        else GridSpec(
            start=settings.grid_start, factor=settings.grid_factor, count=settings.grid_count
        )
    )
    return ExperimentConfig.model_validate(values)


def main(argv: Sequence[str] | None = None) -> int:
    from ergodic_lab.cli_commands import report_error, run
    from ergodic_lab.core.logging import setup_logging

    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    setup_logging()
    try:
        config = config_from_args(args)
    except (ValidationError, ValueError) as exc:
        return report_error(exc)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
