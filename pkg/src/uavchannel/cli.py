"""Command-line front end.

Subcommands: latency, util-ts, util-rate, util-ber, train, adapt,
reproduce-all. Data goes to stdout or ``--out``; diagnostics go to stderr.
Exit codes: 0 ok, 2 usage, 3 domain error, 4 IO error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence, TextIO

from . import experiments as ex
from .adaptation import AdaptationParams, AdaptationTrace, run_adaptation
from .errors import (
    ChannelDomainError,
    ModelFileError,
    NonPhysicalPredictionError,
    NonTerminationError,
    SingularFitError,
)
from .regression import LinearModel, train_default_model

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4
SUBCOMMANDS = ("latency", "util-ts", "util-rate", "util-ber", "train", "adapt", "reproduce-all")
DOMAIN_ERRORS = (ChannelDomainError, SingularFitError, NonPhysicalPredictionError, NonTerminationError)


class UsageError(Exception):
    pass


@dataclass
class CommandSpec:
    subcommand: str
    options: dict[str, Any] = field(default_factory=dict)
    output_target: str | None = None  # None means stdout
    output_format: str = "csv"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number {text!r}") from None


def _integer(text: str) -> int:
    x = _number(text)
    if not x.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(x)


def _positive(conv):
    def parse(text):
        x = conv(text)
        if not x > 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text!r}")
        return x

    parse.__name__ = conv.__name__
    return parse


def _ber(text: str) -> float:
    x = _number(text)
    if not 0 <= x < 1:
        raise argparse.ArgumentTypeError(f"BER must lie in [0, 1), got {text!r}")
    return x


def _list_of(conv):
    def parse(text):
        items = [t.strip() for t in text.split(",")]
        if not items or any(t == "" for t in items):
            raise argparse.ArgumentTypeError(f"malformed list {text!r}")
        return [conv(t) for t in items]

    parse.__name__ = "list"
    return parse


pos_int = _positive(_integer)
pos_float = _positive(_number)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uavchannel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("latency", help="latency vs transaction size")
    p.add_argument("--ts", type=_list_of(pos_int), default=list(ex.LATENCY_TS))
    p.add_argument("--rate", type=_list_of(pos_float), default=[ex.LATENCY_RATE_BPS], help="bits/s")
    p.add_argument("--hops", type=pos_int, default=3)
    _add_output(p)

    p = sub.add_parser("util-ts", help="utilization vs transaction size and users")
    p.add_argument("--ts", type=_list_of(pos_int), default=list(ex.UTIL_TS))
    p.add_argument("--users", type=_list_of(pos_int), default=list(ex.UTIL_USERS))
    p.add_argument("--rate", type=pos_float, default=ex.UTIL_RATE_BPS)
    p.add_argument("--window", type=pos_float, default=1.0)
    _add_output(p)

    p = sub.add_parser("util-rate", help="utilization vs data rate")
    p.add_argument("--ts", type=pos_int, default=ex.RATE_SWEEP_TS)
    p.add_argument("--users", type=pos_int, default=ex.RATE_SWEEP_USERS)
    p.add_argument("--rate", type=_list_of(pos_float), default=list(ex.RATE_SWEEP_RATES_BPS))
    p.add_argument("--window", type=pos_float, default=1.0)
    _add_output(p)

    p = sub.add_parser("util-ber", help="utilization vs bit error rate")
    p.add_argument("--ts", type=pos_int, default=ex.BER_SWEEP_TS)
    p.add_argument("--users", type=pos_int, default=ex.BER_SWEEP_USERS)
    p.add_argument("--rate", type=pos_float, default=ex.BER_SWEEP_RATE_BPS)
    p.add_argument("--ber", type=_list_of(_ber), default=list(ex.BER_SWEEP_VALUES))
    p.add_argument("--window", type=pos_float, default=1.0)
    _add_output(p)

    p = sub.add_parser("train", help="fit the regression model on the default training set")
    p.add_argument("--out", default=None, help="model JSON file (default stdout)")

    p = sub.add_parser("adapt", help="run the adaptive transaction-size loop")
    p.add_argument("--model", default=None, help="model JSON from `train` (default: train in memory)")
    p.add_argument("--target", type=pos_float, default=2.0, help="latency target, ms")
    p.add_argument("--rate-mbps", type=pos_float, default=6.0)
    p.add_argument("--offset", type=_integer, default=1000, help="bits subtracted from the prediction")
    p.add_argument("--increase", type=pos_int, default=100)
    p.add_argument("--decrease", type=pos_int, default=400)
    p.add_argument("--max-events", type=pos_int, default=3)
    p.add_argument("--min-ts", type=pos_int, default=100)
    p.add_argument("--max-steps", type=pos_int, default=10**6)
    p.add_argument("--real-time", action="store_true", help="pace output at one step per --pace seconds")
    p.add_argument("--pace", type=_number, default=1.0, help=argparse.SUPPRESS)
    _add_output(p)

    p = sub.add_parser("reproduce-all", help="write fig3.csv .. fig8.csv and model.json")
    p.add_argument("--outdir", required=True)
    return parser


def parse_args(argv: Sequence[str]) -> CommandSpec:
    """Validate ``argv`` into a :class:`CommandSpec`; raises :class:`UsageError`."""
    ns = vars(build_parser().parse_args(list(argv)))
    sub = ns.pop("subcommand")
    out = ns.pop("out", None)
    fmt = ns.pop("format", "csv")
    if sub == "train":
        fmt = "json"
    if sub == "adapt" and ns["offset"] < 0:
        raise UsageError("uavchannel adapt: argument --offset: must be non-negative")
    return CommandSpec(sub, ns, out, fmt)


def _emit(text: str, spec: CommandSpec, stdout: TextIO) -> None:
    if spec.output_target is None:
        stdout.write(text)
        stdout.flush()
    else:
        Path(spec.output_target).write_text(text)


def _table_text(table: ex.SweepTable, fmt: str) -> str:
    return table.to_json() if fmt == "json" else table.to_csv()


def _trace_text(trace: AdaptationTrace, fmt: str) -> str:
    return trace.to_json() if fmt == "json" else trace.to_csv()


def _projection_csv(trace: AdaptationTrace, column: str) -> str:
    lines = [f"step,{column}"]
    for r in trace.records:
        lines.append(f"{r.step},{ex.format_number(getattr(r, column))}")
    return "\n".join(lines) + "\n"


def _adapt(opts: dict) -> AdaptationTrace:
    model = LinearModel.load(opts["model"]) if opts["model"] else train_default_model()
    params = AdaptationParams(
        target_latency_ms=opts["target"],
        data_rate_mbps=opts["rate_mbps"],
        initial_offset_bits=opts["offset"],
        increase_step_bits=opts["increase"],
        decrease_step_bits=opts["decrease"],
        max_threshold_events=opts["max_events"],
        min_ts_bits=opts["min_ts"],
    )
    return run_adaptation(model, params, max_steps=opts["max_steps"])


def reproduce_all(outdir: str | Path) -> list[Path]:
    """Write every figure table plus the trained model; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    model = train_default_model()
    trace = run_adaptation(model, AdaptationParams())
    files = {
        "fig3.csv": ex.sweep_latency(ex.LATENCY_TS, ex.FIG3_RATES_BPS).to_csv(),
        "fig4.csv": ex.sweep_utilization_ts().to_csv(),
        "fig5.csv": ex.sweep_utilization_rate().to_csv(),
        "fig6.csv": ex.sweep_utilization_ber().to_csv(),
        "fig7.csv": _projection_csv(trace, "latency_ms"),
        "fig8.csv": _projection_csv(trace, "ts_bits"),
    }
    written = []
    for name, text in files.items():
        path = outdir / name
        path.write_text(text)
        written.append(path)
    model.save(outdir / "model.json")
    written.append(outdir / "model.json")
    return written


def run(spec: CommandSpec, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    o = spec.options
    try:
        if spec.subcommand == "latency":
            _emit(_table_text(ex.sweep_latency(o["ts"], o["rate"], o["hops"]), spec.output_format), spec, stdout)
        elif spec.subcommand == "util-ts":
            table = ex.sweep_utilization_ts(o["ts"], o["users"], o["rate"], o["window"])
            _emit(_table_text(table, spec.output_format), spec, stdout)
        elif spec.subcommand == "util-rate":
            table = ex.sweep_utilization_rate(o["ts"], o["users"], o["rate"], o["window"])
            _emit(_table_text(table, spec.output_format), spec, stdout)
        elif spec.subcommand == "util-ber":
            table = ex.sweep_utilization_ber(o["ts"], o["users"], o["rate"], o["ber"], o["window"])
            _emit(_table_text(table, spec.output_format), spec, stdout)
        elif spec.subcommand == "train":
            _emit(json.dumps(train_default_model().to_json_dict(), indent=2) + "\n", spec, stdout)
        elif spec.subcommand == "adapt":
            trace = _adapt(o)
            if o["real_time"]:
                for r in trace.records:
                    time.sleep(o["pace"])
                    if r.threshold_event:
                        print(
                            f"step {r.step}: threshold reached, latency {r.latency_ms:.2f} ms "
                            f"at {r.ts_bits} bits",
                            file=stderr,
                        )
            _emit(_trace_text(trace, spec.output_format), spec, stdout)
        elif spec.subcommand == "reproduce-all":
            reproduce_all(o["outdir"])
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown subcommand {spec.subcommand!r}")
    except (OSError, ModelFileError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except (*DOMAIN_ERRORS, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return run(spec)
