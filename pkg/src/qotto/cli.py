"""Command-line entry point: ``qotto {cycle,classify,sweep,figure,verify}``.

Exit status is 0 on success, 1 on invalid input and 2 when ``verify`` finds a
counterexample.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from typing import Optional, Sequence

from . import sweep as sweep_mod
from .analysis import regime_report
from .majorization import PROBABILITY_TOL
from .spectra import EnergySpectrum, Family, build_family
from .theorems import SamplerConfig, verify_theorems
from .thermo import OttoCycle

EXIT_OK, EXIT_INVALID, EXIT_COUNTEREXAMPLE = 0, 1, 2

# options whose values may start with "-" (negative leading level)
_SPECTRUM_OPTIONS = ("--hot", "--cold")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _add_spectra(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("spectra")
    g.add_argument("--hot", help="hot-contact levels, ascending comma list")
    g.add_argument("--cold", help="cold-contact levels, ascending comma list")
    g.add_argument("--family", choices=[f.value for f in Family])
    g.add_argument("--b1", type=_finite, help="family B at the hot contact")
    g.add_argument("--j1", type=_finite, help="family J at the hot contact")
    g.add_argument("--b2", type=_finite, help="family B at the cold contact (default b1)")
    g.add_argument("--j2", type=_finite, help="family J at the cold contact (default j1)")


def _add_common(p: argparse.ArgumentParser, fmt: str) -> None:
    p.add_argument("--config", help="key=value file supplying any option")
    p.add_argument("--tol", type=_finite, help=f"classification tolerance (default {PROBABILITY_TOL})")
    p.add_argument("--format", choices=("csv", "human"), help=f"output format (default {fmt})")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(_format=fmt)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qotto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, help_ in (("cycle", "evaluate one cycle"), ("classify", "full regime report")):
        p = sub.add_parser(name, help=help_)
        _add_spectra(p)
        p.add_argument("--t1", type=_finite, help="hot bath temperature")
        p.add_argument("--t2", type=_finite, help="cold bath temperature")
        _add_common(p, "human")

    p = sub.add_parser("sweep", help="sweep the cold bath temperature")
    _add_spectra(p)
    p.add_argument("--t1", type=_finite)
    p.add_argument("--lo", type=_finite, help="lowest t2")
    p.add_argument("--hi", type=_finite, help="highest t2")
    p.add_argument("--points", type=int, help="grid size (default 181)")
    p.add_argument("--columns", help="comma-separated subset of " + ",".join(sweep_mod.COLUMNS))
    _add_common(p, "csv")

    p = sub.add_parser("figure", help="sweep a figure preset")
    p.add_argument("name", help="one of " + ", ".join(sweep_mod.PRESETS))
    p.add_argument("--points", type=int)
    p.add_argument("--columns")
    _add_common(p, "csv")

    p = sub.add_parser("verify", help="randomised theorem scoreboard")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, help="number of random cycles (default 100000)")
    p.add_argument("--levels", type=_int_list, help="comma list of medium sizes (default 2..8)")
    p.add_argument("--workers", type=int, help="worker processes (default 1)")
    p.add_argument("--summary", help="write the JSON summary to this path")
    _add_common(p, "human")
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path!r}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"--config {path}:{lineno}: expected key=value, got {line!r}")
        values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Fill options not given on the command line from ``--config``."""
    if not args.config:
        return
    sub = parser._subparsers._group_actions[0].choices[args.command]  # noqa: SLF001
    actions = {a.dest: a for a in sub._actions}  # noqa: SLF001
    for key, raw in _read_config(args.config).items():
        action = actions.get(key)
        if action is None or key in ("config", "help", "name"):
            raise UsageError(f"--config: unknown option {key!r}")
        if getattr(args, key) is not None:
            continue
        try:
            value = action.type(raw) if action.type else raw
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"--config: {key}: {exc}") from None
        except ValueError:
            raise UsageError(f"--config: {key}: invalid value {raw!r}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"--config: {key}: {value!r} not one of {list(action.choices)}")
        setattr(args, key, value)


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SPECTRUM_OPTIONS:
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def _spectrum(text: str, option: str) -> EnergySpectrum:
    try:
        return EnergySpectrum.parse(text)
    except ValueError as exc:
        raise UsageError(f"{option}: {exc}") from None


def _spectra(args) -> tuple[EnergySpectrum, EnergySpectrum]:
    if args.family:
        if args.hot or args.cold:
            raise UsageError("give either --family or --hot/--cold, not both")
        if args.b1 is None or args.j1 is None:
            raise UsageError("--family needs --b1 and --j1")
        b2 = args.b1 if args.b2 is None else args.b2
        j2 = args.j1 if args.j2 is None else args.j2
        try:
            hot = build_family(args.family, args.b1, args.j1)
        except ValueError as exc:
            raise UsageError(f"--b1/--j1: {exc}") from None
        try:
            cold = build_family(args.family, b2, j2)
        except ValueError as exc:
            raise UsageError(f"--b2/--j2: {exc}") from None
        return hot, cold
    if not args.hot or not args.cold:
        raise UsageError("need --hot and --cold (or --family with --b1/--j1)")
    hot, cold = _spectrum(args.hot, "--hot"), _spectrum(args.cold, "--cold")
    if hot.n != cold.n:
        raise UsageError(f"--hot has {hot.n} levels but --cold has {cold.n}")
    return hot, cold


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"missing --{name}")


def _cycle(args) -> OttoCycle:
    hot, cold = _spectra(args)
    _require(args, "t1", "t2")
    if not args.t2 > 0:
        raise UsageError(f"--t2 must be positive, got {args.t2!r}")
    if not args.t1 > args.t2:
        raise UsageError(f"--t2 ({args.t2!r}) must be below --t1 ({args.t1!r})")
    return OttoCycle(hot, cold, args.t1, args.t2)


def _columns(args) -> tuple[str, ...]:
    if not args.columns:
        return sweep_mod.COLUMNS
    cols = tuple(c.strip() for c in args.columns.split(","))
    unknown = [c for c in cols if c not in sweep_mod.COLUMNS]
    if unknown:
        raise UsageError(f"--columns: unknown {unknown}; choose from {','.join(sweep_mod.COLUMNS)}")
    return cols


def _num(x: Optional[float]) -> str:
    return "-" if x is None else f"{x:.12g}"


def _render_report(report, full: bool) -> str:
    o = report.outcome
    lines = [
        f"Q1    {_num(o.q_hot)}",
        f"Q2    {_num(o.q_cold)}",
        f"W     {_num(o.work_net)}",
        f"eta   {_num(o.efficiency)}",
        f"mode  {report.mode.value.capitalize()}",
        f"case  {'-' if report.case is None else report.case.value}",
        f"cond  {report.cond.label.value}",
        f"maj   {report.majorization.value}",
    ]
    if full:
        gaps = ", ".join(c.value for c in report.cond.changes)
        lines.append(f"gaps  {gaps}")
        lines.append("xi    " + ", ".join(_num(x) for x in report.xi))
        b = report.bounds
        if b.applicable:
            lines.append(f"bound {b.relation}: {'ok' if b.report.ok else 'VIOLATED'}")
        else:
            lines.append(f"bound n/a ({b.report.reason})")
        for title, checks in (("pwc", report.pwc), ("chain", report.chain)):
            for c in checks:
                status = "skip" if c.skipped else ("pass" if c.passed else "fail")
                extra = f" [{c.note}]" if c.note else ""
                slack = "" if c.slack is None else f"  slack {_num(c.slack)}"
                lines.append(f"{title:<5} {status:<4} {c.name}{slack}{extra}")
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    fmt = args.format or args._format
    tol = PROBABILITY_TOL if args.tol is None else args.tol
    if tol < 0:
        raise UsageError(f"--tol must be non-negative, got {tol!r}")

    if args.command in ("cycle", "classify"):
        cycle = _cycle(args)
        if fmt == "csv":
            _emit(args, sweep_mod.to_csv([sweep_mod.evaluate_row(cycle, tol)]))
        else:
            _emit(args, _render_report(regime_report(cycle, tol), args.command == "classify"))
        return EXIT_OK

    if args.command in ("sweep", "figure"):
        if args.command == "sweep":
            hot, cold = _spectra(args)
            _require(args, "t1", "lo", "hi")
            try:
                spec = sweep_mod.SweepSpec(
                    hot, cold, args.t1, args.lo, args.hi,
                    points=181 if args.points is None else args.points,
                    columns=_columns(args), tol=tol,
                )
            except ValueError as exc:
                raise UsageError(f"sweep: {exc}") from None
        else:
            overrides = {"columns": _columns(args), "tol": tol}
            if args.points is not None:
                overrides["points"] = args.points
            try:
                spec = sweep_mod.preset(args.name, **overrides)
            except ValueError as exc:
                raise UsageError(f"figure: {exc}") from None
        rows = sweep_mod.run_sweep(spec)
        if fmt == "csv":
            _emit(args, sweep_mod.to_csv(rows, spec.columns))
        else:
            head = "  ".join(f"{c:>12}" for c in spec.columns)
            body = [
                "  ".join(
                    f"{_num(v) if not isinstance(v, str) else v:>12}"
                    for v in (getattr(r, c) for c in spec.columns)
                )
                for r in rows
            ]
            _emit(args, "\n".join([head, *body]) + "\n")
        return EXIT_OK

    if args.command == "verify":
        if args.seed is None:
            raise UsageError("verify needs --seed")
        trials = 100_000 if args.trials is None else args.trials
        if trials < 1:
            raise UsageError(f"--trials must be >= 1, got {trials}")
        config = SamplerConfig()
        if args.levels:
            try:
                config = SamplerConfig(n_levels=args.levels, n_weights=(1.0,) * len(args.levels))
            except ValueError as exc:
                raise UsageError(f"--levels: {exc}") from None
        board = verify_theorems(config, trials, args.seed, tol, workers=args.workers or 1)
        if args.summary:
            with open(args.summary, "w") as fh:
                fh.write(board.to_json())
        if fmt == "csv":
            rows = [
                [r["name"], r["applicable"], r["violations"], r["indeterminate"]]
                for r in board.to_dict()["theorems"]
            ]
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["name", "applicable", "violations", "indeterminate"])
            w.writerows(rows)
            _emit(args, buf.getvalue())
        else:
            _emit(args, board.render())
        found = board.first_counterexample()
        if found:
            name, entry = found
            cycle = OttoCycle(
                EnergySpectrum(tuple(entry["hot"])),
                EnergySpectrum(tuple(entry["cold"])),
                entry["t_hot"],
                entry["t_cold"],
            )
            sys.stderr.write(
                f"counterexample to {name} at trial {entry['trial']}: "
                f"qotto {cycle.command_line()}\n"
            )
            return EXIT_COUNTEREXAMPLE
        return EXIT_OK

    raise UsageError("missing subcommand: cycle, classify, sweep, figure or verify")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
        if args.command is None:
            raise UsageError("missing subcommand: cycle, classify, sweep, figure or verify")
        _apply_config(parser, args)
        return _run(args)
    except UsageError as exc:
        sys.stderr.write(f"qotto: error: {exc}\n")
        return EXIT_INVALID
    except ValueError as exc:
        sys.stderr.write(f"qotto: error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"qotto: error: {exc}\n")
        return EXIT_INVALID
