"""Command-line front end.

Structured results go to stdout as one JSON document (CSV for ``ensemble``
and ``f-surface``). Domain errors exit with status 1 and a JSON error on
stderr; usage and input-file problems exit with status 2.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import construct, geom, info, solve, verify
from .core import INV_E, THRESHOLD, Channel, Distribution
from .errors import CapacityError

RENORMALIZE_TOL = 1e-6
SIG_DIGITS = 12


class UsageError(Exception):
    def __init__(self, kind: str, message: str, **details: Any) -> None:
        super().__init__(message)
        self.kind = kind
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "message": str(self), **self.details}


def fmt(x: float) -> float | str:
    """Round to 12 significant digits; non-finite values become strings."""
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return float(f"{x:.{SIG_DIGITS}g}")


def fmt_list(xs) -> list:
    return [fmt(x) for x in xs]


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise UsageError("FileNotFound", f"no such file: {path}", path=path) from None
    except OSError as exc:
        raise UsageError("FileNotReadable", f"{path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            "MalformedJson", f"{path}: {exc.msg}", path=path, line=exc.lineno, column=exc.colno
        ) from None


def _renormalize(row: list[float]) -> list[float]:
    total = math.fsum(row)
    if total > 0 and abs(total - 1.0) <= RENORMALIZE_TOL:
        return [x / total for x in row]
    return row


def _numbers(value: Any, path: str, key: str) -> list[float]:
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise UsageError("MalformedDocument", f"{path}: '{key}' must be an array of numbers")
    return [float(x) for x in value]


def parse_documents(path: str, kind: str, renormalize: bool = False) -> Channel | Distribution:
    """Load a channel (``{"rows": [[...], ...]}``) or distribution (``{"p": [...]}``)."""
    doc = _read_json(path)
    if kind == "channel":
        if not isinstance(doc, dict) or not isinstance(doc.get("rows"), list):
            raise UsageError("MalformedDocument", f"{path}: expected an object with key 'rows'")
        rows = [_numbers(r, path, "rows") for r in doc["rows"]]
        if renormalize:
            rows = [_renormalize(r) for r in rows]
        return Channel(rows)
    if kind == "distribution":
        if not isinstance(doc, dict) or "p" not in doc:
            raise UsageError("MalformedDocument", f"{path}: expected an object with key 'p'")
        p = _numbers(doc["p"], path, "p")
        if renormalize:
            p = _renormalize(p)
        return Distribution(p)
    raise ValueError(f"unknown document kind {kind!r}")


class Units:
    def __init__(self, name: str) -> None:
        self.name = name
        self.scale = 1.0 / math.log(2.0) if name == "bits" else 1.0

    def key(self, base: str) -> str:
        return f"{base}_{self.name}"

    def __call__(self, nats: float) -> float | str:
        return fmt(nats * self.scale)


def _two_rows(ch: Channel) -> tuple[np.ndarray, np.ndarray]:
    if ch.m != 2:
        raise UsageError("NotBinaryInput", f"expected a 2-row channel, got {ch.m} rows")
    return ch.matrix[0], ch.matrix[1]


def cmd_capacity(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    r = solve.blahut_arimoto(ch, args.tol, args.max_iter)
    return {
        u.key("capacity"): u(r.capacity),
        "input": fmt_list(r.input),
        "output": fmt_list(r.output),
        "iterations": r.iterations,
        u.key("gap"): u(r.gap),
        "trivial": r.trivial,
    }


def cmd_binary_optimal(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    p1, p2 = _two_rows(ch)
    alpha, cap = solve.binary_optimal_input(p1, p2)
    return {
        "alpha_star": fmt(alpha),
        "input": fmt_list([alpha, 1.0 - alpha]),
        u.key("capacity"): u(cap),
    }


def cmd_equalizer(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    p1, p2 = _two_rows(ch)
    alpha, _ = solve.binary_optimal_input(p1, p2)
    q = alpha * p1 + (1.0 - alpha) * p2
    return {
        "alpha": fmt(alpha),
        "center": fmt_list(q),
        u.key("divergence_row0"): u(info.kl_divergence(p1, q)),
        u.key("divergence_row1"): u(info.kl_divergence(p2, q)),
        u.key("derivative_at_inv_e"): u(info.d_mutual_info_binary(INV_E, p1, p2)),
        u.key("derivative_at_threshold"): u(info.d_mutual_info_binary(THRESHOLD, p1, p2)),
    }


def cmd_cost_capacity(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    free, costly = _two_rows(ch)
    alpha, cap = solve.constrained_binary_capacity(costly, free, args.rho)
    return {
        "rho": fmt(args.rho),
        "alpha_star": fmt(alpha),
        "input": fmt_list([1.0 - alpha, alpha]),
        u.key("capacity"): u(cap),
        "constraint_active": bool(alpha == args.rho),
    }


def cmd_verify_bound(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    r = verify.verify_bound(ch, args.tol, args.max_iter)
    return {
        u.key("capacity"): u(r.capacity),
        "max_input_prob": fmt(r.max_input_prob),
        "threshold": fmt(r.threshold),
        "margin": fmt(r.margin),
        "trivial": r.trivial,
        "pass": r.passed,
    }


def cmd_construct(args, u: Units) -> dict:
    p = parse_documents(args.distribution, "distribution", args.renormalize)
    subset = None
    if args.subset is not None:
        try:
            subset = [int(s) for s in args.subset.split(",") if s.strip()]
        except ValueError:
            raise UsageError("BadSubset", f"cannot parse --subset {args.subset!r}") from None
    res = construct.construct_channel(p, subset, tol=min(args.tol, construct.DEFAULT_TOL))
    w = res.base.channel.matrix
    capacity = solve.binary_optimal_input(w[0], w[1]).capacity
    return {
        "subset": list(res.subset),
        "mass": fmt(res.mass),
        "delta": fmt(res.base.delta),
        "noisy_index": res.base.noisy_index,
        "rows": [fmt_list(r) for r in res.channel.matrix],
        u.key("mutual_information"): u(info.mutual_information(p, res.channel)),
        u.key("capacity"): u(capacity),
    }


def cmd_dual_radius(args, u: Units) -> dict:
    ch = parse_documents(args.channel, "channel", args.renormalize)
    q = parse_documents(args.distribution, "distribution", args.renormalize)
    d = info.row_divergences(ch, q)
    radius = geom.dual_radius(ch, q)
    return {
        u.key("radius"): u(radius),
        u.key("divergences"): [u(x) for x in d],
        "argmax": [int(i) for i in np.flatnonzero(d >= radius - 1e-12)],
    }


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(fmt(x)) if math.isfinite(x) else fmt(x)
    return str(x)


def cmd_ensemble(args, u: Units) -> str | dict:
    config = verify.EnsembleConfig(
        m=args.m,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        concentration=args.concentration,
        tol=args.tol,
        max_iter=args.max_iter if args.max_iter_given else verify.ENSEMBLE_MAX_ITER,
    )
    res = verify.ensemble_run(config)
    if args.summary:
        return {
            "trials": config.trials,
            "min_margin": fmt(res.min_margin),
            "max_max_input_prob": fmt(res.max_max_input_prob),
            "failures": res.failures,
            "solver_failures": res.solver_failures,
            "trivial": res.trivial,
        }
    header = ["trial", u.key("capacity"), "max_input_prob", "margin", "trivial", "pass", "error"]
    rows = (
        [
            _cell(t),
            _cell(r.capacity * u.scale),
            _cell(r.max_input_prob),
            _cell(r.margin),
            _cell(r.trivial),
            _cell(r.passed),
            _cell(r.error),
        ]
        for t, r in enumerate(res.reports)
    )
    return _csv(header, rows)


def cmd_f_surface(args, u: Units) -> str:
    grid = verify.f_surface(args.grid)
    rows = ([_cell(float(p1)), _cell(float(p2)), _cell(float(f) * u.scale)] for p1, p2, f in grid)
    return _csv(["p1", "p2", u.key("f")], rows)


COMMANDS = {
    "capacity": cmd_capacity,
    "binary-optimal": cmd_binary_optimal,
    "equalizer": cmd_equalizer,
    "cost-capacity": cmd_cost_capacity,
    "verify-bound": cmd_verify_bound,
    "ensemble": cmd_ensemble,
    "construct": cmd_construct,
    "f-surface": cmd_f_surface,
    "dual-radius": cmd_dual_radius,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("UsageError", message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=solve.DEFAULT_TOL)
    common.add_argument("--max-iter", type=int, default=None)
    common.add_argument("--units", choices=("nats", "bits"), default="nats")
    common.add_argument("--renormalize", action="store_true",
                        help=f"rescale rows whose sums are within {RENORMALIZE_TOL:g} of 1")

    parser = _Parser(prog="capbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def channel_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("channel", help='JSON file {"rows": [[...], ...]}')
        return p

    channel_cmd("capacity", "capacity by Blahut-Arimoto")
    channel_cmd("binary-optimal", "optimal input of a 2-row channel")
    channel_cmd("equalizer", "equal-divergence mixture of a 2-row channel")
    channel_cmd("cost-capacity", "capacity when row 1 costs 1 and row 0 costs 0").add_argument(
        "--rho", type=float, required=True, help="budget on the probability of row 1"
    )
    channel_cmd("verify-bound", "check max P*(x) < 1 - 1/e")

    p = sub.add_parser("dual-radius", parents=[common], help="max_x D(W[x] || Q)")
    p.add_argument("channel")
    p.add_argument("distribution", help='JSON file {"p": [...]}')

    p = sub.add_parser("construct", parents=[common], help="channel making P capacity-achieving")
    p.add_argument("distribution")
    p.add_argument("--subset", help="comma-separated symbol indices")

    p = sub.add_parser("ensemble", parents=[common], help="bound check on random channels (CSV)")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--concentration", type=float, default=1.0)
    p.add_argument("--summary", action="store_true", help="emit a JSON summary instead of CSV")

    p = sub.add_parser("f-surface", parents=[common], help="f(1/e; p1, p2) on a grid (CSV)")
    p.add_argument("--grid", type=int, default=100)
    return parser


def _emit_error(err: dict, stderr) -> None:
    stderr.write(json.dumps(err, separators=(",", ":")) + "\n")


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        args.max_iter_given = args.max_iter is not None
        if args.max_iter is None:
            args.max_iter = solve.DEFAULT_MAX_ITER
        out = COMMANDS[args.command](args, Units(args.units))
    except UsageError as exc:
        _emit_error(exc.to_dict(), stderr)
        return 2
    except CapacityError as exc:
        _emit_error(exc.to_dict(), stderr)
        return 1
    except ValueError as exc:
        _emit_error({"kind": "UsageError", "message": str(exc)}, stderr)
        return 2
    if isinstance(out, str):
        stdout.write(out)
    else:
        stdout.write(json.dumps(out, separators=(",", ":")) + "\n")
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
