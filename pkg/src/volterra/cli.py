"""Command-line interface.

Exit codes follow a CI-friendly contract: 0 for a decided verdict (or a clean
report), 2 for Inconclusive results, 1 for usage errors and ground-truth
disagreements.  All output is deterministic; the ``VOLTERRA_WORKERS``
environment variable selects the worker count for report rows and has no
effect on the bytes produced.

A config file (``--config``) may preset any long option of the chosen
subcommand, one ``key = value`` pair per line with ``#`` comments; explicit
command-line flags win over file values.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import HypothesisError, UnknownSymbolError, VolterraError
from .criteria import LadderConfig, classify
from .estimation import (compactness_probe, lower_bound_details, tg_min_upper_bound,
                         tg_upper_bound)
from .operators import OperatorKind
from .report import ReportConfig, build_report, report_exit_code, to_csv, to_json, to_text
from .sector import SectorParams, build_sector_map, estimate_density_bound
from .spaces import SpacePair, bloch_norm, weighted_sup_details
from .symbols import get_symbol, ground_truth_table, registry


def _positive_power_of_two(value: str) -> int:
    n = int(value)
    if n < 64 or (n & (n - 1)) != 0:
        raise argparse.ArgumentTypeError("angle count must be a power of two, at least 64")
    return n


def _nonnegative(value: str) -> float:
    x = float(value)
    if x < 0:
        raise argparse.ArgumentTypeError("weight exponents must be nonnegative")
    return x


def _kmax(value: str) -> int:
    k = int(value)
    if not (4 <= k <= 40):
        raise argparse.ArgumentTypeError("kmax must lie in [4, 40]")
    return k


def _operator(value: str) -> OperatorKind:
    try:
        return OperatorKind(value)
    except ValueError:
        raise argparse.ArgumentTypeError("operator must be Tg or Sg") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volterra",
        description="Boundedness/compactness classification of Volterra-type "
                    "integral operators on weighted disk spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", type=Path, default=None,
                       help="key = value file presetting these options")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--output", type=Path, default=None)

    p = sub.add_parser("classify", help="classify one (symbol, operator, alpha, beta) cell")
    p.add_argument("--symbol", required=True)
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("--alpha", type=_nonnegative, required=True)
    p.add_argument("--beta", type=_nonnegative, required=True)
    p.add_argument("--kmax", type=_kmax, default=40)
    p.add_argument("--angles", type=_positive_power_of_two, default=512)
    add_common(p)

    p = sub.add_parser("report", help="classify and probe the whole ground-truth table")
    p.add_argument("--kmax", type=_kmax, default=40)
    p.add_argument("--angles", type=_positive_power_of_two, default=512)
    p.add_argument("--degree", type=int, default=256)
    p.add_argument("--probe-nmax", type=int, default=64)
    add_common(p)

    p = sub.add_parser("norm", help="weighted sup-norm of a registry symbol")
    p.add_argument("--symbol", required=True)
    p.add_argument("--alpha", type=_nonnegative, required=True)
    p.add_argument("--of", choices=("g", "gprime"), default="g")
    p.add_argument("--bloch", action="store_true", help="also print the Bloch norm")
    add_common(p)

    p = sub.add_parser("opnorm", help="empirical lower / split upper operator-norm bounds")
    p.add_argument("--symbol", required=True)
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("--alpha", type=_nonnegative, required=True)
    p.add_argument("--beta", type=_nonnegative, required=True)
    p.add_argument("--t0", type=float, default=None,
                   help="cut rung for the split bound (default: best over the schedule)")
    add_common(p)

    p = sub.add_parser("probe", help="weakly-null compactness probe trace")
    p.add_argument("--symbol", required=True)
    p.add_argument("--op", type=_operator, required=True)
    p.add_argument("--alpha", type=_nonnegative, required=True)
    p.add_argument("--beta", type=_nonnegative, required=True)
    p.add_argument("--nmax", type=int, default=64)
    add_common(p)

    p = sub.add_parser("lemma2", help="validate the sector-map density bound")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--theta-count", type=int, default=8)
    p.add_argument("--samples", type=str, default="1000,10000,100000")
    add_common(p)

    p = sub.add_parser("list", help="registry symbols, metadata, ground-truth rows")
    add_common(p)
    return parser


def _apply_config_file(parser, argv):
    """Let a config file preset defaults; explicit flags still win."""
    if "--config" not in argv:
        return
    path = Path(argv[argv.index("--config") + 1])
    presets = {}
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        presets[key.replace("-", "_")] = value
    for action_group in parser._subparsers._group_actions:
        for sub_parser in action_group.choices.values():
            known = {a.dest: a for a in sub_parser._actions}
            coerced = {}
            for key, raw in presets.items():
                if key in known and known[key].dest != "config":
                    action = known[key]
                    if action.type is not None:
                        coerced[key] = action.type(raw)
                    elif isinstance(action.default, bool):
                        coerced[key] = raw.lower() in ("1", "true", "yes")
                    else:
                        coerced[key] = raw
            if coerced:
                sub_parser.set_defaults(**coerced)


def _emit(payload: str, output) -> None:
    if output is not None:
        Path(output).write_text(payload)
    else:
        sys.stdout.write(payload)


def _verdict_line(name, v) -> str:
    extra = f" value={v.value:.9g}" if v.value is not None else ""
    tail = f" ({v.reason})" if v.reason else ""
    return f"{name}: {v.tag.value}{extra}  [{', '.join(v.evidence)}]{tail}"


def cmd_classify(args) -> int:
    symbol = get_symbol(args.symbol)
    cfg = LadderConfig(k_max=args.kmax, n_angles=args.angles)
    rep = classify(symbol, args.op, SpacePair(args.alpha, args.beta), cfg)
    if args.format == "json":
        payload = json.dumps({
            "symbol": rep.symbol, "op": rep.operator.value,
            "alpha": rep.alpha, "beta": rep.beta,
            "boundedness": {"tag": rep.boundedness.tag.value, "value": rep.boundedness.value,
                            "evidence": list(rep.boundedness.evidence),
                            "reason": rep.boundedness.reason},
            "compactness": {"tag": rep.compactness.tag.value, "value": rep.compactness.value,
                            "evidence": list(rep.compactness.evidence),
                            "reason": rep.compactness.reason},
            "cross_check_agreement": rep.cross_check_agreement,
            "notes": list(rep.notes),
        }, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{rep.symbol}  {rep.operator.value}  alpha={rep.alpha:g} beta={rep.beta:g}",
                 _verdict_line("boundedness", rep.boundedness),
                 _verdict_line("compactness", rep.compactness),
                 f"cross-check agreement: {rep.cross_check_agreement}"]
        lines.extend(f"note: {n}" for n in rep.notes)
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.output)
    return 2 if not (rep.boundedness.decided and rep.compactness.decided) else 0


def cmd_report(args) -> int:
    cfg = ReportConfig(k_max=args.kmax, n_angles=args.angles,
                       degree=args.degree, probe_n_max=args.probe_nmax)
    doc = build_report(cfg)
    if args.format == "json":
        payload = to_json(doc)
    elif args.format == "csv":
        payload = to_csv(doc)
    else:
        payload = to_text(doc)
    _emit(payload, args.output)
    return report_exit_code(doc)


def cmd_norm(args) -> int:
    symbol = get_symbol(args.symbol)
    handle = symbol.handle() if args.of == "g" else symbol.deriv_handle()
    detail = weighted_sup_details(handle, args.alpha)
    lines = [f"weighted sup-norm of {args.of}({args.symbol}) at alpha={args.alpha:g}: "
             f"{detail.value:.12g}",
             f"arg-max z = {detail.argmax.real:.9g}{detail.argmax.imag:+.9g}i"
             f"{'  [divergent]' if detail.divergent else ''}"]
    if args.bloch:
        lines.append(f"bloch norm: {bloch_norm(handle):.12g}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_opnorm(args) -> int:
    symbol = get_symbol(args.symbol)
    pair = SpacePair(args.alpha, args.beta)
    lower = lower_bound_details(symbol, args.op, pair)
    lines = [f"empirical lower bound: {lower.value:.9g}  (witness {lower.best_label})"]
    if args.op is OperatorKind.Tg:
        try:
            if args.t0 is not None:
                upper = tg_upper_bound(symbol, pair, args.t0)
                lines.append(f"split upper bound at t0={args.t0:g}: {upper:.9g}")
            else:
                upper, t0 = tg_min_upper_bound(symbol, pair)
                lines.append(f"split upper bound: {upper:.9g}  (cut t0={t0:g})")
        except HypothesisError as exc:
            lines.append(f"split upper bound: not available ({exc})")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_probe(args) -> int:
    symbol = get_symbol(args.symbol)
    trace = compactness_probe(symbol, args.op, SpacePair(args.alpha, args.beta), args.nmax)
    if args.format == "json":
        payload = json.dumps({
            "symbol": args.symbol, "op": args.op.value,
            "alpha": args.alpha, "beta": args.beta,
            "indices": list(trace.indices), "values": list(trace.values),
            "decay_exponent": trace.decay_exponent,
        }, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        rows = ["n,value"] + [f"{n},{v!r}" for n, v in zip(trace.indices, trace.values)]
        payload = "\n".join(rows) + "\n"
    else:
        payload = (f"probe {args.symbol} {args.op.value} alpha={args.alpha:g} "
                   f"beta={args.beta:g}: final={trace.final_value:.6g} "
                   f"decay exponent={trace.decay_exponent:.4f}\n")
    _emit(payload, args.output)
    return 0


def cmd_lemma2(args) -> int:
    if not (0.0 < args.gamma < args.eta < math.pi):
        sys.stderr.write("error: need 0 < gamma < eta < pi\n")
        return 1
    sizes = [int(s) for s in args.samples.split(",")]
    smap = build_sector_map(SectorParams(eta=args.eta))
    approach = smap.vertex_residuals()[-1]
    estimates = [estimate_density_bound(args.gamma, args.eta, n) for n in sizes]
    thetas = [2.0 * math.pi * j / args.theta_count for j in range(args.theta_count)]
    sweep = [estimate_density_bound(args.gamma, args.eta, sizes[0], theta=t) for t in thetas]
    sweep_dev = max(sweep) - min(sweep)
    lines = [f"center residual: {smap.center_residual:.3e}",
             f"vertex solve residual: {smap.vertex_solve_residual:.3e}",
             f"vertex approach residual at 1e-6: {approach:.3e}"]
    for n, est in zip(sizes, estimates):
        lines.append(f"density bound estimate at {n} samples: {est:.9f}")
    lines.append(f"rotation sweep deviation over {args.theta_count} angles: {sweep_dev:.3e}")
    monotone = all(a <= b + 1e-12 for a, b in zip(estimates, estimates[1:]))
    bounded = all(math.isfinite(e) for e in estimates)
    ok = (smap.center_residual < 1e-10 and smap.vertex_solve_residual < 1e-10
          and approach < 1e-3 and monotone and bounded)
    lines.append(f"status: {'ok' if ok else 'FAILED'}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0 if ok else 1


def cmd_list(args) -> int:
    doc = {
        "symbols": [{
            "name": s.name,
            "metadata": {
                "is_zero": s.metadata.is_zero,
                "univalent": s.metadata.univalent,
                "log_deriv_bloch": s.metadata.log_deriv_bloch,
                "log_symbol_bloch": s.metadata.log_symbol_bloch,
                "note": s.metadata.note,
            },
        } for s in registry()],
        "ground_truth": [{
            "symbol": r.symbol, "op": r.operator.value,
            "alpha": r.alpha, "beta": r.beta,
            "boundedness": r.boundedness, "compactness": r.compactness,
            "value": r.value, "value_tol": r.value_tol,
            "justification": r.justification,
        } for r in ground_truth_table()],
    }
    if args.format in ("json", "csv"):
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{s['name']:<10} zero={s['metadata']['is_zero']} "
                 f"univalent={s['metadata']['univalent']} "
                 f"log_deriv_bloch={s['metadata']['log_deriv_bloch']} "
                 f"log_symbol_bloch={s['metadata']['log_symbol_bloch']}"
                 for s in doc["symbols"]]
        lines.append(f"{len(doc['ground_truth'])} ground-truth rows")
        payload = "\n".join(lines) + "\n"
    _emit(payload, args.output)
    return 0


_COMMANDS = {
    "classify": cmd_classify,
    "report": cmd_report,
    "norm": cmd_norm,
    "opnorm": cmd_opnorm,
    "probe": cmd_probe,
    "lemma2": cmd_lemma2,
    "list": cmd_list,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reserves 2 for usage errors; our exit-code contract uses 1
        # for errors and 2 for Inconclusive verdicts
        code = int(exc.code or 0)
        return 1 if code == 2 else code
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UnknownSymbolError as exc:
        sys.stderr.write(f"error: unknown symbol {exc}\n")
        return 1
    except (VolterraError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
