"""
Command-line front door: each subcommand runs one experiment, writes its
JSON-lines trace (summary record last) and prints a human-readable summary.

Exit codes: 0 success, 1 usage error, 2 rule violation or invariant breach.
"""

import argparse
import random
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from aitgl import __version__
from aitgl.config import get_trace_dir, settings
from aitgl.enumerators.file_enumerator import FileEnumerator
from aitgl.enumerators.machine_enumerator import MachineEnumerator
from aitgl.exceptions import AitglError, DuplicateObservationError, InvariantBreach, UsageError, WrongTurnError
from aitgl.models.bitstring import StringSet, maximal_paths, width_of
from aitgl.models.experiment import (
    EnumerationRecord,
    EstimateMode,
    ExperimentConfig,
    LimitRecord,
    Player,
    SummaryRecord,
    TrimConfig,
)
from aitgl.services import complexity_probe
from aitgl.services.sweep import play_sweep
from aitgl.services.toy_machine import Dovetailer
from aitgl.services.token_labeler import TokenBoard, label_bits, label_paths
from aitgl.services.trimmer import largest_sequence, trim
from aitgl.storage.trace_store import TraceStore
from aitgl.utils.data_validator import DataValidator
from aitgl.utils.logger import logger
from aitgl.utils.run_monitor import get_run_monitor


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """argparse that reports bad flags as UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message)


def _show(x: str) -> str:
    return x or "Λ"


def _show_set(strings: Sequence[str]) -> str:
    return "{" + ",".join(_show(x) for x in strings) + "}"


def _config(args: argparse.Namespace, **fields: Any) -> ExperimentConfig:
    fields.setdefault("seed", args.seed)
    try:
        return ExperimentConfig(command=args.command, out=args.out, **fields)
    except ValidationError as e:
        first = e.errors()[0]
        flag = "--" + str(first["loc"][0]).replace("_", "-") if first["loc"] else None
        raise UsageError(first["msg"], flag)


def cmd_enumerate(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    _config(args, k=args.k, budget=args.budget, max_len=args.max_len)
    discoveries = list(Dovetailer(args.k, budget=args.budget, max_len=args.max_len).discoveries())
    s = StringSet(d.string for d in discoveries)
    records: List[Any] = [
        EnumerationRecord(round=d.round, s=d.string, len=len(d.string), program=d.program)
        for d in discoveries
    ]
    summary = {
        "k": args.k,
        "budget": args.budget,
        "max_len": args.max_len,
        "size": len(s),
        "width": width_of(s),
        "members": s.shortlex(),
    }
    records.append(SummaryRecord(command="enumerate", data=summary))
    store.write("enumerate", records)
    TraceStore.write_string_set(store.directory / "enumerate_S.json", s)
    print(f"S(k={args.k}, budget={args.budget}, max_len={args.max_len}) = {_show_set(s.shortlex())}")
    print(f"|S| = {len(s)}, width = {width_of(s)}")
    return summary


def _trim_source(args: argparse.Namespace):
    if (args.from_machine is None) == (args.from_file is None):
        raise UsageError("give exactly one of --from-machine K or --from-file PATH", "--from-machine")
    if args.from_machine is not None:
        return MachineEnumerator(args.from_machine, max_len=args.depth, horizon=args.horizon, budget=args.budget)
    return FileEnumerator(args.from_file)


def cmd_trim(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    _config(args, k=args.from_machine, w=args.w, depth=args.depth, horizon=args.horizon, budget=args.budget)
    cfg = TrimConfig(w=args.w, depth=args.depth, horizon=args.horizon)
    source = _trim_source(args)
    result = trim(source, cfg)

    records: List[Any] = list(result.decisions)
    if args.limit_trace:
        records.extend(
            LimitRecord(step=j, size=len(r), members=r.shortlex()) for j, r in largest_sequence(source, cfg)
        )
    summary = {
        "w": cfg.w,
        "depth": cfg.depth,
        "horizon": cfg.horizon,
        "source": source.name,
        "S": result.s_final.shortlex(),
        "T": result.t.shortlex(),
        "rejected": len(result.rejected),
    }
    records.append(SummaryRecord(command="trim", data=summary))
    store.write("trim", records)
    TraceStore.write_string_set(store.directory / "trim_T.json", result.t)
    print(f"S_{cfg.horizon} = {_show_set(result.s_final.shortlex())}")
    print(f"T(w={cfg.w}, depth={cfg.depth}) = {_show_set(result.t.shortlex())}")
    return summary


def _ordered(strings: List[str], order: str, seed: Optional[int]) -> List[str]:
    if order == "shortlex":
        return StringSet(strings).shortlex()
    if order == "shuffle":
        shuffled = list(strings)
        random.Random(seed).shuffle(shuffled)
        return shuffled
    return list(strings)


def cmd_tokens(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    order, seed = DataValidator.validate_order_spec(args.order)
    strings = [r["s"] for r in TraceStore.read_string_records(args.input)]
    t = StringSet(strings)
    w = args.w if args.w is not None else max(width_of(t), 1)
    depth = args.depth if args.depth is not None else max(t.max_length(), 0)
    _config(args, w=w, depth=depth, seed=seed if seed is not None else args.seed)

    board = TokenBoard(w=w)
    for x in _ordered(strings, order, seed):
        board.observe(x)
        board.check_invariants()
    labels = {
        path.end: token
        for path in maximal_paths(t, depth)
        for y, token in board.distinguished.items()
        if y == path.end
    }
    summary = {
        "w": w,
        "depth": depth,
        "order": args.order,
        "tokens_used": board.tokens_used,
        "labels": labels,
        "decoded": {str(i): board.decode_path(i, depth) for i in range(1, board.tokens_used + 1)},
    }
    store.write("tokens", list(board.events) + [SummaryRecord(command="tokens", data=summary)])
    print(f"Observed {len(strings)} strings with {board.tokens_used} tokens (capacity {w})")
    for i in range(1, board.tokens_used + 1):
        print(f"  token {i}: {_show(board.position(i))}")
    return summary


def cmd_play(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    bob_spec = DataValidator.validate_bob_spec(args.bob)
    kind, _, arg = bob_spec.partition(":")
    f_m = int(arg) if kind == "blind" else None
    for w in args.w:
        _config(args, w=w, horizon=args.horizon, depth=args.depth, jobs=args.jobs, f_m=f_m)
    first = Player.ALICE if args.first == "alice" else Player.BOB
    traces = play_sweep(args.w, bob_spec, args.horizon, jobs=args.jobs, first=first, depth=args.depth, budget=args.budget)

    summary: Dict[str, Any] = {"bob": bob_spec, "horizon": args.horizon, "games": {}}
    for trace in traces:
        game = {
            "coincidence": trace.coincidence,
            "consistent_to": trace.diagnostic.consistent_to,
            "non_red_count": trace.diagnostic.non_red_count,
        }
        summary["games"][str(trace.w)] = game
        name = "play" if len(traces) == 1 else f"play_w{trace.w}"
        store.write(name, list(trace.moves) + [trace.diagnostic, SummaryRecord(command="play", data={"w": trace.w, **game})])
        print(
            f"w={trace.w} vs {bob_spec}: coincidence={trace.coincidence}, "
            f"consistent_to={trace.diagnostic.consistent_to}, non_red={trace.diagnostic.non_red_count}"
        )
    return summary


def cmd_estimate(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    mode = EstimateMode(args.mode)
    budget = args.budget
    if mode is EstimateMode.MINF_STR:
        if args.x is None:
            raise UsageError("Minf-str needs --x", "--x")
        x = DataValidator.clean_bitstring(args.x, "--x")
        n_hi = args.n_hi if args.n_hi is not None else max(len(x), 1) * 2
        k_max = args.k_max if args.k_max is not None else complexity_probe.default_k_max(len(x))
        _config(args, n_hi=n_hi, k_max=k_max, budget=budget)
        try:
            estimate = complexity_probe.estimate_Minf_string(x, n_hi, k_max, budget)
        except ValueError as e:
            raise UsageError(str(e), "--n-hi")
    else:
        spec = DataValidator.validate_sequence_spec(args.seq)
        chain = None
        if spec.startswith("game-trace:"):
            chain = TraceStore.read_diagnostic_chain(spec.partition(":")[2])
            if not chain:
                raise UsageError(f"{spec} holds no diagnostic chain", "--seq")
        seq = complexity_probe.build_sequence(spec, chain)
        n_hi = args.n_hi if args.n_hi is not None else (len(chain) - 1 if chain else 8)
        n_lo = args.n_lo if args.n_lo is not None else 1
        DataValidator.validate_window(n_lo, n_hi)
        if chain is not None and n_hi > len(chain) - 1:
            raise UsageError(f"the chain only reaches length {len(chain) - 1}", "--n-hi")
        k_max = args.k_max if args.k_max is not None else complexity_probe.default_k_max(n_hi)
        _config(args, n_lo=n_lo, n_hi=n_hi, k_max=k_max, budget=budget)
        if mode is EstimateMode.M:
            estimate = complexity_probe.estimate_M(seq, n_hi, k_max, budget)
        elif mode is EstimateMode.MINF_SEQ:
            estimate = complexity_probe.estimate_Minf_seq(seq, n_lo, n_hi, k_max, budget)
        elif mode is EstimateMode.C_SEQ:
            estimate = complexity_probe.estimate_C_seq(seq, n_hi, k_max, budget)
        else:
            estimate = complexity_probe.estimate_Cinf_seq(seq, n_lo, n_hi, k_max, budget)

    summary = estimate.model_dump(mode="json")
    store.write("estimate", [estimate, SummaryRecord(command="estimate", data=summary)])
    shown = "none" if estimate.value is None else estimate.value
    print(f"{mode.value} over {list(estimate.n_range)}: {shown} (witness {estimate.witness}, n={estimate.n})")
    return summary


def cmd_label(args: argparse.Namespace, store: TraceStore) -> Dict[str, Any]:
    w = args.w if args.w is not None else 2 ** (args.k + 1) - 1
    _config(args, k=args.k, w=w, depth=args.depth, horizon=args.horizon, budget=args.budget)
    cfg = TrimConfig(w=w, depth=args.depth, horizon=args.horizon)
    source = MachineEnumerator(args.k, max_len=args.depth, horizon=args.horizon, budget=args.budget)
    result = trim(source, cfg)
    labels = label_paths(result.t, w, args.depth)
    board = TokenBoard(w=w)
    for x in result.t.shortlex():
        board.observe(x)
    summary = {
        "k": args.k,
        "w": w,
        "depth": args.depth,
        "bits": label_bits(w),
        "T": result.t.shortlex(),
        "labels": labels,
    }
    store.write("label", list(board.events) + [SummaryRecord(command="label", data=summary)])
    print(f"T has {len(labels)} maximal paths, labelled with {label_bits(w)} bits (w={w})")
    for end, token in labels.items():
        print(f"  token {token}: {_show(end)}")
    return summary


COMMANDS: Dict[str, Callable[[argparse.Namespace, TraceStore], Dict[str, Any]]] = {
    "enumerate": cmd_enumerate,
    "trim": cmd_trim,
    "tokens": cmd_tokens,
    "play": cmd_play,
    "estimate": cmd_estimate,
    "label": cmd_label,
}


def build_parser() -> argparse.ArgumentParser:
    parser = WorkbenchArgumentParser(
        prog="aitgl", description="Finite-scale workbench for leafless sets, token labelling and the painting game"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="Trace directory (AITGL_TRACE_DIR wins)")
    common.add_argument("--seed", type=int, default=settings.default_seed, help="Seed for shuffled orders")
    common.add_argument("--budget", type=int, default=settings.default_budget, help="Step budget per run")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=WorkbenchArgumentParser)

    p = sub.add_parser("enumerate", parents=[common], help="Enumerate S = {x : C(x|l(x)) <= k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)

    p = sub.add_parser("trim", parents=[common], help="Trim S to the largest acceptable leafless set")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--from-machine", type=int, default=None, metavar="K")
    p.add_argument("--from-file", default=None, metavar="PATH")
    p.add_argument("--limit-trace", action="store_true", help="Also record the largest acceptable set per snapshot")

    p = sub.add_parser("tokens", parents=[common], help="Replay a set through the token board")
    p.add_argument("--input", required=True)
    p.add_argument("--order", default="shortlex", help="shortlex | file | shuffle:SEED")
    p.add_argument("--w", type=int, default=None, help="Token capacity (default: width of the input)")
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("play", parents=[common], help="Play Alice's w-strategy against a Bob")
    p.add_argument("--w", type=int, nargs="+", required=True)
    p.add_argument("--bob", required=True, help="pass | copycat | chaser | blind:F | random:SEED | script:a,b | file:PATH")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--first", choices=["alice", "bob"], default="alice")
    p.add_argument("--depth", type=int, default=None, help="Diagnostic depth (default: deepest green string)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("estimate", parents=[common], help="Budgeted complexity estimates")
    p.add_argument("--seq", default="zeros", help="zeros | ones | alt | game-trace:FILE")
    p.add_argument("--mode", choices=[m.value for m in EstimateMode], required=True)
    p.add_argument("--x", default=None, help="String for Minf-str")
    p.add_argument("--n-lo", type=int, default=None)
    p.add_argument("--n-hi", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)

    p = sub.add_parser("label", parents=[common], help="Enumerate, trim and label the paths of T")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--w", type=int, default=None, help="Width bound (default 2^(k+1) - 1)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    monitor = get_run_monitor()
    run = None
    try:
        args = build_parser().parse_args(argv)
        store = TraceStore(get_trace_dir(args.out))
        run = monitor.start(args.command)
        COMMANDS[args.command](args, store)
        monitor.finish(run, records=store.records_written)
        logger.debug(f"Session metrics: {monitor.get_summary()}")
        print(f"Traces in {store.directory} ({monitor.format_duration(run.duration_seconds)})")
        return 0
    except (UsageError, DuplicateObservationError, ValueError, OSError) as e:
        logger.error(f"Usage error: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        code = 1
    except (InvariantBreach, WrongTurnError) as e:
        logger.error(f"Invariant breach: {str(e)}")
        print(f"breach: {str(e)}", file=sys.stderr)
        code = 2
    except AitglError as e:
        logger.error(f"Workbench error: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        code = 2
    if run is not None:
        monitor.finish(run, error=RuntimeError(f"exit {code}"))
    return code


if __name__ == "__main__":
    sys.exit(main())
