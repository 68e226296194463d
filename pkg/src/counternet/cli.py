"""Command-line front end.

Machines are referenced as `path.cn` (single-machine file), `path.cn:name`,
or `zoo:<entry>` for the built-in families: zoo:P, zoo:fig1.main,
zoo:fig1.b1, zoo:fig1.b2, zoo:fig1.product, zoo:Lk.dcn, zoo:Lk.ncn,
zoo:Hk, zoo:PkConj (with --k), zoo:coarse.b, zoo:coarse.c.  Word
generators are spelled `--box family:args` or via the shorthands
--max-len and --segmented-box.

Exit codes: 0 for positive verdicts (accept, equal, no violations),
1 for negative ones (reject, counterexample, exhausted), 2 for usage or
input errors.  --exit-zero forces 0 on negative verdicts; --json emits a
report with stable keys {command, verdict, counterexample, stats}.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional, Sequence

from . import analysis, constructions, fileformat, vas, zoo
from .core import CounterNet, Vector, Word, accepts, enumerate_accepting_runs


class CliError(Exception):
    """Usage or input problem; maps to exit code 2."""


# ---------------------------------------------------------------------------
# machine references

def _zoo_entry(token: str, k: Optional[int]) -> CounterNet:
    def need_k(default: Optional[int] = None) -> int:
        if k is not None:
            return k
        if default is not None:
            return default
        raise CliError(f"zoo:{token} needs --k")

    m = re.fullmatch(r"L(\d*)k?\.(dcn|ncn)", token)
    if m:
        kk = int(m.group(1)) if m.group(1) else need_k()
        return zoo.build_selector_dcn(kk) if m.group(2) == "dcn" else zoo.build_selector_ncn(kk)
    m = re.fullmatch(r"H(\d*)k?", token)
    if m:
        return zoo.build_paired_dcn(int(m.group(1)) if m.group(1) else need_k())
    m = re.fullmatch(r"P(\d*)kConj|PkConj", token)
    if token == "PkConj" or (m and m.group(1)):
        kk = int(m.group(1)) if m and m.group(1) else need_k()
        return zoo.build_partition_k(kk)
    if token == "P":
        return zoo.build_partition_net()
    if token.startswith("fig1"):
        main, b1, b2 = zoo.build_shared_budget()
        sub = token[len("fig1"):]
        if sub in ("", ".main"):
            return main
        if sub == ".b1":
            return b1
        if sub == ".b2":
            return b2
        if sub == ".product":
            return constructions.product(b1, b2)
        raise CliError(f"unknown fig1 member {sub!r}")
    if token.startswith("coarse"):
        cb, cc = zoo.build_coarse_factors()
        if token == "coarse.b":
            return cb
        if token == "coarse.c":
            return cc
        raise CliError("coarse members are coarse.b and coarse.c")
    raise CliError(f"unknown zoo entry {token!r}")


def _resolve(ref: str, k: Optional[int]) -> CounterNet:
    if ref.startswith("zoo:"):
        return _zoo_entry(ref[len("zoo:"):], k)
    path, _, name = ref.partition(":")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        nets = fileformat.parse_machine_file(text)
    except fileformat.MachineFileError as exc:
        raise CliError(f"{path}: {exc}")
    if not nets:
        raise CliError(f"{path} defines no machines")
    if not name:
        if len(nets) > 1:
            names = ", ".join(n.name for n in nets)
            raise CliError(f"{path} defines several machines ({names}); use {path}:<name>")
        return nets[0]
    matches = [n for n in nets if n.name == name]
    if not matches:
        raise CliError(f"{path} has no machine named {name!r}")
    if len(matches) > 1:
        raise CliError(f"{path} defines {name!r} more than once")
    return matches[0]


# ---------------------------------------------------------------------------
# words and boxes

def render_word_text(word: Word) -> str:
    """Inverse of parse_word where possible: runs of a letter become
    tok^N.  Letters containing '^' are joined bare and flagged by the
    caller if round-tripping matters."""
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        if n > 1 and "^" not in word[i]:
            parts.append(f"{word[i]}^{n}")
        else:
            parts.extend(word[i:j])
        i = j
    return " ".join(parts)


def _parse_box(text: str):
    fam, _, rest = text.partition(":")
    args = [a for a in rest.split(",") if a]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise CliError(f"box arguments must be integers: {text!r}")

    def arity(*allowed: int) -> None:
        if len(nums) not in allowed:
            raise CliError(f"box {fam} takes {allowed} arguments, got {len(nums)}")

    if fam == "words":
        arity(1)
        return ("words", nums[0])
    if fam == "segmented":
        arity(2, 4)
        if len(nums) == 2:
            return analysis.segmented_box(nums[0], nums[1])
        return analysis.segmented_box(nums[0], nums[1], nums[2], nums[3])
    if fam == "triple":
        arity(1)
        return analysis.triple_box(nums[0])
    if fam == "selector":
        arity(2, 3)
        return analysis.selector_box(*nums)
    if fam == "paired":
        arity(2)
        return analysis.paired_box(nums[0], nums[1])
    raise CliError(f"unknown box family {fam!r}")


def _generator_for(args, nets: Sequence[CounterNet]):
    picks = [x for x in (args.max_len is not None, args.segmented_box is not None,
                         args.box is not None) if x]
    if len(picks) != 1:
        raise CliError("choose exactly one of --max-len, --segmented-box, --box")
    if args.max_len is not None:
        alphabets = {n.alphabet for n in nets}
        if len(alphabets) != 1:
            raise CliError("--max-len needs machines over a common alphabet")
        return analysis.all_words(nets[0].alphabet, args.max_len)
    if args.segmented_box is not None:
        return analysis.segmented_box(3, args.segmented_box)
    box = _parse_box(args.box)
    if isinstance(box, tuple):  # ("words", L)
        alphabets = {n.alphabet for n in nets}
        if len(alphabets) != 1:
            raise CliError("--box words needs machines over a common alphabet")
        return analysis.all_words(nets[0].alphabet, box[1])
    return box


def _parse_initial(text: Optional[str], dim: int) -> Optional[Vector]:
    if text is None:
        return None
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"--initial must be comma-separated integers: {text!r}")
    if len(vec) != dim:
        raise CliError(f"--initial has {len(vec)} components, machine has {dim}")
    return vec


def _emit_nets(nets: list[CounterNet], out: Optional[str], extra_comment: str = "") -> str:
    text = fileformat.emit_machine_file(nets)
    if extra_comment:
        text = f"; {extra_comment}\n" + text
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {out}"
    return text


# ---------------------------------------------------------------------------
# command handlers: each returns (verdict, counterexample word | None, stats, text)

def _cmd_check(args) -> tuple[str, Optional[Word], dict, str]:
    net = _resolve(args.machine, args.k)
    word = fileformat.parse_word(args.word)
    initial = _parse_initial(args.initial, net.dimension)
    verdict = "accept" if accepts(net, word, initial=initial) else "reject"
    stats = {"machine": args.machine, "word": args.word, "initial": args.initial,
             "length": len(word)}
    return verdict, None, stats, f"{verdict}: {render_word_text(word) or '(empty)'}"


def _comparison_text(report: analysis.ComparisonReport) -> str:
    if report.verdict == "equal":
        return f"equal ({report.checked} prefixes/words checked)"
    if report.verdict == "exhausted":
        return f"exhausted after {report.checked} nodes, no verdict"
    side = "first accepts" if report.verdict == "left-only" else "second accepts"
    word = render_word_text(report.counterexample) or "(empty)"
    return f"{report.verdict}: {side} {word!r}, the other rejects"


def _cmd_eq(args) -> tuple[str, Optional[Word], dict, str]:
    a = _resolve(args.left, args.k)
    b = _resolve(args.right, args.k)
    gen = _generator_for(args, [a, b])
    report = analysis.bounded_compare(a, b, gen)
    stats = {"left": args.left, "right": args.right, "checked": report.checked}
    verdict = report.verdict
    return verdict, report.counterexample, stats, _comparison_text(report)


def _cmd_product(args) -> tuple[str, Optional[Word], dict, str]:
    net = constructions.product(_resolve(args.left, args.k), _resolve(args.right, args.k))
    text = _emit_nets([net], args.out)
    return "ok", None, {"states": len(net.states), "dimension": net.dimension}, text


def _cmd_project(args) -> tuple[str, Optional[Word], dict, str]:
    net = constructions.project(_resolve(args.machine, args.k), args.counter)
    text = _emit_nets([net], args.out)
    return "ok", None, {"states": len(net.states), "dimension": net.dimension}, text


def _cmd_union(args) -> tuple[str, Optional[Word], dict, str]:
    net = constructions.union(_resolve(args.left, args.k), _resolve(args.right, args.k))
    text = _emit_nets([net], args.out)
    return "ok", None, {"states": len(net.states), "dimension": net.dimension}, text


def _cmd_lift(args) -> tuple[str, Optional[Word], dict, str]:
    placement = None
    if args.placement:
        try:
            placement = tuple(int(x) for x in args.placement.split(","))
        except ValueError:
            raise CliError("--placement must be comma-separated coordinates")
    net = constructions.lift(_resolve(args.machine, args.k), args.dim, placement)
    text = _emit_nets([net], args.out)
    return "ok", None, {"states": len(net.states), "dimension": net.dimension}, text


def _cmd_vasify(args) -> tuple[str, Optional[Word], dict, str]:
    net = _resolve(args.machine, args.k)
    labels = vas.distinct_label(net)
    result = vas.vasify(labels.net)
    comment = "initial counters: " + " ".join(str(x) for x in result.initial)
    text = _emit_nets([result.net], args.out, extra_comment=comment)
    stats = {"dimension": result.net.dimension,
             "letters": len(result.net.alphabet),
             "initial": list(result.initial)}
    verdict = "ok"
    lines = [text]
    if args.report:
        report = vas.verify_pipeline(net, max_len=args.max_len or 6)
        stats.update({
            "labelled_matches": report.labelled_matches,
            "containment_ok": report.containment_ok,
            "gating_ok": report.gating_ok,
            "gating_violations": report.gating_violations,
            "extra_members": report.extra_count,
            **report.stats,
        })
        verdict = "ok" if (report.labelled_matches and report.containment_ok
                           and report.gating_ok) else "violations"
        lines.append(f"label stage: {'ok' if report.labelled_matches else 'MISMATCH'}")
        lines.append(f"protocol containment: {'ok' if report.containment_ok else 'MISMATCH'}")
        lines.append(f"gating: {'ok' if report.gating_ok else f'{report.gating_violations} violations'}")
        lines.append(f"extra flat-language members (expected): {report.extra_count}, "
                     f"e.g. {[render_word_text(w) or '(empty)' for w in report.extra_members[:3]]}")
    return verdict, None, stats, "\n".join(lines)


def _cmd_reduce(args) -> tuple[str, Optional[Word], dict, str]:
    net = constructions.build_reduction(_resolve(args.left, args.k),
                                        _resolve(args.right, args.k))
    text = _emit_nets([net], args.out)
    return "ok", None, {"states": len(net.states), "dimension": net.dimension}, text


_ZOO_EMIT = {
    "P": lambda k: [zoo.build_partition_net()],
    "fig1": lambda k: list(zoo.build_shared_budget()),
    "Lk": lambda k: [zoo.build_selector_dcn(k), zoo.build_selector_ncn(k)],
    "Hk": lambda k: [zoo.build_paired_dcn(k)],
    "PkConj": lambda k: [zoo.build_partition_k(k)],
    "coarse": lambda k: list(zoo.build_coarse_factors()),
}


def _cmd_zoo(args) -> tuple[str, Optional[Word], dict, str]:
    if args.family not in _ZOO_EMIT:
        raise CliError(f"unknown zoo family {args.family!r}")
    needs_k = args.family in ("Lk", "Hk", "PkConj")
    if needs_k and args.k is None:
        raise CliError(f"zoo {args.family} needs --k")
    nets = _ZOO_EMIT[args.family](args.k)
    stats = {"family": args.family, "k": args.k,
             "machines": [n.name for n in nets]}
    if args.emit or args.out:
        return "ok", None, stats, _emit_nets(nets, args.out)
    lines = [f"{n.name}: dim {n.dimension}, {len(n.states)} states, "
             f"{len(n.transitions)} transitions" for n in nets]
    return "ok", None, stats, "\n".join(lines)


def _cmd_decompose_check(args) -> tuple[str, Optional[Word], dict, str]:
    target = _resolve(args.target, args.k)
    factors = [_resolve(f, args.k) for f in args.factors]
    gen = _generator_for(args, [target, *factors])
    report = analysis.check_decomposition(target, factors, gen)
    stats = {"target": args.target, "factors": args.factors, "checked": report.checked}
    verdict = report.verdict if report.verdict in ("equal", "exhausted") else "counterexample"
    if verdict == "counterexample":
        # walk reports sides as left (target) / right (factor intersection)
        side = ("target accepts, factor intersection rejects"
                if report.verdict == "left-only"
                else "factor intersection accepts, target rejects")
        word = render_word_text(report.counterexample) or "(empty)"
        text = f"counterexample: {word!r} ({side})"
    else:
        text = _comparison_text(report)
    return verdict, report.counterexample, stats, text


def _caps_from(args) -> analysis.SearchCaps:
    kwargs = {}
    if args.max_multiple is not None:
        kwargs["max_multiple"] = args.max_multiple
    if args.run_cap is not None:
        kwargs["run_cap"] = args.run_cap
    if args.coefficient_cap is not None:
        kwargs["coefficient_cap"] = args.coefficient_cap
    if args.horizon is not None:
        kwargs["horizon"] = args.horizon
    if args.n_cap is not None:
        kwargs["n_cap"] = args.n_cap
    return analysis.SearchCaps(**kwargs)


def _cmd_refute_p(args) -> tuple[str, Optional[Word], dict, str]:
    factors = [_resolve(f, args.k) for f in args.factors]
    result = analysis.refute_partition_decomposition(
        factors, strategy=args.strategy, caps=_caps_from(args), box=args.param_box)
    stats = {"factors": args.factors, "strategy": args.strategy, **result.stats}
    if result.verdict == "counterexample":
        word = render_word_text(result.word) or "(empty)"
        text = (f"counterexample ({result.side}): {word!r} separates the "
                f"factor intersection from the partition language")
        return "counterexample", result.word, stats, text
    return "exhausted", None, stats, f"exhausted: {result.stats}"


def _cmd_pump(args) -> tuple[str, Optional[Word], dict, str]:
    net = _resolve(args.machine, args.k)
    word = fileformat.parse_word(args.word)
    enum = enumerate_accepting_runs(net, word, cap=args.run_cap or 64)
    if not enum.runs:
        return "reject", None, {"word": args.word}, "machine rejects the word; nothing to pump"
    run = enum.runs[0]
    if args.segment is None:
        scope = (0, len(run.configs) - 1)
    else:
        sw = zoo.parse_segmented(word)
        spans, b_span, c_span = analysis.segment_spans(sw)
        if args.segment == "b":
            scope = b_span
        elif args.segment == "c":
            scope = c_span
        else:
            try:
                idx = int(args.segment)
            except ValueError:
                raise CliError("--segment takes a 1-based index, 'b', or 'c'")
            if not 1 <= idx <= len(spans):
                raise CliError(f"word has {len(spans)} segments")
            scope = spans[idx - 1]
    required = (analysis.SIGN_POSITIVE if args.sign == "pos"
                else analysis.SIGN_NONNEGATIVE)
    try:
        cycle = analysis.extract_pumpable_cycle(run, scope, required)
    except ValueError as exc:
        raise CliError(str(exc))
    stats = {"word": args.word, "segment": args.segment, "sign": args.sign,
             "times": args.times}
    if cycle is None:
        return "no-cycle", None, stats, "no pumpable cycle of that sign in the scope"
    factorial_of = len(net.states) if args.factorial else None
    pumped = analysis.pump_run(run, cycle, args.times, factorial_of=factorial_of)
    pumped_word = pumped.word()
    stats.update({
        "cycle_length": len(cycle.transitions),
        "cycle_effect": list(cycle.effect),
        "pumped_length": len(pumped_word),
        "final_counters": list(pumped.configs[-1].counters),
    })
    return "pumped", pumped_word, stats, f"pumped word: {render_word_text(pumped_word)}"


# ---------------------------------------------------------------------------

_NEGATIVE = {"reject", "left-only", "right-only", "counterexample", "exhausted",
             "violations", "no-cycle"}


def _add_k(p: argparse.ArgumentParser) -> None:
    # also accepted after the subcommand; SUPPRESS keeps a value given
    # before it from being clobbered by a default
    p.add_argument("--k", type=int, default=argparse.SUPPRESS,
                   help="parameter for zoo:Lk/Hk/PkConj references")


def _add_box_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-len", type=int, default=None,
                   help="compare on every word up to this length")
    p.add_argument("--segmented-box", type=int, default=None, metavar="N",
                   help="segmented words, up to 3 segments, parameters <= N")
    p.add_argument("--box", default=None, metavar="FAM:ARGS",
                   help="words:L | segmented:T,CAP[,B,C] | triple:CAP | "
                        "selector:K,CAP[,TAIL] | paired:K,CAP")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="counternet",
        description="build, simulate, compose and analyse integer counter nets")
    top.add_argument("--json", action="store_true", help="emit a JSON report")
    top.add_argument("--seed", type=int, default=None,
                     help="seed echoed into reports for reproducibility")
    top.add_argument("--exit-zero", action="store_true",
                     help="exit 0 even on negative verdicts")
    top.add_argument("--k", type=int, default=None,
                     help="parameter for zoo:Lk/Hk/PkConj references")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide membership of one word")
    p.add_argument("machine")
    p.add_argument("--word", required=True)
    p.add_argument("--initial", default=None, help="comma-separated start counters")
    _add_k(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("eq", help="compare two machines over a word generator")
    p.add_argument("left")
    p.add_argument("right")
    _add_box_flags(p)
    _add_k(p)
    p.set_defaults(handler=_cmd_eq)

    for name, handler in (("product", _cmd_product), ("union", _cmd_union)):
        p = sub.add_parser(name, help=f"{name} of two machines")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("-o", "--out", default=None)
        _add_k(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("project", help="keep a single counter")
    p.add_argument("machine")
    p.add_argument("--counter", type=int, required=True, help="1-based coordinate")
    p.add_argument("-o", "--out", default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("lift", help="widen to more counters")
    p.add_argument("machine")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--placement", default=None,
                   help="comma-separated target coordinates for the original ones")
    p.add_argument("-o", "--out", default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser("vasify", help="flatten a deterministic machine to one state")
    p.add_argument("machine")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--report", action="store_true",
                   help="run the full pipeline verification")
    p.add_argument("--max-len", type=int, default=None,
                   help="word length bound for the pipeline report")
    _add_k(p)
    p.set_defaults(handler=_cmd_vasify)

    p = sub.add_parser("reduce", help="containment-to-emptiness gadget for two 1-CNs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--out", default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("zoo", help="built-in machine families")
    p.add_argument("family", help="P | fig1 | Lk | Hk | PkConj | coarse")
    p.add_argument("--emit", action="store_true", help="print machine file")
    p.add_argument("-o", "--out", default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_zoo)

    p = sub.add_parser("decompose-check",
                       help="target vs intersection of factors over a generator")
    p.add_argument("target")
    p.add_argument("factors", nargs="*")
    _add_box_flags(p)
    _add_k(p)
    p.set_defaults(handler=_cmd_decompose_check)

    p = sub.add_parser("refute-p",
                       help="search a word separating the factor intersection "
                            "from the partition language")
    p.add_argument("factors", nargs="+")
    p.add_argument("--strategy", choices=("enumerate", "guided"), default="enumerate")
    p.add_argument("--param-box", type=int, default=6,
                   help="parameter cap for the enumerate strategy")
    p.add_argument("--max-multiple", type=int, default=None)
    p.add_argument("--run-cap", type=int, default=None)
    p.add_argument("--coefficient-cap", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--n-cap", type=int, default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_refute_p)

    p = sub.add_parser("pump", help="extract and pump a cycle of an accepting run")
    p.add_argument("machine")
    p.add_argument("--word", required=True)
    p.add_argument("--segment", default=None,
                   help="1-based segment index, or 'b' / 'c'")
    p.add_argument("--sign", choices=("pos", "nonneg"), default="nonneg")
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--factorial", action="store_true",
                   help="scale copies so one unit adds a |Q|!-length block")
    p.add_argument("--run-cap", type=int, default=None)
    _add_k(p)
    p.set_defaults(handler=_cmd_pump)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        verdict, counterexample, stats, text = args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, analysis.SweepLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stats["wall_seconds"] = round(time.perf_counter() - started, 6)
    if args.seed is not None:
        stats["seed"] = args.seed
    if args.json:
        report = {
            "command": list(argv) if argv is not None else sys.argv[1:],
            "verdict": verdict,
            "counterexample": (render_word_text(counterexample)
                               if counterexample is not None else None),
            "stats": stats,
        }
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)
    if verdict in _NEGATIVE and not args.exit_zero:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
