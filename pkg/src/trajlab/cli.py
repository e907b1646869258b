"""Command-line entry point.

Exit codes: 0 ok, 1 usage error, 2 partial data failure, 3 property
violation. Standard output is machine-readable and byte-identical across
repeated invocations; diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .analytics import (BUILTIN_PLANS, ChainEpisode, ChainPlan,
                        independence_upper_bound, mode_table,
                        progressive_completion, ratio_report)
from .errors import TrajlabError
from .io_binary import write_binary_file
from .io_text import write_text_file
from .model import SubtaskKind, validate
from .modes import BUILTIN_SCHEMES, MODE_RULES, classify
from .pipeline import (FilterSpec, filter_labels, label_batch,
                       read_labels_jsonl, read_trajectory_file)
from .synth import EventScript, FuzzConfig, fuzz, realize
from .thresholds import Thresholds

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_VIOLATION = 3

GROUP_ALIASES = {"target": "target_id", "policy": "policy_tag"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_thresholds(path) -> Thresholds:
    path = path or os.environ.get("TRAJLAB_THRESHOLDS")
    if path:
        return Thresholds.from_json_file(path)
    return Thresholds()


def _expand_inputs(paths):
    out = []
    for p in paths:
        if os.path.isdir(p):
            out.extend(os.path.join(p, name) for name in sorted(os.listdir(p))
                       if os.path.isfile(os.path.join(p, name)))
        else:
            out.append(p)
    return out


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _write_out(path, text):
    sink, close = _open_out(path)
    sink.write(text)
    if not text.endswith("\n"):
        sink.write("\n")
    if close:
        sink.close()


# -- subcommand implementations -------------------------------------------


def _cmd_label(args) -> int:
    th = _load_thresholds(args.thresholds)
    inputs = _expand_inputs(args.paths)
    if not inputs:
        print("label: no input files", file=sys.stderr)
        return EXIT_USAGE
    result = label_batch(inputs, th, workers=args.workers)
    sink, close = _open_out(args.out)
    for rec in result.labels:
        sink.write(rec.to_json() + "\n")
    if close:
        sink.close()
    for err in result.errors:
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
    print(f"label: {len(result.labels)} ok, {len(result.errors)} failed",
          file=sys.stderr)
    return EXIT_PARTIAL if result.errors else EXIT_OK


def _cmd_filter(args) -> int:
    spec = FilterSpec.from_json_file(args.spec)
    labels = read_labels_jsonl(args.labels)
    manifest = filter_labels(labels, spec)
    _write_out(args.out, manifest.to_json())
    for s in manifest.shortfalls:
        print(f"filter: shortfall of {s['shortfall']} for "
              f"{s['quota_key']}/{s['subtask']}", file=sys.stderr)
    return EXIT_OK


def _parse_group_by(text):
    keys = []
    for raw in text.split(","):
        raw = raw.strip()
        if raw:
            keys.append(GROUP_ALIASES.get(raw, raw))
    return tuple(keys) or ("subtask",)


def _cmd_stats(args) -> int:
    labels = read_labels_jsonl(args.labels)
    grouping = BUILTIN_SCHEMES[args.grouping] if args.grouping else None
    table = mode_table(labels, group_by=_parse_group_by(args.group_by),
                       grouping=grouping, decimals=args.decimals)
    if args.format == "json":
        _write_out(args.out, table.to_json())
    elif args.format == "csv":
        _write_out(args.out, table.to_csv())
    else:
        _write_out(args.out, table.to_markdown())
    return EXIT_OK


def _cmd_ratio(args) -> int:
    labels = read_labels_jsonl(args.labels)
    rep = ratio_report(labels, args.mode_a, args.mode_b)
    if args.format == "json":
        _write_out(args.out, json.dumps(rep.to_dict(), sort_keys=True))
    else:
        _write_out(args.out, rep.text)
    return EXIT_OK


def _load_plan(name) -> ChainPlan:
    if name in BUILTIN_PLANS:
        return BUILTIN_PLANS[name]
    with open(name, "r", encoding="utf-8") as f:
        return ChainPlan.from_dict(json.load(f))


def _cmd_chain(args) -> int:
    plan = _load_plan(args.plan)
    with open(args.episodes, "r", encoding="utf-8") as f:
        episodes = [ChainEpisode.from_dict(json.loads(line))
                    for line in f if line.strip()]
    progressive = progressive_completion(episodes, plan)
    out = {"plan": plan.name,
           "slots": [s.name for s in plan.slots],
           "progressive": progressive}
    if args.bound:
        with open(args.bound, "r", encoding="utf-8") as f:
            rates = json.load(f)
        out["upper_bound"] = independence_upper_bound(rates, plan)
    if args.format == "csv":
        lines = ["slot,name,progressive"
                 + (",upper_bound" if "upper_bound" in out else "")]
        for i, name in enumerate(out["slots"]):
            line = f"{i + 1},{name},{progressive[i]:.4f}"
            if "upper_bound" in out:
                line += f",{out['upper_bound'][i]:.4f}"
            lines.append(line)
        _write_out(args.out, "\n".join(lines))
    else:
        _write_out(args.out, json.dumps(out, sort_keys=True))
    return EXIT_OK


def _cmd_validate(args) -> int:
    inputs = _expand_inputs(args.paths)
    if not inputs:
        print("validate: no input files", file=sys.stderr)
        return EXIT_USAGE
    any_bad = False
    for path in inputs:
        try:
            traj = read_trajectory_file(path)
            findings = validate(traj)
        except (TrajlabError, OSError, ValueError) as e:
            print(json.dumps({"source": path, "severity": "error",
                              "message": f"{type(e).__name__}: {e}"},
                             sort_keys=True))
            any_bad = True
            continue
        for f in findings:
            print(json.dumps({"source": path, "severity": f.severity,
                              "message": f.message}, sort_keys=True))
        if any(f.is_error for f in findings):
            any_bad = True
    return EXIT_PARTIAL if any_bad else EXIT_OK


def _write_trajectory(traj, path):
    if str(path).endswith(".trjl"):
        write_binary_file(traj, path)
    else:
        write_text_file(traj, path)


def _cmd_synth(args) -> int:
    th = _load_thresholds(args.thresholds)
    with open(args.script, "r", encoding="utf-8") as f:
        script = EventScript.from_dict(json.load(f))
    traj = realize(script, seed=args.seed, th=th)
    _write_trajectory(traj, args.out)
    print(f"synth: wrote {args.out} ({len(traj)} records)", file=sys.stderr)
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    if args.n < 1:
        print("fuzz: --n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    th = _load_thresholds(args.thresholds)
    kind = SubtaskKind(args.subtask.capitalize())
    cfg = FuzzConfig(edge_density=args.density)
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.n):
        traj = fuzz(args.seed + i, kind, cfg, th)
        _write_trajectory(
            traj, os.path.join(args.out, f"{traj.header.episode_id}.trjl"))
    print(f"fuzz: wrote {args.n} trajectories to {args.out}", file=sys.stderr)
    return EXIT_OK


def _corrupted_rules():
    """Drop every catch-all failure rule: a deliberate MECE hole."""
    rules = {}
    for kind, table in MODE_RULES.items():
        rules[kind] = {"success": list(table["success"]),
                       "failure": list(table["failure"][:-1])}
    return rules


def _cmd_mece_check(args) -> int:
    if args.n < 1:
        print("mece-check: --n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    th = _load_thresholds(args.thresholds)
    kind = SubtaskKind(args.subtask.capitalize())
    rules = _corrupted_rules() if args.corrupt else None
    from .events import extract_events
    histogram = {}
    for i in range(args.n):
        traj = fuzz(args.seed + i, kind, None, th)
        events = extract_events(traj, th)
        try:
            label = classify(events, rules=rules)
        except TrajlabError as e:
            print(json.dumps({
                "violation": str(e),
                "episode_id": traj.header.episode_id,
                "events": [ev.to_dict() for ev in events.events],
            }, sort_keys=True))
            return EXIT_VIOLATION
        histogram[label.mode_id] = histogram.get(label.mode_id, 0) + 1
    print(json.dumps({"subtask": kind.value, "n": args.n,
                      "histogram": histogram}, sort_keys=True))
    return EXIT_OK


def _cmd_thresholds(args) -> int:
    th = _load_thresholds(args.thresholds)
    _write_out(args.out, json.dumps(th.to_dict(), sort_keys=True))
    return EXIT_OK


def _cmd_convert(args) -> int:
    traj = read_trajectory_file(args.input)
    _write_trajectory(traj, args.output)
    return EXIT_OK


def _cmd_report(args) -> int:
    from .report import write_chain_report, write_stats_report
    labels = read_labels_jsonl(args.labels)
    grouping = BUILTIN_SCHEMES[args.grouping] if args.grouping else None
    table = mode_table(labels, group_by=_parse_group_by(args.group_by),
                       grouping=grouping)
    written = write_stats_report(table, args.out_dir)
    if args.chain:
        plan = _load_plan(args.plan)
        with open(args.chain, "r", encoding="utf-8") as f:
            episodes = [ChainEpisode.from_dict(json.loads(line))
                        for line in f if line.strip()]
        progressive = progressive_completion(episodes, plan)
        bound = None
        if args.bound:
            with open(args.bound, "r", encoding="utf-8") as f:
                bound = independence_upper_bound(json.load(f), plan)
        written.update({"chain_" + k: v for k, v in
                        write_chain_report(progressive, plan, args.out_dir,
                                           bound=bound).items()})
    print(json.dumps(written, sort_keys=True))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trajlab",
                description="Label, filter, and analyze manipulation episode logs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=False, fmt=None):
        sp.add_argument("--thresholds", default=None,
                        help="thresholds JSON (default: $TRAJLAB_THRESHOLDS)")
        if workers:
            sp.add_argument("--workers", type=int, default=1)
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument("--out", default="-", help="output path or - for stdout")

    sp = sub.add_parser("label", help="label trajectory files")
    sp.add_argument("paths", nargs="+")
    common(sp, workers=True)
    sp.set_defaults(func=_cmd_label)

    sp = sub.add_parser("filter", help="select episodes by mode allowlist")
    sp.add_argument("labels")
    sp.add_argument("--spec", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_filter)

    sp = sub.add_parser("stats", help="SoR/SaeR/FR mode tables")
    sp.add_argument("labels")
    sp.add_argument("--group-by", default="subtask")
    sp.add_argument("--grouping", choices=sorted(BUILTIN_SCHEMES), default=None)
    sp.add_argument("--decimals", type=int, default=2)
    common(sp, fmt=["md", "csv", "json"])
    sp.set_defaults(func=_cmd_stats)

    sp = sub.add_parser("ratio", help="normalized count ratio of two modes")
    sp.add_argument("labels")
    sp.add_argument("--mode-a", required=True)
    sp.add_argument("--mode-b", required=True)
    common(sp, fmt=["text", "json"])
    sp.set_defaults(func=_cmd_ratio)

    sp = sub.add_parser("chain", help="progressive completion analysis")
    sp.add_argument("episodes")
    sp.add_argument("--plan", required=True,
                    help="builtin plan name or plan JSON path")
    sp.add_argument("--bound", default=None,
                    help="JSON map of subtask -> SoR fraction")
    common(sp, fmt=["json", "csv"])
    sp.set_defaults(func=_cmd_chain)

    sp = sub.add_parser("validate", help="structural validation of files")
    sp.add_argument("paths", nargs="+")
    common(sp)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("synth", help="realize an event script")
    sp.add_argument("--script", required=True)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("fuzz", help="generate random valid trajectories")
    sp.add_argument("--subtask", required=True,
                    choices=["pick", "place", "open", "close"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--density", type=float, default=1.0)
    common(sp)
    sp.set_defaults(func=_cmd_fuzz)

    sp = sub.add_parser("mece-check",
                        help="assert exactly-one-mode over fuzz episodes")
    sp.add_argument("--subtask", required=True,
                    choices=["pick", "place", "open", "close"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--corrupt", action="store_true",
                    help=argparse.SUPPRESS)  # negative-control build
    common(sp)
    sp.set_defaults(func=_cmd_mece_check)

    sp = sub.add_parser("thresholds", help="print effective thresholds JSON")
    common(sp)
    sp.set_defaults(func=_cmd_thresholds)

    sp = sub.add_parser("convert", help="convert between binary and text")
    sp.add_argument("input")
    sp.add_argument("output")
    common(sp)
    sp.set_defaults(func=_cmd_convert)

    sp = sub.add_parser("report", help="tables plus rendered figures")
    sp.add_argument("labels")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--group-by", default="subtask")
    sp.add_argument("--grouping", choices=sorted(BUILTIN_SCHEMES), default=None)
    sp.add_argument("--chain", default=None, help="chain episodes JSONL")
    sp.add_argument("--plan", default=None)
    sp.add_argument("--bound", default=None)
    common(sp)
    sp.set_defaults(func=_cmd_report)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "report" and args.chain and not args.plan:
        print("report: --chain requires --plan", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except TrajlabError as e:
        print(f"{args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARTIAL
    except (OSError, ValueError, json.JSONDecodeError) as e:
        print(f"{args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
