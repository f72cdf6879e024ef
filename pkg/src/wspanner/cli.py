"""Command-line front end: ``wspanner {gen,build,verify,bench,replay}``.

Every command writes a JSON run manifest next to its main output.  The
manifest records the resolved arguments, the input and output paths with
their SHA-256 digests, and the tool version; ``replay`` re-runs it and
checks that the outputs come out byte-identical.

Exit codes: 0 ok, 1 stretch violations (or replay mismatch), 2 usage
error, 3 I/O or format error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import tempfile
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .graph import GraphFormatError, generate_gnp, load_graph, format_graph
from .shortest_paths import ApspTooLarge
from .spanners import ALGORITHMS, BuildParams, build
from .verify import BOUND_NAMES, Bound, SubgraphError, verify_stretch

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MANIFEST_SUFFIX = ".manifest.json"
BENCH_HEADER = ("algorithm", "n", "m", "edges", "millis", "seed")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


# -- helpers ------------------------------------------------------------------

def parse_subset(text: str) -> list[int]:
    """One 0-based vertex id per line; blank lines and ``#`` comments ignored."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v = int(line)
        except ValueError:
            raise GraphFormatError(f"subset: not a vertex id: {line!r}", lineno) from None
        if v < 0:
            raise GraphFormatError(f"subset: negative vertex id {v}", lineno)
        ids.append(v)
    return ids


def _read_subset(path: str) -> list[int]:
    return parse_subset(Path(path).read_text())


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _abs(path: Optional[str]) -> Optional[str]:
    return None if path is None else str(Path(path).resolve())


def _manifest_path(args, main_output: str) -> Path:
    return Path(args.manifest) if args.manifest else Path(main_output + MANIFEST_SUFFIX)


_PATH_ARGS = ("out", "report", "input", "graph", "spanner", "subset")


def _params(args) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("manifest", "command")}
    for k in _PATH_ARGS:
        if params.get(k):
            params[k] = _abs(params[k])
    return params


def _emit_manifest(args, inputs: dict, outputs: dict, main_output: str) -> None:
    """Write the manifest for ``args``; ``outputs`` maps roles to paths of
    deterministic files (hashed), ``inputs`` maps roles to input paths."""
    params = _params(args)
    doc = {
        "command": args.command,
        "tool": {"name": "wspanner", "version": __version__},
        "seed": params.get("seed"),
        "params": params,
        "inputs": {k: {"path": p, "sha256": _sha256(Path(p))} for k, p in sorted(inputs.items())},
        "outputs": {k: {"path": p, "sha256": _sha256(Path(p))} for k, p in sorted(outputs.items())},
    }
    _write(_manifest_path(args, main_output), _dumps(doc))


# -- commands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if not 0.0 <= args.p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    if not 0.0 < args.wmin <= args.wmax:
        raise UsageError("need 0 < --wmin <= --wmax")
    g = generate_gnp(args.n, args.p, args.wmin, args.wmax, args.seed)
    out = _abs(args.out)
    _write(Path(out), format_graph(g))
    _emit_manifest(args, {}, {"graph": out}, out)
    return EXIT_OK


def cmd_build(args) -> int:
    if args.alg == "2w-subset" and not args.subset:
        raise UsageError("--alg 2w-subset requires --subset")
    if args.alg == "6eps-wmax" and args.epsilon is None:
        raise UsageError("--alg 6eps-wmax requires --epsilon")
    if args.epsilon is not None and not 0.0 < args.epsilon < 1.0:
        raise UsageError("--epsilon must lie in (0, 1)")
    g = load_graph(args.input)
    subset = None
    if args.alg == "2w-subset":
        subset = _read_subset(args.subset)
        if not subset or max(subset) >= g.n:
            raise InputError("subset is empty or names a vertex outside the graph")
    try:
        params = BuildParams(seed=args.seed, algorithm=args.alg, epsilon=args.epsilon,
                             subset=subset, d=args.d, heavy=args.heavy, l=args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sb, report = build(g, params)
    out = _abs(args.out)
    _write(Path(out), sb.to_text())
    report_path = _abs(args.report) or out + ".report.json"
    _write(Path(report_path), _dumps(report.to_dict()))
    inputs = {"graph": _abs(args.input)}
    if args.subset:
        inputs["subset"] = _abs(args.subset)
    # the report carries wall-clock timings, so only the spanner is hashed
    _emit_manifest(args, inputs, {"spanner": out}, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.bound == "6eps-wmax" and args.epsilon is None:
        raise UsageError("--bound 6eps-wmax requires --epsilon")
    if args.bound == "custom" and (args.a is None or args.b is None):
        raise UsageError("--bound custom requires --a and --b")
    if args.bound == "2w-subset" and not args.subset:
        raise UsageError("--bound 2w-subset requires --subset")
    g = load_graph(args.graph)
    h = load_graph(args.spanner)
    pairs = _read_subset(args.subset) if args.subset else None
    bound = Bound.named(args.bound, epsilon=args.epsilon, a=args.a, b=args.b)
    try:
        report = verify_stretch(g, h, bound, pairs, cap=args.cap, seeds=args.seeds or ())
    except SubgraphError as exc:
        raise InputError(f"spanner is not a subgraph of the graph: {exc}") from None
    except (ApspTooLarge, ValueError) as exc:
        raise UsageError(str(exc)) from None
    text = _dumps(report.to_dict())
    inputs = {"graph": _abs(args.graph), "spanner": _abs(args.spanner)}
    if args.subset:
        inputs["subset"] = _abs(args.subset)
    if args.out:
        out = _abs(args.out)
        _write(Path(out), text)
        _emit_manifest(args, inputs, {"report": out}, out)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def _bench_subset(n: int) -> list[int]:
    k = math.isqrt(n - 1) + 1 if n > 1 else 1
    step = max(1, n // k)
    return list(range(0, n, step))[:k]


def cmd_bench(args) -> int:
    algs = args.alg or list(ALGORITHMS)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for n in args.n:
        if n < 1:
            raise UsageError("--n values must be at least 1")
        for seed in args.seed:
            g = generate_gnp(n, args.p, args.wmin, args.wmax, seed)
            for alg in algs:
                params = BuildParams(
                    seed=seed, algorithm=alg,
                    epsilon=args.epsilon if alg == "6eps-wmax" else None,
                    subset=_bench_subset(n) if alg == "2w-subset" else None)
                t0 = time.perf_counter()
                _, report = build(g, params)
                millis = (time.perf_counter() - t0) * 1000.0
                writer.writerow((alg, n, g.m, report.spanner_edges, f"{millis:.3f}", seed))
    if args.out:
        out = _abs(args.out)
        _write(Path(out), buf.getvalue())
        # millis varies between runs; the manifest records the file but does not hash it
        params = _params(args)
        doc = {"command": "bench", "tool": {"name": "wspanner", "version": __version__},
               "seed": params["seed"], "params": params, "inputs": {},
               "outputs": {}, "diagnostics": {"csv": out}}
        _write(_manifest_path(args, out), _dumps(doc))
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_replay(args) -> int:
    try:
        doc = json.loads(Path(args.manifest_file).read_text())
        command = doc["command"]
        params = dict(doc["params"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"not a run manifest: {exc}") from None
    if command not in _COMMANDS or command == "replay":
        raise InputError(f"manifest names an unknown command {command!r}")
    outputs = doc.get("outputs", {})
    with tempfile.TemporaryDirectory() as tmp:
        # redirect every output into the scratch directory, then compare digests
        redirect = {}
        for key in ("out", "report"):
            if params.get(key):
                redirect[params[key]] = str(Path(tmp) / f"{key}_{Path(params[key]).name}")
                params[key] = redirect[params[key]]
        if command == "build" and not doc["params"].get("report"):
            params["report"] = str(Path(tmp) / "report.json")
        ns = argparse.Namespace(command=command, manifest=str(Path(tmp) / "manifest.json"),
                                **params)
        code = _COMMANDS[command](ns)
        mismatches = []
        for role, rec in sorted(outputs.items()):
            fresh = Path(redirect.get(rec["path"], rec["path"]))
            if not fresh.exists() or _sha256(fresh) != rec["sha256"]:
                mismatches.append(role)
        if args.write:
            for src, dst in ((v, k) for k, v in redirect.items()):
                if Path(src).exists():
                    _write(Path(dst), Path(src).read_text())
    for role in mismatches:
        print(f"replay: output {role!r} differs from the manifest", file=sys.stderr)
    if mismatches:
        return EXIT_VIOLATIONS
    print(f"replay: {len(outputs)} output(s) reproduced byte-identically", file=sys.stderr)
    return code


_COMMANDS = {"gen": cmd_gen, "build": cmd_build, "verify": cmd_verify,
             "bench": cmd_bench, "replay": cmd_replay}


# -- parser -------------------------------------------------------------------

def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wspanner", description="Additive spanners of weighted graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random weighted graph")
    g.add_argument("--model", choices=("gnp",), default="gnp")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--wmin", type=float, default=1.0)
    g.add_argument("--wmax", type=float, default=10.0)
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--manifest")

    b = sub.add_parser("build", help="build a spanner")
    b.add_argument("--alg", choices=ALGORITHMS, required=True)
    b.add_argument("--input", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--subset", help="vertex subset file (2w-subset)")
    b.add_argument("--epsilon", type=float, help="(6eps-wmax)")
    b.add_argument("--d", type=_positive, help="override the light-init degree")
    b.add_argument("--heavy", type=_positive, help="override the heavy-degree threshold")
    b.add_argument("--l", type=_positive, help="override the path budget (4w-fast)")
    b.add_argument("--report", help="BuildReport JSON (default: OUT.report.json)")
    b.add_argument("--manifest")

    v = sub.add_parser("verify", help="certify the stretch of a spanner")
    v.add_argument("--graph", required=True)
    v.add_argument("--spanner", required=True)
    v.add_argument("--bound", choices=BOUND_NAMES, required=True)
    v.add_argument("--epsilon", type=float)
    v.add_argument("--subset")
    v.add_argument("--a", type=float)
    v.add_argument("--b", type=float)
    v.add_argument("--cap", type=int, default=2000, help="largest n to verify")
    v.add_argument("--seeds", type=_seed, nargs="*", help="seeds recorded in the report")
    v.add_argument("--out", help="report path (default: stdout)")
    v.add_argument("--manifest")

    c = sub.add_parser("bench", help="time builders over a grid")
    c.add_argument("--alg", choices=ALGORITHMS, nargs="+")
    c.add_argument("--n", type=int, nargs="+", required=True)
    c.add_argument("--p", type=float, default=0.2)
    c.add_argument("--wmin", type=float, default=1.0)
    c.add_argument("--wmax", type=float, default=10.0)
    c.add_argument("--seed", type=_seed, nargs="+", default=[0])
    c.add_argument("--epsilon", type=float, default=0.5)
    c.add_argument("--out", help="CSV path (default: stdout)")
    c.add_argument("--manifest")

    r = sub.add_parser("replay", help="re-run a manifest and compare outputs")
    r.add_argument("manifest_file")
    r.add_argument("--write", action="store_true",
                   help="also overwrite the recorded outputs with the fresh ones")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (InputError, GraphFormatError, OSError) as exc:
        print(f"wspanner: error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
