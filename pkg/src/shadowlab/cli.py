"""Command-line surface: edge-list parsing, JSON reports, exit codes.

Exit code contract (stable API): 0 all checks passed, 1 a verified
inequality or certificate failed, 2 usage or parse error, 3 resource budget
exceeded. A report is written on exits 0 and 1.

Edge-list files are 0-based even though the literature writes [n] 1-based;
conversion is the parser's job. SHADOWLAB_THREADS caps the worker count
(the current engines are single-threaded, which respects any cap).
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import os
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .bounds import TOLERANCE, bound_report_for, lemma14_check, lemma9_check
from .constructions import clique_expansion_graph, complete, fano, turan, turan_padded
from .errors import (
    DomainError,
    EdgeListParseError,
    EmptyInputError,
    ParameterError,
    PreconditionError,
    ResourceBudgetError,
    ShadowlabError,
)
from .extremal import enumerate_free, extremal_search, verify_bound_over_enumeration
from .forbidden import Cancellative, Expansion, violation
from .hypercore import Hypergraph, shadow_i
from .stability import stability_certificate

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def max_workers() -> int:
    raw = os.environ.get("SHADOWLAB_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"SHADOWLAB_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ParameterError(f"SHADOWLAB_THREADS must be >= 1, got {value}")
    return value


def parse(document: str) -> Hypergraph:
    """Parse an edge-list document: header 'r n', one edge per line."""
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            numbers = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer token in {line!r}")
        if header is None:
            if len(numbers) != 2:
                raise EdgeListParseError(lineno, "header must be exactly 'r n'")
            r, n = numbers
            if r < 1 or n < 0:
                raise EdgeListParseError(lineno, f"invalid header r={r} n={n}")
            header = (r, n)
            continue
        r, n = header
        if len(numbers) != r:
            raise EdgeListParseError(lineno, f"expected {r} vertices, got {len(numbers)}")
        if len(set(numbers)) != r:
            raise EdgeListParseError(lineno, f"repeated vertex in edge {numbers}")
        bad = [v for v in numbers if not 0 <= v < n]
        if bad:
            raise EdgeListParseError(lineno, f"vertex {bad[0]} outside 0..{n - 1}")
        edge = tuple(sorted(numbers))
        if edge in seen:
            raise EdgeListParseError(lineno, f"duplicate edge {edge}")
        seen.add(edge)
        edges.append(edge)
    if header is None:
        raise EdgeListParseError(1, "missing 'r n' header")
    return Hypergraph.build(header[0], header[1], edges)


def serialize(h: Hypergraph) -> str:
    lines = [f"{h.r} {h.n}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def _jsonable(value: Any) -> Any:
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: _jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    if isinstance(value, Fraction):
        return {"numerator": value.numerator, "denominator": value.denominator}
    if isinstance(value, float):
        return float(f"{value:.17g}") if math.isfinite(value) else str(value)
    if isinstance(value, bytes):
        return value.decode("ascii")
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    return value


def _family(name: str, ell: Optional[int], r: int):
    if name == "cancellative":
        return Cancellative()
    if name == "expansion":
        if ell is None:
            raise ParameterError("--family expansion requires --l")
        if ell < r:
            raise ParameterError(f"--l must be >= r={r}, got {ell}")
        return Expansion(ell)
    raise ParameterError(f"unknown family {name!r}")


def _read_input(path: str) -> tuple[Hypergraph, str]:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse(data.decode()), hashlib.sha256(data).hexdigest()


def _write_report(args, command: list[str], digest: Optional[str], results: list, t0: float) -> None:
    report = {
        "tool_version": __version__,
        "command": command,
        "input_digest": digest,
        "results": _jsonable(results),
        "runtime_ms": int((time.monotonic() - t0) * 1000),
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shadowlab")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, out=True):
        if out:
            p.add_argument("--out", help="report output path (default: stdout)")

    p = sub.add_parser("construct", help="write a named hypergraph as an edge list")
    p.add_argument("--family", required=True,
                   choices=["complete", "turan", "turan_padded", "expansion", "fano"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--out", help="edge-list output path (default: stdout)")

    p = sub.add_parser("shadow", help="compute the i-th shadow")
    p.add_argument("--input", required=True)
    p.add_argument("--i", type=int, default=1)
    common(p)

    p = sub.add_parser("check", help="freeness check with witness")
    p.add_argument("--input", required=True)
    p.add_argument("--family", required=True, choices=["cancellative", "expansion"])
    p.add_argument("--l", type=int)
    common(p)

    p = sub.add_parser("bound", help="evaluate a shadow bound")
    p.add_argument("--input", required=True)
    p.add_argument("--family", required=True, choices=["kk", "cancellative", "expansion"])
    p.add_argument("--l", type=int)
    common(p)

    p = sub.add_parser("lemmas", help="run the inequality batteries")
    p.add_argument("--input", required=True)
    p.add_argument("--family", required=True, choices=["cancellative", "expansion"])
    p.add_argument("--l", type=int)
    common(p)

    p = sub.add_parser("enumerate", help="enumerate free graphs, optionally verifying a bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--family", default="none", choices=["cancellative", "expansion", "none"])
    p.add_argument("--l", type=int)
    p.add_argument("--engine", default="naive", choices=["naive", "orderly"])
    p.add_argument("--verify-bound", choices=["thm1", "thm3", "thm6"])
    common(p)

    p = sub.add_parser("extremal", help="exact extremal number with extremal classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--family", required=True, choices=["cancellative", "expansion"])
    p.add_argument("--l", type=int)
    common(p)

    p = sub.add_parser("stability", help="per-instance stability certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--family", required=True, choices=["cancellative", "expansion"])
    p.add_argument("--l", type=int)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--mode", default="exact", choices=["exact", "heuristic"])
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("revalidate", help="recompute a report's payloads and diff")
    p.add_argument("--report", required=True)
    common(p)

    return parser


def _cmd_construct(args) -> tuple[int, Optional[str], list]:
    fam = args.family
    if fam == "complete":
        h = complete(args.n, args.r)
    elif fam == "turan":
        h, _ = turan(args.n, args.l, args.r)
    elif fam == "turan_padded":
        h = turan_padded(args.n, args.m, args.l, args.r)
    elif fam == "expansion":
        h = clique_expansion_graph(args.l, args.r)
    else:
        h = fano()
    text = serialize(h)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK, None, []


def _cmd_shadow(args) -> tuple[int, Optional[str], list]:
    h, digest = _read_input(args.input)
    sh = shadow_i(h, args.i)
    payload = {
        "type": "shadow", "i": args.i, "r": sh.r, "n": sh.n,
        "size": len(sh), "edges": [list(e) for e in sh.edges],
    }
    return EXIT_OK, digest, [payload]


def _cmd_check(args) -> tuple[int, Optional[str], list]:
    h, digest = _read_input(args.input)
    fam = _family(args.family, args.l, h.r)
    w = violation(h, fam)
    payload = {"type": "freeness", "family": str(fam), "free": w is None,
               "witness": _jsonable(w) if w is not None else None}
    return (EXIT_OK if w is None else EXIT_CHECK_FAILED), digest, [payload]


def _cmd_bound(args) -> tuple[int, Optional[str], list]:
    h, digest = _read_input(args.input)
    report = bound_report_for(h, args.family, args.l)
    payload = {"type": "bound", "kind": args.family, **_jsonable(report)}
    code = EXIT_OK if report.slack >= -TOLERANCE else EXIT_CHECK_FAILED
    return code, digest, [payload]


def _cmd_lemmas(args) -> tuple[int, Optional[str], list]:
    h, digest = _read_input(args.input)
    if args.family == "cancellative":
        report = lemma9_check(h)
    else:
        if args.l is None:
            raise ParameterError("lemmas --family expansion requires --l")
        report = lemma14_check(h, args.l)
    payload = {"type": "inequalities", "family": args.family,
               "all_hold": report.all_hold, **_jsonable(report)}
    return (EXIT_OK if report.all_hold else EXIT_CHECK_FAILED), digest, [payload]


def _cmd_enumerate(args) -> tuple[int, Optional[str], list]:
    fam = None if args.family == "none" else _family(args.family, args.l, args.r)
    results = []
    code = EXIT_OK
    stats = enumerate_free(args.n, args.r, fam, engine=args.engine)
    results.append({"type": "enumeration", **_jsonable(stats)})
    if args.verify_bound:
        sweep = verify_bound_over_enumeration(
            args.n, args.r, fam, args.verify_bound, args.l
        )
        results.append({"type": "bound-sweep", **_jsonable(sweep)})
        if sweep.violations:
            code = EXIT_CHECK_FAILED
    return code, None, results


def _cmd_extremal(args) -> tuple[int, Optional[str], list]:
    fam = _family(args.family, args.l, args.r)
    result = extremal_search(args.n, args.r, fam)
    payload = _jsonable(result)
    payload.pop("example", None)
    return EXIT_OK, None, [{"type": "extremal", **payload}]


def _cmd_stability(args) -> tuple[int, Optional[str], list]:
    h, digest = _read_input(args.input)
    fam = _family(args.family, args.l, h.r)
    cert = stability_certificate(
        h, fam, args.eps, args.delta, mode=args.mode, seed=args.seed,
        cap=args.cap,
    )
    payload = {"type": "certificate", "passed": cert.passed, **_jsonable(cert)}
    if cert.hypothesis_met and not cert.passed:
        return EXIT_CHECK_FAILED, digest, [payload]
    return EXIT_OK, digest, [payload]


_HANDLERS = {
    "construct": _cmd_construct,
    "shadow": _cmd_shadow,
    "check": _cmd_check,
    "bound": _cmd_bound,
    "lemmas": _cmd_lemmas,
    "enumerate": _cmd_enumerate,
    "extremal": _cmd_extremal,
    "stability": _cmd_stability,
}


def _cmd_revalidate(args) -> int:
    with open(args.report) as fh:
        report = json.load(fh)
    command = report.get("command", [])
    if not command or command[0] == "revalidate":
        raise ParameterError("report does not carry a re-runnable command")
    parser = _build_parser()
    rerun_args = parser.parse_args(command)
    rerun_args.out = None
    _, _, results = _HANDLERS[rerun_args.subcommand](rerun_args)
    fresh = _jsonable(results)
    if fresh == report.get("results"):
        sys.stdout.write(json.dumps({"revalidate": "identical"}) + "\n")
        return EXIT_OK
    sys.stdout.write(json.dumps(
        {"revalidate": "diff", "recomputed": fresh, "recorded": report.get("results")},
        sort_keys=True, indent=2) + "\n")
    return EXIT_CHECK_FAILED


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.monotonic()
    try:
        max_workers()  # validate the env var early
        if args.subcommand == "revalidate":
            return _cmd_revalidate(args)
        code, digest, results = _HANDLERS[args.subcommand](args)
        if args.subcommand != "construct":
            _write_report(args, argv, digest, results, t0)
        return code
    except ResourceBudgetError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (ParameterError, DomainError, EmptyInputError, PreconditionError,
            EdgeListParseError, FileNotFoundError, ShadowlabError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
