"""
quiverlab command line.

Every verb reads JSON files (or catalogue names for quivers), validates them,
computes, and prints one JSON document on stdout. Exit codes: 0 success,
2 rejected input, 3 declared incompleteness.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from quiverlab.catalogue import kronecker as kronecker_quiver
from quiverlab.classify import ZQuiver, dynkin_indecomposables, euclidean_series, mesh_hom_dim
from quiverlab.config import get_settings
from quiverlab.decomposition import krs_decompose, radn_hom
from quiverlab.exceptions import QuiverLabError, SchemaError
from quiverlab.forms import classify_graph, enumerate_roots
from quiverlab.groups import KLEIN4, klein_classify, klein_T, regular_group_rep, trivial_rep
from quiverlab.io.validator import (
    load_group_rep,
    load_kronecker_indec,
    load_quiver,
    load_representation,
    load_word,
    read_json,
)
from quiverlab.kronecker import (
    KroneckerIndec,
    ProjectivePoint,
    jordan_hom_basis,
    jordan_rep,
    kronecker_classify,
    kronecker_indec,
)
from quiverlab.linalg import Field
from quiverlab.quiver import Quiver
from quiverlab.radical import separated_S, separated_T
from quiverlab.reflection import ReflectionWord, coxeter_power
from quiverlab.representation import Morphism, Representation, ext_dim, hom_basis
from quiverlab.utils.helpers import setup_logging
from quiverlab.utils.run_logger import close_run_logger, get_run_logger, init_run_logger
from quiverlab.wild import embed_E, embed_FQ, embed_Fr

logger = logging.getLogger("quiverlab.cli")

EXIT_OK = 0
EXIT_UNEXPECTED = 1

_INDEC_LABEL = re.compile(r"^([PI])_?(\d+)$|^R_?(\d+)@(-?[\d/]+):(-?[\d/]+)$", re.IGNORECASE)


# =============================================================================
# Argument helpers
# =============================================================================


def _field(args: argparse.Namespace, fallback: Optional[str] = None) -> Field:
    """The --field override, else ``fallback``, else the configured default."""
    return Field.parse(args.field or fallback or get_settings().default_field)


def _field_override(args: argparse.Namespace) -> Optional[Field]:
    return Field.parse(args.field) if args.field else None


def _rep(args: argparse.Namespace, path: str, quiver: Optional[Quiver] = None) -> Representation:
    return load_representation(path, quiver=quiver or _base_quiver(args), field=_field_override(args))


def _base_quiver(args: argparse.Namespace) -> Optional[Quiver]:
    return load_quiver(args.quiver) if getattr(args, "quiver", None) else None


def _vertex_pair(text: str) -> Tuple[int, int]:
    try:
        i, r = (int(part) for part in text.split(","))
    except ValueError:
        raise SchemaError(f"expected 'vertex,shift', got {text!r}") from None
    return i, r


def parse_word(text: str) -> ReflectionWord:
    """A word file, a JSON list, or an inline ``+2,-1`` sequence."""
    if Path(text).is_file():
        return load_word(text)
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            return load_word(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise SchemaError("inline word is not valid JSON", errors=[str(exc)]) from exc
    steps = []
    for token in re.split(r"[,\s]+", stripped):
        if not token:
            continue
        if token[0] not in "+-" or not token[1:].isdigit():
            raise SchemaError(f"bad reflection step {token!r}; use +i or -i")
        steps.append([token[0], int(token[1:])])
    return load_word({"word": steps})


def parse_indec(text: str, field_: Field) -> KroneckerIndec:
    """A Kronecker indecomposable file, or a label ``P2``, ``I0``, ``R3@5:1``."""
    if Path(text).is_file():
        return load_kronecker_indec(text, field_)
    match = _INDEC_LABEL.match(text.strip())
    if match is None:
        raise SchemaError(f"unknown Kronecker indecomposable {text!r}; use P<r>, I<r> or R<p>@a:b")
    kind, r, p, lam0, lam1 = match.groups()
    if kind:
        return KroneckerIndec(kind.upper(), int(r))
    return KroneckerIndec.R(int(p), ProjectivePoint.of(field_, lam0, lam1))


def _basis_json(basis: Sequence[Morphism]) -> List[List[List[List[str]]]]:
    return [[c.to_strings() for c in phi.components] for phi in basis]


# =============================================================================
# Verbs
# =============================================================================


def cmd_classify_graph(args: argparse.Namespace) -> Any:
    return classify_graph(load_quiver(args.q)).to_dict()


def cmd_roots(args: argparse.Namespace) -> Any:
    return [list(r) for r in enumerate_roots(load_quiver(args.q), positive=args.positive)]


def cmd_indecomposables(args: argparse.Namespace) -> Any:
    records = dynkin_indecomposables(load_quiver(args.q), _field(args))
    return [r.to_dict(include_matrices=True) for r in records]


def cmd_series(args: argparse.Namespace) -> Any:
    records = euclidean_series(load_quiver(args.q), args.max_r, _field(args), preinjective=args.preinjective)
    return [r.to_dict(include_matrices=True) for r in records]


def cmd_reflect(args: argparse.Namespace) -> Any:
    q = load_quiver(args.q)
    return parse_word(args.word).apply(_rep(args, args.rep, q)).to_dict()


def cmd_coxeter(args: argparse.Namespace) -> Any:
    q = load_quiver(args.q)
    return coxeter_power(_rep(args, args.rep, q), args.power).to_dict()


def cmd_decompose(args: argparse.Namespace) -> Any:
    return krs_decompose(_rep(args, args.rep), seed=args.seed).to_dict()


def cmd_hom(args: argparse.Namespace) -> Any:
    x = _rep(args, args.x)
    y = _rep(args, args.y, x.quiver)
    if args.rad is None:
        basis = hom_basis(x, y)
    else:
        universe = None
        if args.universe:
            files = sorted(Path(args.universe).glob("*.json"))
            if not files:
                raise SchemaError(f"universe directory {args.universe} holds no .json files")
            universe = [_rep(args, str(p), x.quiver) for p in files]
        basis = radn_hom(x, y, args.rad, universe)
    return {"dim": len(basis), "basis": _basis_json(basis)}


def cmd_ext(args: argparse.Namespace) -> Any:
    z = _rep(args, args.z)
    return {"dim": ext_dim(z, _rep(args, args.x, z.quiver))}


def cmd_kronecker(args: argparse.Namespace) -> Any:
    if args.action == "make":
        f = _field(args)
        return kronecker_indec(parse_indec(args.target, f), f, chart=args.chart).to_dict()
    x = _rep(args, args.target, kronecker_quiver(2))
    return [
        {"label": kind.label(), "indecomposable": kind.to_dict(), "multiplicity": mult}
        for kind, mult in kronecker_classify(x, seed=args.seed)
    ]


def cmd_jordan(args: argparse.Namespace) -> Any:
    f = _field(args)
    if args.action == "make":
        return jordan_rep(args.p, f.scalar(args.lam), f).to_dict()
    basis = jordan_hom_basis(args.p, f.scalar(args.lam), args.q, f.scalar(args.mu), f)
    return {"dim": len(basis), "basis": _basis_json(basis)}


def cmd_separated(args: argparse.Namespace) -> Any:
    q = load_quiver(args.q)
    if args.rep is None:
        return q.separated().to_dict()
    data = read_json(args.rep)
    if data.get("quiver") and Quiver.from_dict(data["quiver"]) == q.separated() != q:
        return separated_T(_rep(args, args.rep, q.separated()), q).to_dict()
    return separated_S(_rep(args, args.rep, q)).to_dict()


def cmd_klein(args: argparse.Namespace) -> Any:
    f = _field(args, fallback="GF(2)")
    if args.action == "make":
        if args.target == "regular":
            return regular_group_rep(KLEIN4, f).to_dict()
        if args.target == "trivial":
            return trivial_rep(KLEIN4, f).to_dict()
        return klein_T(kronecker_indec(parse_indec(args.target, f), f)).to_dict()
    x = load_group_rep(args.target, _field_override(args))
    return [s.to_dict() for s in klein_classify(x, seed=args.seed)]


def _is_kronecker_r(q: Quiver) -> bool:
    return q.vertex_count == 2 and bool(q.arrows) and all((a.source, a.target) == (1, 2) for a in q.arrows)


def cmd_wild(args: argparse.Namespace) -> Any:
    q = load_quiver(args.q)
    x = _rep(args, args.rep, q)
    if args.target == "gamma2":
        return embed_E(x).to_dict()
    if args.target == "k3":
        return embed_FQ(x).to_dict()
    return embed_Fr(x if _is_kronecker_r(q) else embed_FQ(x)).to_dict()


def cmd_mesh_hom(args: argparse.Namespace) -> Any:
    q = load_quiver(args.q)
    start, end = _vertex_pair(args.start), _vertex_pair(args.end)
    depth = args.depth or 1 - min(start[1], end[1])
    return {"dim": mesh_hom_dim(ZQuiver(q, depth), start, end)}


# =============================================================================
# Pretty tables
# =============================================================================


def _record_rows(data: List[Dict[str, Any]]) -> Tuple[List[str], List[List[str]]]:
    rows = []
    for rec in data:
        tag = rec["tag"]
        label = tag["kind"] if tag["kind"] == "regular" else f"{tag['kind']}({tag['vertex']}, {tag['r']})"
        word = " ".join(f"{s}{v}" for s, v in rec["word"]) or "-"
        rows.append([str(rec["dims"]), label, str(rec["start"]), word])
    return ["dims", "tag", "start", "word"], rows


def _labelled_rows(data: List[Dict[str, Any]]) -> Tuple[List[str], List[List[str]]]:
    return ["summand", "multiplicity"], [[d["label"], str(d["multiplicity"])] for d in data]


def _decomposition_rows(data: Dict[str, Any]) -> Tuple[List[str], List[List[str]]]:
    rows = [[str(s["dims"]), str(s["multiplicity"]), s.get("tag", "")] for s in data["summands"]]
    return ["dims", "multiplicity", "tag"], rows


TABLES: Dict[str, Callable[[Any], Tuple[List[str], List[List[str]]]]] = {
    "roots": lambda data: (["root"], [[str(r)] for r in data]),
    "indecomposables": _record_rows,
    "series": _record_rows,
    "decompose": _decomposition_rows,
    "kronecker classify": _labelled_rows,
    "klein classify": _labelled_rows,
}


def render_pretty(verb: str, data: Any, console: Console) -> None:
    builder = TABLES.get(verb)
    if builder is None:
        console.print_json(data=data)
        return
    columns, rows = builder(data)
    table = Table(title=verb)
    for col in columns:
        table.add_column(col)
    for row in rows:
        table.add_row(*row)
    console.print(table)


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverlab", description="Exact quiver representation computations")
    parser.add_argument("--field", help="Field override: Q, GF(p) or GF:p")
    parser.add_argument("--pretty", action="store_true", help="Human-readable tables instead of JSON")
    parser.add_argument("--run-log", metavar="DIR", help="Record this run under DIR")
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized searches")
    parser.add_argument("--log-level", help="Logging level (default from QUIVERLAB_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="verb", metavar="verb", required=True)

    def verb(name: str, handler: Callable[[argparse.Namespace], Any], help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        return p

    def with_quiver(p: argparse.ArgumentParser) -> None:
        p.add_argument("--quiver", help="Quiver for representation files without an inline one")

    p = verb("classify-graph", cmd_classify_graph, "Dynkin/Euclidean type of the underlying graph")
    p.add_argument("q")

    p = verb("roots", cmd_roots, "Roots of the Tits form")
    p.add_argument("q")
    p.add_argument("--positive", action="store_true")

    p = verb("indecomposables", cmd_indecomposables, "One indecomposable per positive root (Dynkin)")
    p.add_argument("q")

    p = verb("series", cmd_series, "Preprojective (and preinjective) series of a Euclidean quiver")
    p.add_argument("q")
    p.add_argument("--max-r", type=int, required=True, dest="max_r")
    p.add_argument("--preinjective", action="store_true")

    p = verb("reflect", cmd_reflect, "Apply a reflection word")
    p.add_argument("q")
    p.add_argument("rep")
    p.add_argument("--word", required=True, help="Word file, JSON list or inline '+2,-1'")

    p = verb("coxeter", cmd_coxeter, "Apply C^r (C⁻ powers for r < 0)")
    p.add_argument("q")
    p.add_argument("rep")
    p.add_argument("--power", type=int, required=True)

    p = verb("decompose", cmd_decompose, "Krull-Remak-Schmidt decomposition with witness")
    p.add_argument("rep")
    with_quiver(p)

    p = verb("hom", cmd_hom, "Basis of Hom(X, Y) or Rad^n(X, Y)")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--rad", type=int)
    p.add_argument("--universe", help="Directory of indecomposable representation files")
    with_quiver(p)

    p = verb("ext", cmd_ext, "dim Ext(Z, X)")
    p.add_argument("z")
    p.add_argument("x")
    with_quiver(p)

    p = verb("kronecker", cmd_kronecker, "Kronecker indecomposables")
    p.add_argument("action", choices=["make", "classify"])
    p.add_argument("target", help="make: P<r>, I<r>, R<p>@a:b or a file; classify: a representation file")
    p.add_argument("--chart", type=int, choices=[0, 1], default=0)

    p = verb("jordan", cmd_jordan, "Jordan quiver indecomposables and Hom")
    p.add_argument("action", choices=["make", "hom"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lam", default="0")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--mu", default="0")

    p = verb("separated", cmd_separated, "Separated quiver, or S/T of a representation")
    p.add_argument("q")
    p.add_argument("rep", nargs="?")

    p = verb("klein", cmd_klein, "Klein four group representations in characteristic 2")
    p.add_argument("action", choices=["make", "classify"])
    p.add_argument("target", help="make: regular, trivial or a Kronecker label/file; classify: a group-rep file")

    p = verb("wild", cmd_wild, "Representation embeddings")
    p.add_argument("action", choices=["embed"])
    p.add_argument("q")
    p.add_argument("rep")
    p.add_argument("--target", choices=["k3", "gamma2", "subspace"], required=True)

    p = verb("mesh-hom", cmd_mesh_hom, "dim Hom between preprojectives through the mesh category")
    p.add_argument("q")
    p.add_argument("--from", dest="start", required=True, metavar="I,R")
    p.add_argument("--to", dest="end", required=True, metavar="J,S")
    p.add_argument("--depth", type=int)

    return parser


def _verb_name(args: argparse.Namespace) -> str:
    action = getattr(args, "action", None)
    return f"{args.verb} {action}" if action and args.verb in ("kronecker", "klein") else args.verb


# =============================================================================
# Entry point
# =============================================================================


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run one verb; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    status = "completed"
    run_logger = None
    try:
        settings = get_settings()
        setup_logging(args.log_level)
        run_dir = args.run_log or settings.run_log_dir
        if run_dir:
            run_logger = init_run_logger(log_dir=run_dir)
        verb = _verb_name(args)
        logger.info("running %s", verb)
        if run_logger is not None:
            with run_logger.timed_operation("cli", verb, {"argv": list(argv or sys.argv[1:])}):
                result = args.handler(args)
        else:
            result = args.handler(args)
        if args.pretty:
            render_pretty(verb, result, Console(file=stdout, color_system=None, width=120))
        else:
            stdout.write(json.dumps(result, separators=(",", ":")) + "\n")
        return EXIT_OK
    except QuiverLabError as exc:
        status = "failed"
        logger.info("%s", exc)
        stderr.write(json.dumps(exc.to_dict(), separators=(",", ":"), default=str) + "\n")
        return exc.exit_code
    except Exception as exc:
        status = "failed"
        logger.exception("unexpected failure")
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_UNEXPECTED
    finally:
        if get_run_logger() is not None:
            close_run_logger(status)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
