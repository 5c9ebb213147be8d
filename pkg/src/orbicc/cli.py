"""Command-line front end.

Usage: orbicc <command> <file> [options]; `fuzz` takes no file.
Exit codes: 0 ok, 1 validation failure, 2 verification mismatch, 3 parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import ccmap
from .laurent import canonical_text
from .orbifold import (
    ParseError,
    TriangulationData,
    ValidationError,
    build_gentle_pair,
    build_generalized_quiver,
    name_map,
    read_orbifold_file,
    validate,
)
from .quiver import GeneralizedClusterQuiver, GentlePair, c_matrix_principal, format_matrix, is_gentle, mutate_sequence
from .repmod import euler_char_table
from .snakegraph import (
    build_band_graph,
    build_snake_graph,
    enumerate_matchings,
    height_to_arc_vector,
    label_edges,
    matching_edges,
)
from .strings import (
    BandWord,
    StringWord,
    WordError,
    ZeroResult,
    ar_translate,
    ar_translate_inverse,
    check_band,
    check_string,
    classify_positions,
    hook_op,
    is_projective,
    is_injective,
    parse_word,
    rotate,
)

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_PARSE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


@dataclass
class Session:
    triangulation: TriangulationData
    gentle: GentlePair
    quiver: GeneralizedClusterQuiver

    @property
    def name(self) -> str:
        return self.triangulation.name

    def names(self) -> dict:
        return {gen: disp for disp, gen, _, _ in name_map(self.triangulation)}


def parse_orbifold_file(path) -> Session:
    try:
        t = read_orbifold_file(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}")
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}")
    problems, _ = validate(t)
    if problems:
        raise CliError(EXIT_INVALID, "invalid triangulation:\n" + "\n".join(f"  {p}" for p in problems))
    return Session(t, build_gentle_pair(t), build_generalized_quiver(t))


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _word(session: Session, args):
    if getattr(args, "band", None):
        text = args.band
        if not text.strip().startswith("band"):
            text = f"band({text})"
    elif getattr(args, "string", None):
        text = args.string
    else:
        raise CliError(EXIT_PARSE, "give --string or --band")
    try:
        w = parse_word(text, session.names())
        if isinstance(w, BandWord):
            check_band(session.gentle, w)
        else:
            check_string(session.gentle, w)
    except (WordError, KeyError) as exc:
        raise CliError(EXIT_INVALID, f"invalid word: {exc}")
    return w


def _graph(g, w):
    return build_band_graph(g, w) if isinstance(w, BandWord) else build_snake_graph(g, w)


# -- commands --------------------------------------------------------------

def cmd_validate(s: Session, args, out):
    _, types = validate(s.triangulation)
    ok, problems = is_gentle(s.gentle)
    out(f"orbifold {s.name}: {s.triangulation.n} arcs, {len(types)} triangles")
    out("triangle types (pending sides): " + " ".join(str(k) for k in types))
    if not ok:
        for p in problems:
            out(f"not gentle: {p}")
        return EXIT_INVALID
    out("ok")
    return EXIT_OK


def _print_generalized(q: GeneralizedClusterQuiver, out):
    out(f"vertices {q.n}")
    out("pending " + (" ".join(str(v) for v in sorted(q.pending)) or "-"))
    for (a, b), c in sorted(q.quiver.multiplicities().items()):
        out(f"{a}->{b} x{c}")


def cmd_quiver(s: Session, args, out):
    if args.cmatrix:
        out(format_matrix(c_matrix_principal(s.gentle.quiver)))
    elif args.generalized:
        _print_generalized(s.quiver, out)
    else:
        for a in s.gentle.quiver.arrows:
            out(f"{a.id}: {a.source}->{a.target}")
        for a, b in sorted(s.gentle.relations):
            out(f"relation {a} {b}")
    return EXIT_OK


def cmd_mutate(s: Session, args, out):
    ks = [args.at] + ([int(x) for x in args.seq.split(",") if x.strip()] if args.seq else [])
    try:
        q = mutate_sequence(s.quiver, ks)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc))
    _print_generalized(q, out)
    return EXIT_OK


def cmd_expand(s: Session, args, out):
    w = _word(s, args)
    p = ccmap.snake_expansion(s.gentle, w, s.triangulation if args.labels else None)
    if args.coefficient_free:
        p = p.specialize_y()
    out(canonical_text(p))
    return EXIT_OK


def cmd_cc(s: Session, args, out):
    w = _word(s, args)
    p = ccmap.cc_prin(s.gentle, w, args.lam, "brute" if args.brute else "closed")
    if args.coefficient_free:
        p = p.specialize_y()
    out(canonical_text(p))
    return EXIT_OK


def cmd_verify(s: Session, args, out):
    w = _word(s, args)
    res = ccmap.verify_cc_equals_expansion(s.gentle, w, args.lam, s.triangulation)
    out(res.report())
    return EXIT_OK if res.ok else EXIT_MISMATCH


def cmd_lattice(s: Session, args, out):
    w = _word(s, args)
    graph = _graph(s.gentle, w)
    labels = label_edges(s.triangulation, w, graph) if args.edges else None
    for m in enumerate_matchings(graph):
        line = f"{_vec(m.height)} {_vec(height_to_arc_vector(graph, m.height, s.gentle.n))}"
        if labels is not None:
            es = sorted(matching_edges(graph, m.height))
            line += " " + " ".join(f"{i}{side}:{labels[(i, side)] or '-'}" for i, side in es)
        out(line)
    return EXIT_OK


def cmd_grassmannian(s: Session, args, out):
    w = _word(s, args)
    for e, chi in sorted(euler_char_table(s.gentle, w).items()):
        out(f"{_vec(e)} {chi}")
    return EXIT_OK


def cmd_strings(s: Session, args, out):
    w = _word(s, args)
    g = s.gentle
    if isinstance(w, BandWord) and args.op != "classify":
        raise CliError(EXIT_INVALID, f"--op {args.op} needs a string")
    if args.op == "classify":
        pc = classify_positions(g, w)
        for p, v in enumerate(pc.vertices, start=1):
            tag = pc.label(p) + (" strict" if p in pc.strict else "")
            out(f"{p} {v} {tag}")
        if isinstance(w, StringWord):
            out(f"projective {str(is_projective(g, w)).lower()}")
            out(f"injective {str(is_injective(g, w)).lower()}")
        return EXIT_OK
    try:
        if args.op in ("hook", "cohook"):
            kind = f"{args.mode}_{args.op}"
            res = hook_op(g, w, args.side, kind)
            out("0" if res is None else str(res))
        elif args.op == "ar":
            out(str(ar_translate(g, w)))
        elif args.op == "ar-inv":
            out(str(ar_translate_inverse(g, w)))
        elif args.op == "rotate":
            out(str(rotate(g, w, args.side, args.direction)))
    except ZeroResult:
        out("0")
    except WordError as exc:
        raise CliError(EXIT_INVALID, str(exc))
    return EXIT_OK


def cmd_fuzz(args, out):
    from .fuzz import run_fuzz

    failed = []

    def log(res):
        if res.failures:
            failed.append(res)

    results = run_fuzz(args.count, args.max_len, args.seed, log)
    out(f"fuzz seed={args.seed} cases={len(results)} max_len={args.max_len} failures={len(failed)}")
    for res in failed:
        out(f"FAIL {','.join(res.failures)}: {res.repro()}")
    return EXIT_OK if not failed else EXIT_MISMATCH


# -- parser ----------------------------------------------------------------

def _add_word(p):
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--string", help="string word, e.g. 'beta^-1 rho beta' or e2")
    grp.add_argument("--band", help="band word, with or without the band( ) wrapper")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbicc", description="Snake graphs and Caldero-Chapoton maps for triangulated orbifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    def filecmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--name-map", action="store_true", help="print arrow names before the output")
        return p

    filecmd("validate", "check the triangulation and the gentle conditions")
    p = filecmd("quiver", "print the quiver")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--generalized", action="store_true")
    grp.add_argument("--gentle", action="store_true")
    grp.add_argument("--cmatrix", action="store_true")
    p = filecmd("mutate", "mutate the generalized quiver")
    p.add_argument("--at", type=int, required=True)
    p.add_argument("--seq", default="")
    p = filecmd("expand", "snake-graph expansion")
    _add_word(p)
    p.add_argument("--labels", action="store_true", help="weigh matchings by edge labels")
    p.add_argument("--coefficient-free", action="store_true")
    p = filecmd("cc", "Caldero-Chapoton map with principal coefficients")
    _add_word(p)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--brute", action="store_true", help="count submodules of the explicit representation")
    p.add_argument("--coefficient-free", action="store_true")
    p = filecmd("verify", "compare the CC map with the labelled expansion")
    _add_word(p)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p = filecmd("lattice", "list perfect or good matchings")
    _add_word(p)
    p.add_argument("--edges", action="store_true")
    p = filecmd("grassmannian", "Euler characteristics of quiver Grassmannians")
    _add_word(p)
    p = filecmd("strings", "string combinatorics")
    _add_word(p)
    p.add_argument("--op", required=True, choices=["classify", "hook", "cohook", "ar", "ar-inv", "rotate"])
    p.add_argument("--side", choices=["start", "end"], default="start")
    p.add_argument("--mode", choices=["add", "remove"], default="add")
    p.add_argument("--direction", choices=["plus", "minus"], default="plus")
    p = sub.add_parser("fuzz", help="seeded oracle comparisons on the bundled examples")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    return ap


COMMANDS = {
    "validate": cmd_validate,
    "quiver": cmd_quiver,
    "mutate": cmd_mutate,
    "expand": cmd_expand,
    "cc": cmd_cc,
    "verify": cmd_verify,
    "lattice": cmd_lattice,
    "grassmannian": cmd_grassmannian,
    "strings": cmd_strings,
}


def run(argv, out=print, err=None) -> int:
    err = err or (lambda m: print(m, file=sys.stderr))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        if args.command == "fuzz":
            return cmd_fuzz(args, out)
        session = parse_orbifold_file(args.file)
        if args.name_map:
            for disp, gen, src, tgt in name_map(session.triangulation):
                out(f"name {disp} = {gen} ({src}->{tgt})")
        return COMMANDS[args.command](session, args, out)
    except CliError as exc:
        err(str(exc))
        return exc.code
    except ValidationError as exc:
        err(f"invalid: {exc}")
        return EXIT_INVALID


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
