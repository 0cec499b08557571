"""Command line interface: construct, verify, conlat, gadget, corpus."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .congruence import congruence_lattice
from .corpus import mode_checks, run_corpus
from .errors import LatticeError
from .io import emit_dot, parse_document, recover_embedding, serialize
from .kit import find_s8, load_s8
from .order import downset_lattice, is_distributive, make_poset, validate_lattice
from .pipeline import MODES, assemble
from .verify import ALL_CHECKS, certify


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def load_target(text, kind="auto"):
    """The distributive lattice described by a poset or lattice file.

    ``auto`` reads the file as the lattice itself when it is a distributive
    lattice and as its poset of join-irreducibles otherwise.
    """
    doc = parse_document(text)
    if kind in ("auto", "lattice"):
        try:
            L = validate_lattice(doc.elements, doc.covers)
        except LatticeError:
            if kind == "lattice":
                raise
        else:
            if is_distributive(L):
                return L
            if kind == "lattice":
                raise LatticeError("input lattice is not distributive")
    return downset_lattice(make_poset(doc.elements, doc.covers))


def _load_colored(text):
    doc = parse_document(text)
    L = validate_lattice(doc.elements, doc.covers)
    emb = recover_embedding(L)
    if emb is not None:
        L = L.with_embedding(emb)
    idx = L.index
    colors = {(idx[a], idx[b]): c for (a, b), c in doc.colors.items()} or None
    witnesses = {role[2:]: (labs[0], labs[-1]) for role, labs in doc.boundaries.items()
                 if role.startswith("W_")}
    return L, colors, witnesses or None


def _print_checks(cert, out):
    for name, verdict in cert.checks.items():
        status = "pass" if verdict else "FAIL"
        extra = ""
        if not verdict:
            extra = f"  {verdict.detail}"
            if verdict.witness is not None:
                extra += f" {verdict.witness}"
        print(f"{name:<12} {status}{extra}", file=out)


def cmd_construct(args, out):
    D = load_target(_read(args.input), args.input_kind)
    rep = assemble(D, args.mode)
    cert = certify(rep.L.lattice, D, colors=rep.L.colors, witnesses=rep.witnesses or None,
                   checks=mode_checks(args.mode))
    rep.certificate = cert
    _write(args.output, serialize(rep.L))
    if args.dot:
        _write(args.dot, emit_dot(rep.L))
    if args.report:
        _write(args.report, rep.to_json())
    print(f"|D| = {D.n}, |L| = {rep.L.n}, mode = {args.mode}", file=out)
    _print_checks(cert, out)
    return 0 if cert.ok else 1


def cmd_verify(args, out):
    L, colors, witnesses = _load_colored(_read(args.input))
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        print(f"unknown check(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    D = load_target(_read(args.d), args.input_kind) if args.d else None
    cert = certify(L, D, colors=colors, witnesses=witnesses, checks=checks)
    _print_checks(cert, out)
    return 0 if cert.ok else 1


def cmd_conlat(args, out):
    L, _, _ = _load_colored(_read(args.input))
    cl = congruence_lattice(L)
    _write(args.output, serialize(cl.lattice))
    print(f"|Con L| = {len(cl)}, join-irreducible: {len(cl.join_irreducible)}", file=out)
    return 0


def cmd_gadget(args, out):
    g = find_s8() if args.search else load_s8()
    _write(args.output, serialize(g.colored))
    print(f"gadget with {g.lattice.n} elements written to {args.output}", file=out)
    return 0


def cmd_corpus(args, out):
    summary = run_corpus(args.max, args.mode)
    print(summary.table(), file=out)
    passed = sum(c.ok for c in summary.cases)
    print(f"{passed}/{len(summary.cases)} cases pass", file=out)
    return 0 if summary.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conrep",
        description="Planar semimodular lattices with a prescribed congruence lattice.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build L from a poset or distributive lattice")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--mode", choices=MODES, default="principal")
    p.add_argument("--input-kind", choices=("auto", "poset", "lattice"), default="auto")
    p.add_argument("--dot")
    p.add_argument("--report")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a lattice file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-d", help="poset or distributive lattice the congruences should match")
    p.add_argument("--input-kind", choices=("auto", "poset", "lattice"), default="auto")
    p.add_argument("--checks", default="semimodular,planar")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conlat", help="write the congruence lattice of a lattice file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_conlat)

    p = sub.add_parser("gadget", help="write the eight-element gadget")
    p.add_argument("--search", action="store_true", help="rerun the exhaustive search")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("corpus", help="assemble and certify every small poset")
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--mode", choices=MODES, default="principal")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (LatticeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
