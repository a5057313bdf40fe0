"""Command-line front end: one graph, one subcommand, deterministic output."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .artin import format_artin, omega, parse_artin, retract_pX, section_sigma
from .coxeter import DEFAULT_BOUND, coxeter_group, parse_word
from .decomposition import build_table, remak_decompose, verify_decompW
from .errors import CoxkitError
from .graph import analyze, emit, parse_graph, preset
from .hat import build_hat, filtration_order, verify_filtration
from .virtual import format_va, normal_pair, parse_va, split_components, va3_resolve

ALIASES = ("s", "t", "u", "v")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Report usage problems on one line and exit with status 2."""

    def error(self, message):
        sys.stderr.write(f"coxkit: usage error: {message}\n")
        sys.exit(2)


def _common(p: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand-level default from clobbering a global flag
    p.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS)
    p.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                   help="length bound for truncated root/hat enumeration")
    p.add_argument("--bound", type=int, default=argparse.SUPPRESS,
                   help=f"enumeration cap (default {DEFAULT_BOUND}, or $COXKIT_BOUND)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxkit", description=__doc__)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", nargs=2, metavar=("FAMILY", "PARAM"))
    src.add_argument("--graph", metavar="FILE")
    src.add_argument("--inline", metavar="TEXT")
    _common(p)
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def cmd(name, help_, words=False):
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        if words:
            sp.add_argument("word", nargs="*", help="word tokens (read from stdin when omitted)")
        return sp

    cmd("analyze", "connected components, ∞-connectivity and spherical type")
    cmd("roots", "enumerate the root system")
    cmd("hat", "the Coxeter graph on the roots")
    cmd("filtration", "ordering of positive roots with connected prefixes")
    cmd("w0", "longest element and whether it is central")
    cmd("reduce", "canonical reduced word of a W-word", words=True)
    cmd("support", "support of a W-word", words=True)
    cmd("qz", "centre and quasi-centre by brute force")
    sp = cmd("retract", "retraction onto a standard parabolic Artin subgroup", words=True)
    sp.add_argument("--sub", required=True, metavar="X", help="comma- or space-separated vertices")
    cmd("omega", "image of an Artin word in W", words=True)
    cmd("section", "positive Artin word along the reduced word of a W-element", words=True)
    sp = cmd("va-normal", "kernel word and W-part of a virtual Artin word", words=True)
    sp.add_argument("--kind", choices=("K", "P"), default="K")
    sp = cmd("va3", "mixed relation for a pair of vertices")
    sp.add_argument("s")
    sp.add_argument("t")
    cmd("split", "split a virtual Artin word by connected components", words=True)
    cmd("remak", "Remak decompositions of a finite W")
    cmd("verify-decompw", "check decomposability against the classification")
    return p


# -- helpers -------------------------------------------------------------------

def _load_graph(args):
    if args.preset:
        return preset(*args.preset)
    if args.graph:
        with open(args.graph, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    if args.inline:
        return parse_graph(args.inline.replace(";", "\n"))
    raise UsageError("one of --preset, --graph or --inline is required")


def _resolve(g, name: str) -> str:
    """Vertex names, with ``s t u v`` standing for the first four vertices
    when the graph has no vertex of that name."""
    if name in g:
        return name
    if name in ALIASES and ALIASES.index(name) < len(g):
        return g.vertices[ALIASES.index(name)]
    return name


def _resolve_token(g, tok: str) -> str:
    if tok.startswith("t:") and tok not in g:
        return "t:" + _resolve(g, tok[2:])
    name, sep, rest = tok.partition("^")
    return _resolve(g, name) + sep + rest


def _words(g, args) -> list:
    toks = list(args.word)
    if not toks and not sys.stdin.isatty():
        toks = sys.stdin.read().split()
    return [_resolve_token(g, t) for t in toks]


def _check_vertices(g, names):
    for v in names:
        if v not in g:
            raise CoxkitError(f"unknown vertex {v!r}")


def _dump(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, sort_keys=False) + "\n"


# -- subcommands ------------------------------------------------------------------

def _analyze(g, args):
    rep = analyze(g)
    if args.format == "json":
        doc = rep.to_json()
        doc.update(spherical=rep.spherical, connected=rep.connected)
        return _dump(doc)
    if args.format == "dot":
        return emit(g, "dot")
    lines = []
    for c in rep.components:
        lines.append(f"component {' '.join(c.vertices)}: {c.verdict}, "
                     f"positive definite: {'yes' if c.positive_definite else 'no'}, "
                     f"∞-connected: {'yes' if c.infty_connected else 'no'}")
    lines.append(f"spherical: {'yes' if rep.spherical else 'no'}")
    return "\n".join(lines) + "\n"


def _roots(g, args):
    R = coxeter_group(g).roots(args.depth)
    if args.format == "json":
        return _dump({"count": len(R), "complete": R.complete,
                      "positive": len(R.positive),
                      "roots": [{"name": r.name(), "sign": r.sign()} for r in R]})
    head = f"{len(R)} roots ({len(R.positive)} positive)"
    if not R.complete:
        head += f", truncated at depth {R.depth}"
    return "\n".join([head] + [("+ " if r.sign() > 0 else "- ") + r.name() for r in R]) + "\n"


def _hat(g, args):
    h = build_hat(g, args.depth, args.bound)
    if args.format == "json":
        doc = json.loads(emit(h.graph, "json"))
        doc["truncated"] = h.truncated
        doc["unknown_pairs"] = sorted(sorted(h.roots.roots[i].name() for i in p) for p in h.unknown_pairs)
        return _dump(doc)
    return emit(h.graph, args.format)


def _filtration(g, args):
    h = build_hat(g, None, args.bound)
    f = filtration_order(h)
    rep = verify_filtration(h, f)
    if args.format == "json":
        doc = rep.to_json()
        doc["order"] = [r.name() for r in f.order]
        return _dump(doc)
    lines = [f"{i} {r.name()} connected={c} infty_connected={ic}"
             for (i, c, ic), r in zip(rep.prefixes, f.order)]
    lines.append("ok" if rep.ok else "FAILED")
    return "\n".join(lines) + "\n"


def _w0(g, args):
    w0, central = coxeter_group(g).longest_element(args.bound)
    if args.format == "json":
        return _dump({"word": " ".join(w0.word), "length": w0.length, "central": central})
    return f"{' '.join(w0.word)}\nlength {w0.length}\ncentral {'yes' if central else 'no'}\n"


def _reduce(g, args):
    ws = parse_word(_words(g, args))
    _check_vertices(g, ws)
    w = coxeter_group(g).element(ws)
    if args.format == "json":
        return _dump({"word": " ".join(w.word), "length": w.length})
    return " ".join(w.word) + "\n"


def _support(g, args):
    ws = parse_word(_words(g, args))
    _check_vertices(g, ws)
    sup = sorted(coxeter_group(g).element(ws).support(), key=g.index)
    if args.format == "json":
        return _dump({"support": sup})
    return " ".join(sup) + "\n"


def _qz(g, args):
    Z, QZ = coxeter_group(g).center_and_quasi_center(args.bound)
    if args.format == "json":
        return _dump({"center": [" ".join(z.word) for z in Z],
                      "quasi_center": [" ".join(z.word) for z in QZ]})
    fmt = lambda xs: ", ".join(" ".join(x.word) or "id" for x in xs)
    return f"Z: {fmt(Z)}\nQZ: {fmt(QZ)}\n"


def _retract(g, args):
    X = [_resolve(g, x) for x in args.sub.replace(",", " ").split()]
    _check_vertices(g, X)
    w = parse_artin(_words(g, args), g)
    out, trace = retract_pX(w, X, g)
    if args.format == "json":
        return _dump({"result": format_artin(out), "trace": trace.to_json()})
    return format_artin(out) + "\n"


def _omega(g, args):
    w = omega(parse_artin(_words(g, args), g), g)
    if args.format == "json":
        return _dump({"word": " ".join(w.word), "identity": w.is_identity()})
    return " ".join(w.word) + "\n"


def _section(g, args):
    ws = parse_word(_words(g, args))
    _check_vertices(g, ws)
    out = section_sigma(coxeter_group(g).element(ws))
    if args.format == "json":
        return _dump({"word": format_artin(out)})
    return format_artin(out) + "\n"


def _va_normal(g, args):
    word = parse_va(_words(g, args), g)
    np_ = normal_pair(word, args.kind, g, args.depth)
    if args.format == "json":
        return _dump(np_.to_json())
    return f"{np_.kernel_part}\n{' '.join(np_.coxeter_part.word)}\n"


def _va3(g, args):
    rel = va3_resolve(g, _resolve(g, args.s), _resolve(g, args.t))
    if args.format == "json":
        return _dump(rel.to_json())
    return f"r = {rel.r}\n{format_va(rel.lhs)} = {format_va(rel.rhs)}\n"


def _split(g, args):
    parts = split_components(parse_va(_words(g, args), g), g)
    if args.format == "json":
        return _dump([{"component": list(k), "word": format_va(v)} for k, v in parts.items()])
    return "".join(f"{' '.join(k)}: {format_va(v)}\n" for k, v in parts.items())


def _remak(g, args):
    t = build_table(g, args.bound)
    decs = remak_decompose(t)
    if args.format == "json":
        return _dump({"order": t.order, "decomposable": len(decs[0].factors) > 1,
                      "factors": decs[0].orders,
                      "decompositions": [d.orders for d in decs]})
    lines = [f"order {t.order}"]
    lines += [" x ".join(str(o) for o in d.orders) for d in decs]
    return "\n".join(lines) + "\n"


def _verify(g, args):
    rep = verify_decompW(g, args.bound)
    if args.format == "json":
        return _dump(rep.to_json())
    return "".join(f"{k} {v}\n" for k, v in rep.to_json().items())


COMMANDS = {
    "analyze": _analyze, "roots": _roots, "hat": _hat, "filtration": _filtration,
    "w0": _w0, "reduce": _reduce, "support": _support, "qz": _qz,
    "retract": _retract, "omega": _omega, "section": _section,
    "va-normal": _va_normal, "va3": _va3, "split": _split,
    "remak": _remak, "verify-decompw": _verify,
}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse and dispatch; returns (exit status, stdout text). Usage errors exit via the parser."""
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.depth = getattr(args, "depth", None)
    bound = getattr(args, "bound", None)
    if bound is None:
        env = os.environ.get("COXKIT_BOUND")
        try:
            bound = int(env) if env else DEFAULT_BOUND
        except ValueError:
            raise UsageError(f"COXKIT_BOUND must be an integer, got {env!r}") from None
    if bound <= 0:
        raise UsageError("--bound must be positive")
    args.bound = bound
    if args.format == "dot" and args.command not in ("analyze", "hat"):
        raise UsageError("--format dot is only available for analyze and hat")
    g = _load_graph(args)
    return 0, COMMANDS[args.command](g, args)


def main(argv: list[str] | None = None) -> int:
    try:
        status, out = run(argv)
    except UsageError as e:
        sys.stderr.write(f"coxkit: usage error: {e}\n")
        return 2
    except (CoxkitError, OSError, RecursionError) as e:
        msg = " ".join(str(e).split()) or type(e).__name__
        sys.stderr.write(f"coxkit: error: {msg}\n")
        return 1
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
