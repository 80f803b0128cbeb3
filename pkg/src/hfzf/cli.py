"""The ``hfzf`` command line.

Exit codes: 0 success, 1 semantic negative (not a member, not well-founded,
falsifiable, ...), 2 input or parse error, 3 budget or size bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import core, selftest
from .core import HSet, parse_set, print_set
from .errors import (
    DerivationError,
    HFError,
    ParseError,
    ResourceLimit,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# -- output -------------------------------------------------------------------------

def set_to_sexpr(s: HSet) -> str:
    return "(set" + "".join(" " + set_to_sexpr(x) for x in s.elems) + ")"


def sexpr_to_set(text: str) -> HSet:
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def node():
        nonlocal pos
        if toks[pos:pos + 2] != ["(", "set"]:
            raise ParseError("expected '(set'", pos, text)
        pos += 2
        items = []
        while pos < len(toks) and toks[pos] == "(":
            items.append(node())
        if pos >= len(toks) or toks[pos] != ")":
            raise ParseError("expected ')'", pos, text)
        pos += 1
        return core.mk(items)

    s = node()
    if pos != len(toks):
        raise ParseError("trailing input", pos, text)
    return s


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def line(self, text: str) -> None:
        print(text, file=self.stream)

    def set(self, s: HSet, label: Optional[str] = None) -> None:
        if self.fmt == "sexpr":
            body = set_to_sexpr(s)
            self.line(f"({label} {body})" if label else body)
        else:
            self.line(f"{label}: {print_set(s)}" if label else print_set(s))

    def flag(self, name: str, value: bool) -> None:
        v = "true" if value else "false"
        self.line(f"({name} {v})" if self.fmt == "sexpr" else f"{name}: {v}")

    def word(self, w: str) -> None:
        self.line(f"({w})" if self.fmt == "sexpr" else w)


def _valuation_text(t: frozenset, fmt: str) -> str:
    vs = sorted(t)
    if fmt == "sexpr":
        return "(valuation" + "".join(f" {v}" for v in vs) + ")"
    return "{" + ", ".join(str(v) for v in vs) + "}"


# -- argument types -----------------------------------------------------------------

def _read_hyps(path: Optional[str]) -> list:
    from .logic.syntax import parse_prop

    if path is None:
        return []
    out = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split(";", 1)[0].strip()
            if line:
                out.append(parse_prop(line))
    return out


# -- commands -----------------------------------------------------------------------

def cmd_rank(a, out):
    from .recursion import rank

    out.set(rank(parse_set(a.set)))
    return EXIT_OK


def cmd_eclose(a, out):
    from .recursion import eclose

    out.set(eclose(parse_set(a.set)))
    return EXIT_OK


def cmd_vfrom(a, out):
    from .recursion import vfrom

    out.set(vfrom(parse_set(a.set), a.n))
    return EXIT_OK


def cmd_inuniv(a, out):
    from .recursion import in_univ

    ok = in_univ(parse_set(a.A), parse_set(a.set))
    out.flag("member", ok)
    return EXIT_OK if ok else EXIT_NO


def cmd_rtrancl(a, out):
    from .relations import rtrancl

    out.set(rtrancl(parse_set(a.set)))
    return EXIT_OK


def cmd_memrel(a, out):
    from .relations import memrel

    out.set(memrel(parse_set(a.set)))
    return EXIT_OK


def cmd_wf(a, out):
    from .relations import is_wf

    ok = is_wf(parse_set(a.set))
    out.flag("wf", ok)
    return EXIT_OK if ok else EXIT_NO


def cmd_ord(a, out):
    from .ordinals import is_limit, is_ord, is_transset

    s = parse_set(a.set)
    out.flag("Transset", is_transset(s))
    out.flag("Ord", is_ord(s))
    out.flag("Limit", is_limit(s))
    return EXIT_OK


NATREC_BODIES = {
    "add": lambda _m, r: core.succ(r),
    "double": lambda _m, r: core.succ(core.succ(r)),
}


def cmd_natrec(a, out):
    from .ordinals import nat_rec

    out.set(nat_rec(parse_set(a.a), NATREC_BODIES[a.body], parse_set(a.k)))
    return EXIT_OK


def cmd_lfp(a, out):
    from .fixedpoint import lfp_iterate, op_from_spec

    try:
        h = op_from_spec(a.op)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.set(lfp_iterate(parse_set(a.bound), h))
    return EXIT_OK


def cmd_banach(a, out):
    from .fixedpoint import banach_decompose, check_function, schroeder_bernstein

    x, y, f, g = (parse_set(v) for v in (a.X, a.Y, a.f, a.g))
    parts = banach_decompose(x, y, f, g)
    for name in ("xa", "xb", "ya", "yb"):
        out.set(getattr(parts, name), name.upper())
    injective = all(
        len(set(t.values())) == len(t)
        for t in (check_function(f, x, y, "f"), check_function(g, y, x, "g"))
    )
    if injective:
        out.set(schroeder_bernstein(x, y, f, g), "bijection")
    else:
        out.word("not injective: no bijection")
    return EXIT_OK


def cmd_list(a, out):
    from .datatypes import is_list, length, to_pylist, anything

    s = parse_set(a.set)
    if not is_list(anything, s):
        out.flag("list", False)
        return EXIT_NO
    items = to_pylist(s)
    if out.fmt == "sexpr":
        out.line("(list" + "".join(" " + set_to_sexpr(x) for x in items) + ")")
    else:
        out.line("[" + ", ".join(print_set(x) for x in items) + "]")
        out.line(f"length: {length(s)}")
    return EXIT_OK


def cmd_reflect(a, out):
    from .datatypes import reflect

    out.set(reflect(parse_set(a.set)))
    return EXIT_OK


TF_MAP_FNS = {"succ": core.succ, "id": lambda u: u}


def cmd_tf(a, out):
    from .datatypes import tf_map, tf_preorder, tf_size

    z = parse_set(a.set)
    if a.op == "map":
        out.set(tf_map(TF_MAP_FNS[a.map_fn], z))
    elif a.op == "size":
        out.set(tf_size(z))
    else:
        out.set(tf_preorder(z))
    return EXIT_OK


def cmd_fin(a, out):
    from .datatypes import fin_enum

    out.set(fin_enum(parse_set(a.set)))
    return EXIT_OK


def cmd_prop_valid(a, out):
    from .logic.syntax import falsifying_valuation, parse_prop

    hs = _read_hyps(a.H)
    t = falsifying_valuation(hs, parse_prop(a.prop))
    if t is None:
        out.word("valid")
        return EXIT_OK
    out.line(f"falsifiable: {_valuation_text(t, out.fmt)}" if out.fmt == "text"
             else f"(falsifiable {_valuation_text(t, out.fmt)})")
    return EXIT_NO


def cmd_prop_prove(a, out):
    from .logic.completeness import prove_complete
    from .logic.hilbert import to_sexpr
    from .logic.syntax import parse_prop

    hs = _read_hyps(a.H)
    res = prove_complete(hs, parse_prop(a.prop))
    if isinstance(res, frozenset):
        out.line(f"falsifiable: {_valuation_text(res, out.fmt)}" if out.fmt == "text"
                 else f"(falsifiable {_valuation_text(res, out.fmt)})")
        return EXIT_NO
    text = to_sexpr(res)
    if a.o:
        with open(a.o, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        out.word("proved")
    else:
        out.line(text)
    return EXIT_OK


def cmd_prop_check(a, out):
    from .logic.hilbert import check_derivation, parse_sexpr

    hs = _read_hyps(a.H)
    with open(a.file, encoding="utf-8") as fh:
        d = parse_sexpr(fh.read())
    try:
        c = check_derivation(d, hs)
    except DerivationError as exc:
        path = "/".join(str(i) for i in exc.path) or "<root>"
        if out.fmt == "sexpr":
            out.line(f'(rejected "{path}" "{exc.message}")')
        else:
            out.line(f"rejected at {path}: {exc.message}")
        return EXIT_INPUT
    out.line(f'(checks "{c}")' if out.fmt == "sexpr" else f"checks: {c}")
    return EXIT_OK


def cmd_selftest(a, out):
    if a.suite not in selftest.SUITES and a.suite != "all":
        print(f"unknown suite {a.suite!r}; expected one of "
              f"{', '.join(selftest.SUITES + ('all',))}", file=sys.stderr)
        return EXIT_INPUT
    return selftest.run(a.suite, a.seed, out=out.line)


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hfzf", description="Induction and recursion over hereditarily finite sets.")
    p.add_argument("--budget", type=int, default=core.DEFAULT_BUDGET,
                   help="maximum number of interned sets (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for selftest generators")
    p.add_argument("--format", choices=("text", "sexpr"), default="text")
    sub = p.add_subparsers(dest="cmd", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def one_set(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("set")
        sp.set_defaults(fn=fn)
        return sp

    one_set("rank", cmd_rank, "rank of a set")
    one_set("eclose", cmd_eclose, "transitive closure under membership")
    sp = one_set("vfrom", cmd_vfrom, "cumulative hierarchy stage V[A]_n")
    sp.add_argument("n", type=int)
    sp = one_set("inuniv", cmd_inuniv, "membership in univ(A)")
    sp.add_argument("--A", required=True)
    one_set("rtrancl", cmd_rtrancl, "reflexive transitive closure of a relation")
    one_set("memrel", cmd_memrel, "membership relation on a set")
    one_set("wf", cmd_wf, "is the relation well-founded")
    one_set("ord", cmd_ord, "report Transset, Ord and Limit")

    sp = sub.add_parser("natrec", help="nat_rec with a builtin body")
    sp.add_argument("a")
    sp.add_argument("k")
    sp.add_argument("--body", choices=sorted(NATREC_BODIES), required=True)
    sp.set_defaults(fn=cmd_natrec)

    sp = sub.add_parser("lfp", help="least fixedpoint of a builtin operator")
    sp.add_argument("--op", required=True,
                    help="id | replsucc | const:<set> | closure:<rel> | fin:<set>")
    sp.add_argument("--bound", required=True)
    sp.set_defaults(fn=cmd_lfp)

    sp = sub.add_parser("banach", help="Banach decomposition and Schroeder-Bernstein")
    for flag in ("--X", "--Y", "--f", "--g"):
        sp.add_argument(flag, required=True)
    sp.set_defaults(fn=cmd_banach)

    one_set("list", cmd_list, "recognise and print a list encoding")
    one_set("reflect", cmd_reflect, "mirror a term")
    sp = one_set("tf", cmd_tf, "operations on trees and forests")
    sp.add_argument("--op", choices=("map", "size", "preorder"), required=True)
    sp.add_argument("--fn", dest="map_fn", choices=sorted(TF_MAP_FNS), default="succ",
                    help="label function for --op map")
    one_set("fin", cmd_fin, "Fin(A), the finite subsets of A")

    prop = sub.add_parser("prop", help="propositional logic")
    psub = prop.add_subparsers(dest="pcmd", metavar="PROPCMD", parser_class=_Parser)
    psub.required = True
    sp = psub.add_parser("valid", help="decide H |= p")
    sp.add_argument("prop")
    sp.add_argument("-H", help="hypothesis file, one proposition per line")
    sp.set_defaults(fn=cmd_prop_valid)
    sp = psub.add_parser("prove", help="derive p from H or print a falsifying valuation")
    sp.add_argument("prop")
    sp.add_argument("-H")
    sp.add_argument("-o", help="write the derivation here")
    sp.set_defaults(fn=cmd_prop_prove)
    sp = psub.add_parser("check", help="check a derivation file")
    sp.add_argument("file")
    sp.add_argument("-H")
    sp.set_defaults(fn=cmd_prop_check)

    sp = sub.add_parser("selftest", help="run the oracle suites")
    sp.add_argument("suite", help="core | fixedpoint | recursion | datatypes | logic | all")
    sp.add_argument("--seed", type=int, default=None, dest="sub_seed")
    sp.set_defaults(fn=cmd_selftest)
    return p


def run(argv: Sequence[str], stdout=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(list(argv))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if getattr(a, "sub_seed", None) is not None:
        a.seed = a.sub_seed
    out = Out(a.format, stdout)
    ctx = core.context()
    old = ctx.budget
    ctx.budget = a.budget
    try:
        return a.fn(a, out)
    except UsageError as exc:
        print(f"hfzf: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as exc:
        print(f"hfzf: parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimit, RecursionError, MemoryError) as exc:
        print(f"hfzf: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (HFError, OSError) as exc:
        print(f"hfzf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        ctx.budget = old


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
