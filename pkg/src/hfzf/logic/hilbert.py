"""Hilbert-style derivations over the axioms K, S, DN and modus ponens.

A derivation is an explicit proof tree.  Nodes are immutable and compared
by identity, so transformers can share subtrees freely; the checker and the
transformers memoise on node identity and therefore run in time linear in
the number of distinct nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from ..errors import HypNotInContext, MalformedFormula, MalformedMP, ParseError
from .syntax import FLS, Imp, Prop, is_wellformed, neg, parse_prop


class Derivation:
    @property
    def children(self) -> tuple:
        return ()


@dataclass(frozen=True, eq=False)
class Hyp(Derivation):
    p: Prop

    @cached_property
    def conclusion(self) -> Prop:
        return self.p


@dataclass(frozen=True, eq=False)
class AxK(Derivation):
    p: Prop
    q: Prop

    @cached_property
    def conclusion(self) -> Prop:
        return Imp(self.p, Imp(self.q, self.p))


@dataclass(frozen=True, eq=False)
class AxS(Derivation):
    p: Prop
    q: Prop
    r: Prop

    @cached_property
    def conclusion(self) -> Prop:
        p, q, r = self.p, self.q, self.r
        return Imp(Imp(p, Imp(q, r)), Imp(Imp(p, q), Imp(p, r)))


@dataclass(frozen=True, eq=False)
class AxDN(Derivation):
    p: Prop

    @cached_property
    def conclusion(self) -> Prop:
        return Imp(Imp(Imp(self.p, FLS), FLS), self.p)


@dataclass(frozen=True, eq=False)
class MP(Derivation):
    """From ``major`` : p => q and ``minor`` : p, conclude q."""

    major: Derivation
    minor: Derivation

    @property
    def children(self) -> tuple:
        return (self.major, self.minor)

    @cached_property
    def conclusion(self) -> Prop:
        imp = self.major.conclusion
        if not isinstance(imp, Imp) or imp.p != self.minor.conclusion:
            raise MalformedMP(
                f"cannot apply {imp} to {self.minor.conclusion}"
            )
        return imp.q


def formulas_of(d: Derivation) -> tuple:
    if isinstance(d, Hyp) or isinstance(d, AxDN):
        return (d.p,)
    if isinstance(d, AxK):
        return (d.p, d.q)
    if isinstance(d, AxS):
        return (d.p, d.q, d.r)
    return ()


def check_derivation(d: Derivation, hyps: Iterable[Prop]) -> Prop:
    """Return the conclusion of ``d`` if it is a correct derivation from ``hyps``."""
    hyps = frozenset(hyps)
    seen: dict = {}

    def go(node, path):
        key = id(node)
        if key in seen:
            return seen[key]
        if not isinstance(node, Derivation):
            raise MalformedFormula(f"{node!r} is not a derivation node", path)
        for f in formulas_of(node):
            if not is_wellformed(f):
                raise MalformedFormula(f"{f!r} is not a proposition", path)
        if isinstance(node, Hyp) and node.p not in hyps:
            raise HypNotInContext(f"hypothesis {node.p} is not among the assumptions", path)
        if isinstance(node, MP):
            imp = go(node.major, path + (0,))
            arg = go(node.minor, path + (1,))
            if not isinstance(imp, Imp) or imp.p != arg:
                raise MalformedMP(f"cannot apply {imp} to {arg}", path)
        out = node.conclusion
        seen[key] = out
        return out

    return go(d, ())


def node_count(d: Derivation) -> int:
    seen = set()
    stack = [d]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        stack.extend(n.children)
    return len(seen)


def all_conclusions(d: Derivation) -> set:
    out = set()
    seen = set()
    stack = [d]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        out.add(n.conclusion)
        stack.extend(n.children)
    return out


# -- derived rules ------------------------------------------------------------------

def derive_I(p: Prop) -> Derivation:
    """|- p => p, from S, K and MP."""
    pp = Imp(p, p)
    return MP(MP(AxS(p, pp, p), AxK(p, pp)), AxK(p, p))


def weaken_right(d: Derivation, p: Prop) -> Derivation:
    """From H |- q derive H |- p => q."""
    q = d.conclusion
    return MP(AxK(q, p), d)


def deduction(
    d: Derivation, p: Prop, hyps: Optional[Iterable[Prop]] = None, prune: bool = True
) -> Derivation:
    """Turn a derivation from cons(p, H) into one of p => q from H.

    Structural recursion on ``d``: the hypothesis p becomes p => p, other
    leaves are weakened on the right, and modus ponens is pushed under the
    new antecedent with an S instance.  With ``prune`` an MP subtree that
    never uses p is weakened whole, as if it were a leaf.
    """
    if hyps is not None:
        check_derivation(d, frozenset(hyps) | {p})
    memo: dict = {}
    uses: dict = {}

    def mentions(node):
        key = id(node)
        hit = uses.get(key)
        if hit is None:
            if isinstance(node, MP):
                hit = mentions(node.major) or mentions(node.minor)
            else:
                hit = isinstance(node, Hyp) and node.p == p
            uses[key] = hit
        return hit

    def go(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Hyp) and node.p == p:
            out = derive_I(p)
        elif isinstance(node, MP) and not (prune and not mentions(node)):
            x = node.minor.conclusion
            y = node.conclusion
            out = MP(MP(AxS(p, x, y), go(node.major)), go(node.minor))
        else:
            out = weaken_right(node, p)
        memo[key] = out
        return out

    return go(d)


def ex_falso(d: Derivation, p: Prop) -> Derivation:
    """From H |- Fls derive H |- p."""
    if d.conclusion != FLS:
        raise MalformedMP(f"ex falso needs a derivation of Fls, got {d.conclusion}")
    return MP(AxDN(p), weaken_right(d, neg(p)))


def excluded_middle(d1: Derivation, d2: Derivation, q: Prop, hyps: Iterable[Prop] = ()) -> Derivation:
    """From cons(q, H) |- p and cons(q => Fls, H) |- p derive H |- p.

    With A : q => p and B : (q => Fls) => p (deduction), assume p => Fls;
    then q yields Fls via A, so q => Fls, so p via B, so Fls.  Discharging
    p => Fls gives (p => Fls) => Fls, and DN finishes.
    """
    p = d1.conclusion
    if d2.conclusion != p:
        raise MalformedMP(f"case conclusions differ: {p} vs {d2.conclusion}")
    hyps = frozenset(hyps)
    a = deduction(d1, q)
    b = deduction(d2, neg(q))
    not_p = neg(p)
    from_q = MP(Hyp(not_p), MP(a, Hyp(q)))
    not_q = deduction(from_q, q)
    absurd = MP(Hyp(not_p), MP(b, not_q))
    return MP(AxDN(p), deduction(absurd, not_p))


# -- bounded theorem sets -----------------------------------------------------------

def axiom_for(c: Prop) -> Optional[Derivation]:
    """The axiom node concluding c, if c is an instance of K, S or DN."""
    if not isinstance(c, Imp):
        return None
    # K: p => q => p
    if isinstance(c.q, Imp) and c.q.q == c.p:
        return AxK(c.p, c.q.p)
    # DN: ((p => Fls) => Fls) => p
    a = c.p
    if (
        isinstance(a, Imp) and a.q == FLS
        and isinstance(a.p, Imp) and a.p.q == FLS and a.p.p == c.q
    ):
        return AxDN(c.q)
    # S: (p => q => r) => (p => q) => (p => r)
    a, b = c.p, c.q
    if (
        isinstance(a, Imp) and isinstance(a.q, Imp)
        and isinstance(b, Imp) and isinstance(b.p, Imp) and isinstance(b.q, Imp)
    ):
        p, q, r = a.p, a.q.p, a.q.q
        if b.p == Imp(p, q) and b.q == Imp(p, r):
            return AxS(p, q, r)
    return None


def is_axiom(c: Prop) -> bool:
    return axiom_for(c) is not None


def subformula_closure(props: Iterable[Prop]) -> frozenset:
    from .syntax import subformulas

    out: set = set()
    for p in props:
        out |= subformulas(p)
    return frozenset(out)


def thms_bounded(hyps: Iterable[Prop], candidates: Iterable[Prop], max_steps: Optional[int] = None) -> frozenset:
    """Iterate X |-> (H n C) u axioms n C u MP(X) n C from the empty set."""
    cands = frozenset(candidates)
    base = frozenset(h for h in hyps if h in cands) | frozenset(c for c in cands if is_axiom(c))
    x: frozenset = frozenset()
    steps = 0
    while max_steps is None or steps < max_steps:
        mp = frozenset(
            c.q for c in x
            if isinstance(c, Imp) and c.p in x and c.q in cands
        )
        nxt = base | mp
        steps += 1
        if nxt == x:
            break
        x = nxt
    return x


# -- s-expression form ----------------------------------------------------------------

def to_sexpr(d: Derivation, indent: int = 0) -> str:
    pad = "  " * indent

    def q(p):
        return '"' + str(p) + '"'

    if isinstance(d, Hyp):
        return f"{pad}(hyp {q(d.p)})"
    if isinstance(d, AxK):
        return f"{pad}(K {q(d.p)} {q(d.q)})"
    if isinstance(d, AxS):
        return f"{pad}(S {q(d.p)} {q(d.q)} {q(d.r)})"
    if isinstance(d, AxDN):
        return f"{pad}(DN {q(d.p)})"
    return (
        f"{pad}(mp\n{to_sexpr(d.major, indent + 1)}\n{to_sexpr(d.minor, indent + 1)})"
    )


def _tokens(text: str):
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, i
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", i, text)
            yield ("str", text[i + 1:j]), i
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '()";':
                j += 1
            yield ("atom", text[i:j]), i
            i = j


_ARITY = {"hyp": 1, "K": 2, "S": 3, "DN": 1}


def parse_sexpr(text: str) -> Derivation:
    toks = list(_tokens(text))
    pos = 0

    def at():
        return toks[pos] if pos < len(toks) else (None, len(text))

    def node():
        nonlocal pos
        tok, where = at()
        if tok != "(":
            raise ParseError("expected '('", where, text)
        pos += 1
        head, where = at()
        if not (isinstance(head, tuple) and head[0] == "atom"):
            raise ParseError("expected a rule name", where, text)
        pos += 1
        name = head[1]
        if name == "mp":
            major = node()
            minor = node()
            args = (major, minor)
        elif name in _ARITY:
            props = []
            for _ in range(_ARITY[name]):
                tok, where = at()
                if not isinstance(tok, tuple):
                    raise ParseError("expected a proposition", where, text)
                pos += 1
                try:
                    props.append(parse_prop(tok[1]))
                except ParseError as exc:
                    raise ParseError(f"bad proposition {tok[1]!r}", where, text) from exc
            args = tuple(props)
        else:
            raise ParseError(f"unknown rule {name!r}", where, text)
        tok, where = at()
        if tok != ")":
            raise ParseError("expected ')'", where, text)
        pos += 1
        return {"hyp": Hyp, "K": AxK, "S": AxS, "DN": AxDN, "mp": MP}[name](*args)

    d = node()
    if pos != len(toks):
        raise ParseError("trailing input", toks[pos][1], text)
    return d
