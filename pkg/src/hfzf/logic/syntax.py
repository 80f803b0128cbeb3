"""Propositions over Fls, #v and =>, their truth semantics and set encoding."""

from __future__ import annotations

import weakref
from itertools import combinations
from typing import Iterable, Optional, Union

from ..core import EMPTY, HSet, nat, pair
from ..datatypes import inl, inr, sum_view_or_none, Left, Right
from ..errors import NotAPropCode, ParseError
from ..recursion import vrec


class Prop:
    """Base of the interned proposition classes; equal props are identical."""

    __slots__ = ("__weakref__", "_hash")

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash


_table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


def _intern(cls, key, init, h):
    hit = _table.get(key)
    if hit is not None:
        return hit
    obj = object.__new__(cls)
    init(obj)
    # integer-only hash input keeps set iteration order stable across runs
    obj._hash = hash(h)
    _table[key] = obj
    return obj


def _h(x) -> int:
    return x._hash if isinstance(x, Prop) else hash(x)


class Fls(Prop):
    __slots__ = ()

    def __new__(cls):
        return _intern(cls, ("Fls",), lambda o: None, (0,))

    def __repr__(self):
        return "Fls()"

    def __str__(self):
        return "Fls"

    def __reduce__(self):
        return (Fls, ())


class Var(Prop):
    __slots__ = ("v",)

    def __new__(cls, v: int):
        def init(o):
            o.v = v
        return _intern(cls, ("Var", v), init, (1, v))

    def __repr__(self):
        return f"Var({self.v!r})"

    def __str__(self):
        return f"#{self.v}"

    def __reduce__(self):
        return (Var, (self.v,))


class Imp(Prop):
    __slots__ = ("p", "q")

    def __new__(cls, p: Prop, q: Prop):
        def init(o):
            o.p = p
            o.q = q
        # children are interned, so their identities determine the node
        return _intern(cls, ("Imp", id(p), id(q)), init, (2, _h(p), _h(q)))

    def __repr__(self):
        return f"Imp({self.p!r}, {self.q!r})"

    def __str__(self):
        left = f"({self.p})" if isinstance(self.p, Imp) else str(self.p)
        return f"{left} => {self.q}"

    def __reduce__(self):
        return (Imp, (self.p, self.q))


FLS = Fls()

Valuation = frozenset  # of int: the atoms regarded as true


def neg(p: Prop) -> Imp:
    return Imp(p, FLS)


def imps(*ps: Prop) -> Prop:
    """imps(a, b, c) = a => b => c"""
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = Imp(p, out)
    return out


def is_wellformed(p: object) -> bool:
    stack = [p]
    while stack:
        x = stack.pop()
        if isinstance(x, Imp):
            stack += [x.p, x.q]
        elif isinstance(x, Var):
            if not isinstance(x.v, int) or isinstance(x.v, bool) or x.v < 0:
                return False
        elif not isinstance(x, Fls):
            return False
    return True


def variables(p: Prop) -> frozenset:
    out = set()
    stack = [p]
    while stack:
        x = stack.pop()
        if isinstance(x, Imp):
            stack += [x.p, x.q]
        elif isinstance(x, Var):
            out.add(x.v)
    return frozenset(out)


def subformulas(p: Prop) -> set:
    out = set()
    stack = [p]
    while stack:
        x = stack.pop()
        if x in out:
            continue
        out.add(x)
        if isinstance(x, Imp):
            stack += [x.p, x.q]
    return out


def connectives(p: Prop) -> int:
    if isinstance(p, Imp):
        return 1 + connectives(p.p) + connectives(p.q)
    return 0


# -- text form ------------------------------------------------------------------

def print_prop(p: Prop) -> str:
    return str(p)


def parse_prop(text: str) -> Prop:
    parser = _PropParser(text)
    p = parser.prop()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError("trailing input", parser.pos, text)
    return p


class _PropParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def startswith(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def prop(self) -> Prop:
        left = self.atom()
        if self.startswith("=>"):
            self.pos += 2
            return Imp(left, self.prop())
        return left

    def atom(self) -> Prop:
        if self.startswith("("):
            self.pos += 1
            p = self.prop()
            if not self.startswith(")"):
                raise ParseError("expected ')'", self.pos, self.text)
            self.pos += 1
            return p
        if self.startswith("Fls"):
            self.pos += 3
            return FLS
        if self.startswith("#"):
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise ParseError("expected a variable number after '#'", start, self.text)
            return Var(int(self.text[start:self.pos]))
        raise ParseError("expected 'Fls', '#n' or '('", self.pos, self.text)


# -- set encoding: prop = {0} + nat + prop x prop -----------------------------------

def encode_prop(p: Prop) -> HSet:
    if isinstance(p, Fls):
        return inl(EMPTY)
    if isinstance(p, Var):
        return inr(inl(nat(p.v)))
    return inr(inr(pair(encode_prop(p.p), encode_prop(p.q))))


def _code_view(s: HSet):
    v = sum_view_or_none(s)
    if isinstance(v, Left):
        return ("fls",) if v.payload is EMPTY else None
    if isinstance(v, Right):
        w = sum_view_or_none(v.payload)
        if isinstance(w, Left) and w.payload.as_int() is not None:
            return ("var", w.payload)
        if isinstance(w, Right) and w.payload._pair is not None:
            return ("imp",) + w.payload._pair
    return None


def decode_prop(s: HSet) -> Prop:
    view = _code_view(s)
    if view is None:
        raise NotAPropCode(f"{s} does not encode a proposition")
    if view[0] == "fls":
        return FLS
    if view[0] == "var":
        return Var(view[1].as_int())
    return Imp(decode_prop(view[1]), decode_prop(view[2]))


# -- semantics --------------------------------------------------------------------

def _as_valuation(t: Union[Iterable[int], HSet]) -> frozenset:
    if isinstance(t, HSet):
        return frozenset(x.as_int() for x in t.elems if x.as_int() is not None)
    return frozenset(t)


def is_true(p: Prop, t) -> bool:
    t = _as_valuation(t)
    if isinstance(p, Fls):
        return False
    if isinstance(p, Var):
        return p.v in t
    return (not is_true(p.p, t)) or is_true(p.q, t)


def truth_value(code: HSet, t: HSet) -> HSet:
    """The truth value of an encoded proposition as 0 or 1, by rank recursion."""
    one = nat(1)

    def body(x, g):
        view = _code_view(x)
        if view is None:
            raise NotAPropCode(f"{x} does not encode a proposition")
        if view[0] == "fls":
            return EMPTY
        if view[0] == "var":
            return one if view[1] in t else EMPTY
        return EMPTY if (g(view[1]) is one and g(view[2]) is EMPTY) else one

    return vrec(code, body)


def valuations(vs: Iterable[int]):
    """All subsets of ``vs``, smallest first, in a fixed order."""
    vs = sorted(vs)
    for k in range(len(vs) + 1):
        for combo in combinations(vs, k):
            yield frozenset(combo)


def falsifying_valuation(hyps: Iterable[Prop], p: Prop) -> Optional[frozenset]:
    hyps = list(hyps)
    vs = set(variables(p))
    for h in hyps:
        vs |= variables(h)
    for t in valuations(vs):
        if all(is_true(h, t) for h in hyps) and not is_true(p, t):
            return t
    return None


def models(hyps: Iterable[Prop], p: Prop) -> bool:
    """H |= p, quantifying over valuations of the variables that occur."""
    return falsifying_valuation(hyps, p) is None


def hyps(p: Prop, t) -> frozenset:
    t = _as_valuation(t)
    if isinstance(p, Fls):
        return frozenset()
    if isinstance(p, Var):
        return frozenset([p if p.v in t else neg(p)])
    return hyps(p.p, t) | hyps(p.q, t)
