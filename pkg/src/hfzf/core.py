"""Hereditarily finite sets.

Every set is built through :func:`mk`, which normalises the element
collection (deduplicated, sorted by a fixed total order) and interns the
result.  Two sets are therefore extensionally equal exactly when they are
the same Python object, and ``==`` is identity.

The total order compares cardinality first and then the sorted element
sequences lexicographically.  Hashes are derived structurally from the
elements, so iteration order of Python containers holding sets is
reproducible across runs.
"""

from __future__ import annotations

import weakref
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, Optional

from .errors import (
    BoundExceeded,
    BudgetExceeded,
    ContextFrozen,
    NotAPair,
    NotInDomain,
    NotSingleValued,
    ParseError,
)

DEFAULT_BUDGET = 10**6
POWERSET_LIMIT = 20


class Context:
    """Interning table plus the element budget guarding it.

    A context has a single writer.  Once frozen it refuses to create new
    sets and may then be shared by concurrent readers.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.frozen = False
        self._table: "weakref.WeakValueDictionary[frozenset, HSet]" = (
            weakref.WeakValueDictionary()
        )

    def __len__(self) -> int:
        return len(self._table)

    def freeze(self) -> None:
        self.frozen = True

    def thaw(self) -> None:
        self.frozen = False

    def intern(self, members: frozenset) -> "HSet":
        s = self._table.get(members)
        if s is not None:
            return s
        if self.frozen:
            raise ContextFrozen("cannot create new sets in a frozen context")
        if len(self._table) >= self.budget:
            raise BudgetExceeded(
                f"element budget of {self.budget} interned sets exhausted"
            )
        s = HSet._build(members)
        self._table[members] = s
        return s


_context = Context()


def context() -> Context:
    return _context


@contextmanager
def budget(limit: int):
    """Temporarily change the element budget of the active context."""
    old = _context.budget
    _context.budget = limit
    try:
        yield _context
    finally:
        _context.budget = old


class HSet:
    """An interned hereditarily finite set.  Never instantiate directly."""

    __slots__ = (
        "elems", "_mset", "_key", "_hash", "_rank", "_ord", "_pair", "__weakref__",
    )

    elems: tuple
    _mset: frozenset
    _key: tuple
    _hash: int
    _rank: int
    _ord: Optional[int]
    _pair: Optional[tuple]

    @classmethod
    def _build(cls, members: frozenset) -> "HSet":
        s = object.__new__(cls)
        elems = tuple(sorted(members, key=_sort_key))
        s.elems = elems
        s._mset = members
        s._key = (len(elems), tuple(e._key for e in elems))
        s._hash = hash((len(elems), tuple(e._hash for e in elems)))
        s._rank = max((e._rank + 1 for e in elems), default=0)
        if all(e._ord == i for i, e in enumerate(elems)):
            s._ord = len(elems)
        else:
            s._ord = None
        s._pair = _decode_pair(elems)
        return s

    def __hash__(self) -> int:
        return self._hash

    # identity is extensional equality; the default __eq__ is what we want

    def __lt__(self, other: "HSet") -> bool:
        return self._key < other._key

    def __le__(self, other: "HSet") -> bool:
        return self is other or self._key < other._key

    def __gt__(self, other: "HSet") -> bool:
        return self._key > other._key

    def __ge__(self, other: "HSet") -> bool:
        return self is other or self._key > other._key

    def __iter__(self) -> Iterator["HSet"]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x: object) -> bool:
        return x in self._mset

    def __bool__(self) -> bool:
        return bool(self.elems)

    def __repr__(self) -> str:
        return f"HSet({print_set(self)})"

    def __str__(self) -> str:
        return print_set(self)

    def __reduce__(self):
        return (parse_set, (print_set(self),))

    @property
    def rank_int(self) -> int:
        return self._rank

    def as_int(self) -> Optional[int]:
        """The n with self == n as a von Neumann ordinal, else None."""
        return self._ord

    @property
    def is_pair(self) -> bool:
        return self._pair is not None

    def pair_parts(self) -> tuple:
        if self._pair is None:
            raise NotAPair(f"{print_set(self)} is not an ordered pair")
        return self._pair


def _sort_key(s: HSet) -> tuple:
    return s._key


def _decode_pair(elems: tuple) -> Optional[tuple]:
    # <a,b> = {{a},{a,b}}; with a == b this collapses to {{a}}
    if len(elems) == 1:
        (c,) = elems
        if len(c.elems) == 1:
            a = c.elems[0]
            return (a, a)
        return None
    if len(elems) == 2:
        small, big = elems
        if len(small.elems) == 1 and len(big.elems) == 2:
            a = small.elems[0]
            if a in big._mset:
                x, y = big.elems
                return (a, y if x is a else x)
    return None


# -- construction ------------------------------------------------------------

def mk(items: Iterable[HSet] = ()) -> HSet:
    """The set whose elements are ``items`` (duplicates collapse)."""
    return _context.intern(frozenset(items))


EMPTY = mk()


def singleton(x: HSet) -> HSet:
    return mk((x,))


def nat(n: int) -> HSet:
    """The von Neumann numeral n = {0, ..., n-1}."""
    if n < 0:
        raise ValueError("natural numbers are non-negative")
    s = EMPTY
    for _ in range(n):
        s = succ(s)
    return s


def cons(x: HSet, a: HSet) -> HSet:
    if x in a:
        return a
    return _context.intern(a._mset | {x})


def succ(x: HSet) -> HSet:
    return cons(x, x)


# -- ZF primitives -------------------------------------------------------------

def member(x: HSet, s: HSet) -> bool:
    return x in s._mset


def subset(a: HSet, b: HSet) -> bool:
    return a._mset <= b._mset


def eq(a: HSet, b: HSet) -> bool:
    return a is b


def union2(a: HSet, b: HSet) -> HSet:
    return _context.intern(a._mset | b._mset)


def inter(a: HSet, b: HSet) -> HSet:
    return _context.intern(a._mset & b._mset)


def diff(a: HSet, b: HSet) -> HSet:
    return _context.intern(a._mset - b._mset)


def big_union(s: HSet) -> HSet:
    out: set = set()
    for x in s.elems:
        out.update(x.elems)
    return mk(out)


def powerset(a: HSet) -> HSet:
    if len(a) > POWERSET_LIMIT:
        raise BoundExceeded(
            f"powerset of a {len(a)}-element set exceeds the {POWERSET_LIMIT}-element guard"
        )
    subsets = [EMPTY]
    for x in a.elems:
        subsets += [cons(x, s) for s in subsets]
    return mk(subsets)


def sep(s: HSet, pred: Callable[[HSet], bool]) -> HSet:
    return mk(x for x in s.elems if pred(x))


def repl(s: HSet, fn: Callable[[HSet], HSet]) -> HSet:
    return mk(fn(x) for x in s.elems)


# -- pairs --------------------------------------------------------------------

def pair(a: HSet, b: HSet) -> HSet:
    return mk((singleton(a), mk((a, b))))


def fst(p: HSet) -> HSet:
    return p.pair_parts()[0]


def snd(p: HSet) -> HSet:
    return p.pair_parts()[1]


def split(h: Callable[[HSet, HSet], HSet], p: HSet) -> HSet:
    a, b = p.pair_parts()
    return h(a, b)


def product(a: HSet, b: HSet) -> HSet:
    return mk(pair(x, y) for x in a.elems for y in b.elems)


# -- sets as functions -------------------------------------------------------

def lambda_set(a: HSet, body: Callable[[HSet], HSet]) -> HSet:
    return mk(pair(x, body(x)) for x in a.elems)


def apply(f: HSet, x: HSet) -> HSet:
    """f'x, realised as a partial operation instead of a description."""
    found = None
    for p in f.elems:
        parts = p._pair
        if parts is not None and parts[0] is x:
            if found is not None and found is not parts[1]:
                raise NotSingleValued(f"{print_set(f)} has several values at {print_set(x)}")
            found = parts[1]
    if found is None:
        raise NotInDomain(f"{print_set(x)} is not in the domain of {print_set(f)}")
    return found


def restrict(f: HSet, a: HSet) -> HSet:
    dom = {p._pair[0] for p in f.elems if p._pair is not None}
    return lambda_set(mk(x for x in a.elems if x in dom), lambda x: apply(f, x))


# -- text form ------------------------------------------------------------------

def print_set(s: HSet) -> str:
    if s._ord is not None:
        return str(s._ord)
    if s._pair is not None:
        a, b = s._pair
        return f"<{print_set(a)}, {print_set(b)}>"
    return "{" + ", ".join(print_set(x) for x in s.elems) + "}"


def parse_set(text: str) -> HSet:
    parser = _SetParser(text)
    s = parser.parse_set()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError("trailing input", parser.pos, text)
    return s


class _SetParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", self.pos, self.text)
        self.pos += 1

    def parse_set(self) -> HSet:
        c = self.peek()
        if c == "{":
            self.pos += 1
            items = []
            if self.peek() == "}":
                self.pos += 1
                return EMPTY
            items.append(self.parse_set())
            while self.peek() == ",":
                self.pos += 1
                items.append(self.parse_set())
            self.expect("}")
            return mk(items)
        if c == "<":
            self.pos += 1
            a = self.parse_set()
            self.expect(",")
            b = self.parse_set()
            self.expect(">")
            return pair(a, b)
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            n = int(self.text[start:self.pos])
            if n > 10_000:
                raise ParseError("numeral too large", start, self.text)
            return nat(n)
        found = repr(c) if c else "end of input"
        raise ParseError(f"expected a set, found {found}", self.pos, self.text)
