"""Recursive data structures encoded as hereditarily finite sets.

Encodings::

    Inl(a) = <0, a>             Inr(b) = <1, b>
    Nil = Inl(0)                Cons(a, l) = Inr(<a, l>)
    Apply(a, ts) = <a, ts>      (ts a list of terms)
    Tcons(a, f) = Inl(<a, f>)   Fnil = Inr(Nil)     Fcons(t, f) = Inr(Cons(t, f))

The carrier sets list(A), term(A), TF(A) are infinite, so membership is
decided by recognisers that descend through the encoding.  The recursion
operators are defined through :func:`hfzf.recursion.vrec`, so each
recursive call is justified by a strict rank decrease.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Callable, Iterable, Union

from . import core
from .core import EMPTY, HSet, mk, nat, pair, powerset, succ
from .errors import BoundExceeded, NotAList, NotASum, NotATerm, NotATF
from .fixedpoint import KConst, KFinOp, KId, KProd, KSum, lfp_iterate
from .ordinals import nat_add
from .recursion import vrec

ONE = nat(1)

Pred = Union[HSet, Callable[[HSet], bool]]


def _pred(a: Pred) -> Callable[[HSet], bool]:
    if isinstance(a, HSet):
        return a._mset.__contains__
    return a


def anything(_x: HSet) -> bool:
    return True


# -- disjoint sums ----------------------------------------------------------------

def inl(a: HSet) -> HSet:
    return pair(EMPTY, a)


def inr(b: HSet) -> HSet:
    return pair(ONE, b)


def sum_set(a: HSet, b: HSet) -> HSet:
    """A + B = ({0} x A) u ({1} x B)"""
    return mk([inl(x) for x in a.elems] + [inr(y) for y in b.elems])


@dataclass(frozen=True)
class Left:
    payload: HSet


@dataclass(frozen=True)
class Right:
    payload: HSet


def sum_view(z: HSet) -> Union[Left, Right]:
    parts = z._pair
    if parts is not None:
        tag, payload = parts
        if tag is EMPTY:
            return Left(payload)
        if tag is ONE:
            return Right(payload)
    raise NotASum(f"{z} is not Inl(_) or Inr(_)")


def case_sum(c: Callable[[HSet], HSet], d: Callable[[HSet], HSet], z: HSet) -> HSet:
    v = sum_view(z)
    return c(v.payload) if isinstance(v, Left) else d(v.payload)


INL = ("l",)
INR = ("r",)


def parse_tag(text: str) -> tuple:
    """'Inr.Inl' (or 'Inr∘Inl') -> ('r', 'l')"""
    names = {"inl": "l", "inr": "r"}
    out = []
    for part_name in text.replace("∘", ".").split("."):
        key = part_name.strip().lower()
        if key not in names:
            raise ValueError(f"unknown injection {part_name!r}")
        out.append(names[key])
    return tuple(out)


def matches_tag(x: HSet, tag: tuple) -> bool:
    for t in tag:
        parts = x._pair
        if parts is None or parts[0] is not (EMPTY if t == "l" else ONE):
            return False
        x = parts[1]
    return True


def part(a: HSet, tag: tuple) -> HSet:
    """Part(A, h) = {x in A. exists z. x = h(z)} for an injection chain h."""
    return mk(x for x in a.elems if matches_tag(x, tag))


# -- lists --------------------------------------------------------------------------

NIL = inl(EMPTY)


def nil() -> HSet:
    return NIL


def cons_list(a: HSet, l: HSet) -> HSet:
    return inr(pair(a, l))


def from_pylist(items: Iterable[HSet]) -> HSet:
    out = NIL
    for x in reversed(list(items)):
        out = cons_list(x, out)
    return out


def _list_step(x: HSet):
    """None for Nil, (head, tail) for Cons, NotAList otherwise."""
    v = sum_view_or_none(x)
    if isinstance(v, Left) and v.payload is EMPTY:
        return None
    if isinstance(v, Right) and v.payload._pair is not None:
        return v.payload._pair
    raise NotAList(f"{x} is not a list")


def sum_view_or_none(z: HSet):
    try:
        return sum_view(z)
    except NotASum:
        return None


def to_pylist(l: HSet) -> list:
    out = []
    while True:
        step = _list_step(l)
        if step is None:
            return out
        out.append(step[0])
        l = step[1]


def is_list(a: Pred, x: HSet) -> bool:
    ok = _pred(a)
    try:
        return all(ok(y) for y in to_pylist(x))
    except NotAList:
        return False


def length(l: HSet) -> int:
    return len(to_pylist(l))


def list_case(c: HSet, h: Callable[[HSet, HSet], HSet], l: HSet) -> HSet:
    _list_step(l)
    return case_sum(lambda _u: c, lambda p: core.split(h, p), l)


def list_rec(c: HSet, h: Callable[[HSet, HSet, HSet], HSet], l: HSet) -> HSet:
    to_pylist(l)
    return vrec(l, lambda l2, g: list_case(c, lambda x, y: h(x, y, g(y)), l2))


def list_map(h: Callable[[HSet], HSet], l: HSet) -> HSet:
    return list_rec(NIL, lambda x, _y, r: cons_list(h(x), r), l)


def append(xs: HSet, ys: HSet) -> HSet:
    return list_rec(ys, lambda x, _y, r: cons_list(x, r), xs)


def rev(l: HSet) -> HSet:
    """Quadratic reverse: rev(Cons(x, y)) = rev(y) @ [x]."""
    return list_rec(NIL, lambda x, _y, r: append(r, cons_list(x, NIL)), l)


def list_operator(a: HSet) -> KSum:
    """X |-> {0} + A x X"""
    return KSum(KConst(core.singleton(EMPTY)), KProd(KConst(a), KId()))


def lists_upto(a: HSet, max_len: int) -> HSet:
    out = [NIL]
    layer = [NIL]
    for _ in range(max_len):
        layer = [cons_list(x, l) for x in a.elems for l in layer]
        out += layer
    return mk(out)


# -- terms --------------------------------------------------------------------------

def apply_term(a: HSet, ts: Union[HSet, Iterable[HSet]]) -> HSet:
    if not isinstance(ts, HSet):
        ts = from_pylist(ts)
    return pair(a, ts)


def _term_parts(t: HSet):
    if t._pair is None:
        raise NotATerm(f"{t} is not Apply(_, _)")
    label, ts = t._pair
    try:
        return label, to_pylist(ts)
    except NotAList:
        raise NotATerm(f"argument list of {t} is not a list") from None


def is_term(a: Pred, x: HSet) -> bool:
    ok = _pred(a)
    stack = [x]
    while stack:
        t = stack.pop()
        try:
            label, args = _term_parts(t)
        except NotATerm:
            return False
        if not ok(label):
            return False
        stack.extend(args)
    return True


def _require_term(t: HSet) -> None:
    if not is_term(anything, t):
        raise NotATerm(f"{t} is not a term")


def term_rec(d: Callable[[HSet, HSet, HSet], HSet], t: HSet) -> HSet:
    _require_term(t)
    return vrec(t, lambda t2, g: core.split(lambda x, zs: d(x, zs, list_map(g, zs)), t2))


def reflect(t: HSet) -> HSet:
    return term_rec(lambda x, _zs, rs: apply_term(x, rev(rs)), t)


def list_sum(l: HSet) -> HSet:
    return list_rec(EMPTY, lambda x, _y, r: nat_add(x, r), l)


def term_size(t: HSet) -> HSet:
    return term_rec(lambda _x, _zs, rs: succ(list_sum(rs)), t)


@dataclass(frozen=True)
class Apply:
    label: HSet
    args: tuple = ()

    def encode(self) -> HSet:
        return apply_term(self.label, [a.encode() for a in self.args])


def term_view(t: HSet) -> Apply:
    label, args = _term_parts(t)
    return Apply(label, tuple(term_view(a) for a in args))


# -- trees and forests ----------------------------------------------------------

def tcons(a: HSet, f: HSet) -> HSet:
    return inl(pair(a, f))


FNIL = inr(NIL)


def fnil() -> HSet:
    return FNIL


def fcons(t: HSet, f: HSet) -> HSet:
    return inr(cons_list(t, f))


def _tf_kind(x: HSet):
    """('tree', a, f) | ('fnil',) | ('fcons', t, f) | None"""
    v = sum_view_or_none(x)
    if isinstance(v, Left):
        if v.payload._pair is None:
            return None
        return ("tree",) + v.payload._pair
    if isinstance(v, Right):
        try:
            step = _list_step(v.payload)
        except NotAList:
            return None
        if step is None:
            return ("fnil",)
        return ("fcons",) + step
    return None


def _tf_check(a: Pred, x: HSet, want: str) -> bool:
    ok = _pred(a)
    stack = [(x, want)]
    while stack:
        z, sort = stack.pop()
        k = _tf_kind(z)
        if k is None:
            return False
        if k[0] == "tree":
            if sort == "forest" or not ok(k[1]):
                return False
            stack.append((k[2], "forest"))
        else:
            if sort == "tree":
                return False
            if k[0] == "fcons":
                stack.append((k[1], "tree"))
                stack.append((k[2], "forest"))
    return True


def is_tree(a: Pred, x: HSet) -> bool:
    return _tf_check(a, x, "tree")


def is_forest(a: Pred, x: HSet) -> bool:
    return _tf_check(a, x, "forest")


def is_tf(a: Pred, x: HSet) -> bool:
    return _tf_check(a, x, "any")


def tf_case(b, c: HSet, d, z: HSet) -> HSet:
    """case(split(b), list_case(c, d), z)"""
    return case_sum(lambda p: core.split(b, p), lambda l: list_case(c, d, l), z)


def tf_rec(b, c: HSet, d, z: HSet) -> HSet:
    if not is_tf(anything, z):
        raise NotATF(f"{z} is not a tree or forest")
    return vrec(
        z,
        lambda z2, r: tf_case(
            lambda x, f: b(x, f, r(f)),
            c,
            lambda t, f: d(t, f, r(t), r(f)),
            z2,
        ),
    )


def tf_map(h: Callable[[HSet], HSet], z: HSet) -> HSet:
    return tf_rec(
        lambda x, _f, r: tcons(h(x), r),
        FNIL,
        lambda _t, _f, r1, r2: fcons(r1, r2),
        z,
    )


def tf_size(z: HSet) -> HSet:
    return tf_rec(
        lambda _x, _f, r: succ(r),
        EMPTY,
        lambda _t, _f, r1, r2: nat_add(r1, r2),
        z,
    )


def tf_preorder(z: HSet) -> HSet:
    return tf_rec(
        lambda x, _f, r: cons_list(x, r),
        NIL,
        lambda _t, _f, r1, r2: append(r1, r2),
        z,
    )


# -- finite powerset ----------------------------------------------------------------

FIN_MAX = 12


def fin_enum(a: HSet) -> HSet:
    """Fin(A) = lfp(P(A), Z |-> {0} u U_{y in Z} U_{x in A} {cons(x, y)})"""
    if len(a) > FIN_MAX:
        raise BoundExceeded(f"Fin(A) for |A| = {len(a)} exceeds the guard {FIN_MAX}")
    return lfp_iterate(powerset(a), KFinOp(a))


def fin_induction_check(a: HSet, psi: Callable[[HSet], bool]) -> bool:
    """Check the premises of finite-set induction and, if they hold, its conclusion.

    The step only has to be shown for x not in y; when x is in y,
    cons(x, y) = y and the step is trivial.
    """
    fin = fin_enum(a)
    if not psi(EMPTY):
        return False
    for y in fin.elems:
        if not psi(y):
            continue
        for x in a.elems:
            if x in y:
                continue
            if not psi(core.cons(x, y)):
                return False
    covered = all(psi(b) for b in fin.elems)
    if not covered:
        raise AssertionError("finite-set induction premises hold but conclusion fails")
    return covered


# -- bounded enumeration --------------------------------------------------------

def all_terms(labels: HSet, depth: int, branch: int) -> list:
    """Every term over ``labels`` of depth <= depth with at most ``branch`` children per node."""
    if depth <= 0:
        return []
    smaller = all_terms(labels, depth - 1, branch)
    out = []
    for n in range(branch + 1):
        for args in _cartesian(smaller, repeat=n):
            for a in labels.elems:
                out.append(apply_term(a, list(args)))
    return out
