"""Transitive sets, ordinals, and bounded segments of the natural numbers.

The natural numbers as a whole are infinite, so they only appear here as
segments ``nat_upto(k) = {0, ..., k-1}``.  Operations that recurse over
"nat" build a segment large enough for the argument at hand.
"""

from __future__ import annotations

from typing import Callable

from .core import EMPTY, HSet, nat, succ
from .errors import BoundExceeded, NotANat, NotZeroOrSucc
from .fixedpoint import KReplSucc
from .relations import memrel

NAT_BOUND = 4096


def is_transset(a: HSet) -> bool:
    return all(x._mset <= a._mset for x in a.elems)


def is_ord(a: HSet) -> bool:
    return is_transset(a) and all(is_transset(x) for x in a.elems)


def lt(a: HSet, b: HSet) -> bool:
    return a in b and is_ord(b)


def is_limit(a: HSet) -> bool:
    if not is_ord(a) or a is EMPTY:
        return False
    return all(succ(y) in a for y in a.elems)


def nat_upto(k: int) -> HSet:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > NAT_BOUND:
        raise BoundExceeded(f"nat segment {k} exceeds the bound {NAT_BOUND}")
    return nat(k)


nat_operator = KReplSucc()


def as_nat(k: HSet) -> int:
    n = k.as_int()
    if n is None:
        raise NotANat(f"{k} is not a natural number")
    return n


def pred_of(k: HSet) -> HSet:
    """The i with k == succ(i), or NotZeroOrSucc."""
    if k.elems:
        # succ(i) = i u {i}; i is then the unique element x with k = cons(x, x)
        for x in k.elems:
            if len(x.elems) + 1 == len(k.elems) and succ(x) is k:
                return x
    raise NotZeroOrSucc(f"{k} is neither 0 nor a successor")


def nat_case(a: HSet, b: Callable[[HSet], HSet], k: HSet) -> HSet:
    if k is EMPTY:
        return a
    return b(pred_of(k))


def nat_rec(a: HSet, b: Callable[[HSet, HSet], HSet], k: HSet) -> HSet:
    """Primitive recursion, through well-founded recursion on Memrel."""
    from .recursion import wfrec

    n = as_nat(k)
    segment = nat_upto(n + 1)
    return wfrec(
        memrel(segment),
        k,
        lambda m, f: nat_case(a, lambda i: b(i, f(i)), m),
    )


def nat_add(m: HSet, n: HSet) -> HSet:
    as_nat(m)
    return nat_rec(m, lambda _i, r: succ(r), n)
