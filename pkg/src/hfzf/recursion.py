"""Well-founded, epsilon- and rank-recursion over hereditarily finite sets.

A recursion body is a Python callable ``H(x, f)``.  ``f`` is a
:class:`RecFn` giving access to already computed recursive results; call
it (or use ``f.lookup``) with an argument in its domain.

``wftrec`` builds the restricted recursive function bottom-up and hands it
to the body.  ``wfrec`` drops transitivity by recursing over the transitive
closure while exposing only immediate predecessors.  ``transrec`` is
``wfrec`` on the membership relation of eclose({a}).  ``vrec`` lets the body
query any set of strictly smaller rank; the set of such arguments is far
too large to materialise, so queries are answered lazily and guarded.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Callable, Optional

from . import core
from .core import EMPTY, HSet, big_union, lambda_set, mk, nat, powerset, succ, union2
from .errors import (
    BoundExceeded,
    NotInDomain,
    NotSingleValued,
    NotTransitive,
    NotWellFounded,
    VrecGuardViolation,
)
from .relations import (
    check_rel,
    inv_image_singleton,
    is_transitive_rel,
    is_wf,
    memrel,
    pairs_of,
    trancl,
)

RecBody = Callable[[HSet, "RecFn"], HSet]

VFROM_MAX = 4
VREC_MATERIALISE_MAX = 4


class RecFn:
    """A finite function handed to a recursion body."""

    def __init__(self, table: dict):
        self._table = table

    @classmethod
    def from_set(cls, f: HSet) -> "RecFn":
        return cls({x: y for x, y in pairs_of(f)})

    def lookup(self, y: HSet) -> HSet:
        try:
            return self._table[y]
        except KeyError:
            raise NotInDomain(f"recursive call at {y} is outside the permitted domain") from None

    __call__ = lookup

    @property
    def domain(self) -> HSet:
        return mk(self._table)

    def values(self) -> list:
        return [self._table[x] for x in self.domain.elems]

    def restrict(self, a: HSet) -> "RecFn":
        return RecFn({x: v for x, v in self._table.items() if x in a})

    def as_set(self) -> HSet:
        return mk(core.pair(x, y) for x, y in self._table.items())


class VrecFn:
    """Lazy lambda y in V_bound. vrec(y, H), guarded by rank."""

    def __init__(self, bound: int, compute: Callable[[HSet], HSet]):
        self.bound = bound
        self._compute = compute

    def lookup(self, y: HSet) -> HSet:
        if y._rank >= self.bound:
            raise VrecGuardViolation(y, y._rank, self.bound)
        return self._compute(y)

    __call__ = lookup

    def as_set(self) -> HSet:
        if self.bound > VREC_MATERIALISE_MAX:
            raise BoundExceeded(f"V_{self.bound} is too large to materialise")
        return lambda_set(vfrom(EMPTY, self.bound), self.lookup)


def nfold_union(a: HSet, n: int) -> HSet:
    from .ordinals import nat_rec

    return nat_rec(a, lambda _m, r: big_union(r), nat(n))


@lru_cache(maxsize=65536)
def eclose(a: HSet) -> HSet:
    """The least transitive superset of a: U_n U^n(a), iterated until empty."""
    out = set(a.elems)
    layer = a
    while layer.elems:
        layer = big_union(layer)
        out.update(layer.elems)
    return mk(out)


# -- well-founded recursion -------------------------------------------------------

def _safe_restrict(f: HSet, a: HSet) -> Optional[HSet]:
    try:
        return core.restrict(f, a)
    except NotSingleValued:
        return None


def is_recfun(r: HSet, a: HSet, h: RecBody, f: HSet) -> bool:
    """f = lambda x in r^-1{a}. H(x, f restricted to r^-1{x}), evaluated literally."""
    check_rel(r)

    def body(x):
        fx = _safe_restrict(f, inv_image_singleton(r, x))
        if fx is None:
            raise NotSingleValued
        return h(x, RecFn.from_set(fx))

    try:
        expected = lambda_set(inv_image_singleton(r, a), body)
    except (NotInDomain, NotSingleValued):
        return False
    return expected is f


def _recfun_table(r: HSet, a: HSet, h: RecBody) -> dict:
    preds = defaultdict(list)
    for y, x in pairs_of(r):
        preds[x].append(y)
    memo: dict = {}

    def value(x):
        if x in memo:
            return memo[x]
        # an explicit stack keeps long chains off the Python call stack
        stack = [x]
        while stack:
            top = stack[-1]
            pending = [y for y in preds[top] if y not in memo]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            if top not in memo:
                memo[top] = h(top, RecFn({y: memo[y] for y in preds[top]}))
        return memo[x]

    return {x: value(x) for x in preds[a]}


def the_recfun(r: HSet, a: HSet, h: RecBody, check: bool = True) -> HSet:
    check_rel(r)
    if not is_wf(r):
        raise NotWellFounded("relation is not well-founded")
    if not is_transitive_rel(r):
        raise NotTransitive("relation is not transitive")
    table = _recfun_table(r, a, h)
    f = lambda_set(inv_image_singleton(r, a), table.__getitem__)
    if check and not is_recfun(r, a, h, f):
        raise AssertionError("the_recfun postcondition failed")
    return f


def wftrec(r: HSet, a: HSet, h: RecBody) -> HSet:
    return h(a, RecFn.from_set(the_recfun(r, a, h)))


def wfrec(r: HSet, a: HSet, h: RecBody) -> HSet:
    check_rel(r)
    if not is_wf(r):
        raise NotWellFounded("relation is not well-founded")
    return wftrec(
        trancl(r), a, lambda x, f: h(x, f.restrict(inv_image_singleton(r, x)))
    )


def wfrec_unfolded(r: HSet, a: HSet, h: RecBody) -> HSet:
    """Right-hand side of the wfrec equation: H(a, lambda x in r^-1{a}. wfrec(r, x, H))."""
    return h(a, RecFn({x: wfrec(r, x, h) for x in inv_image_singleton(r, a).elems}))


def transrec(a: HSet, h: RecBody) -> HSet:
    return wfrec(memrel(eclose(core.singleton(a))), a, h)


# -- rank and the cumulative hierarchy ------------------------------------------

def rank(a: HSet) -> HSet:
    """rank(a) = U_{y in a} succ(rank(y)); cached on each set when it is built."""
    return nat(a._rank)


def rank_body(x: HSet, f) -> HSet:
    return mk(z for y in x.elems for z in succ(f(y)).elems)


def rank_by_transrec(a: HSet) -> HSet:
    return transrec(a, rank_body)


def vfrom(a: HSet, n: int) -> HSet:
    """V[A]_n = A u U_{b in n} P(V[A]_b), by transrec on the ordinal n."""
    if n < 0 or n > VFROM_MAX:
        raise BoundExceeded(f"V[A]_{n} is beyond the materialisation bound {VFROM_MAX}")

    def body(alpha, f):
        out = a
        for beta in alpha.elems:
            out = union2(out, powerset(f(beta)))
        return out

    return transrec(nat(n), body)


def in_univ(a: HSet, x: HSet) -> bool:
    """x in V[A]_omega, decided by descent: x in A or every element is."""
    memo: dict = {}

    def go(y):
        if y in memo:
            return memo[y]
        res = y in a or all(go(z) for z in y.elems)
        memo[y] = res
        return res

    return go(x)


# -- rank recursion -------------------------------------------------------------

def vrec(a: HSet, h: RecBody) -> HSet:
    """Vrec(a, H) = H(a, lambda y in V_rank(a). Vrec(y, H)), computed on demand."""
    memo: dict = {}

    def run(x):
        hit = memo.get(x)
        if hit is not None:
            return hit
        v = h(x, VrecFn(x._rank, run))
        memo[x] = v
        return v

    return run(a)


def vrec_by_definition(a: HSet, h: RecBody) -> HSet:
    """Vrec through its defining transrec, materialising every V_i involved.

    f_alpha = transrec(alpha, lambda i g. lambda z in V_succ(i). H(z, lambda y in V_i. g'rank(y)'y))
    Vrec(a, H) = f_rank(a)'a

    Only feasible for rank(a) <= 3, and H must be total on V_rank(a)+1.
    """
    if a._rank > 3:
        raise BoundExceeded("definition-level Vrec needs rank <= 3")

    def stage(i, g):
        inner = RecFn({y: core.apply(g(rank(y)), y) for y in vfrom(EMPTY, i._ord).elems})
        return lambda_set(vfrom(EMPTY, i._ord + 1), lambda z: h(z, inner))

    return core.apply(transrec(rank(a), stage), a)
