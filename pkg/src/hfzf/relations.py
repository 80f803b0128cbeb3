"""Binary relations, represented as hereditarily finite sets of pairs."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .core import HSet, mk, pair, print_set, union2
from .errors import NotARelation


def pairs_of(r: HSet) -> list[tuple[HSet, HSet]]:
    """Decode ``r`` into (x, y) tuples, raising NotARelation on a non-pair."""
    out = []
    for z in r.elems:
        if z._pair is None:
            raise NotARelation(f"{print_set(z)} in {print_set(r)} is not a pair")
        out.append(z._pair)
    return out


def check_rel(r: HSet) -> HSet:
    pairs_of(r)
    return r


def is_relation(r: HSet) -> bool:
    return all(z._pair is not None for z in r.elems)


def converse(r: HSet) -> HSet:
    return mk(pair(y, x) for x, y in pairs_of(r))


def domain(r: HSet) -> HSet:
    return mk(x for x, _ in pairs_of(r))


def range_(r: HSet) -> HSet:
    return mk(y for _, y in pairs_of(r))


def field(r: HSet) -> HSet:
    return union2(domain(r), range_(r))


def image(r: HSet, a: HSet) -> HSet:
    """r``A"""
    return mk(y for x, y in pairs_of(r) if x in a)


def inv_image_singleton(r: HSet, x: HSet) -> HSet:
    """r^-1{x}: the r-predecessors of x."""
    return mk(y for y, z in pairs_of(r) if z is x)


def compose(r: HSet, s: HSet) -> HSet:
    """r o s = {<x,z>. exists y. <x,y> in s and <y,z> in r}"""
    succ_r = defaultdict(list)
    for y, z in pairs_of(r):
        succ_r[y].append(z)
    return mk(pair(x, z) for x, y in pairs_of(s) for z in succ_r.get(y, ()))


def id_on(a: HSet) -> HSet:
    return mk(pair(x, x) for x in a.elems)


def memrel(a: HSet) -> HSet:
    return mk(pair(x, y) for y in a.elems for x in y.elems if x in a)


def is_wf(r: HSet) -> bool:
    """Well-foundedness of a finite relation: no cycles in its graph.

    Kahn's algorithm; a vertex left over after peeling off all sources
    lies on (or above) a cycle.
    """
    ps = pairs_of(r)
    indeg: dict = defaultdict(int)
    succs: dict = defaultdict(list)
    nodes = set()
    for x, y in ps:
        nodes.add(x)
        nodes.add(y)
        succs[x].append(y)
        indeg[y] += 1
    ready = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == len(nodes)


def is_transitive_rel(r: HSet) -> bool:
    ps = pairs_of(r)
    have = set(ps)
    succs = defaultdict(list)
    for x, y in ps:
        succs[x].append(y)
    return all((x, z) in have for x, y in ps for z in succs[y])


def closure_op(r: HSet):
    """The operator s |-> id(field(r)) u (r o s), bounded by field(r) x field(r)."""
    from .fixedpoint import KCompose, KId, KIdUnion

    return KIdUnion(field(r), KCompose(r, KId()))


@lru_cache(maxsize=4096)
def rtrancl(r: HSet) -> HSet:
    """r* as the least fixedpoint of :func:`closure_op` over field(r)^2."""
    from .core import product
    from .fixedpoint import lfp_iterate

    f = field(check_rel(r))
    return lfp_iterate(product(f, f), closure_op(r))


def trancl(r: HSet) -> HSet:
    return compose(r, rtrancl(r))

