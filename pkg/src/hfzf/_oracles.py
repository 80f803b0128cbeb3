"""Brute-force reference implementations used by the test suites and selftest.

These deliberately avoid the production code paths: closures by Warshall's
algorithm on index matrices, least fixedpoints by intersecting every
prefixedpoint, bijections by direct pair decoding, and so on.  They are
only practical on tiny inputs.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import EMPTY, HSet, mk, pair, powerset


def _decode_pairs(r: HSet) -> list:
    # decode {{a},{a,b}} by hand rather than through core's cached view
    out = []
    for z in r.elems:
        parts = z.elems
        if len(parts) == 1:
            (only,) = parts
            (a,) = only.elems
            out.append((a, a))
        else:
            small, big = sorted(parts, key=len)
            (a,) = small.elems
            (b,) = [e for e in big.elems if e is not a]
            out.append((a, b))
    return out


def warshall_rtrancl(r: HSet) -> HSet:
    ps = _decode_pairs(r)
    nodes = sorted({x for p in ps for x in p}, key=lambda s: s._key)
    idx = {x: i for i, x in enumerate(nodes)}
    n = len(nodes)
    m = np.eye(n, dtype=bool)
    for a, b in ps:
        m[idx[a], idx[b]] = True
    for k in range(n):
        m |= np.outer(m[:, k], m[k, :])
    return mk(pair(nodes[i], nodes[j]) for i in range(n) for j in range(n) if m[i, j])


def warshall_trancl(r: HSet) -> HSet:
    ps = _decode_pairs(r)
    nodes = sorted({x for p in ps for x in p}, key=lambda s: s._key)
    idx = {x: i for i, x in enumerate(nodes)}
    n = len(nodes)
    m = np.zeros((n, n), dtype=bool)
    for a, b in ps:
        m[idx[a], idx[b]] = True
    for k in range(n):
        m |= np.outer(m[:, k], m[k, :])
    return mk(pair(nodes[i], nodes[j]) for i in range(n) for j in range(n) if m[i, j])


def subsets(d: HSet):
    elems = d.elems
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            yield mk(combo)


def lfp_by_definition(d: HSet, h) -> HSet:
    """The intersection of all X in P(D) with h(X) <= X."""
    out = set(d.elems)
    for x in subsets(d):
        if set(h(x).elems) <= set(x.elems):
            out &= set(x.elems)
    return mk(out)


def prefixedpoints(d: HSet, h) -> list:
    return [x for x in subsets(d) if set(h(x).elems) <= set(x.elems)]


def is_monotone_exhaustive(d: HSet, h) -> bool:
    subs = list(subsets(d))
    images = {x: set(h(x).elems) for x in subs}
    for x in subs:
        for y in subs:
            if set(x.elems) <= set(y.elems) and not images[x] <= images[y]:
                return False
    return True


def is_bijection(h: HSet, x: HSet, y: HSet) -> bool:
    ps = _decode_pairs(h)
    dom = [a for a, _ in ps]
    rng = [b for _, b in ps]
    return (
        len(set(dom)) == len(dom)
        and set(dom) == set(x.elems)
        and len(set(rng)) == len(rng)
        and set(rng) == set(y.elems)
    )


def is_wf_by_subsets(r: HSet) -> bool:
    """Every nonempty Z within field(r) has an r-minimal element."""
    ps = _decode_pairs(r)
    field = sorted({x for p in ps for x in p}, key=lambda s: s._key)
    for k in range(1, len(field) + 1):
        for z in combinations(field, k):
            zs = set(z)
            if not any(all(not (a in zs and b is x) for a, b in ps) for x in z):
                return False
    return True


def v_stages(n: int) -> list:
    """[V_0, ..., V_n] by iterating the powerset, no recursion machinery."""
    out = [EMPTY]
    for _ in range(n):
        out.append(powerset(out[-1]))
    return out


def transitive_subsets_mask(universe: list) -> np.ndarray:
    """Bitmasks over ``universe`` of all transitive subsets.

    ``universe`` must itself be transitive (closed under elements).
    """
    n = len(universe)
    idx = {x: i for i, x in enumerate(universe)}
    elem_mask = np.array(
        [sum(1 << idx[e] for e in x.elems) for x in universe], dtype=np.int64
    )
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for i in range(n):
        has_i = (masks >> i) & 1 == 1
        closed = (masks & elem_mask[i]) == elem_mask[i]
        ok &= ~has_i | closed
    return masks[ok]


def mask_to_set(universe: list, m: int) -> HSet:
    return mk(x for i, x in enumerate(universe) if (m >> i) & 1)


def set_to_mask(universe: list, s: HSet) -> int:
    idx = {x: i for i, x in enumerate(universe)}
    return sum(1 << idx[e] for e in s.elems)


def nat_loop(a: HSet, b, k: int) -> HSet:
    from .core import nat

    out = a
    for i in range(k):
        out = b(nat(i), out)
    return out


def rank_by_descent(a: HSet) -> int:
    return max((rank_by_descent(x) + 1 for x in a.elems), default=0)


def list_to_py(l: HSet) -> list:
    """Decode a list encoding by hand: <0,0> is Nil, <1,<a,l>> is Cons."""
    out = []
    while True:
        tag, body = _decode_pairs(mk([l]))[0]
        if tag is EMPTY:
            return out
        head, l = _decode_pairs(mk([body]))[0]
        out.append(head)


def lists_over(a: HSet, max_len: int) -> list:
    """Every list over A of length <= max_len, built from hand-made pairs."""
    nil = pair(EMPTY, EMPTY)
    one = mk([EMPTY])
    layer = [nil]
    out = [nil]
    for _ in range(max_len):
        layer = [pair(one, pair(x, l)) for x in a.elems for l in layer]
        out += layer
    return out


def tf_size_native(z: HSet) -> int:
    tag, body = _decode_pairs(mk([z]))[0]
    if tag is EMPTY:
        _label, forest = _decode_pairs(mk([body]))[0]
        return 1 + tf_size_native(forest)
    tag, cell = _decode_pairs(mk([body]))[0]
    if tag is EMPTY:
        return 0
    tree, rest = _decode_pairs(mk([cell]))[0]
    return tf_size_native(tree) + tf_size_native(rest)
