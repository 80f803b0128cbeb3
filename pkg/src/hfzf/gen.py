"""Seeded random generators for HF sets and the structures built on them.

Every generator takes an explicit :class:`random.Random` so that test runs
and self-test transcripts are reproducible from a seed.
"""

from __future__ import annotations

import random
from typing import Optional

from .core import EMPTY, HSet, mk, nat, pair
from .datatypes import FNIL, apply_term, fcons, from_pylist, tcons
from .fixedpoint import KConst, KId, KImage, KUnion, MonoOp, bnd_mono_check
from .logic.hilbert import MP, AxDN, AxK, AxS, Derivation, Hyp, deduction, weaken_right
from .logic.syntax import FLS, Imp, Prop, Var


def rng_from(seed: int) -> random.Random:
    return random.Random(seed)


# -- sets and relations -----------------------------------------------------------

def gen_set(rng: random.Random, rank: int, width: int = 3) -> HSet:
    """A random set of rank at most ``rank`` with at most ``width`` elements."""
    if rank <= 0:
        return EMPTY
    n = rng.randint(0, width)
    return mk(gen_set(rng, rng.randrange(rank), width) for _ in range(n))


def gen_atoms(rng: random.Random, n: int, exotic: float = 0.2) -> list:
    """n distinct small sets, mostly numerals, occasionally other rank <= 3 sets."""
    out: list = []
    seen = set()
    k = 0
    while len(out) < n:
        x = gen_set(rng, 3) if rng.random() < exotic else nat(k)
        k += 1
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def gen_relation(rng: random.Random, max_field: int = 8, density: Optional[float] = None) -> HSet:
    n = rng.randint(0, max_field)
    atoms = gen_atoms(rng, n)
    p = rng.uniform(0.05, 0.4) if density is None else density
    return mk(pair(a, b) for a in atoms for b in atoms if rng.random() < p)


def gen_wf_relation(rng: random.Random, max_field: int = 7) -> HSet:
    """A random acyclic relation: edges only run forward in a random order."""
    n = rng.randint(0, max_field)
    atoms = gen_atoms(rng, n)
    rng.shuffle(atoms)
    p = rng.uniform(0.1, 0.6)
    return mk(
        pair(atoms[i], atoms[j])
        for i in range(n) for j in range(i + 1, n) if rng.random() < p
    )


def gen_function(rng: random.Random, dom: HSet, cod: HSet) -> HSet:
    targets = cod.elems
    if dom.elems and not targets:
        raise ValueError("no function into the empty set")
    return mk(pair(x, rng.choice(targets)) for x in dom.elems)


def gen_injection(rng: random.Random, dom: HSet, cod: HSet) -> HSet:
    if len(dom) > len(cod):
        raise ValueError("no injection into a smaller set")
    targets = rng.sample(list(cod.elems), len(dom))
    return mk(pair(x, y) for x, y in zip(dom.elems, targets))


def gen_function_pair(rng: random.Random, max_size: int = 8, injective: bool = False):
    """(X, Y, f, g) with f : X -> Y and g : Y -> X."""
    if injective:
        n = rng.randint(0, max_size)
        m = n
    else:
        n = rng.randint(1, max_size)
        m = rng.randint(1, max_size)
    atoms = gen_atoms(rng, n + m)
    x = mk(atoms[:n])
    y = mk(atoms[n:])
    if injective:
        return x, y, gen_injection(rng, x, y), gen_injection(rng, y, x)
    return x, y, gen_function(rng, x, y), gen_function(rng, y, x)


# -- monotone operators -----------------------------------------------------------

def _gen_op(rng: random.Random, d: HSet, size: int) -> MonoOp:
    if size <= 1:
        if rng.random() < 0.5:
            return KId()
        return KConst(mk(e for e in d.elems if rng.random() < 0.4))
    kind = rng.random()
    if kind < 0.5:
        rel = mk(pair(a, b) for a in d.elems for b in d.elems if rng.random() < 0.3)
        return KImage(rel, _gen_op(rng, d, size - 1))
    left = rng.randint(1, size - 1)
    return KUnion(_gen_op(rng, d, left), _gen_op(rng, d, size - left))


def gen_monoop(rng: random.Random, max_d: int = 5, max_size: int = 6):
    """(D, h) with h bounded by D; constants and relations are drawn inside D."""
    while True:
        d = mk(gen_atoms(rng, rng.randint(0, max_d)))
        h = _gen_op(rng, d, rng.randint(1, max_size))
        if bnd_mono_check(d, h):
            return d, h


# -- datatypes ----------------------------------------------------------------------

def gen_list(rng: random.Random, a: HSet, max_len: int = 5) -> HSet:
    if not a.elems:
        return from_pylist([])
    return from_pylist(rng.choice(a.elems) for _ in range(rng.randint(0, max_len)))


def gen_lists(a: HSet, max_len: int, seed: int, count: int) -> list:
    rng = rng_from(seed)
    return [gen_list(rng, a, max_len) for _ in range(count)]


def gen_term(rng: random.Random, labels: HSet, depth: int, branch: int) -> HSet:
    label = rng.choice(labels.elems)
    if depth <= 1:
        return apply_term(label, [])
    k = rng.randint(0, branch)
    return apply_term(label, [gen_term(rng, labels, rng.randint(1, depth - 1), branch) for _ in range(k)])


def gen_terms(labels: HSet, depth: int, branch: int, seed: int, count: int) -> list:
    rng = rng_from(seed)
    return [gen_term(rng, labels, depth, branch) for _ in range(count)]


def gen_tree(rng: random.Random, labels: HSet, size: int) -> HSet:
    return tcons(rng.choice(labels.elems), gen_forest(rng, labels, size - 1))


def gen_forest(rng: random.Random, labels: HSet, size: int) -> HSet:
    """A forest with at most ``size`` nodes."""
    trees = []
    while size > 0 and rng.random() < 0.7:
        k = rng.randint(1, size)
        trees.append(gen_tree(rng, labels, k))
        size -= k
    out = FNIL
    for t in reversed(trees):
        out = fcons(t, out)
    return out


def gen_tf(rng: random.Random, labels: HSet, size: int) -> HSet:
    if rng.random() < 0.5:
        return gen_tree(rng, labels, max(size, 1))
    return gen_forest(rng, labels, size)


def gen_tfs(labels: HSet, size: int, seed: int, count: int) -> list:
    rng = rng_from(seed)
    return [gen_tf(rng, labels, size) for _ in range(count)]


# -- propositions and derivations -----------------------------------------------

def gen_prop(rng: random.Random, n_vars: int = 2, max_conn: int = 3) -> Prop:
    k = rng.randint(0, max_conn)
    return _gen_prop(rng, n_vars, k)


def _gen_prop(rng: random.Random, n_vars: int, k: int) -> Prop:
    if k == 0:
        if n_vars == 0 or rng.random() < 0.15:
            return FLS
        return Var(rng.randrange(n_vars))
    left = rng.randint(0, k - 1)
    return Imp(_gen_prop(rng, n_vars, left), _gen_prop(rng, n_vars, k - 1 - left))


def grow_derivations(rng: random.Random, hyps: list, count: int, n_vars: int = 3) -> list:
    """Grow ``count`` derivations from ``hyps`` by random rule applications.

    Leaves are hypotheses and random axiom instances; inner nodes combine
    existing derivations by MP whenever shapes match, and the pool is also
    fed by right weakening and by the deduction transformer.
    """
    pool: list[Derivation] = []
    by_concl: dict = {}

    def add(d: Derivation) -> None:
        pool.append(d)
        by_concl.setdefault(d.conclusion, []).append(d)

    def small() -> Prop:
        return gen_prop(rng, n_vars, 2)

    while len(pool) < count:
        roll = rng.random()
        if roll < 0.15 and hyps:
            add(Hyp(rng.choice(hyps)))
        elif roll < 0.25:
            add(AxK(small(), small()))
        elif roll < 0.32:
            add(AxS(small(), small(), small()))
        elif roll < 0.37:
            add(AxDN(small()))
        elif roll < 0.45 and pool:
            add(weaken_right(rng.choice(pool), small()))
        elif roll < 0.5 and pool and hyps:
            # discharge a hypothesis; the result is a derivation from hyps - {h}
            # which still checks from hyps by left weakening
            add(deduction(rng.choice(pool), rng.choice(hyps)))
        else:
            majors = [d for d in pool[-200:] if isinstance(d.conclusion, Imp)]
            rng.shuffle(majors)
            for d in majors:
                minors = by_concl.get(d.conclusion.p)
                if minors:
                    add(MP(d, rng.choice(minors)))
                    break
            else:
                if pool:
                    # make an MP step possible next time
                    d = rng.choice(pool)
                    add(MP(AxK(d.conclusion, small()), d))
    return pool[:count]
