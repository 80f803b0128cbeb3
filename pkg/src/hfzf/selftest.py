"""Oracle suites behind ``hfzf selftest``.

Each check draws its inputs from a generator seeded with the run seed and
the check's name, compares production code against a brute-force oracle or
a defining equation, and reports the number of cases and the first
counterexample.  The transcript contains no timings, so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import random
import zlib
from typing import Callable, Iterator, Optional

from . import _oracles as oracle
from . import core, gen
from .core import EMPTY, mk, nat, pair, print_set, subset, succ
from .datatypes import (
    append,
    fin_enum,
    is_forest,
    is_list,
    is_tree,
    length,
    list_map,
    list_operator,
    reflect,
    rev,
    tf_map,
    tf_preorder,
    tf_size,
    to_pylist,
)
from .fixedpoint import banach_decompose, iterate_op, lfp_iterate, schroeder_bernstein
from .logic.completeness import prove_complete
from .logic.hilbert import all_conclusions, check_derivation, subformula_closure, thms_bounded
from .logic.syntax import FLS, Imp, Var, models, print_prop
from .ordinals import nat_rec
from .recursion import (
    RecFn,
    eclose,
    is_recfun,
    rank,
    the_recfun,
    vfrom,
    wfrec,
    wfrec_unfolded,
)
from .relations import rtrancl, trancl

SUITES = ("core", "fixedpoint", "recursion", "datatypes", "logic")

Check = Callable[[random.Random], Iterator[Optional[str]]]


def _check_rng(seed: int, name: str) -> random.Random:
    return random.Random(seed * 1_000_003 + zlib.crc32(name.encode()))


# -- core -------------------------------------------------------------------------

def _extensionality(rng):
    for _ in range(200):
        a, b = gen.gen_set(rng, 5), gen.gen_set(rng, 5)
        same = all((x in a) == (x in b) for x in set(a.elems) | set(b.elems))
        yield None if core.eq(a, b) == same else f"{print_set(a)} vs {print_set(b)}"


def _pair_injective(rng):
    for _ in range(300):
        a, b, c, d = (gen.gen_set(rng, 4) for _ in range(4))
        if rng.random() < 0.3:
            c, d = a, b
        if pair(a, b) is pair(c, d) and not (a is c and b is d):
            yield f"<{print_set(a)}, {print_set(b)}> = <{print_set(c)}, {print_set(d)}>"
        else:
            yield None


def _succ_laws(rng):
    for _ in range(300):
        x, y = gen.gen_set(rng, 4), gen.gen_set(rng, 4)
        bad = succ(x) is EMPTY or (succ(x) is succ(y) and x is not y)
        yield f"succ on {print_set(x)}, {print_set(y)}" if bad else None


def _round_trip(rng):
    for _ in range(300):
        s = gen.gen_set(rng, 5)
        yield None if core.parse_set(print_set(s)) is s else print_set(s)


def _closure_vs_warshall(rng):
    for _ in range(200):
        r = gen.gen_relation(rng, 8)
        ok = rtrancl(r) is oracle.warshall_rtrancl(r) and trancl(r) is oracle.warshall_trancl(r)
        yield None if ok else print_set(r)


# -- fixedpoint ---------------------------------------------------------------------

def _lfp_definition(rng):
    for _ in range(100):
        d, h = gen.gen_monoop(rng)
        a = lfp_iterate(d, h)
        ok = a is oracle.lfp_by_definition(d, h) and h(a) is a
        ok = ok and all(subset(a, x) for x in oracle.prefixedpoints(d, h))
        yield None if ok else f"D = {print_set(d)}, h = {h}"


def _banach(rng):
    for i in range(100):
        x, y, f, g = gen.gen_function_pair(rng, 8, injective=i % 2 == 0)
        parts = banach_decompose(x, y, f, g)
        bad = [k for k, v in parts.equations(x, y, f, g).items() if not v]
        if not bad and i % 2 == 0:
            h = schroeder_bernstein(x, y, f, g)
            if not oracle.is_bijection(h, x, y):
                bad = ["bijection"]
        yield f"f = {print_set(f)}, g = {print_set(g)}: {bad}" if bad else None


# -- recursion --------------------------------------------------------------------

def _table_body(rng):
    table = [rng.randrange(4) for _ in range(8)]

    def body(x, f):
        vals = [f(y) for y in f.domain.elems] if isinstance(f, RecFn) else []
        return mk([nat(table[x._hash % 8])] + vals)

    return body


def _wfrec_equation(rng):
    for _ in range(100):
        r = gen.gen_wf_relation(rng, 7)
        body = _table_body(rng)
        field = {p for z in r.elems for p in z._pair}
        ok = True
        for a in sorted(field, key=lambda s: s._key):
            if wfrec(r, a, body) is not wfrec_unfolded(r, a, body):
                ok = False
                break
            t = trancl(r)
            f = the_recfun(t, a, body)
            if not is_recfun(t, a, body, f):
                ok = False
                break
        yield None if ok else print_set(r)


def _rank_laws(rng):
    for n in range(9):
        yield None if rank(nat(n)) is nat(n) else f"rank({n})"
    for _ in range(500):
        b = gen.gen_set(rng, 4)
        a = gen.gen_set(rng, 4)
        ok = all(rank(x)._ord < rank(b)._ord for x in b.elems)
        p = pair(a, b)
        ok = ok and rank(a)._ord < rank(p)._ord and rank(b)._ord < rank(p)._ord
        ok = ok and rank(b)._ord == oracle.rank_by_descent(b)
        yield None if ok else f"{print_set(a)}, {print_set(b)}"


def _eclose_minimal(rng):
    stages = oracle.v_stages(4)
    universe = sorted(stages[4].elems, key=lambda s: s._key)
    trans = oracle.transitive_subsets_mask(universe)
    for a in stages[4].elems:
        e = eclose(a)
        am = oracle.set_to_mask(universe, a)
        em = oracle.set_to_mask(universe, e)
        supers = trans[(trans & am) == am]
        ok = bool(((supers & em) == em).all()) and em in set(int(m) for m in supers)
        yield None if ok else print_set(a)


def _vfrom_rank(rng):
    stages = oracle.v_stages(4)
    for n in range(5):
        v = vfrom(EMPTY, n)
        ok = v is stages[n]
        for y in stages[4].elems:
            ok = ok and ((y in v) == (rank(y)._ord < n))
        yield None if ok else f"n = {n}"


def _nat_rec_loop(rng):
    for k in range(7):
        for a in range(3):
            def b(m, r):
                return nat(r._ord + m._ord + 1)
            ok = nat_rec(nat(a), b, nat(k)) is oracle.nat_loop(nat(a), b, k)
            yield None if ok else f"a = {a}, k = {k}"


# -- datatypes ----------------------------------------------------------------------

def _list_laws(rng):
    a = mk([nat(0), nat(1), nat(2)])
    h1 = succ

    def h2(x):
        return pair(x, x)

    for _ in range(60):
        l = gen.gen_list(rng, a, 5)
        xs, ys = gen.gen_list(rng, a, 3), gen.gen_list(rng, a, 3)
        ok = (
            rev(list_map(h1, l)) is list_map(h1, rev(l))
            and list_map(h1, list_map(h2, l)) is list_map(lambda x: h1(h2(x)), l)
            and list_map(lambda x: x, l) is l
            and rev(rev(l)) is l
            and list_map(h1, append(xs, ys)) is append(list_map(h1, xs), list_map(h1, ys))
            and is_list(mk(h1(x) for x in a.elems), list_map(h1, l))
            and to_pylist(l) == oracle.list_to_py(l)
        )
        yield None if ok else print_set(l)


def _reflect(rng):
    labels = mk([nat(0), nat(1)])
    for t in gen.gen_terms(labels, 5, 3, rng.randrange(1 << 30), 100):
        yield None if reflect(reflect(t)) is t else print_set(t)


def _tf_laws(rng):
    labels = mk([nat(0), nat(1)])
    for z in gen.gen_tfs(labels, 6, rng.randrange(1 << 30), 100):
        m = tf_map(succ, z)
        ok = (
            tf_map(lambda u: u, z) is z
            and is_tree(mk(succ(x) for x in labels.elems), m) == is_tree(labels, z)
            and is_forest(mk(succ(x) for x in labels.elems), m) == is_forest(labels, z)
            and length(tf_preorder(z)) == tf_size(z)._ord == oracle.tf_size_native(z)
        )
        yield None if ok else print_set(z)


def _kleene(rng):
    for a in (EMPTY, mk([nat(0)]), mk([nat(0), nat(1)])):
        for n in range(5):
            got = iterate_op(list_operator(a), n)
            want = mk(l for l in oracle.lists_over(a, n - 1)) if n > 0 else EMPTY
            yield None if got is want else f"A = {print_set(a)}, n = {n}"


def _fin(rng):
    for k in range(7):
        a = nat(k)
        yield None if fin_enum(a) is core.powerset(a) else f"|A| = {k}"


# -- logic ------------------------------------------------------------------------

def _all_props(n_vars: int, max_conn: int) -> list:
    by_size: list = [[FLS] + [Var(v) for v in range(n_vars)]]
    for k in range(1, max_conn + 1):
        level = []
        for i in range(k):
            for p in by_size[i]:
                for q in by_size[k - 1 - i]:
                    level.append(Imp(p, q))
        by_size.append(level)
    return [p for level in by_size for p in level]


def _completeness(rng):
    for p in _all_props(2, 3):
        yield _complete_case([], p)


def _complete_case(hs, p, cross_check: bool = True) -> Optional[str]:
    res = prove_complete(hs, p)
    if isinstance(res, frozenset):
        from .logic.syntax import is_true

        ok = not models(hs, p) and all(is_true(h, res) for h in hs) and not is_true(p, res)
    else:
        ok = models(hs, p) and check_derivation(res, hs) == p
        if ok and cross_check:
            ok = p in thms_bounded(hs, subformula_closure(all_conclusions(res) | set(hs)))
    return None if ok else f"{[print_prop(h) for h in hs]} |- {print_prop(p)}"


def _random_sequents(rng):
    for _ in range(100):
        hs = [gen.gen_prop(rng, 3, 3) for _ in range(rng.randint(0, 2))]
        p = gen.gen_prop(rng, 3, 3)
        yield _complete_case(hs, p)


def _soundness(rng):
    hyps = [gen.gen_prop(rng, 3, 2) for _ in range(3)]
    for d in gen.grow_derivations(rng, hyps, 300):
        c = check_derivation(d, hyps)
        yield None if models(hyps, c) else print_prop(c)


CHECKS: dict = {
    "core": [
        ("extensionality", _extensionality),
        ("pair injectivity", _pair_injective),
        ("succ injective and nonzero", _succ_laws),
        ("print/parse round trip", _round_trip),
        ("closure vs Warshall", _closure_vs_warshall),
    ],
    "fixedpoint": [
        ("lfp vs intersection of prefixedpoints", _lfp_definition),
        ("Banach equations and bijection", _banach),
    ],
    "recursion": [
        ("wfrec equation and is_recfun", _wfrec_equation),
        ("rank laws", _rank_laws),
        ("eclose minimality", _eclose_minimal),
        ("vfrom rank criterion", _vfrom_rank),
        ("nat_rec vs loop", _nat_rec_loop),
    ],
    "datatypes": [
        ("list laws", _list_laws),
        ("reflect involution", _reflect),
        ("tree/forest laws", _tf_laws),
        ("Kleene agreement for lists", _kleene),
        ("Fin equals powerset", _fin),
    ],
    "logic": [
        ("completeness sweep", _completeness),
        ("random sequents", _random_sequents),
        ("soundness of grown derivations", _soundness),
    ],
}


def run(suite: str, seed: int = 0, out=print) -> int:
    """Run a suite ('all' for every suite); 0 if all checks pass, 1 otherwise."""
    names = SUITES if suite == "all" else (suite,)
    failed = 0
    for name in names:
        for label, check in CHECKS[name]:
            rng = _check_rng(seed, f"{name}/{label}")
            count = 0
            first = None
            for res in check(rng):
                count += 1
                if res is not None and first is None:
                    first = res
            status = "ok" if first is None else "FAIL"
            out(f"{name}: {label}: {status} ({count} cases)")
            if first is not None:
                out(f"  counterexample: {first}")
                failed += 1
    out(f"selftest {suite} seed {seed}: {'passed' if not failed else f'{failed} failed'}")
    return 0 if not failed else 1
