import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfzf import _oracles as oracle
from hfzf.core import EMPTY, big_union, mk, nat, pair, parse_set, powerset, singleton, subset, succ, union2
from hfzf.errors import BoundExceeded, NotTransitive, NotWellFounded, VrecGuardViolation
from hfzf.ordinals import is_ord, lt
from hfzf.recursion import (
    RecFn,
    VrecFn,
    eclose,
    in_univ,
    is_recfun,
    nfold_union,
    rank,
    rank_body,
    rank_by_transrec,
    the_recfun,
    transrec,
    vfrom,
    vrec,
    vrec_by_definition,
    wfrec,
    wfrec_unfolded,
    wftrec,
)
from hfzf.relations import inv_image_singleton, is_transitive_rel, memrel, trancl

from strategies import hsets, wf_relations

P = parse_set


def test_nfold_union():
    a = P("{5}")
    assert nfold_union(a, 0) is a
    assert nfold_union(P("{2}"), 1) is nat(2)
    assert nfold_union(P("{{0}}"), 2) is EMPTY


def test_eclose_examples():
    assert eclose(EMPTY) is EMPTY
    assert eclose(P("{2}")) is nat(3)
    assert eclose(P("{{1}}")) is mk([P("{1}"), nat(1), EMPTY])


def test_is_recfun_examples():
    r = memrel(nat(2))
    h = lambda x, f: EMPTY
    assert is_recfun(r, nat(1), h, P("{<0,0>}"))
    assert not is_recfun(r, nat(1), h, EMPTY)
    assert is_recfun(r, EMPTY, h, EMPTY)


def test_the_recfun_examples():
    r = memrel(nat(3))
    assert the_recfun(r, nat(2), lambda x, f: x) is P("{<0,0>,<1,1>}")
    assert the_recfun(r, EMPTY, lambda x, f: x) is EMPTY
    with pytest.raises(NotWellFounded):
        the_recfun(P("{<0,0>}"), EMPTY, lambda x, f: x)
    with pytest.raises(NotTransitive):
        the_recfun(P("{<0,1>,<1,2>}"), nat(2), lambda x, f: x)


def test_wfrec_examples():
    r = memrel(nat(4))
    assert wfrec(r, nat(3), lambda x, f: x) is nat(3)

    def collect(x, f):
        return mk(f(y) for y in f.domain.elems)

    # unfolding by hand: v(0) = 0, v(1) = {0}, v(2) = {0, {0}}, v(3) = {0, {0}, {0, {0}}}
    assert wfrec(r, nat(3), collect) is nat(3)
    assert wfrec(r, nat(3), collect) is wfrec_unfolded(r, nat(3), collect)
    with pytest.raises(NotWellFounded):
        wfrec(P("{<0,1>,<1,0>}"), nat(0), collect)


def test_wfrec_exposes_only_immediate_predecessors():
    r = P("{<0,1>,<1,2>}")
    seen = {}

    def body(x, f):
        seen[x] = f.domain
        return x

    wfrec(r, nat(2), body)
    assert seen[nat(2)] is P("{1}")


def test_transrec_and_rank():
    seen = []
    transrec(EMPTY, lambda x, f: seen.append(f.domain) or EMPTY)
    assert seen == [EMPTY]
    assert rank(EMPTY) is EMPTY
    assert all(rank(nat(n)) is nat(n) for n in range(9))
    assert rank(pair(nat(0), nat(0))) is nat(2)
    # <0,1> = {{0}, {0,1}}: rank({0,1}) = 2, so the pair has rank 3
    assert rank(pair(nat(0), nat(1))) is nat(3)
    assert rank_by_transrec(pair(nat(0), nat(1))) is nat(3)


def test_vfrom_examples():
    assert vfrom(EMPTY, 0) is EMPTY
    assert vfrom(EMPTY, 2) is P("{0,1}")
    a = P("{7}")
    # V[A]_0 = A, so V[A]_1 = A u P(A)
    assert vfrom(a, 0) is a
    assert vfrom(a, 1) is union2(a, powerset(a)) is P("{0, 7, {7}}")
    assert len(vfrom(EMPTY, 4)) == 16
    with pytest.raises(BoundExceeded):
        vfrom(EMPTY, 5)


def test_in_univ_examples():
    a = P("{<3,4>}")
    assert all(in_univ(a, nat(n)) for n in range(6))
    assert in_univ(a, P("<3,4>"))
    assert in_univ(EMPTY, P("{<1,2>,{{3}}}"))


def test_vrec_examples():
    a = P("{<0,1>,2}")
    assert vrec(a, lambda x, f: x) is a

    def length(l, g):
        tag, body = l.pair_parts()
        return EMPTY if tag is EMPTY else succ(g(body.pair_parts()[1]))

    from hfzf.datatypes import from_pylist

    assert vrec(from_pylist([nat(0), nat(0)]), length) is nat(2)
    with pytest.raises(VrecGuardViolation) as info:
        vrec(a, lambda x, f: f(x))
    assert info.value.query is a


def test_vrec_may_query_any_smaller_rank():
    # the argument {2} has rank 3; 2 and {1} are not elements but have smaller rank
    def body(x, f):
        if x is P("{2}"):
            return mk([f(nat(2)), f(P("{1}"))])
        return x

    assert vrec(P("{2}"), body) is mk([nat(2), P("{1}")])


def test_vrecfn_as_set():
    fn = VrecFn(2, lambda y: y)
    assert fn.as_set() is mk(pair(y, y) for y in vfrom(EMPTY, 2).elems)


def test_vrec_agrees_with_definition():
    for a in vfrom(EMPTY, 4).elems:
        assert vrec_by_definition(a, rank_body) is vrec(a, rank_body) is rank(a)

    def depth_sum(x, f):
        # queries sets that are not elements of x, but are of smaller rank
        if x._rank == 0:
            return EMPTY
        return mk([f(nat(x._rank - 1)), f(big_union(x))])

    for a in vfrom(EMPTY, 4).elems:
        assert vrec_by_definition(a, depth_sum) is vrec(a, depth_sum)
    with pytest.raises(BoundExceeded):
        vrec_by_definition(nat(4), rank_body)


def table_body(seed):
    def body(x, f):
        vals = [f(y) for y in f.domain.elems]
        return mk([nat((x._hash ^ seed) % 5)] + vals)

    return body


@settings(max_examples=200)
@given(wf_relations(7), st.integers(0, 1000))
def test_wfrec_equation(r, seed):
    body = table_body(seed)
    field = sorted({p for z in r.elems for p in z.pair_parts()})
    for a in field:
        assert wfrec(r, a, body) is wfrec_unfolded(r, a, body)


@settings(max_examples=100)
@given(wf_relations(6), st.integers(0, 1000))
def test_the_recfun_is_recfun_and_unique(r, seed):
    body = table_body(seed)
    t = trancl(r)
    assert is_transitive_rel(t)
    for a in sorted({p for z in t.elems for p in z.pair_parts()}):
        f = the_recfun(t, a, body)
        assert is_recfun(t, a, body, f)
        assert wftrec(t, a, body) is body(a, RecFn.from_set(f))
        # any other candidate on the same domain differs at some point
        dom = inv_image_singleton(t, a)
        for x in dom.elems:
            g = mk(pair(y, v if y is not x else succ(v)) for y, v in (z.pair_parts() for z in f.elems))
            assert not is_recfun(t, a, body, g)


@settings(max_examples=60)
@given(hsets(4), st.integers(0, 1000))
def test_transrec_field_independence(i, seed):
    body = table_body(seed)
    for k in i.elems:
        big = wfrec(memrel(eclose(singleton(i))), k, body)
        assert big is transrec(k, body)


@given(hsets(4))
def test_transrec_equation(a):
    lhs = transrec(a, rank_body)
    rhs = rank_body(a, RecFn({x: transrec(x, rank_body) for x in a.elems}))
    assert lhs is rhs is rank(a)


@settings(max_examples=300)
@given(hsets(4), hsets(4))
def test_rank_laws(a, b):
    assert is_ord(rank(a))
    assert rank(a)._ord == oracle.rank_by_descent(a)
    for x in b.elems:
        assert lt(rank(x), rank(b))
    p = pair(a, b)
    assert lt(rank(a), rank(p)) and lt(rank(b), rank(p))
    assert rank(a) is mk(z for y in a.elems for z in succ(rank(y)).elems)


@given(hsets(4))
def test_eclose_transitive_and_contains(a):
    e = eclose(a)
    assert subset(a, e)
    assert all(subset(x, e) for x in e.elems)
    junk = union2(e, nat(3))
    assert subset(e, junk)


def test_eclose_minimal_exhaustive():
    v4 = oracle.v_stages(4)[4]
    universe = sorted(v4.elems)
    trans = oracle.transitive_subsets_mask(universe)
    for a in v4.elems:
        em = oracle.set_to_mask(universe, eclose(a))
        am = oracle.set_to_mask(universe, a)
        supers = trans[(trans & am) == am]
        assert ((supers & em) == em).all()
        assert em in {int(m) for m in supers}


def test_vfrom_matches_iterated_powerset_and_rank_criterion():
    stages = oracle.v_stages(4)
    sample = list(stages[4].elems)
    for n in range(5):
        v = vfrom(EMPTY, n)
        assert v is stages[n]
        for y in sample:
            assert (y in v) == lt(rank(y), nat(n))


@given(hsets(5))
def test_rank_criterion_random(y):
    for n in range(5):
        assert (y in vfrom(EMPTY, n)) == (rank(y)._ord < n)


@settings(max_examples=60)
@given(hsets(2, 2), hsets(2, 2), st.integers(0, 3), st.integers(0, 3))
def test_vfrom_monotone(a, b, m, n):
    big = union2(a, b)
    lo, hi = min(m, n), max(m, n)
    assert subset(vfrom(a, lo), vfrom(big, hi))


@given(st.sampled_from([EMPTY, P("{0}"), P("{5}")]), st.integers(0, 2), st.data())
def test_vfrom_subset_closure(a, n, data):
    v = vfrom(a, n)
    picks = data.draw(st.lists(st.sampled_from(v.elems), max_size=3)) if v.elems else []
    x = mk(picks)
    assert x in vfrom(a, n + 1)


@given(hsets(2), hsets(4), hsets(4))
def test_univ_pair_closure(a, x, y):
    if in_univ(a, x) and in_univ(a, y):
        assert in_univ(a, pair(x, y))
    assert in_univ(EMPTY, x)


@given(hsets(4))
def test_epsilon_induction(a):
    # psi(x): x has no element equal to x, closed under the induction step
    def psi(x):
        return x not in x

    assert all(psi(y) for y in eclose(singleton(a)).elems)
