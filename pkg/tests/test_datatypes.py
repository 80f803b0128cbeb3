import random
from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfzf import _oracles as oracle
from hfzf import gen
from hfzf.core import EMPTY, big_union, mk, nat, pair, parse_set, powerset, subset, succ, union2
from hfzf.errors import BoundExceeded, NotAList, NotASum, NotATerm, NotATF
from hfzf.datatypes import (
    FNIL,
    INL,
    NIL,
    Apply,
    Left,
    Right,
    all_terms,
    anything,
    append,
    apply_term,
    case_sum,
    cons_list,
    fcons,
    fin_enum,
    fin_induction_check,
    fnil,
    from_pylist,
    inl,
    inr,
    is_forest,
    is_list,
    is_term,
    is_tf,
    is_tree,
    length,
    list_case,
    list_map,
    list_operator,
    list_rec,
    nil,
    parse_tag,
    part,
    reflect,
    rev,
    sum_set,
    sum_view,
    tcons,
    term_rec,
    term_size,
    term_view,
    tf_case,
    tf_map,
    tf_preorder,
    tf_rec,
    tf_size,
    to_pylist,
)
from hfzf.fixedpoint import iterate_op

from strategies import forests, hsets, lists_over, terms, tfs, trees

P = parse_set
A2 = nat(2)
A3 = nat(3)
L = from_pylist


def n(k):
    return nat(k)


def h_succ(x):
    return succ(x)


def h_pair(x):
    return pair(x, x)


# -- sums and Part ---------------------------------------------------------------

def test_sum_examples():
    assert inl(EMPTY) is pair(EMPTY, EMPTY)
    assert inr(n(3)) is pair(n(1), n(3))
    assert case_sum(lambda a: succ(a), lambda b: EMPTY, inl(n(5))) is n(6)
    assert case_sum(lambda a: EMPTY, lambda b: b, inr(n(2))) is n(2)
    assert sum_view(inl(n(4))) == Left(n(4))
    assert sum_view(inr(n(4))) == Right(n(4))
    assert sum_set(P("{0}"), P("{1,2}")) is mk([inl(n(0)), inr(n(1)), inr(n(2))])
    with pytest.raises(NotASum):
        case_sum(lambda a: a, lambda b: b, pair(n(2), n(0)))
    with pytest.raises(NotASum):
        sum_view(n(3))


def test_part_examples():
    assert part(mk([inl(n(0)), inr(n(1))]), INL) is mk([inl(n(0))])
    assert part(EMPTY, parse_tag("Inr.Inl")) is EMPTY
    s = mk([inr(inl(n(2)))])
    assert part(s, parse_tag("Inr∘Inl")) is s
    a, b = P("{0,3}"), P("{1}")
    assert part(sum_set(a, b), INL) is mk(inl(x) for x in a.elems)
    with pytest.raises(ValueError):
        parse_tag("Inx")


# -- lists -------------------------------------------------------------------------

def test_list_examples():
    assert nil() is inl(EMPTY)
    assert cons_list(n(0), NIL) is inr(pair(n(0), NIL))
    assert is_list(P("{0}"), cons_list(n(0), nil()))
    assert not is_list(P("{0}"), cons_list(n(1), nil()))
    assert not is_list(anything, pair(n(0), n(1)))
    assert list_case(n(7), lambda x, y: x, nil()) is n(7)
    assert list_case(n(7), lambda x, y: x, L([n(3)])) is n(3)
    with pytest.raises(NotAList):
        list_case(n(7), lambda x, y: x, n(4))


def test_list_rec_examples():
    lengthfn = lambda x, y, r: succ(r)
    assert list_rec(EMPTY, lengthfn, L([n(0), n(0)])) is n(2)
    assert list_rec(n(5), lengthfn, nil()) is n(5)
    assert append(nil(), L([n(1)])) is L([n(1)])
    assert append(L([n(0)]), L([n(1)])) is L([n(0), n(1)])
    assert rev(L([n(0), n(1), n(2)])) is L([n(2), n(1), n(0)])
    assert list_map(h_succ, L([n(0), n(4)])) is L([n(1), n(5)])
    with pytest.raises(NotAList):
        list_rec(EMPTY, lengthfn, pair(n(3), n(3)))


def test_list_encoding_matches_hand_decoder():
    for l in oracle.lists_over(A2, 3):
        items = oracle.list_to_py(l)
        assert L(items) is l
        assert to_pylist(l) == items
        assert length(l) == len(items)


@given(lists_over(A3), st.sampled_from([h_succ, h_pair]))
def test_list_equations(l, h):
    # the two defining equations of list_rec, checked one step down
    body = lambda x, y, r: pair(x, r)
    if l is NIL:
        assert list_rec(n(9), body, l) is n(9)
    else:
        x, y = to_pylist(l)[0], L(to_pylist(l)[1:])
        assert l is cons_list(x, y)
        assert list_rec(n(9), body, l) is body(x, y, list_rec(n(9), body, y))
        assert list_map(h, l) is cons_list(h(x), list_map(h, y))
        assert append(l, NIL) is l


@given(lists_over(A3), lists_over(A3), st.sampled_from([h_succ, h_pair]), st.sampled_from([h_succ, h_pair]))
def test_map_rev_laws(xs, ys, h1, h2):
    assert rev(list_map(h1, xs)) is list_map(h1, rev(xs))
    assert list_map(h1, list_map(h2, xs)) is list_map(lambda x: h1(h2(x)), xs)
    assert list_map(lambda x: x, xs) is xs
    assert rev(rev(xs)) is xs
    assert list_map(h1, append(xs, ys)) is append(list_map(h1, xs), list_map(h1, ys))
    assert to_pylist(rev(xs)) == to_pylist(xs)[::-1]
    assert to_pylist(append(xs, ys)) == to_pylist(xs) + to_pylist(ys)


@given(lists_over(A3), st.sampled_from([h_succ, h_pair]))
def test_map_typing(l, h):
    image = mk(h(x) for x in A3.elems)
    assert is_list(A3, l)
    assert is_list(image, list_map(h, l))


@given(hsets(4))
def test_list_recognizer_fixedpoint_shape(x):
    # x is a list iff it is Nil, or Cons(a, l) with a in A and l a list
    a = P("{0,1}")
    try:
        v = sum_view(x)
    except NotASum:
        assert not is_list(a, x)
        return
    if isinstance(v, Left):
        expected = v.payload is EMPTY
    else:
        parts = v.payload._pair
        expected = parts is not None and parts[0] in a and is_list(a, parts[1])
    assert is_list(a, x) == expected


def test_generated_lists_are_lists():
    for l in gen.gen_lists(A2, 5, seed=3, count=50):
        assert is_list(A2, l)


@pytest.mark.parametrize("size", [1, 2])
@pytest.mark.parametrize("k", range(5))
def test_kleene_agreement(size, k):
    a = nat(size)
    expect = mk(l for l in oracle.lists_over(a, k) if len(oracle.list_to_py(l)) < k)
    assert iterate_op(list_operator(a), k) is expect
    assert all(is_list(a, l) for l in expect.elems)


# -- terms -------------------------------------------------------------------------

def leaf(a):
    return apply_term(a, [])


def test_term_examples():
    assert apply_term(n(0), []) is pair(n(0), NIL)
    assert is_term(P("{0,1}"), apply_term(n(0), [leaf(n(1))]))
    assert not is_term(P("{0}"), apply_term(n(0), [leaf(n(1))]))
    assert not is_term(anything, pair(n(0), n(5)))
    d = lambda x, zs, rs: pair(zs, rs)
    assert term_rec(d, leaf(n(4))) is pair(NIL, NIL)
    three = apply_term(n(0), [leaf(n(1)), leaf(n(0))])
    assert term_size(three) is n(3)
    with pytest.raises(NotATerm):
        term_rec(d, n(3))


def test_reflect_examples():
    assert reflect(leaf(n(0))) is leaf(n(0))
    b, c = leaf(n(1)), leaf(n(2))
    assert reflect(apply_term(n(0), [b, c])) is apply_term(n(0), [c, b])
    t = Apply(n(0), (Apply(n(1), (Apply(n(2)), Apply(n(3)))), Apply(n(4))))
    want = Apply(n(0), (Apply(n(4)), Apply(n(1), (Apply(n(3)), Apply(n(2))))))
    assert reflect(t.encode()) is want.encode()
    assert term_view(t.encode()) == t


def term_native_reflect(view):
    return Apply(view.label, tuple(term_native_reflect(a) for a in reversed(view.args)))


def check_reflect(t):
    label, ts = t._pair
    # reflect(Apply(a, ts)) = Apply(a, rev(map(reflect, ts)))
    assert reflect(t) is apply_term(label, rev(list_map(reflect, ts)))
    assert reflect(reflect(t)) is t
    assert term_view(reflect(t)) == term_native_reflect(term_view(t))


def test_reflect_exhaustive_small():
    ts = all_terms(A2, 3, 2)
    assert len(ts) > 100
    for t in ts:
        check_reflect(t)


def test_reflect_random_deeper():
    for t in gen.gen_terms(A2, 5, 3, seed=11, count=200):
        assert is_term(A2, t)
        check_reflect(t)


@given(terms(A2, depth=4, branch=3))
def test_term_rec_equation_and_recognizer(t):
    assert is_term(A2, t)
    label, ts = t._pair
    d = lambda x, zs, rs: pair(x, rs)
    assert term_rec(d, t) is d(label, ts, list_map(lambda z: term_rec(d, z), ts))
    assert term_size(t)._ord == len(list(_subterms(term_view(t))))


def _subterms(view):
    yield view
    for a in view.args:
        yield from _subterms(a)


# -- trees and forests ---------------------------------------------------------------

def test_tf_examples():
    a, b = n(0), n(1)
    assert tcons(a, FNIL) is inl(pair(a, FNIL))
    assert fnil() is inr(NIL)
    assert fcons(tcons(a, FNIL), FNIL) is inr(cons_list(tcons(a, FNIL), FNIL))
    assert is_forest(A2, fnil())
    assert is_tree(A2, tcons(a, fnil()))
    assert not is_tree(A2, fnil())
    assert not is_tree(P("{1}"), tcons(a, fnil()))
    assert not is_tf(anything, n(3))
    t = tcons(a, fcons(tcons(b, FNIL), FNIL))
    assert tf_rec(None, n(7), None, fnil()) is n(7)
    assert tf_size(t) is n(2)
    assert tf_preorder(t) is L([a, b])
    assert tf_size(fnil()) is EMPTY
    with pytest.raises(NotATF):
        tf_size(n(2))


B = lambda x, f, r: pair(x, r)
C = n(5)
D = lambda t, f, r1, r2: pair(r1, r2)


@given(tfs(A2, 3))
def test_tf_rec_equations(z):
    kind = sum_view(z)
    got = tf_rec(B, C, D, z)
    if isinstance(kind, Left):
        x, f = kind.payload._pair
        assert got is B(x, f, tf_rec(B, C, D, f))
    elif kind.payload is NIL:
        assert got is C
    else:
        t, f = kind.payload._pair[1]._pair
        assert got is D(t, f, tf_rec(B, C, D, t), tf_rec(B, C, D, f))
    same = tf_case(lambda x, f: EMPTY, EMPTY, lambda t, f: EMPTY, z)
    assert same is EMPTY


@given(tfs(A2, 3))
def test_tf_laws(z):
    assert tf_map(lambda u: u, z) is z
    assert length(tf_preorder(z)) == tf_size(z)._ord == oracle.tf_size_native(z)
    m = tf_map(h_succ, z)
    assert is_tf(nat(3), m)
    assert tf_size(m) is tf_size(z)


@given(trees(A2, 3), forests(A2, 3))
def test_tf_map_sort_preservation(t, f):
    assert is_tree(A2, t) and not is_forest(A2, t)
    assert is_forest(A2, f) and not is_tree(A2, f)
    assert is_tree(anything, tf_map(h_pair, t))
    assert is_forest(anything, tf_map(h_pair, f))


def test_generated_tfs():
    for z in gen.gen_tfs(A2, 6, seed=5, count=60):
        assert is_tf(A2, z)
        assert tf_map(lambda u: u, z) is z


# -- freeness ------------------------------------------------------------------------

def test_constructor_freeness_exhaustive():
    small = list(oracle.v_stages(3)[3].elems)
    for x, y in cartesian(small, repeat=2):
        assert inl(x) is not inr(y)
        assert (inl(x) is inl(y)) == (x is y)
        assert (inr(x) is inr(y)) == (x is y)
        assert cons_list(x, NIL) is not NIL
        assert tcons(x, FNIL) is not FNIL
        assert tcons(x, FNIL) is not fcons(tcons(y, FNIL), FNIL)
    lists = oracle.lists_over(A2, 2)
    for (a, l), (b, k) in cartesian(cartesian(A2.elems, lists), repeat=2):
        assert (cons_list(a, l) is cons_list(b, k)) == (a is b and l is k)
        assert (apply_term(a, l) is apply_term(b, k)) == (a is b and l is k)


# -- Fin -----------------------------------------------------------------------------

def test_fin_examples():
    assert fin_enum(nat(2)) is P("{0,1,{1},2}") is powerset(nat(2))
    assert fin_enum(EMPTY) is P("{0}")
    with pytest.raises(BoundExceeded):
        fin_enum(nat(13))


@pytest.mark.parametrize("k", range(7))
def test_fin_is_powerset(k):
    a = mk([nat(i) for i in range(k - 1)] + [P("{5}")]) if k else EMPTY
    assert fin_enum(a) is powerset(a)


def test_fin_closure_rules():
    a = P("{0,2,{3}}")
    fin = fin_enum(a)
    for b in fin.elems:
        for c in fin.elems:
            assert union2(b, c) in fin
        for x in a.elems:
            assert mk(list(b.elems) + [x]) in fin
    for c in fin.elems:
        for b in powerset(c).elems:
            assert b in fin
    fam = mk([P("{0}"), P("{2}")])
    assert big_union(fam) in fin
    # a family of finite sets of a finite set is finite and its union is finite
    ff = fin_enum(fin_enum(P("{0,1}")))
    assert all(big_union(z) in fin_enum(P("{0,1}")) for z in ff.elems)


def test_fin_induction_check():
    a = P("{0,1,2}")
    assert fin_induction_check(a, lambda y: subset(y, a))
    assert fin_induction_check(a, lambda y: len(y) <= 3)
    # step fails from {0} to {0,1}
    assert not fin_induction_check(a, lambda y: len(y) <= 1)
    assert not fin_induction_check(a, lambda y: y is not EMPTY)



@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_fin_induction_random_predicates(seed):
    rng = random.Random(seed)
    a = P("{0,1,2}")
    bad = {b for b in powerset(a).elems if rng.random() < 0.2}
    psi = lambda y: y not in bad
    ok = fin_induction_check(a, psi)
    assert ok == (not bad)
