import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfzf import _oracles as oracle
from hfzf.core import EMPTY, big_union, mk, nat, parse_set, succ
from hfzf.errors import BoundExceeded, NotANat, NotZeroOrSucc
from hfzf.fixedpoint import iterate_op
from hfzf.ordinals import (
    NAT_BOUND,
    as_nat,
    is_limit,
    is_ord,
    is_transset,
    lt,
    nat_add,
    nat_case,
    nat_operator,
    nat_rec,
    nat_upto,
)

from strategies import hsets


def test_predicates():
    assert is_ord(nat(3))
    assert not is_ord(parse_set("{1}"))
    assert not is_transset(parse_set("{1}"))
    assert all(not is_limit(nat(n)) for n in range(10))
    assert lt(nat(1), nat(3)) and not lt(nat(3), nat(1))
    assert not lt(EMPTY, parse_set("{0,{1}}"))  # not an ordinal on the right


def test_nat_upto():
    assert nat_upto(0) is EMPTY
    assert nat_upto(3) is parse_set("{0,1,2}")
    assert iterate_op(nat_operator, 3) is nat_upto(3)
    with pytest.raises(BoundExceeded):
        nat_upto(NAT_BOUND + 1)


@pytest.mark.parametrize("k", range(7))
def test_nat_upto_is_iterate(k):
    assert nat_upto(k) is iterate_op(nat_operator, k)


def test_nat_case():
    assert nat_case(nat(7), lambda m: m, EMPTY) is nat(7)
    assert nat_case(EMPTY, lambda m: m, succ(nat(2))) is nat(2)
    with pytest.raises(NotZeroOrSucc):
        nat_case(EMPTY, lambda m: m, parse_set("{1}"))


def test_nat_rec_examples():
    assert nat_rec(nat(4), lambda m, r: r, EMPTY) is nat(4)
    assert nat_add(nat(3), nat(2)) is nat(5)
    assert nat_rec(EMPTY, lambda m, r: succ(succ(r)), nat(3)) is nat(6)
    assert nat_add(EMPTY, nat(4)) is nat(4)
    assert nat_add(nat(2), nat(2)) is nat(4)
    assert nat_add(nat(1), nat(3)) is nat(4)
    with pytest.raises(NotANat):
        nat_rec(EMPTY, lambda m, r: r, parse_set("{1}"))


@given(st.integers(0, 6), st.integers(0, 4))
def test_nat_rec_matches_loop(k, a):
    def body(m, r):
        return nat(as_nat(r) * 2 + as_nat(m))

    assert nat_rec(nat(a), body, nat(k)) is oracle.nat_loop(nat(a), body, k)


@given(st.integers(0, 8), st.integers(0, 8))
def test_trichotomy(i, j):
    a, b = nat(i), nat(j)
    assert lt(a, b) + (a is b) + lt(b, a) == 1


@given(hsets(4))
def test_elements_of_ordinals_are_ordinals(a):
    if is_ord(a):
        assert all(is_ord(x) for x in a.elems)
        assert is_ord(succ(a))


@given(st.lists(st.integers(0, 8), max_size=4))
def test_union_of_ordinals_is_ordinal(ns):
    fam = mk(nat(n) for n in ns)
    assert is_ord(big_union(fam))
    assert big_union(fam) is nat(max(ns, default=0))
