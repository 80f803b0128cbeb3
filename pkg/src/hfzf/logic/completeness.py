"""Constructive completeness: every valid proposition gets a derivation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import BoundExceeded
from .hilbert import MP, Derivation, Hyp, axiom_for, derive_I, ex_falso, deduction, excluded_middle, weaken_right
from .syntax import FLS, Fls, Prop, Var, falsifying_valuation, imps, is_true, neg, variables

MAX_VARS = 12


@dataclass(frozen=True)
class Sequent:
    hyps: frozenset
    goal: Prop

    def holds(self) -> bool:
        return falsifying_valuation(self.hyps, self.goal) is None


def truth_lemma(p: Prop, t) -> Derivation:
    """Derive p (if true under t) or p => Fls (if false) from hyps(p, t)."""
    t = frozenset(t)
    if isinstance(p, Fls):
        return derive_I(FLS)
    if isinstance(p, Var):
        return Hyp(p) if p.v in t else Hyp(neg(p))
    a, b = p.p, p.q
    if is_true(b, t):
        return weaken_right(truth_lemma(b, t), a)
    da = truth_lemma(a, t)
    db = truth_lemma(b, t)
    if not is_true(a, t):
        # a false: assume a, reach Fls, conclude b
        return deduction(ex_falso(MP(da, Hyp(a)), b), a)
    # a true, b false: assume a => b, reach Fls
    return deduction(MP(db, MP(Hyp(p), da)), p)


def _literals(assigned: list, t: frozenset) -> frozenset:
    return frozenset(Var(v) if v in t else neg(Var(v)) for v in assigned)


def prove_valid(p: Prop) -> Derivation:
    """Derivation of a tautology p from no hypotheses, by variable elimination.

    Leaves are truth_lemma(p, t) for each full valuation t, with bases
    hyps(p, t); pairs of leaves that differ only in v are merged with the
    excluded-middle rule on #v, removing v from the basis.
    """
    vs = sorted(variables(p))
    if len(vs) > MAX_VARS:
        raise BoundExceeded(f"{len(vs)} variables exceed the prover's guard of {MAX_VARS}")

    def build(j: int, t: frozenset) -> Derivation:
        if j == len(vs):
            return truth_lemma(p, t)
        v = vs[j]
        pos = build(j + 1, t | {v})
        negd = build(j + 1, t)
        return excluded_middle(pos, negd, Var(v), _literals(vs[:j], t))

    return build(0, frozenset())


def _hyp_order(h: Prop):
    return (str(h),)


def prove_complete(hyps_: Iterable[Prop], p: Prop) -> Union[Derivation, frozenset]:
    """A derivation of p from the finite set H, or a valuation refuting H |= p.

    H = {h1, ..., hn} is folded into the goal h1 => ... => hn => p, which is
    valid exactly when H |= p; its derivation is then applied to Hyp(h1),
    ..., Hyp(hn) by modus ponens.
    """
    hs = sorted(set(hyps_), key=_hyp_order)
    cex = falsifying_valuation(hs, p)
    if cex is not None:
        return cex
    if p in hs:
        return Hyp(p)
    ax = axiom_for(p)
    if ax is not None:
        return ax
    d = prove_valid(imps(*hs, p))
    for h in hs:
        d = MP(d, Hyp(h))
    return d
