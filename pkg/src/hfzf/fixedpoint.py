"""Monotone operators on powerset lattices and their least fixedpoints.

Operators are built from a small algebra of node types, each of which
denotes a monotone map on sets; a tree of them is monotone by construction.
:class:`KRaw` wraps arbitrary Python code and is flagged as unverified.

Least fixedpoints are computed by Kleene iteration from the empty set.
For a monotone operator bounded by a finite D the chain
0 <= h(0) <= h(h(0)) <= ... is stationary after at most |D| steps and its
limit coincides with the intersection of all prefixedpoints inside D.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import core
from .core import EMPTY, HSet, diff, mk, print_set, subset, union2
from .errors import DomainMismatch, HFError, NonConvergence, NotAFunction, NotBounded, NotInjective
from .relations import compose, converse, id_on, image, pairs_of


class MonoOp:
    """Base class of operator nodes.  ``op(X)`` evaluates the operator."""

    verified = True

    def __call__(self, x: HSet) -> HSet:
        raise NotImplementedError


@dataclass(frozen=True)
class KConst(MonoOp):
    value: HSet

    def __call__(self, x):
        return self.value


@dataclass(frozen=True)
class KId(MonoOp):
    def __call__(self, x):
        return x


@dataclass(frozen=True)
class KUnion(MonoOp):
    left: MonoOp
    right: MonoOp

    @property
    def verified(self):
        return self.left.verified and self.right.verified

    def __call__(self, x):
        return union2(self.left(x), self.right(x))


@dataclass(frozen=True)
class KProd(MonoOp):
    left: MonoOp
    right: MonoOp

    @property
    def verified(self):
        return self.left.verified and self.right.verified

    def __call__(self, x):
        return core.product(self.left(x), self.right(x))


@dataclass(frozen=True)
class KSum(MonoOp):
    """X |-> h1(X) + h2(X), the tagged disjoint sum."""

    left: MonoOp
    right: MonoOp

    @property
    def verified(self):
        return self.left.verified and self.right.verified

    def __call__(self, x):
        from .datatypes import sum_set

        return sum_set(self.left(x), self.right(x))


@dataclass(frozen=True)
class KCompose(MonoOp):
    """s |-> r o h(s)"""

    rel: HSet
    body: MonoOp

    @property
    def verified(self):
        return self.body.verified

    def __call__(self, x):
        return compose(self.rel, self.body(x))


@dataclass(frozen=True)
class KImage(MonoOp):
    """X |-> r``h(X)"""

    rel: HSet
    body: MonoOp

    @property
    def verified(self):
        return self.body.verified

    def __call__(self, x):
        return image(self.rel, self.body(x))


@dataclass(frozen=True)
class KIdUnion(MonoOp):
    """s |-> id(A) u h(s)"""

    carrier: HSet
    body: MonoOp

    @property
    def verified(self):
        return self.body.verified

    def __call__(self, x):
        return union2(id_on(self.carrier), self.body(x))


@dataclass(frozen=True)
class KComplementBody:
    """The antitone map W |-> g``(D - f``W).  Only usable under KDiffConst."""

    g: HSet
    d: HSet
    f: HSet

    def __call__(self, w: HSet) -> HSet:
        return image(self.g, diff(self.d, image(self.f, w)))


@dataclass(frozen=True)
class KDiffConst(MonoOp):
    """W |-> C - g``(D - f``W); two antitone steps compose to a monotone one."""

    const: HSet
    body: KComplementBody

    def __call__(self, x):
        return diff(self.const, self.body(x))


@dataclass(frozen=True)
class KPart(MonoOp):
    """X |-> Part(h(X), tag) for an injection descriptor such as ('r', 'l')."""

    tag: tuple
    body: MonoOp

    @property
    def verified(self):
        return self.body.verified

    def __call__(self, x):
        from .datatypes import part

        return part(self.body(x), self.tag)


@dataclass(frozen=True)
class KListOf(MonoOp):
    """X |-> lists over h(X) of length at most ``max_len``."""

    body: MonoOp
    max_len: int

    @property
    def verified(self):
        return self.body.verified

    def __call__(self, x):
        from .datatypes import lists_upto

        return lists_upto(self.body(x), self.max_len)


@dataclass(frozen=True)
class KReplSucc(MonoOp):
    """X |-> {0} u {succ(i). i in X}"""

    def __call__(self, x):
        return core.cons(EMPTY, mk(core.succ(i) for i in x.elems))


@dataclass(frozen=True)
class KFinOp(MonoOp):
    """Z |-> {0} u U_{y in Z} U_{x in A} {cons(x, y)}"""

    carrier: HSet

    def __call__(self, z):
        return core.cons(EMPTY, mk(core.cons(a, y) for y in z.elems for a in self.carrier.elems))


@dataclass(frozen=True)
class KRaw(MonoOp):
    """Escape hatch for arbitrary code; monotonicity is NOT guaranteed."""

    fn: Callable[[HSet], HSet]
    label: str = "raw"

    verified = False

    def __call__(self, x):
        return self.fn(x)


def eval_op(h: MonoOp, x: HSet) -> HSet:
    return h(x)


def bnd_mono_check(d: HSet, h: MonoOp) -> bool:
    """h(D) <= D for a structurally monotone h.

    Monotonicity itself is guaranteed by construction, so only the bound
    has to be computed.  Raw operators never pass.
    """
    return h.verified and subset(h(d), d)


def lfp_iterate(d: HSet, h: MonoOp) -> HSet:
    if not subset(h(d), d):
        raise NotBounded(f"h(D) is not contained in D = {print_set(d)}")
    x = EMPTY
    steps = 0
    while True:
        y = h(x)
        if y is x:
            return x
        steps += 1
        if steps > len(d) + 1 or not subset(y, d):
            raise NonConvergence(
                f"Kleene chain did not stabilise inside D after {steps} steps"
            )
        x = y


def iterate_op(h: MonoOp, n: int) -> HSet:
    """h^n(0), with no bounding set."""
    x = EMPTY
    for _ in range(n):
        x = h(x)
    return x


def induction_check(d: HSet, h: MonoOp, psi: Callable[[HSet], bool]) -> bool:
    """Does psi satisfy the premise of the general induction rule for lfp(D, h)?

    Computes A = lfp(D, h) and A_psi = {x in A. psi(x)} and checks that
    every element of h(A_psi) satisfies psi.  When it does, the rule
    concludes psi(a) for every a in A.
    """
    a = lfp_iterate(d, h)
    a_psi = core.sep(a, psi)
    return all(psi(x) for x in h(a_psi).elems)


def lfp_mono_check(d: HSet, h: MonoOp, e: HSet, i: MonoOp) -> bool:
    lfp_h = lfp_iterate(d, h)
    lfp_i = lfp_iterate(e, i)
    x = EMPTY
    while True:
        if not subset(h(x), i(x)):
            return False
        y = h(x)
        if y is x:
            break
        x = y
    return subset(lfp_h, lfp_i)


# -- Banach decomposition and Schroeder-Bernstein ---------------------------------

@dataclass(frozen=True)
class BanachParts:
    xa: HSet
    xb: HSet
    ya: HSet
    yb: HSet

    def equations(self, x: HSet, y: HSet, f: HSet, g: HSet) -> dict:
        return {
            "XA n XB = 0": core.inter(self.xa, self.xb) is EMPTY,
            "XA u XB = X": union2(self.xa, self.xb) is x,
            "f``XA = YA": image(f, self.xa) is self.ya,
            "YA n YB = 0": core.inter(self.ya, self.yb) is EMPTY,
            "YA u YB = Y": union2(self.ya, self.yb) is y,
            "g``YB = XB": image(g, self.yb) is self.xb,
        }


def check_function(f: HSet, dom: HSet, cod: HSet, name: str = "f") -> dict:
    """Decode f : dom -> cod into a dict, or raise."""
    table: dict = {}
    try:
        ps = pairs_of(f)
    except HFError as exc:
        raise NotAFunction(f"{name} is not a set of pairs") from exc
    for x, y in ps:
        if x in table and table[x] is not y:
            raise NotAFunction(f"{name} has two values at {print_set(x)}")
        table[x] = y
    if set(table) != set(dom.elems):
        raise DomainMismatch(f"domain of {name} is not {print_set(dom)}")
    for y in table.values():
        if y not in cod:
            raise DomainMismatch(f"{name} takes the value {print_set(y)} outside {print_set(cod)}")
    return table


def banach_op(x: HSet, y: HSet, f: HSet, g: HSet) -> KDiffConst:
    return KDiffConst(x, KComplementBody(g, y, f))


def banach_decompose(x: HSet, y: HSet, f: HSet, g: HSet) -> BanachParts:
    check_function(f, x, y, "f")
    check_function(g, y, x, "g")
    xa = lfp_iterate(x, banach_op(x, y, f, g))
    ya = image(f, xa)
    return BanachParts(xa=xa, xb=diff(x, xa), ya=ya, yb=diff(y, ya))


def is_bijection(h: HSet, x: HSet, y: HSet) -> bool:
    try:
        table = check_function(h, x, y, "h")
    except HFError:
        return False
    return len(set(table.values())) == len(table) and set(table.values()) == set(y.elems)


def schroeder_bernstein(x: HSet, y: HSet, f: HSet, g: HSet) -> HSet:
    for name, fn, dom, cod in (("f", f, x, y), ("g", g, y, x)):
        table = check_function(fn, dom, cod, name)
        if len(set(table.values())) != len(table):
            raise NotInjective(f"{name} is not injective")
    parts = banach_decompose(x, y, f, g)
    h = union2(core.restrict(f, parts.xa), converse(core.restrict(g, parts.yb)))
    if not is_bijection(h, x, y):
        raise HFError("internal error: constructed map is not a bijection")
    return h


def op_from_spec(spec: str, parse=core.parse_set) -> Optional[MonoOp]:
    """Builtin operators by name, for the command line.

    ``id``, ``replsucc``, ``const:<set>``, ``closure:<rel>``, ``fin:<set>``.
    """
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name == "id":
        return KId()
    if name == "replsucc":
        return KReplSucc()
    if name == "const":
        return KConst(parse(arg))
    if name == "closure":
        from .relations import closure_op

        return closure_op(parse(arg))
    if name == "fin":
        return KFinOp(parse(arg))
    raise ValueError(f"unknown operator {spec!r}")
