"""Exception hierarchy shared by every hfzf module."""

from __future__ import annotations


class HFError(Exception):
    """Base class for every error raised by hfzf."""


class ParseError(HFError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class ResourceLimit(HFError):
    """A size guard tripped; the computation was refused rather than attempted."""


class BudgetExceeded(ResourceLimit):
    pass


class BoundExceeded(ResourceLimit):
    pass


class ContextFrozen(HFError):
    pass


# -- hf_core ---------------------------------------------------------------

class NotAPair(HFError):
    pass


class NotInDomain(HFError):
    pass


class NotSingleValued(HFError):
    pass


# -- relations / ordinals ---------------------------------------------------

class NotARelation(HFError):
    pass


class NotWellFounded(HFError):
    pass


class NotTransitive(HFError):
    pass


class NotZeroOrSucc(HFError):
    pass


class NotANat(HFError):
    pass


# -- fixedpoint -------------------------------------------------------------

class NotBounded(HFError):
    pass


class NonConvergence(HFError):
    pass


class NotAFunction(HFError):
    pass


class DomainMismatch(HFError):
    pass


class NotInjective(HFError):
    pass


# -- recursion --------------------------------------------------------------

class VrecGuardViolation(HFError):
    """A rank-recursion body asked for a value it is not entitled to."""

    def __init__(self, query, query_rank: int, bound: int):
        self.query = query
        self.query_rank = query_rank
        self.bound = bound
        super().__init__(
            f"recursive call on a set of rank {query_rank}, "
            f"but only ranks < {bound} are available"
        )


# -- datatypes --------------------------------------------------------------

class NotASum(HFError):
    pass


class NotAList(HFError):
    pass


class NotATerm(HFError):
    pass


class NotATF(HFError):
    pass


# -- propositional logic ----------------------------------------------------

class NotAPropCode(HFError):
    pass


class DerivationError(HFError):
    """Rejected derivation; ``path`` locates the offending node from the root."""

    def __init__(self, message: str, path: tuple = ()):
        self.message = message
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{message} (at {where})")


class HypNotInContext(DerivationError):
    pass


class MalformedMP(DerivationError):
    pass


class MalformedFormula(DerivationError):
    pass
