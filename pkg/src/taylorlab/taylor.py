"""Taylor approximation: deciding it, and enumerating bounded slices of it.

A resource term approximates a lambda term when they match structurally,
with every element of an argument multiset approximating the argument.
The full set of approximants of a term is infinite; what we materialize
are *slices*: all approximants within a size bound, optionally also below
a height bound. Recursive references are unfolded on demand, which always
terminates because the recursion is on the finite resource term (or on a
shrinking size budget).

Holes need a policy. In a context, a hole is approximated by exactly the
resource hole; in a truncated tree, a hole means "structure unknown", so
it contributes no approximants at all (and the three-valued
``member_of_bohm`` reports Unknown when a decision would need to look
below one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .resource import (
    HOLE_R,
    FiniteSum,
    Monomial,
    ResourceTerm,
    RApp,
    RFreeVar,
    RHole,
    RLam,
    RVar,
    monomial,
    rapp,
    rfvar,
    rlam,
    rvar,
)
from .syntax import (
    App,
    Bottom,
    FreeVar,
    Hole,
    Lam,
    RationalSystem,
    RecRef,
    Term,
    TermLike,
    UndefinedSymbolError,
    Var,
    resolve_ref,
)
from .beta import bohm_tree

HoleMode = Literal["cut", "context"]


def _split(target: TermLike) -> tuple[Term, Optional[RationalSystem]]:
    if isinstance(target, RationalSystem):
        return target.root_term(), target
    return target, None


def _resolve(m: RecRef, system: Optional[RationalSystem], stack: tuple[str, ...]) -> Term:
    if system is None:
        raise UndefinedSymbolError(f"unresolved symbol {m.symbol!r}")
    return resolve_ref(m, system, stack)


def approximates(s: ResourceTerm, target: TermLike) -> bool:
    """Decide the approximation relation between ``s`` and a (possibly
    recursive) term."""
    m, system = _split(target)

    def rec(u: ResourceTerm, t: Term, stack: tuple[str, ...]) -> bool:
        while isinstance(t, RecRef):
            t = _resolve(t, system, stack)
        if isinstance(u, RVar):
            return isinstance(t, Var) and t.index == u.index
        if isinstance(u, RFreeVar):
            return isinstance(t, FreeVar) and t.name == u.name
        if isinstance(u, RHole):
            return isinstance(t, Hole)
        if isinstance(u, RLam):
            return isinstance(t, Lam) and rec(u.body, t.body, (t.hint,) + stack)
        if isinstance(u, RApp):
            return (
                isinstance(t, App)
                and rec(u.fn, t.fn, stack)
                and all(rec(e, t.arg, stack) for e in u.mono)
            )
        raise TypeError(f"not a resource term: {u!r}")

    return rec(s, m, ())


@dataclass(frozen=True)
class TaylorSlice:
    """All approximants of ``source`` with size <= ``size_bound`` and, when
    ``depth_bound`` is set, height strictly below it."""

    source: TermLike
    size_bound: int
    depth_bound: Optional[int]
    terms: FiniteSum

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, t: ResourceTerm) -> bool:
        return t in self.terms

    def to_dict(self) -> dict:
        from .resource import pretty_resource
        from .syntax import pretty, pretty_system

        src = pretty_system(self.source) if isinstance(self.source, RationalSystem) else pretty(self.source)
        return {
            "source": src,
            "size_bound": self.size_bound,
            "depth_bound": self.depth_bound,
            "approximants": [pretty_resource(t) for t in self.terms],
        }


class _Enumerator:
    def __init__(self, system: Optional[RationalSystem], hole_mode: HoleMode):
        self.system = system
        self.hole_mode = hole_mode
        self.memo: dict[tuple, tuple[ResourceTerm, ...]] = {}
        self.resolved: dict[tuple, Term] = {}

    def terms(self, t: Term, n: int, d: Optional[int], stack: tuple[str, ...]) -> tuple[ResourceTerm, ...]:
        if n < 1 or (d is not None and d < 1):
            return ()
        key = (id(t), n, d, stack)
        got = self.memo.get(key)
        if got is not None:
            return got
        out: tuple[ResourceTerm, ...]
        if isinstance(t, RecRef):
            rkey = (t.symbol, stack)
            body = self.resolved.get(rkey)
            if body is None:
                body = _resolve(t, self.system, stack)
                self.resolved[rkey] = body
            out = self.terms(body, n, d, stack)
        elif isinstance(t, Var):
            out = (rvar(t.index),)
        elif isinstance(t, FreeVar):
            out = (rfvar(t.name),)
        elif isinstance(t, Bottom):
            out = ()
        elif isinstance(t, Hole):
            out = (HOLE_R,) if self.hole_mode == "context" else ()
        elif isinstance(t, Lam):
            out = tuple(rlam(b) for b in self.terms(t.body, n - 1, d, (t.hint,) + stack))
        elif isinstance(t, App):
            acc = []
            for fn in self.terms(t.fn, n - 1, d, stack):
                for m in self.monomials(t.arg, n - fn.size, d, stack):
                    acc.append(rapp(fn, m))
            out = tuple(acc)
        else:
            raise TypeError(f"not a term: {t!r}")
        self.memo[key] = out
        return out

    def monomials(self, t: Term, n: int, d: Optional[int], stack: tuple[str, ...]) -> list[Monomial]:
        """Multisets of approximants of ``t`` with total size <= ``n``.

        The empty multiset costs 1 but still nests one level, so it needs
        a remaining height budget of at least 2.
        """
        if n < 1:
            return []
        out: list[Monomial] = []
        if d is None or d >= 2:
            out.append(monomial(()))
        pool = self.terms(t, n - 1, None if d is None else d - 1, stack)

        def extend(start: int, left: int, chosen: list[ResourceTerm]) -> None:
            for i in range(start, len(pool)):
                e = pool[i]
                if e.size > left:
                    continue
                chosen.append(e)
                out.append(monomial(chosen))
                extend(i, left - e.size, chosen)
                chosen.pop()

        extend(0, n - 1, [])
        return out


def enumerate_taylor(
    target: TermLike,
    size_bound: int,
    depth_bound: Optional[int] = None,
    hole_mode: HoleMode = "cut",
) -> TaylorSlice:
    """Materialize the slice of approximants within the bounds."""
    m, system = _split(target)
    enum = _Enumerator(system, hole_mode)
    terms = enum.terms(m, size_bound, depth_bound, ())
    return TaylorSlice(target, size_bound, depth_bound, FiniteSum(terms))


def enumerate_taylor_context(c: Term, size_bound: int) -> FiniteSum:
    """Approximants of a context; each hole is approximated by the resource hole."""
    enum = _Enumerator(None, "context")
    return FiniteSum(enum.terms(c, size_bound, None, ()))


def taylor_zero(target: TermLike) -> bool:
    """Whether the term has no approximant at all: bottom, or bottom
    reachable through abstractions and function positions only."""
    m, system = _split(target)
    memo: dict[str, bool] = {}

    def rec(t: Term) -> bool:
        if isinstance(t, Bottom):
            return True
        if isinstance(t, Lam):
            return rec(t.body)
        if isinstance(t, App):
            return rec(t.fn)
        if isinstance(t, RecRef):
            if t.symbol in memo:
                return memo[t.symbol]
            if system is None:
                raise UndefinedSymbolError(f"unresolved symbol {t.symbol!r}")
            # abstraction/function chains cannot cycle in a guarded system
            memo[t.symbol] = rec(system.body(t.symbol))
            return memo[t.symbol]
        return False

    return rec(m)


def member_of_bohm(t: ResourceTerm, target: TermLike, fuel: int) -> Optional[bool]:
    """Three-valued: does ``t`` approximate the Boehm tree of the target?

    A prefix of depth ``height(t) + 1`` decides the question unless the
    prefix itself is fuel-truncated where structure is needed, in which
    case the answer is ``None`` (unknown). Bottom nodes refute: nothing
    approximates bottom.
    """
    prefix = bohm_tree(target, t.height + 1, fuel)

    def rec(u: ResourceTerm, b: Term) -> Optional[bool]:
        if isinstance(b, Hole):
            return None
        if isinstance(b, Bottom):
            return False
        if isinstance(u, RVar):
            return isinstance(b, Var) and b.index == u.index
        if isinstance(u, RFreeVar):
            return isinstance(b, FreeVar) and b.name == u.name
        if isinstance(u, RLam):
            if not isinstance(b, Lam):
                return False
            return rec(u.body, b.body)
        if isinstance(u, RApp):
            if not isinstance(b, App):
                return False
            verdicts = [rec(u.fn, b.fn)]
            verdicts.extend(rec(e, b.arg) for e in u.mono)
            if any(v is False for v in verdicts):
                return False
            if any(v is None for v in verdicts):
                return None
            return True
        return False

    return rec(t, prefix)
