"""Finitary beta and bottom reduction, head machinery, Boehm approximants.

Positions are paths over ``body`` / ``fun`` / ``arg``; the applicative
depth of a position is its number of ``arg`` components, which is the only
depth that matters here.

Unsolvability is never guessed: the head normalizer reports it only with a
certificate, either an exact repetition of a previous state (the
self-application loop) or a bottom constant in head position. Plain fuel
exhaustion stays inconclusive, and truncated trees mark it with the cut
marker rather than bottom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .syntax import (
    BOTTOM,
    HOLE,
    App,
    Bottom,
    FreeVar,
    Hole,
    Lam,
    LambdaError,
    RationalSystem,
    RecRef,
    Term,
    TermLike,
    UndefinedSymbolError,
    Var,
    resolve_ref,
)


class NotARedexError(LambdaError):
    pass


class DepthTooShallowError(LambdaError):
    pass


class OracleUndecidedError(LambdaError):
    pass


class InvalidPositionError(LambdaError):
    pass


Position = tuple[str, ...]


def position_to_str(pos: Position) -> str:
    return ".".join(pos) if pos else "root"


def position_from_str(text: str) -> Position:
    if text in ("", "root"):
        return ()
    parts = tuple(text.split("."))
    for p in parts:
        if p not in ("body", "fun", "arg"):
            raise LambdaError(f"bad position component {p!r}")
    return parts


def applicative_depth(pos: Position) -> int:
    return sum(1 for c in pos if c == "arg")


def subterm_at(t: Term, pos: Position) -> Term:
    for c in pos:
        if c == "body" and isinstance(t, Lam):
            t = t.body
        elif c == "fun" and isinstance(t, App):
            t = t.fn
        elif c == "arg" and isinstance(t, App):
            t = t.arg
        else:
            raise InvalidPositionError(f"position {position_to_str(pos)} does not resolve")
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    c, rest = pos[0], pos[1:]
    if c == "body" and isinstance(t, Lam):
        return Lam(t.hint, replace_at(t.body, rest, new))
    if c == "fun" and isinstance(t, App):
        return App(replace_at(t.fn, rest, new), t.arg)
    if c == "arg" and isinstance(t, App):
        return App(t.fn, replace_at(t.arg, rest, new))
    raise InvalidPositionError(f"position {position_to_str(pos)} does not resolve")


# ---------------------------------------------------------------------------
# Beta


def _shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0:
        return t
    if isinstance(t, Var):
        return Var(t.index + d) if t.index >= cutoff else t
    if isinstance(t, Lam):
        return Lam(t.hint, _shift(t.body, d, cutoff + 1))
    if isinstance(t, App):
        return App(_shift(t.fn, d, cutoff), _shift(t.arg, d, cutoff))
    return t


def open_bound(body: Term, arg: Term) -> Term:
    """Remove the binder just peeled: substitute ``arg`` for its variable."""

    def go(t: Term, c: int) -> Term:
        if isinstance(t, Var):
            if t.index == c:
                return _shift(arg, c)
            if t.index > c:
                return Var(t.index - 1)
            return t
        if isinstance(t, Lam):
            return Lam(t.hint, go(t.body, c + 1))
        if isinstance(t, App):
            return App(go(t.fn, c), go(t.arg, c))
        return t

    return go(body, 0)


def beta_step(m: Term, at: Position) -> Term:
    target = subterm_at(m, at)
    if not (isinstance(target, App) and isinstance(target.fn, Lam)):
        raise NotARedexError(f"no beta redex at {position_to_str(at)}: {target}")
    return replace_at(m, at, open_bound(target.fn.body, target.arg))


def leftmost_redex(t: Term) -> Optional[Position]:
    """Normal-order redex position: outermost, function before argument."""
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return ()
        sub = leftmost_redex(t.fn)
        if sub is not None:
            return ("fun",) + sub
        sub = leftmost_redex(t.arg)
        if sub is not None:
            return ("arg",) + sub
        return None
    if isinstance(t, Lam):
        sub = leftmost_redex(t.body)
        if sub is not None:
            return ("body",) + sub
    return None


def min_depth_step(m: Term, d: int, at: Position) -> Term:
    if applicative_depth(at) < d:
        raise DepthTooShallowError(
            f"position {position_to_str(at)} has depth {applicative_depth(at)} < {d}"
        )
    return beta_step(m, at)


def bot_step(m: Term, at: Position, oracle: Callable[[Term], "Verdict"]) -> Term:
    """Collapse the subterm at ``at`` to bottom.

    Fires on ``\\x. _|_`` and ``(_|_) n`` outright; any other subterm needs
    the caller's oracle to certify unsolvability, and an undecided oracle
    refuses the rewrite instead of guessing.
    """
    target = subterm_at(m, at)
    if isinstance(target, Lam) and isinstance(target.body, Bottom):
        return replace_at(m, at, BOTTOM)
    if isinstance(target, App) and isinstance(target.fn, Bottom):
        return replace_at(m, at, BOTTOM)
    verdict = oracle(target)
    if verdict.certified_unsolvable:
        return replace_at(m, at, BOTTOM)
    if verdict.is_solvable:
        raise NotARedexError(f"subterm is solvable, not a bottom redex: {target}")
    raise OracleUndecidedError(f"oracle could not certify unsolvability of: {target}")


# ---------------------------------------------------------------------------
# Head forms


@dataclass(frozen=True)
class HeadForm:
    """Decomposition ``\\x1..xm. (((head) q1) ... ) qn`` with a non-application head."""

    binders: tuple[str, ...]
    head: Term
    spine: tuple[Term, ...]

    @property
    def is_head_normal(self) -> bool:
        return isinstance(self.head, (Var, FreeVar))

    @property
    def has_head_redex(self) -> bool:
        return isinstance(self.head, Lam) and bool(self.spine)

    def rebuild(self) -> Term:
        t = self.head
        for q in self.spine:
            t = App(t, q)
        for hint in reversed(self.binders):
            t = Lam(hint, t)
        return t


def head_form(m: Term) -> HeadForm:
    binders: list[str] = []
    while isinstance(m, Lam):
        binders.append(m.hint)
        m = m.body
    spine: list[Term] = []
    while isinstance(m, App):
        spine.append(m.arg)
        m = m.fn
    spine.reverse()
    return HeadForm(tuple(binders), m, tuple(spine))


def _fire_head(hf: HeadForm) -> Term:
    assert isinstance(hf.head, Lam)
    t = open_bound(hf.head.body, hf.spine[0])
    for q in hf.spine[1:]:
        t = App(t, q)
    for hint in reversed(hf.binders):
        t = Lam(hint, t)
    return t


def _head_redex_position(hf: HeadForm) -> Position:
    return ("body",) * len(hf.binders) + ("fun",) * (len(hf.spine) - 1)


def _resolve_at_head(
    m: Term, system: Optional[RationalSystem], stack: tuple[str, ...]
) -> Term:
    """Replace head references by their equation bodies until a constructor
    shows up. Terminates on guarded systems: an endless chain would be an
    unguarded cycle."""
    guard = 0
    while True:
        hf = head_form(m)
        if not isinstance(hf.head, RecRef):
            return m
        if system is None:
            raise UndefinedSymbolError(f"unresolved symbol {hf.head.symbol!r}")
        guard += 1
        if guard > len(system.equations) + 1:
            raise LambdaError("resolution does not terminate (unguarded system?)")
        body = resolve_ref(hf.head, system, tuple(reversed(hf.binders)) + stack)
        m = HeadForm(hf.binders, body, hf.spine).rebuild()


def head_step(
    m: Term, system: Optional[RationalSystem] = None, stack: tuple[str, ...] = ()
) -> Term:
    """One head step: fire the head redex if there is one, else identity."""
    if system is not None:
        m = _resolve_at_head(m, system, stack)
    hf = head_form(m)
    return _fire_head(hf) if hf.has_head_redex else m


# ---------------------------------------------------------------------------
# Verdicts and the head normalizer


@dataclass(frozen=True)
class Verdict:
    """Outcome of a head-reduction run.

    ``solvable(k)`` promises that ``k`` head steps reach a head normal
    form. ``unknown`` carries the fuel spent plus the reason; reasons
    "loop" (exact state repetition) and "bottom" (bottom in head position)
    are certificates of unsolvability, "fuel" and "hole" are not.
    """

    kind: str  # "solvable" | "unknown"
    steps: int
    reason: str = ""

    @property
    def is_solvable(self) -> bool:
        return self.kind == "solvable"

    @property
    def certified_unsolvable(self) -> bool:
        return self.kind == "unknown" and self.reason in ("loop", "bottom")

    @property
    def loop(self) -> bool:
        return self.reason == "loop"

    @staticmethod
    def solvable(steps: int) -> "Verdict":
        return Verdict("solvable", steps)

    @staticmethod
    def unknown(steps: int, reason: str) -> "Verdict":
        return Verdict("unknown", steps, reason)

    def describe(self) -> str:
        if self.is_solvable:
            return f"solvable({self.steps})"
        return f"unknown({self.reason}, {self.steps} steps)"


@dataclass(frozen=True)
class HeadRun:
    """Result of ``head_normalize``: the final term, the verdict, the list of
    pre-step terms (resolved, so each one exhibits its head redex), and the
    redex position inside each of them."""

    term: Term
    verdict: Verdict
    trace: tuple[Term, ...] = field(repr=False, default=())
    step_positions: tuple[Position, ...] = field(repr=False, default=())

    def __iter__(self):
        return iter((self.term, self.verdict))


def head_normalize(
    m: Term,
    fuel: int,
    system: Optional[RationalSystem] = None,
    stack: tuple[str, ...] = (),
) -> HeadRun:
    """Iterate the head operator, at most ``fuel`` times, with cycle detection.

    An exact repetition of an earlier state certifies that the head
    strategy diverges, hence unsolvability; fuel exhaustion does not.
    """
    cur = _resolve_at_head(m, system, stack) if system is not None else m
    seen = {cur.fkey}
    pre_steps: list[Term] = []
    positions: list[Position] = []
    k = 0
    while True:
        hf = head_form(cur)
        if hf.is_head_normal:
            return HeadRun(cur, Verdict.solvable(k), tuple(pre_steps), tuple(positions))
        if isinstance(hf.head, Bottom):
            return HeadRun(cur, Verdict.unknown(k, "bottom"), tuple(pre_steps), tuple(positions))
        if isinstance(hf.head, Hole):
            return HeadRun(cur, Verdict.unknown(k, "hole"), tuple(pre_steps), tuple(positions))
        if isinstance(hf.head, RecRef):
            cur = _resolve_at_head(cur, system, stack)
            continue
        if k >= fuel:
            return HeadRun(cur, Verdict.unknown(k, "fuel"), tuple(pre_steps), tuple(positions))
        pre_steps.append(cur)
        positions.append(_head_redex_position(hf))
        nxt = _fire_head(hf)
        if system is not None:
            nxt = _resolve_at_head(nxt, system, stack)
        k += 1
        if nxt.fkey in seen:
            return HeadRun(nxt, Verdict.unknown(k, "loop"), tuple(pre_steps), tuple(positions))
        seen.add(nxt.fkey)
        cur = nxt


def solvable(m: Term, fuel: int, system: Optional[RationalSystem] = None) -> Verdict:
    return head_normalize(m, fuel, system).verdict


def loop_certified_oracle(fuel: int) -> Callable[[Term], Verdict]:
    """Oracle for ``bot_step``: certifies exactly what head-cycle detection can."""
    return lambda t: solvable(t, fuel)


# ---------------------------------------------------------------------------
# Boehm approximants


def bohm_tree(target: TermLike, depth: int, fuel: int) -> Term:
    """Depth-bounded Boehm approximant.

    Each level head-normalizes with its own fuel budget; a solvable level
    contributes its head form with the spine arguments expanded one
    applicative level deeper, certified divergence contributes bottom, and
    anything inconclusive (or past the depth budget) contributes a cut.
    """
    if isinstance(target, RationalSystem):
        system: Optional[RationalSystem] = target
        term: Term = target.root_term()
    else:
        system = None
        term = target

    def rec(t: Term, budget: int, stack: tuple[str, ...]) -> Term:
        if budget <= 0:
            return HOLE
        run = head_normalize(t, fuel, system, stack)
        v = run.verdict
        if v.certified_unsolvable:
            return BOTTOM
        if v.kind == "unknown":
            return HOLE
        hf = head_form(run.term)
        inner = tuple(reversed(hf.binders)) + stack
        children = [rec(q, budget - 1, inner) for q in hf.spine]
        out = hf.head
        for c in children:
            out = App(out, c)
        for hint in reversed(hf.binders):
            out = Lam(hint, out)
        return out

    return rec(term, depth, ())


def is_bohm_normal(t: Term) -> bool:
    """No beta redex and no bottom redex anywhere above the cut markers."""
    if isinstance(t, App):
        if isinstance(t.fn, (Lam, Bottom)):
            return False
        return is_bohm_normal(t.fn) and is_bohm_normal(t.arg)
    if isinstance(t, Lam):
        if isinstance(t.body, Bottom):
            return False
        return is_bohm_normal(t.body)
    return True


# ---------------------------------------------------------------------------
# Stratification


@dataclass(frozen=True)
class StratifyResult:
    """Levels ``m0..mD`` where level ``d+1`` head-normalizes every subterm of
    level ``d`` sitting at applicative depth exactly ``d``; the recorded
    positions replay each stage via ``min_depth_step``."""

    levels: tuple[Term, ...]
    step_positions: tuple[tuple[Position, ...], ...]
    diagnostic: Optional[str] = None


def depth_positions(t: Term, d: int) -> list[Position]:
    """Positions of the maximal subterms at applicative depth exactly ``d``."""
    out: list[Position] = []

    def walk(u: Term, path: Position, count: int) -> None:
        if count == d:
            out.append(path)
            return
        if isinstance(u, Lam):
            walk(u.body, path + ("body",), count)
        elif isinstance(u, App):
            walk(u.fn, path + ("fun",), count)
            walk(u.arg, path + ("arg",), count + 1)

    walk(t, (), 0)
    return out


def stratify(m: Term, depth: int, fuel: int) -> StratifyResult:
    """Reduce in depth-ordered stages: stage ``d`` fires only at depth >= d.

    Subterms whose head reduction is certified to diverge are left alone
    (they never reach a head normal form anyway); running out of fuel stops
    the whole construction with a diagnostic.
    """
    levels = [m]
    all_steps: list[tuple[Position, ...]] = []
    cur = m
    for d in range(depth):
        steps_d: list[Position] = []
        for pos in depth_positions(cur, d):
            sub = subterm_at(cur, pos)
            run = head_normalize(sub, fuel)
            if run.verdict.is_solvable:
                steps_d.extend(pos + rel for rel in run.step_positions)
                cur = replace_at(cur, pos, run.term)
            elif run.verdict.certified_unsolvable:
                continue
            else:
                return StratifyResult(
                    tuple(levels),
                    tuple(all_steps),
                    diagnostic=f"fuel exhausted at depth {d} ({run.verdict.describe()})",
                )
        levels.append(cur)
        all_steps.append(tuple(steps_d))
    return StratifyResult(tuple(levels), tuple(all_steps))
