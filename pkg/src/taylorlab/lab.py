"""Desk-scale theorem checks tying the engines together.

Every check returns a three-valued :class:`CheckReport`: pass, fail (with a
replayable witness), or inconclusive. Fuel or bound exhaustion is always
surfaced as inconclusive, never as a refutation and never silently as a
pass.

The backward direction of the commutation check needs, for an approximant
``t`` of a Boehm tree, some approximant of the original term normalizing
onto ``t``. Searching size-bounded slices for it is hopeless beyond toy
cases (the least such ancestor grows quadratically in the depth of ``t``),
so the primary mechanism is constructive: walk the recorded head-reduction
trace backwards, inverting one step at a time by un-substituting through
the approximant (``_anti_subst``). The construction is self-checking: a
candidate only counts once ``t`` is re-derived from it by normalization.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .beta import (
    HeadForm,
    NotARedexError,
    Position,
    beta_step,
    bohm_tree,
    head_form,
    head_normalize,
    head_step,
    position_to_str,
    solvable,
)
from .resource import (
    FiniteSum,
    Monomial,
    ResourceTerm,
    RApp,
    RLam,
    RVar,
    RFreeVar,
    deg_hole,
    is_d_positive,
    monomial,
    open_binder,
    pretty_resource,
    r_context_fill,
    rapp,
    rfvar,
    rlam,
    rvar,
)
from .resource_reduction import hr_step, r_normalize
from .syntax import (
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
    Var,
    context_fill,
    pretty,
    pretty_system,
    resolve_ref,
)
from .taylor import approximates, enumerate_taylor, enumerate_taylor_context, member_of_bohm


class ApproximantMismatchError(LambdaError):
    pass


def _text(target: TermLike) -> str:
    return pretty_system(target) if isinstance(target, RationalSystem) else pretty(target)


@dataclass
class CheckReport:
    """Outcome of one theorem check; serializes to a stable JSON shape."""

    theorem: str
    inputs: dict
    verdict: str  # "pass" | "fail" | "inconclusive"
    witness: Optional[str] = None
    reason: Optional[str] = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.verdict]

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "stats": self.stats,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Forward simulation: pushing approximants through a beta step


def push_forward(s: ResourceTerm, m: Term, at: Position) -> FiniteSum:
    """Image of the approximant ``s`` of ``m`` under the beta step at ``at``.

    At the redex image the resource redex fires; inside the argument of an
    application every multiset element is pushed forward independently and
    the results recombine pointwise. Every addend of the result
    approximates the reduct of ``m``.
    """

    def go(u: ResourceTerm, t: Term, pos: Position) -> FiniteSum:
        if not pos:
            if not (isinstance(t, App) and isinstance(t.fn, Lam)):
                raise NotARedexError(f"no beta redex at {position_to_str(at)}")
            if not (isinstance(u, RApp) and isinstance(u.fn, RLam)):
                raise ApproximantMismatchError(f"{u} does not cover the redex shape")
            return open_binder(u.fn.body, u.mono)
        c, rest = pos[0], pos[1:]
        if c == "body" and isinstance(t, Lam) and isinstance(u, RLam):
            return go(u.body, t.body, rest).map(rlam)
        if c == "fun" and isinstance(t, App) and isinstance(u, RApp):
            mono = u.mono
            return go(u.fn, t.fn, rest).map(lambda v: rapp(v, mono))
        if c == "arg" and isinstance(t, App) and isinstance(u, RApp):
            fn = u.fn
            images = [go(e, t.arg, rest) for e in u.mono]
            if any(not img for img in images):
                return FiniteSum()
            out = set()
            for combo in itertools.product(*[img.terms for img in images]):
                out.add(rapp(fn, monomial(combo)))
            return FiniteSum(out)
        raise ApproximantMismatchError(
            f"approximant {u} does not follow {position_to_str(at)} in {t}"
        )

    return go(s, m, at)


def check_simulation(m: Term, steps: Sequence[Position], size_bound: int) -> CheckReport:
    """Push the whole slice of ``m`` through the given beta steps and verify
    every resulting addend approximates the final reduct."""
    inputs = {"term": _text(m), "steps": [position_to_str(p) for p in steps], "size_bound": size_bound}
    stages = [m]
    for p in steps:
        stages.append(beta_step(stages[-1], p))
    final = stages[-1]
    sl = enumerate_taylor(m, size_bound)
    pushed_total = 0
    for s in sl:
        current = FiniteSum((s,))
        for i, p in enumerate(steps):
            parts = [push_forward(u, stages[i], p) for u in current]
            current = FiniteSum(t for part in parts for t in part)
        pushed_total += len(current)
        for u in current:
            if not approximates(u, final):
                return CheckReport(
                    "simulation",
                    inputs,
                    "fail",
                    witness=f"{pretty_resource(s)} ~> {pretty_resource(u)} does not approximate {pretty(final)}",
                )
    return CheckReport(
        "simulation",
        inputs,
        "pass",
        stats={"approximants": len(sl), "pushed_addends": pushed_total, "target": pretty(final)},
    )


# ---------------------------------------------------------------------------
# Constructive ancestors (inverse simulation along a head trace)


def _unshift(u: ResourceTerm, c: int) -> Optional[ResourceTerm]:
    """Undo a grafting shift: decrement indices escaping ``u`` by ``c``."""
    if c == 0:
        return u

    def go(t: ResourceTerm, depth: int) -> ResourceTerm:
        if isinstance(t, RVar):
            if t.index >= depth:
                if t.index - c < depth:
                    raise ApproximantMismatchError("dangling index too small to unshift")
                return rvar(t.index - c)
            return t
        if isinstance(t, RLam):
            return rlam(go(t.body, depth + 1))
        if isinstance(t, RApp):
            return rapp(go(t.fn, depth), monomial(go(e, depth) for e in t.mono))
        return t

    try:
        return go(u, 0)
    except ApproximantMismatchError:
        return None


def _anti_subst(
    u: ResourceTerm,
    p: Term,
    c: int,
    stack: tuple[str, ...],
    system: Optional[RationalSystem],
) -> Optional[tuple[ResourceTerm, list[ResourceTerm]]]:
    """Un-substitute: ``u`` approximates the opening of ``\\z. p`` on some
    argument; recover an approximant of ``p`` (with the bound variable at
    index ``c``) plus the multiset elements that were grafted in. Returns
    None when ``u`` cannot be read back against ``p``.
    """
    while isinstance(p, RecRef):
        if system is None:
            return None
        p = resolve_ref(p, system, stack)
    if isinstance(p, Var):
        if p.index == c:
            e = _unshift(u, c)
            return None if e is None else (rvar(c), [e])
        expect = p.index - 1 if p.index > c else p.index
        if isinstance(u, RVar) and u.index == expect:
            return (rvar(p.index), [])
        return None
    if isinstance(p, FreeVar):
        if isinstance(u, RFreeVar) and u.name == p.name:
            return (u, [])
        return None
    if isinstance(p, Lam):
        if not isinstance(u, RLam):
            return None
        got = _anti_subst(u.body, p.body, c + 1, (p.hint,) + stack, system)
        if got is None:
            return None
        w, es = got
        return (rlam(w), es)
    if isinstance(p, App):
        if not isinstance(u, RApp):
            return None
        got = _anti_subst(u.fn, p.fn, c, stack, system)
        if got is None:
            return None
        wf, es = got
        elems = []
        for e in u.mono:
            sub = _anti_subst(e, p.arg, c, stack, system)
            if sub is None:
                return None
            we, more = sub
            elems.append(we)
            es = es + more
        return (rapp(wf, monomial(elems)), es)
    return None


def _lift_one_step(
    t: ResourceTerm,
    before: Term,
    stack: tuple[str, ...],
    system: Optional[RationalSystem],
) -> Optional[ResourceTerm]:
    """Turn an approximant of the head reduct of ``before`` into an
    approximant of ``before`` itself that head-reduces onto it."""
    hf = head_form(before)
    if not hf.has_head_redex:
        return None
    u: ResourceTerm = t
    for _ in hf.binders:
        if not isinstance(u, RLam):
            return None
        u = u.body
    peeled: list[Monomial] = []
    for _ in range(len(hf.spine) - 1):
        if not isinstance(u, RApp):
            return None
        peeled.append(u.mono)
        u = u.fn
    inner = tuple(reversed(hf.binders)) + stack
    assert isinstance(hf.head, Lam)
    got = _anti_subst(u, hf.head.body, 0, inner, system)
    if got is None:
        return None
    w, es = got
    node: ResourceTerm = rapp(rlam(w), monomial(es))
    for mono in reversed(peeled):
        node = rapp(node, mono)
    for _ in hf.binders:
        node = rlam(node)
    return node


def lift_to_source(
    t: ResourceTerm, target: TermLike, fuel: int
) -> Optional[ResourceTerm]:
    """Construct an approximant of ``target`` whose normal form contains
    ``t``, given that ``t`` approximates the target's Boehm tree.

    Callers must verify the result (approximation plus membership in the
    normal form); this function only builds the candidate.
    """
    if isinstance(target, RationalSystem):
        system: Optional[RationalSystem] = target
        term: Term = target.root_term()
    else:
        system = None
        term = target

    def rec(u: ResourceTerm, m: Term, stack: tuple[str, ...]) -> Optional[ResourceTerm]:
        run = head_normalize(m, fuel, system, stack)
        if not run.verdict.is_solvable:
            return None
        hf = head_form(run.term)
        body = u
        for _ in hf.binders:
            if not isinstance(body, RLam):
                return None
            body = body.body
        monos: list[Monomial] = []
        for _ in hf.spine:
            if not isinstance(body, RApp):
                return None
            monos.append(body.mono)
            body = body.fn
        monos.reverse()
        if isinstance(hf.head, Var):
            if not (isinstance(body, RVar) and body.index == hf.head.index):
                return None
        elif isinstance(hf.head, FreeVar):
            if not (isinstance(body, RFreeVar) and body.name == hf.head.name):
                return None
        else:
            return None
        inner = tuple(reversed(hf.binders)) + stack
        node: ResourceTerm = body
        for j, mono in enumerate(monos):
            elems = []
            for e in mono:
                lifted = rec(e, hf.spine[j], inner)
                if lifted is None:
                    return None
                elems.append(lifted)
            node = rapp(node, monomial(elems))
        for _ in hf.binders:
            node = rlam(node)
        for before in reversed(run.trace):
            node = _lift_one_step(node, before, stack, system)
            if node is None:
                return None
        return node

    return rec(t, term, ())


def _verified_ancestor(
    t: ResourceTerm, target: TermLike, fuel: int
) -> Optional[ResourceTerm]:
    s = lift_to_source(t, target, fuel)
    if s is None:
        return None
    if not approximates(s, target):
        return None
    if t not in r_normalize(s):
        return None
    return s


# ---------------------------------------------------------------------------
# Commutation


def check_commutation(
    target: TermLike,
    size_bound: int,
    fuel: int,
    backstop: Optional[int] = None,
) -> CheckReport:
    """Both directions of "normalizing the expansion = expanding the tree".

    Forward: every normal addend of the slice approximates the Boehm tree.
    Backward: every slice-sized approximant of the (sufficiently deep)
    Boehm prefix is recovered, first from the forward normal forms, then by
    constructive lifting, and as a last resort by searching slices up to
    the backstop. Exhaustion is inconclusive, never a failure.
    """
    if backstop is None:
        backstop = size_bound + 8
    inputs = {
        "term": _text(target),
        "size_bound": size_bound,
        "fuel": fuel,
        "backstop": backstop,
    }
    sl = enumerate_taylor(target, size_bound)
    nf_union: set[ResourceTerm] = set()
    forward_unknown: list[ResourceTerm] = []
    for s in sl:
        for t in r_normalize(s):
            nf_union.add(t)
            verdict = member_of_bohm(t, target, fuel)
            if verdict is False:
                return CheckReport(
                    "commutation",
                    inputs,
                    "fail",
                    witness=f"nf addend {pretty_resource(t)} of {pretty_resource(s)} is not in the tree expansion",
                )
            if verdict is None:
                forward_unknown.append(t)

    prefix = bohm_tree(target, size_bound + 1, fuel)
    targets = enumerate_taylor(prefix, size_bound, hole_mode="cut")
    constructed = 0
    searched = 0
    search_nfs: Optional[set[ResourceTerm]] = None
    unwitnessed: list[ResourceTerm] = []
    for t in targets:
        if t in nf_union:
            continue
        if _verified_ancestor(t, target, fuel) is not None:
            constructed += 1
            continue
        if search_nfs is None:
            wide = enumerate_taylor(target, backstop)
            searched = len(wide)
            search_nfs = set()
            for s in wide:
                search_nfs.update(r_normalize(s))
        if t in search_nfs:
            continue
        unwitnessed.append(t)

    stats = {
        "approximants": len(sl),
        "normal_addends": len(nf_union),
        "tree_targets": len(targets),
        "constructed_ancestors": constructed,
        "widened_slice": searched,
    }
    if forward_unknown:
        return CheckReport(
            "commutation",
            inputs,
            "inconclusive",
            reason=f"{len(forward_unknown)} forward membership check(s) hit a cut",
            stats=stats,
        )
    if unwitnessed:
        return CheckReport(
            "commutation",
            inputs,
            "inconclusive",
            reason=f"no ancestor found for {pretty_resource(unwitnessed[0])} within backstop {backstop}",
            stats=stats,
        )
    return CheckReport("commutation", inputs, "pass", stats=stats)


# ---------------------------------------------------------------------------
# Head-normalizability characterization


def _hnf_skeleton(hf: HeadForm) -> Optional[ResourceTerm]:
    if isinstance(hf.head, Var):
        node: ResourceTerm = rvar(hf.head.index)
    elif isinstance(hf.head, FreeVar):
        node = rfvar(hf.head.name)
    else:
        return None
    for _ in hf.spine:
        node = rapp(node, monomial(()))
    for _ in hf.binders:
        node = rlam(node)
    return node


def check_head_charac(target: TermLike, size_bound: int, fuel: int) -> CheckReport:
    """Head strategy vs Taylor witness: a conclusive head verdict must agree
    with the existence of an approximant with a nonzero normal form."""
    inputs = {"term": _text(target), "size_bound": size_bound, "fuel": fuel}
    if isinstance(target, RationalSystem):
        run = head_normalize(target.root_term(), fuel, target)
    else:
        run = head_normalize(target, fuel)
    sl = enumerate_taylor(target, size_bound)
    witness = None
    for s in sl:
        if r_normalize(s):
            witness = s
            break
    stats = {"approximants": len(sl), "head": run.verdict.describe()}
    if run.verdict.is_solvable:
        if witness is not None:
            return CheckReport(
                "head-characterization",
                inputs,
                "pass",
                witness=pretty_resource(witness),
                stats=stats,
            )
        skeleton = _hnf_skeleton(head_form(run.term))
        if skeleton is not None:
            s0 = _verified_ancestor(skeleton, target, fuel)
            if s0 is not None and r_normalize(s0):
                stats["constructed"] = True
                return CheckReport(
                    "head-characterization",
                    inputs,
                    "pass",
                    witness=pretty_resource(s0),
                    stats=stats,
                )
        return CheckReport(
            "head-characterization",
            inputs,
            "inconclusive",
            reason="solvable, but no witness found in slice and lifting failed",
            stats=stats,
        )
    if run.verdict.certified_unsolvable:
        if witness is not None:
            return CheckReport(
                "head-characterization",
                inputs,
                "fail",
                witness=pretty_resource(witness),
                reason="certified unsolvable yet a slice approximant has a nonzero normal form",
                stats=stats,
            )
        return CheckReport("head-characterization", inputs, "pass", stats=stats)
    return CheckReport(
        "head-characterization",
        inputs,
        "inconclusive",
        reason="head reduction ran out of fuel",
        stats=stats,
    )


# ---------------------------------------------------------------------------
# Normalizability characterization (positive approximants)


def _prefix_status(prefix: Term, d: int) -> str:
    """Scan a Boehm prefix down to applicative depth ``d``:
    "ok", "bottom", or "cut"."""
    status = ["ok"]

    def walk(t: Term, depth: int) -> None:
        if depth > d or status[0] == "bottom":
            return
        if isinstance(t, Bottom):
            status[0] = "bottom"
        elif isinstance(t, Hole):
            if status[0] == "ok":
                status[0] = "cut"
        elif isinstance(t, Lam):
            walk(t.body, depth)
        elif isinstance(t, App):
            walk(t.fn, depth)
            walk(t.arg, depth + 1)

    walk(prefix, 0)
    return status[0]


def _positive_skeleton(prefix: Term, d: int) -> Optional[ResourceTerm]:
    """A d-positive approximant of the prefix: one element per argument
    above depth ``d``, empty monomials below."""
    hf = head_form(prefix)
    if isinstance(hf.head, Var):
        node: ResourceTerm = rvar(hf.head.index)
    elif isinstance(hf.head, FreeVar):
        node = rfvar(hf.head.name)
    else:
        return None
    for q in hf.spine:
        if d == 0:
            node = rapp(node, monomial(()))
        else:
            e = _positive_skeleton(q, d - 1)
            if e is None:
                return None
            node = rapp(node, monomial((e,)))
    for _ in hf.binders:
        node = rlam(node)
    return node


def check_norm_charac(
    target: TermLike, d_max: int, size_bound: int, fuel: int
) -> CheckReport:
    """Per depth d: a d-positive addend in some normal form must exist
    exactly when the Boehm prefix is bottom-free down to depth d."""
    inputs = {"term": _text(target), "d_max": d_max, "size_bound": size_bound, "fuel": fuel}
    prefix = bohm_tree(target, d_max + 1, fuel)
    sl = enumerate_taylor(target, size_bound)
    nf_terms: list[ResourceTerm] = []
    seen: set[ResourceTerm] = set()
    for s in sl:
        for t in r_normalize(s):
            if t not in seen:
                seen.add(t)
                nf_terms.append(t)
    levels = []
    failed = None
    inconclusive = None
    for d in range(d_max + 1):
        status = _prefix_status(prefix, d)
        witness = next((t for t in sorted(nf_terms) if is_d_positive(t, d)), None)
        how = "slice" if witness is not None else None
        if witness is None and status == "ok":
            skeleton = _positive_skeleton(prefix, d)
            if skeleton is not None and _verified_ancestor(skeleton, target, fuel) is not None:
                witness = skeleton
                how = "constructed"
        entry = {
            "d": d,
            "prefix": status,
            "witness": pretty_resource(witness) if witness is not None else None,
            "how": how,
        }
        levels.append(entry)
        if status == "bottom" and witness is not None:
            failed = entry
        elif status == "ok" and witness is None:
            inconclusive = f"no d-positive witness at d={d} despite a clean prefix"
        elif status == "cut":
            inconclusive = f"prefix truncated by fuel at d={d}"
    stats = {"levels": levels, "approximants": len(sl)}
    if failed is not None:
        return CheckReport(
            "normalizability",
            inputs,
            "fail",
            witness=failed["witness"],
            reason=f"d-positive witness at d={failed['d']} but the prefix proves divergence",
            stats=stats,
        )
    if inconclusive is not None:
        return CheckReport("normalizability", inputs, "inconclusive", reason=inconclusive, stats=stats)
    return CheckReport("normalizability", inputs, "pass", stats=stats)


# ---------------------------------------------------------------------------
# Equality evidence through common positive approximants


def terms_equal_via_taylor(
    m: TermLike, n: TermLike, d_max: int, size_bound: int
) -> CheckReport:
    """Evidence of equality: a common d-positive approximant at every
    d <= d_max. Passing is evidence up to the tested depth, not a proof."""
    inputs = {"left": _text(m), "right": _text(n), "d_max": d_max, "size_bound": size_bound}
    common = sorted(set(enumerate_taylor(m, size_bound)) & set(enumerate_taylor(n, size_bound)))
    evidence = []
    for d in range(d_max + 1):
        witness = next((t for t in common if is_d_positive(t, d)), None)
        if witness is None:
            return CheckReport(
                "equality-via-expansion",
                inputs,
                "fail",
                reason=f"no common {d}-positive approximant within size {size_bound}",
                stats={"common": len(common), "evidence": evidence},
            )
        evidence.append({"d": d, "witness": pretty_resource(witness)})
    return CheckReport(
        "equality-via-expansion",
        inputs,
        "pass",
        stats={"common": len(common), "evidence": evidence},
    )


# ---------------------------------------------------------------------------
# Genericity


def check_genericity(
    c: Term,
    m_unsolvable: Term,
    ns: Iterable[Term],
    size_bound: int,
    fuel: int,
    depth: int = 4,
) -> CheckReport:
    """Replacing a certified-unsolvable subterm by anything preserves the
    normal form, provided the filled context has one.

    Checks, in order: the certificate; that the filled context's Boehm
    prefix is bottom- and cut-free (the theorem's hypothesis); that hole-
    free approximants carry all the normal forms (holey ones die with the
    unsolvable filling); and finally that every alternative filling yields
    the identical prefix.
    """
    ns = list(ns)
    inputs = {
        "context": pretty(c),
        "unsolvable": pretty(m_unsolvable),
        "replacements": [pretty(n) for n in ns],
        "size_bound": size_bound,
        "fuel": fuel,
        "depth": depth,
    }
    cert = solvable(m_unsolvable, fuel)
    if not cert.certified_unsolvable:
        return CheckReport(
            "genericity",
            inputs,
            "inconclusive",
            reason=f"no unsolvability certificate for the filling ({cert.describe()})",
        )
    filled = context_fill(c, m_unsolvable)
    prefix = bohm_tree(filled, depth, fuel)
    status = _prefix_status(prefix, depth - 1)
    if status != "ok":
        return CheckReport(
            "genericity",
            inputs,
            "inconclusive",
            reason=f"hypothesis unmet: filled context has no normal-form prefix ({status})",
        )

    slice_m = list(enumerate_taylor(m_unsolvable, size_bound))
    for s in slice_m:
        if r_normalize(s):
            return CheckReport(
                "genericity",
                inputs,
                "fail",
                witness=pretty_resource(s),
                reason="approximant of the certified-unsolvable term has a nonzero normal form",
            )
    holey_checked = 0
    for ctx_approx in enumerate_taylor_context(c, size_bound):
        k = deg_hole(ctx_approx)
        if k == 0 or not slice_m:
            continue
        fill_elems = tuple(itertools.islice(itertools.cycle(slice_m), k))
        filled_sum = r_context_fill(ctx_approx, monomial(fill_elems))
        if r_normalize(filled_sum):
            return CheckReport(
                "genericity",
                inputs,
                "fail",
                witness=pretty_resource(ctx_approx),
                reason="a holey context approximant survived an unsolvable filling",
            )
        holey_checked += 1

    for n in ns:
        other = bohm_tree(context_fill(c, n), depth, fuel)
        if other != prefix:
            return CheckReport(
                "genericity",
                inputs,
                "fail",
                witness=pretty(n),
                reason=f"prefix changed: {pretty(other, cut=chr(0x25FB))} vs {pretty(prefix, cut=chr(0x25FB))}",
            )
    return CheckReport(
        "genericity",
        inputs,
        "pass",
        stats={
            "prefix": pretty(prefix, cut=chr(0x25FB)),
            "holey_approximants_annihilated": holey_checked,
            "replacements": len(ns),
        },
    )


# ---------------------------------------------------------------------------
# Head-operator commutation evidence (used by the property suites)


def hr_commutation_stats(m: Term, size_bound: int) -> dict:
    """One head step on the slice vs the slice of one head step.

    The inclusion direction is exact and asserted by callers; the coverage
    direction (how much of the reduct's slice is reached) is only measured,
    since ancestors may exceed the size bound.
    """
    sl = enumerate_taylor(m, size_bound)
    reduct = head_step(m)
    fired = hr_step(FiniteSum(iter(sl)))
    ok = all(approximates(t, reduct) for t in fired)
    reduct_slice = set(enumerate_taylor(reduct, size_bound))
    covered = len(reduct_slice & set(fired))
    return {
        "inclusion": ok,
        "fired": len(fired),
        "reduct_slice": len(reduct_slice),
        "covered": covered,
    }
