"""Resource reduction: single steps, sum steps, normalization, head operator.

A step fires ``<\\x. u>[t1..tn]`` into the linear substitution of the
elements for the occurrences of ``x`` and distributes the resulting sum
through the surrounding (linear) context; an arity mismatch annihilates
the whole addend. Every addend of a step result is strictly smaller than
the source, so normalization terminates, and the relation satisfies a
one-step diamond, so normal forms are strategy-independent; both facts are
exercised by the test suite rather than assumed.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .resource import (
    ZERO,
    FiniteSum,
    Monomial,
    ResourceTerm,
    RApp,
    RLam,
    monomial,
    open_binder,
    rapp,
    rlam,
    union_all,
)
from .syntax import LambdaError


class NotARedexError(LambdaError):
    pass


class DepthTooShallowError(LambdaError):
    pass


class EmptyChoiceError(LambdaError):
    pass


# A site is a path of 'body' / 'fun' / ('arg', i) components; its depth is
# the number of ('arg', i) components (monomial crossings).
RedexSite = tuple


def site_depth(site: RedexSite) -> int:
    return sum(1 for c in site if isinstance(c, tuple))


def site_to_str(site: RedexSite) -> str:
    if not site:
        return "root"
    return ".".join(c if isinstance(c, str) else f"arg[{c[1]}]" for c in site)


def site_from_str(text: str) -> RedexSite:
    if text in ("", "root"):
        return ()
    out: list = []
    for part in text.split("."):
        if part in ("body", "fun"):
            out.append(part)
        elif part.startswith("arg[") and part.endswith("]"):
            out.append(("arg", int(part[4:-1])))
        else:
            raise LambdaError(f"bad site component {part!r}")
    return tuple(out)


def redex_sites(t: ResourceTerm) -> list[RedexSite]:
    """All redex positions, outermost first, function before arguments."""
    out: list[RedexSite] = []

    def walk(u: ResourceTerm, path: tuple) -> None:
        if isinstance(u, RApp):
            if isinstance(u.fn, RLam):
                out.append(path)
            walk(u.fn, path + ("fun",))
            for i, e in enumerate(u.mono):
                walk(e, path + (("arg", i),))
        elif isinstance(u, RLam):
            walk(u.body, path + ("body",))

    walk(t, ())
    return out


def r_step(t: ResourceTerm, site: RedexSite) -> FiniteSum:
    """Fire the redex at ``site``; the surrounding context maps linearly, so
    an empty substitution result wipes out everything."""
    if not site:
        if not (isinstance(t, RApp) and isinstance(t.fn, RLam)):
            raise NotARedexError(f"no redex at site: {t}")
        return open_binder(t.fn.body, t.mono)
    head, rest = site[0], site[1:]
    if head == "body" and isinstance(t, RLam):
        return r_step(t.body, rest).map(rlam)
    if head == "fun" and isinstance(t, RApp):
        mono = t.mono
        return r_step(t.fn, rest).map(lambda u: rapp(u, mono))
    if isinstance(head, tuple) and isinstance(t, RApp) and head[1] < len(t.mono):
        i = head[1]
        elems = t.mono.elems
        fn = t.fn
        inner = r_step(elems[i], rest)
        return inner.map(lambda u: rapp(fn, monomial(elems[:i] + (u,) + elems[i + 1 :])))
    raise NotARedexError(f"site {site_to_str(site)} does not resolve in {t}")


def r_min_depth_step(t: ResourceTerm, d: int, site: RedexSite) -> FiniteSum:
    if site_depth(site) < d:
        raise DepthTooShallowError(
            f"site {site_to_str(site)} has depth {site_depth(site)} < {d}"
        )
    return r_step(t, site)


def valid_min_depth_sites(t: ResourceTerm, d: int) -> list[RedexSite]:
    return [s for s in redex_sites(t) if site_depth(s) >= d]


def r_step_sum(
    s: FiniteSum,
    choices: Mapping[ResourceTerm, Optional[RedexSite]],
    keep_stepped: Iterable[ResourceTerm] = (),
) -> FiniteSum:
    """One sum-level step: each addend either fires a chosen site or stays.

    At least one addend must fire. ``keep_stepped`` lists addends that act
    as two qualitative copies, one reduced and one kept (reducing ``s`` to
    ``s + S`` is legal because sums collapse duplicates).
    """
    kept = set(keep_stepped)
    for a in choices:
        if a not in s:
            raise EmptyChoiceError(f"choice refers to a non-addend: {a}")
    if not any(site is not None for site in choices.values()):
        raise EmptyChoiceError("no addend selected to fire")
    parts: list[FiniteSum] = []
    for a in s:
        site = choices.get(a)
        if site is None:
            parts.append(FiniteSum((a,)))
        else:
            parts.append(r_step(a, site))
            if a in kept:
                parts.append(FiniteSum((a,)))
    return union_all(parts)


# ---------------------------------------------------------------------------
# Normalization

_NF_CACHE: dict[ResourceTerm, FiniteSum] = {}


def first_redex_site(t: ResourceTerm) -> Optional[RedexSite]:
    if isinstance(t, RApp):
        if isinstance(t.fn, RLam):
            return ()
        sub = first_redex_site(t.fn)
        if sub is not None:
            return ("fun",) + sub
        for i, e in enumerate(t.mono):
            sub = first_redex_site(e)
            if sub is not None:
                return (("arg", i),) + sub
        return None
    if isinstance(t, RLam):
        sub = first_redex_site(t.body)
        if sub is not None:
            return ("body",) + sub
    return None


def _nf(t: ResourceTerm) -> FiniteSum:
    cached = _NF_CACHE.get(t)
    if cached is not None:
        return cached
    site = first_redex_site(t)
    if site is None:
        out = FiniteSum((t,))
    else:
        out = union_all(_nf(u) for u in r_step(t, site))
    _NF_CACHE[t] = out
    return out


def r_normalize(x: ResourceTerm | FiniteSum) -> FiniteSum:
    """Unique normal form (leftmost-outermost per addend, memoized)."""
    if isinstance(x, FiniteSum):
        return union_all(_nf(t) for t in x)
    return _nf(x)


def normalize_with(
    t: ResourceTerm, pick: Callable[[list[RedexSite]], RedexSite]
) -> FiniteSum:
    """Strategy-parameterized normalizer, for cross-checking uniqueness."""
    done: set[ResourceTerm] = set()
    work = [t]
    while work:
        u = work.pop()
        sites = redex_sites(u)
        if not sites:
            done.add(u)
        else:
            work.extend(r_step(u, pick(sites)))
    return FiniteSum(done)


def normal_forms_all_orders(t: ResourceTerm, limit: int = 200000) -> set[FiniteSum]:
    """Brute-force oracle: normal forms reached under every single-site
    strategy choice, as a set (should always be a singleton)."""
    results: set[FiniteSum] = set()
    budget = [limit]

    def explore(u: ResourceTerm) -> set[FiniteSum]:
        sites = redex_sites(u)
        if not sites:
            return {FiniteSum((u,))}
        outs: set[FiniteSum] = set()
        for site in sites:
            budget[0] -= 1
            if budget[0] < 0:
                raise RuntimeError("oracle budget exhausted")
            step = r_step(u, site)
            combos: list[set[FiniteSum]] = [explore(v) for v in step]
            if not combos:
                outs.add(ZERO)
                continue
            for pickings in itertools.product(*combos):
                outs.add(union_all(pickings))
        return outs

    results = explore(t)
    return results


# ---------------------------------------------------------------------------
# Head reduction


def head_split(t: ResourceTerm) -> tuple[int, ResourceTerm, tuple[Monomial, ...]]:
    """Decompose ``\\..\\ <<u>m1>..mn`` into (binders, u, (m1..mn))."""
    binders = 0
    while isinstance(t, RLam):
        binders += 1
        t = t.body
    monos: list[Monomial] = []
    while isinstance(t, RApp):
        monos.append(t.mono)
        t = t.fn
    monos.reverse()
    return binders, t, tuple(monos)


def is_head_normal(t: ResourceTerm) -> bool:
    _, head, monos = head_split(t)
    return not (isinstance(head, RLam) and monos)


def _hr_term(t: ResourceTerm) -> Optional[FiniteSum]:
    binders, head, monos = head_split(t)
    if not (isinstance(head, RLam) and monos):
        return None
    opened = open_binder(head.body, monos[0])

    def rebuild(u: ResourceTerm) -> ResourceTerm:
        for m in monos[1:]:
            u = rapp(u, m)
        for _ in range(binders):
            u = rlam(u)
        return u

    return opened.map(rebuild)


def hr_step(x: ResourceTerm | FiniteSum) -> FiniteSum:
    """Fire the head redex; identity on head-normal terms; addend-wise on sums."""
    if isinstance(x, FiniteSum):
        return union_all(hr_step(t) for t in x)
    fired = _hr_term(x)
    return FiniteSum((x,)) if fired is None else fired


def hr_to_hnf(x: ResourceTerm | FiniteSum) -> tuple[FiniteSum, int]:
    """Iterate the head operator until every addend is head normal.

    Termination is guaranteed: each iteration strictly shrinks the multiset
    of addend sizes (head-normal addends pass through unchanged).
    """
    s = x if isinstance(x, FiniteSum) else FiniteSum((x,))
    k = 0
    while not all(is_head_normal(t) for t in s):
        s = hr_step(s)
        k += 1
    return s, k


# ---------------------------------------------------------------------------
# Termination measure and confluence checking


def dm_measure(s: FiniteSum) -> tuple[int, ...]:
    """Multiset of addend sizes, sorted descending."""
    return tuple(sorted((t.size for t in s), reverse=True))


def dm_less(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Strict multiset (Dershowitz-Manna) order on natural-number multisets."""
    ca: dict[int, int] = {}
    cb: dict[int, int] = {}
    for x in a:
        ca[x] = ca.get(x, 0) + 1
    for x in b:
        cb[x] = cb.get(x, 0) + 1
    only_a = {x: ca[x] - cb.get(x, 0) for x in ca if ca[x] > cb.get(x, 0)}
    only_b = {x: cb[x] - ca.get(x, 0) for x in cb if cb[x] > ca.get(x, 0)}
    if not only_b:
        return False
    return all(any(x < y for y in only_b) for x in only_a)


def _sum_successors(s: FiniteSum, cap: int) -> Iterator[FiniteSum]:
    """All one-step sum reducts of ``s`` (each addend fires one site or stays)."""
    options: list[list[Optional[RedexSite]]] = []
    total = 1
    for t in s:
        opts: list[Optional[RedexSite]] = [None]
        opts.extend(redex_sites(t))
        options.append(opts)
        total *= len(opts)
        if total > cap:
            raise RuntimeError(f"sum reduct enumeration exceeds cap ({total} > {cap})")
    for combo in itertools.product(*options):
        if all(site is None for site in combo):
            continue
        parts = []
        for t, site in zip(s, combo):
            parts.append(FiniteSum((t,)) if site is None else r_step(t, site))
        yield union_all(parts)


def check_diamond(t: ResourceTerm, cap: int = 500000) -> bool:
    """One-step diamond: any two single steps from ``{t}`` rejoin in at most
    one optional further sum step on each side."""
    sites = redex_sites(t)
    reducts = [r_step(t, site) for site in sites]
    for i in range(len(reducts)):
        for j in range(i + 1, len(reducts)):
            t1, t2 = reducts[i], reducts[j]
            if t1 == t2:
                continue
            left: set[FiniteSum] = {t1}
            left.update(_sum_successors(t1, cap))
            if t2 in left:
                continue
            if not any(u in left for u in _sum_successors(t2, cap)):
                return False
    return True
