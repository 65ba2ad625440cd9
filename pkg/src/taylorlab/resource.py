"""Resource terms: linear lambda-terms whose arguments are finite multisets.

All nodes are interned, so structurally equal terms are the same object and
equality is pointer equality. Binders are pure de Bruijn (no name hints);
the printer invents names. Monomials keep their elements sorted under a
total structural order, which makes multiset equality plain equality and
printing deterministic. Sums are qualitative: a finite *set* of terms,
``0`` being the empty one.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Union

from .syntax import LambdaError, ParseError


class ResourceError(LambdaError):
    pass


# ---------------------------------------------------------------------------
# Interned nodes


class ResourceTerm:
    __slots__ = ("skey", "size", "height", "_hash")

    # identity-based __eq__/__hash__ are correct thanks to interning
    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return pretty_resource(self)

    def __repr__(self) -> str:
        return f"RTerm({pretty_resource(self)!r})"

    def __lt__(self, other: "ResourceTerm") -> bool:
        return self.skey < other.skey


class RVar(ResourceTerm):
    __slots__ = ("index",)


class RFreeVar(ResourceTerm):
    __slots__ = ("name",)


class RLam(ResourceTerm):
    __slots__ = ("body",)


class RApp(ResourceTerm):
    __slots__ = ("fn", "mono")


class RHole(ResourceTerm):
    __slots__ = ()


class Monomial:
    """Finite multiset of resource terms, kept sorted; ``1`` is the empty one."""

    __slots__ = ("elems", "skey", "size", "height", "_hash")

    def __iter__(self) -> Iterator[ResourceTerm]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __getitem__(self, i: int) -> ResourceTerm:
        return self.elems[i]

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.skey < other.skey

    def __str__(self) -> str:
        return pretty_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({pretty_monomial(self)!r})"


_INTERN: dict[tuple, object] = {}


def rvar(index: int) -> RVar:
    key = ("v", index)
    node = _INTERN.get(key)
    if node is None:
        node = RVar()
        node.index = index
        node.skey = (0, index)
        node.size = 1
        node.height = 0
        node._hash = hash(key)
        _INTERN[key] = node
    return node  # type: ignore[return-value]


def rfvar(name: str) -> RFreeVar:
    key = ("f", name)
    node = _INTERN.get(key)
    if node is None:
        node = RFreeVar()
        node.name = name
        node.skey = (1, name)
        node.size = 1
        node.height = 0
        node._hash = hash(key)
        _INTERN[key] = node
    return node  # type: ignore[return-value]


def rlam(body: ResourceTerm) -> RLam:
    key = ("l", body)
    node = _INTERN.get(key)
    if node is None:
        node = RLam()
        node.body = body
        node.skey = (2, body.skey)
        node.size = 1 + body.size
        node.height = body.height
        node._hash = hash(key)
        _INTERN[key] = node
    return node  # type: ignore[return-value]


def rapp(fn: ResourceTerm, mono: Monomial) -> RApp:
    key = ("a", fn, mono)
    node = _INTERN.get(key)
    if node is None:
        node = RApp()
        node.fn = fn
        node.mono = mono
        node.skey = (3, fn.skey, mono.skey)
        node.size = fn.size + mono.size
        node.height = max(fn.height, mono.height)
        node._hash = hash(key)
        _INTERN[key] = node
    return node  # type: ignore[return-value]


def _mk_hole() -> RHole:
    node = RHole()
    node.skey = (4,)
    node.size = 1
    node.height = 0
    node._hash = hash(("h",))
    return node


HOLE_R = _mk_hole()


def monomial(elems: Iterable[ResourceTerm]) -> Monomial:
    sorted_elems = tuple(sorted(elems, key=lambda t: t.skey))
    key = ("m", sorted_elems)
    node = _INTERN.get(key)
    if node is None:
        node = Monomial()
        node.elems = sorted_elems
        node.skey = tuple(t.skey for t in sorted_elems)
        node.size = 1 + sum(t.size for t in sorted_elems)
        node.height = 1 + max((t.height for t in sorted_elems), default=0)
        node._hash = hash(key)
        _INTERN[key] = node
    return node  # type: ignore[return-value]


ONE = monomial(())


# ---------------------------------------------------------------------------
# Qualitative sums


class FiniteSum:
    """Deduplicated finite set of resource terms (sum over the booleans)."""

    __slots__ = ("terms", "_set")

    def __init__(self, terms: Iterable[ResourceTerm] = ()):
        uniq = set(terms)
        self.terms = tuple(sorted(uniq, key=lambda t: t.skey))
        self._set = frozenset(uniq)

    def __iter__(self) -> Iterator[ResourceTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __contains__(self, t: ResourceTerm) -> bool:
        return t in self._set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteSum) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def union(self, *others: "FiniteSum") -> "FiniteSum":
        acc = set(self._set)
        for o in others:
            acc |= o._set
        return FiniteSum(acc)

    def map(self, f) -> "FiniteSum":
        return FiniteSum(f(t) for t in self.terms)

    def __str__(self) -> str:
        return pretty_sum(self)

    def __repr__(self) -> str:
        return f"FiniteSum({pretty_sum(self)!r})"


ZERO = FiniteSum()


def sum_of(terms: Iterable[ResourceTerm]) -> FiniteSum:
    return FiniteSum(terms)


def union_all(sums: Iterable[FiniteSum]) -> FiniteSum:
    acc: set[ResourceTerm] = set()
    for s in sums:
        acc |= s._set
    return FiniteSum(acc)


Summable = Union[ResourceTerm, Monomial, FiniteSum]


# ---------------------------------------------------------------------------
# Measures


def r_size(x: Summable) -> int:
    """Node count: variables weigh 1, a monomial weighs 1 plus its elements.

    For a sum, the maximum over the addends; the empty sum has size 0.
    """
    if isinstance(x, FiniteSum):
        return max((t.size for t in x), default=0)
    return x.size


def r_height(x: Summable) -> int:
    """Monomial-nesting depth; abstractions and application spines are free.

    The empty monomial still counts one nesting level, so ``h(1) = 1``.
    The empty sum has height 0.
    """
    if isinstance(x, FiniteSum):
        return max((t.height for t in x), default=0)
    return x.height


def deg(t: ResourceTerm | Monomial, name: str) -> int:
    """Number of free occurrences of ``name``."""
    if isinstance(t, Monomial):
        return sum(deg(e, name) for e in t)
    if isinstance(t, RFreeVar):
        return 1 if t.name == name else 0
    if isinstance(t, RLam):
        return deg(t.body, name)
    if isinstance(t, RApp):
        return deg(t.fn, name) + deg(t.mono, name)
    return 0


def deg_hole(t: ResourceTerm | Monomial) -> int:
    if isinstance(t, Monomial):
        return sum(deg_hole(e) for e in t)
    if isinstance(t, RHole):
        return 1
    if isinstance(t, RLam):
        return deg_hole(t.body)
    if isinstance(t, RApp):
        return deg_hole(t.fn) + deg_hole(t.mono)
    return 0


# ---------------------------------------------------------------------------
# Linear substitution

# Occurrence traversal order (used consistently by count and rebuild):
# abstraction body, then application function, then monomial elements in
# their stored order.


def _distinct_assignments(elems: tuple[ResourceTerm, ...]) -> Iterator[tuple[ResourceTerm, ...]]:
    """All distinct sequences drawing each multiset element exactly once.

    Equal elements are grouped, so the number of sequences is the
    multinomial coefficient rather than n!.
    """
    groups: list[list] = []
    for e in elems:
        if groups and groups[-1][0] is e:
            groups[-1][1] += 1
        else:
            groups.append([e, 1])
    n = len(elems)
    out: list[ResourceTerm | None] = [None] * n

    def place(pos: int) -> Iterator[tuple[ResourceTerm, ...]]:
        if pos == n:
            yield tuple(out)  # type: ignore[arg-type]
            return
        for g in groups:
            if g[1] == 0:
                continue
            g[1] -= 1
            out[pos] = g[0]
            yield from place(pos + 1)
            g[1] += 1

    return place(0)


def _count_marks(t: ResourceTerm, match, c: int) -> int:
    if match(t, c):
        return 1
    if isinstance(t, RLam):
        return _count_marks(t.body, match, c + 1)
    if isinstance(t, RApp):
        n = _count_marks(t.fn, match, c)
        for e in t.mono:
            n += _count_marks(e, match, c)
        return n
    return 0


def _linear_replace(
    t: ResourceTerm, match, mono: Monomial, *, adjust_bound: bool
) -> FiniteSum:
    """Replace the matched occurrences bijectively by the monomial elements.

    Returns 0 when the occurrence count differs from the cardinality. With
    ``adjust_bound`` the matched occurrences are a bound variable being
    opened: grafted elements are shifted to the local binder depth and the
    remaining indices above it are decremented.
    """
    n = _count_marks(t, match, 0)
    if n != len(mono):
        return ZERO

    results: set[ResourceTerm] = set()
    assigned: tuple[ResourceTerm, ...] = ()
    counter = [0]

    def rebuild(u: ResourceTerm, c: int) -> ResourceTerm:
        if match(u, c):
            e = assigned[counter[0]]
            counter[0] += 1
            return _rshift(e, c) if adjust_bound else e
        if isinstance(u, RVar):
            if adjust_bound and u.index > c:
                return rvar(u.index - 1)
            return u
        if isinstance(u, RLam):
            return rlam(rebuild(u.body, c + 1))
        if isinstance(u, RApp):
            fn = rebuild(u.fn, c)
            elems = tuple(rebuild(e, c) for e in u.mono)
            return rapp(fn, monomial(elems))
        return u

    for assigned in _distinct_assignments(mono.elems):
        counter[0] = 0
        results.add(rebuild(t, 0))
    return FiniteSum(results)


def _rshift(t: ResourceTerm, d: int, cutoff: int = 0) -> ResourceTerm:
    """Shift indices escaping ``t`` up by ``d`` (grafting under binders)."""
    if d == 0:
        return t
    if isinstance(t, RVar):
        return rvar(t.index + d) if t.index >= cutoff else t
    if isinstance(t, RLam):
        return rlam(_rshift(t.body, d, cutoff + 1))
    if isinstance(t, RApp):
        return rapp(_rshift(t.fn, d, cutoff), monomial(_rshift(e, d, cutoff) for e in t.mono))
    return t


def r_subst(s: ResourceTerm, name: str, mono: Monomial) -> FiniteSum:
    """Linear substitution: the elements of ``mono`` are distributed
    bijectively over the free occurrences of ``name``; 0 on arity mismatch.
    """
    return _linear_replace(
        s, lambda u, c: isinstance(u, RFreeVar) and u.name == name, mono, adjust_bound=False
    )


def r_context_fill(c: ResourceTerm, mono: Monomial) -> FiniteSum:
    """Linear substitution of the holes of ``c`` by ``mono`` (0 on mismatch)."""
    return _linear_replace(c, lambda u, _c: isinstance(u, RHole), mono, adjust_bound=False)


def open_binder(body: ResourceTerm, mono: Monomial) -> FiniteSum:
    """Open the binder a redex just peeled: distribute ``mono`` over the
    occurrences of the bound variable, 0 on arity mismatch."""
    return _linear_replace(
        body, lambda u, c: isinstance(u, RVar) and u.index == c, mono, adjust_bound=True
    )


def is_d_positive(t: ResourceTerm, d: int) -> bool:
    """No empty monomial occurs at monomial depth below ``d``."""
    if d <= 0:
        return True
    if isinstance(t, RLam):
        return is_d_positive(t.body, d)
    if isinstance(t, RApp):
        if len(t.mono) == 0:
            return False
        return is_d_positive(t.fn, d) and all(is_d_positive(e, d - 1) for e in t.mono)
    return True


# ---------------------------------------------------------------------------
# Printing

_NAME_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _collect_free(t: ResourceTerm | Monomial, acc: set[str]) -> None:
    if isinstance(t, Monomial):
        for e in t:
            _collect_free(e, acc)
    elif isinstance(t, RFreeVar):
        acc.add(t.name)
    elif isinstance(t, RLam):
        _collect_free(t.body, acc)
    elif isinstance(t, RApp):
        _collect_free(t.fn, acc)
        _collect_free(t.mono, acc)


def _binder_name(depth: int, taken: set[str]) -> str:
    base = _NAME_ALPHABET[depth % 26]
    suffix = depth // 26
    name = base if suffix == 0 else f"{base}{suffix}"
    while name in taken:
        name += "'"
    return name


def pretty_resource(t: ResourceTerm) -> str:
    taken: set[str] = set()
    _collect_free(t, taken)

    def render(u: ResourceTerm, env: tuple[str, ...], under_lam_ok: bool) -> str:
        if isinstance(u, RVar):
            return env[u.index] if u.index < len(env) else f"#{u.index}"
        if isinstance(u, RFreeVar):
            return u.name
        if isinstance(u, RHole):
            return "*"
        if isinstance(u, RLam):
            name = _binder_name(len(env), taken)
            body = render(u.body, (name,) + env, True)
            out = f"\\{name}. {body}"
            return out if under_lam_ok else f"({out})"
        if isinstance(u, RApp):
            fn = render(u.fn, env, True)  # the angle brackets already delimit
            return f"<{fn}>{render_mono(u.mono, env)}"
        raise TypeError(f"not a resource term: {u!r}")

    def render_mono(m: Monomial, env: tuple[str, ...]) -> str:
        if len(m) == 0:
            return "1"
        return "[" + ", ".join(render(e, env, True) for e in m) + "]"

    return render(t, (), True)


def pretty_monomial(m: Monomial) -> str:
    if len(m) == 0:
        return "1"
    return "[" + ", ".join(pretty_resource(e) for e in m) + "]"


def pretty_sum(s: FiniteSum) -> str:
    if not s:
        return "0"
    return " + ".join(pretty_resource(t) for t in s)


# ---------------------------------------------------------------------------
# Parsing

_R_PUNCT = {
    "\\": "LAM",
    "λ": "LAM",
    ".": "DOT",
    "<": "LT",
    ">": "GT",
    "⟨": "LT",
    "⟩": "GT",
    "[": "LB",
    "]": "RB",
    ",": "COMMA",
    "(": "LP",
    ")": "RP",
    "+": "PLUS",
    "*": "HOLE",
    "1": "ONE",
    "0": "NIL",
}


def _rlex(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        kind = _R_PUNCT.get(ch)
        if kind is not None:
            toks.append((kind, ch, i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            toks.append(("IDENT", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i, text)
    toks.append(("EOF", "", n))
    return toks


class _RParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _rlex(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok

    def term(self, env: tuple[str, ...]) -> ResourceTerm:
        kind, value, pos = self.peek()
        if kind == "LAM":
            self.next()
            names = [self.expect("IDENT")[1]]
            while self.peek()[0] == "IDENT":
                names.append(self.next()[1])
            self.expect("DOT")
            body = self.term(tuple(reversed(names)) + env)
            for _ in names:
                body = rlam(body)
            return body
        if kind == "LT":
            self.next()
            fn = self.term(env)
            self.expect("GT")
            return rapp(fn, self.mono(env))
        if kind == "IDENT":
            self.next()
            for i, name in enumerate(env):
                if name == value:
                    return rvar(i)
            return rfvar(value)
        if kind == "HOLE":
            self.next()
            return HOLE_R
        if kind == "LP":
            self.next()
            inner = self.term(env)
            self.expect("RP")
            return inner
        raise ParseError(f"expected a resource term, found {value or 'end of input'!r}", pos, self.text)

    def mono(self, env: tuple[str, ...]) -> Monomial:
        kind, value, pos = self.peek()
        if kind == "ONE":
            self.next()
            return ONE
        if kind == "LB":
            self.next()
            elems = []
            if self.peek()[0] != "RB":
                elems.append(self.term(env))
                while self.peek()[0] == "COMMA":
                    self.next()
                    elems.append(self.term(env))
            self.expect("RB")
            return monomial(elems)
        raise ParseError(f"expected a monomial, found {value or 'end of input'!r}", pos, self.text)


def parse_resource_term(text: str) -> ResourceTerm:
    p = _RParser(text)
    t = p.term(())
    if p.peek()[0] != "EOF":
        raise ParseError(f"unexpected trailing input {p.peek()[1]!r}", p.peek()[2], text)
    return t


def parse_resource_monomial(text: str) -> Monomial:
    p = _RParser(text)
    m = p.mono(())
    if p.peek()[0] != "EOF":
        raise ParseError(f"unexpected trailing input {p.peek()[1]!r}", p.peek()[2], text)
    return m


def parse_resource_sum(text: str) -> FiniteSum:
    p = _RParser(text)
    if p.peek()[0] == "NIL":
        p.next()
        if p.peek()[0] != "EOF":
            raise ParseError("unexpected input after 0", p.peek()[2], text)
        return ZERO
    terms = [p.term(())]
    while p.peek()[0] == "PLUS":
        p.next()
        terms.append(p.term(()))
    if p.peek()[0] != "EOF":
        raise ParseError(f"unexpected trailing input {p.peek()[1]!r}", p.peek()[2], text)
    return FiniteSum(terms)
