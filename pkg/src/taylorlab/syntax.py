"""Lambda-term syntax: terms, contexts, rational systems, parsing, printing.

Terms are immutable. Bound variables are de Bruijn indices, free variables
are names, and every binder keeps its surface name as a *hint*. Hints never
affect alpha-equality (``==`` compares the nameless skeleton), but they do
drive the two grafting operations, which are deliberately literal:

* ``context_fill`` plugs a term into the holes of a context; free names of
  the plug that match an enclosing binder hint get captured, as they must.
* unfolding a ``RationalSystem`` grafts equation bodies the same way, so
  ``let rec F = f F in \\f. F`` denotes the infinite tree in which every
  ``f`` is bound by the top binder.

Consequently contexts and systems are treated as literal syntax (renaming
their binders changes how they fill), while plain terms are an alpha-class.
"""

from __future__ import annotations

from typing import Iterator, Union


class LambdaError(Exception):
    """Base class for this package's domain errors."""


class ParseError(LambdaError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (at offset {pos}, line {line}, col {col})")


class GuardednessError(LambdaError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__(
            "unguarded recursion: cycle %s never crosses an application argument"
            % " -> ".join(cycle + cycle[:1])
        )


class UndefinedSymbolError(LambdaError):
    pass


# ---------------------------------------------------------------------------
# Terms


class Term:
    """A lambda(-bottom) term, context, or equation body.

    ``akey`` is the nameless structural key (alpha-equality), ``fkey`` adds
    binder hints (literal syntactic identity, used where grafting makes
    hints significant).
    """

    __slots__ = ("akey", "fkey", "_hash")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Term) and self.akey == other.akey

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return pretty(self)

    def __repr__(self) -> str:
        return f"Term({pretty(self)!r})"


class Var(Term):
    """Bound variable (de Bruijn index, 0 = innermost binder)."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self.akey = ("v", index)
        self.fkey = self.akey
        self._hash = hash(self.akey)


class FreeVar(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.akey = ("f", name)
        self.fkey = self.akey
        self._hash = hash(self.akey)


class Lam(Term):
    __slots__ = ("hint", "body")

    def __init__(self, hint: str, body: Term):
        self.hint = hint
        self.body = body
        self.akey = ("l", body.akey)
        self.fkey = ("l", hint, body.fkey)
        self._hash = hash(self.akey)


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        self.fn = fn
        self.arg = arg
        self.akey = ("a", fn.akey, arg.akey)
        self.fkey = ("a", fn.fkey, arg.fkey)
        self._hash = hash(self.akey)


class Bottom(Term):
    """The constant asserting an unsolvable subterm."""

    __slots__ = ()

    def __init__(self) -> None:
        self.akey = ("bot",)
        self.fkey = self.akey
        self._hash = hash(self.akey)


class Hole(Term):
    """Context hole; also reused as the cut marker in truncated trees.

    A hole means "anything may be plugged here" in a context and "not
    computed" in a truncated tree; it is distinct from ``Bottom``, which
    asserts unsolvability.
    """

    __slots__ = ()

    def __init__(self) -> None:
        self.akey = ("hole",)
        self.fkey = self.akey
        self._hash = hash(self.akey)


class RecRef(Term):
    """Reference to an equation of a :class:`RationalSystem`."""

    __slots__ = ("symbol",)

    def __init__(self, symbol: str):
        self.symbol = symbol
        self.akey = ("r", symbol)
        self.fkey = self.akey
        self._hash = hash(self.akey)


BOTTOM = Bottom()
HOLE = Hole()

TermLike = Union[Term, "RationalSystem"]


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.arg)
            stack.append(u.fn)


def contains_hole(t: Term) -> bool:
    return any(u is HOLE or isinstance(u, Hole) for u in subterms(t))


def rec_symbols(t: Term) -> set[str]:
    return {u.symbol for u in subterms(t) if isinstance(u, RecRef)}


# ---------------------------------------------------------------------------
# Rational systems


class RationalSystem:
    """A finite set of guarded recursive equations denoting an infinite term.

    Guardedness: every cycle among the equations crosses at least one
    application-argument edge, so each lap around a cycle strictly deepens
    the denoted tree. The root is a symbol; when the source is
    ``let rec X = B in M`` with ``M`` not a bare reference, a synthetic root
    equation is added (and elided again when printing).
    """

    __slots__ = ("equations", "root", "_synthetic_root")

    def __init__(self, equations: dict[str, Term], root: str, _synthetic_root: bool = False):
        self.equations = dict(equations)
        self.root = root
        self._synthetic_root = _synthetic_root
        self._validate()

    def _validate(self) -> None:
        if self.root not in self.equations:
            raise UndefinedSymbolError(f"root symbol {self.root!r} has no equation")
        for sym, body in self.equations.items():
            if isinstance(body, RecRef):
                raise LambdaError(f"equation {sym} is a bare reference (trivial cycle)")
            for ref in rec_symbols(body):
                if ref not in self.equations:
                    raise UndefinedSymbolError(f"undefined symbol {ref!r} in equation {sym}")
        self._check_guardedness()

    def _check_guardedness(self) -> None:
        # Edges that never cross an argument position are the dangerous ones:
        # a cycle made only of those would unfold without gaining depth.
        unguarded: dict[str, set[str]] = {s: set() for s in self.equations}

        def scan(sym: str, t: Term, argdepth: int) -> None:
            if isinstance(t, RecRef):
                if argdepth == 0:
                    unguarded[sym].add(t.symbol)
            elif isinstance(t, Lam):
                scan(sym, t.body, argdepth)
            elif isinstance(t, App):
                scan(sym, t.fn, argdepth)
                scan(sym, t.arg, argdepth + 1)

        for sym, body in self.equations.items():
            scan(sym, body, 0)

        color: dict[str, int] = {}
        trail: list[str] = []

        def visit(sym: str) -> None:
            color[sym] = 1
            trail.append(sym)
            for nxt in sorted(unguarded[sym]):
                if color.get(nxt) == 1:
                    raise GuardednessError(trail[trail.index(nxt):])
                if color.get(nxt, 0) == 0:
                    visit(nxt)
            trail.pop()
            color[sym] = 2

        for sym in sorted(self.equations):
            if color.get(sym, 0) == 0:
                visit(sym)

    def body(self, symbol: str) -> Term:
        try:
            return self.equations[symbol]
        except KeyError:
            raise UndefinedSymbolError(f"undefined symbol {symbol!r}") from None

    def root_term(self) -> Term:
        return RecRef(self.root)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalSystem)
            and self.root == other.root
            and self.equations.keys() == other.equations.keys()
            and all(self.equations[s].fkey == other.equations[s].fkey for s in self.equations)
        )

    def __hash__(self) -> int:
        return hash((self.root, tuple(sorted((s, b.fkey) for s, b in self.equations.items()))))

    def __str__(self) -> str:
        return pretty_system(self)

    def __repr__(self) -> str:
        return f"RationalSystem({pretty_system(self)!r})"


# ---------------------------------------------------------------------------
# Basic operations


def bind_free(t: Term, hints: tuple[str, ...]) -> Term:
    """Rebind free variables of ``t`` against a stack of binder hints.

    ``hints`` lists the binders enclosing the grafting point, innermost
    first. This is what makes hole filling and system unfolding literal.
    """
    if not hints:
        return t

    def go(u: Term, depth: int) -> Term:
        if isinstance(u, FreeVar):
            for i, h in enumerate(hints):
                if h == u.name:
                    return Var(depth + i)
            return u
        if isinstance(u, Lam):
            return Lam(u.hint, go(u.body, depth + 1))
        if isinstance(u, App):
            return App(go(u.fn, depth), go(u.arg, depth))
        return u

    return go(t, 0)


def resolve_ref(t: RecRef, system: RationalSystem, hints: tuple[str, ...]) -> Term:
    """Graft the equation body for ``t`` at a point enclosed by ``hints``."""
    return bind_free(system.body(t.symbol), hints)


def free_vars(target: TermLike) -> set[str]:
    """Free variable names of a term or of the tree denoted by a system."""
    if isinstance(target, RationalSystem):
        return _system_free_vars(target)
    out: set[str] = set()
    for u in subterms(target):
        if isinstance(u, FreeVar):
            out.add(u.name)
    return out


def _system_free_vars(system: RationalSystem) -> set[str]:
    acc: dict[str, frozenset[str]] = {s: frozenset() for s in system.equations}

    def fv(t: Term, bound: frozenset[str]) -> frozenset[str]:
        if isinstance(t, FreeVar):
            return frozenset((t.name,))
        if isinstance(t, RecRef):
            return acc[t.symbol] - bound
        if isinstance(t, Lam):
            return fv(t.body, bound | {t.hint})
        if isinstance(t, App):
            return fv(t.fn, bound) | fv(t.arg, bound)
        return frozenset()

    changed = True
    while changed:
        changed = False
        for sym, body in system.equations.items():
            new = fv(body, frozenset())
            if new != acc[sym]:
                acc[sym] = new
                changed = True
    return set(acc[system.root])


def alpha_eq(m: TermLike, n: TermLike) -> bool:
    """Equality up to renaming of bound variables."""
    if isinstance(m, RationalSystem) or isinstance(n, RationalSystem):
        return m == n
    return m.akey == n.akey


def subst(m: Term, name: str, n: Term) -> Term:
    """Capture-avoiding substitution of ``n`` for the free variable ``name``.

    Capture cannot happen: binders bind indices, not names, so grafting a
    well-formed term under them is safe. (Printing renames any binder hint
    that would shadow a free name.)
    """
    if name not in free_vars(m):
        return m

    def go(t: Term) -> Term:
        if isinstance(t, FreeVar):
            return n if t.name == name else t
        if isinstance(t, Lam):
            return Lam(t.hint, go(t.body))
        if isinstance(t, App):
            return App(go(t.fn), go(t.arg))
        return t

    return go(m)


def context_fill(c: Term, m: Term) -> Term:
    """Plug ``m`` into every hole of ``c`` (literal grafting: holes capture)."""

    def go(t: Term, hints: tuple[str, ...]) -> Term:
        if isinstance(t, Hole):
            return bind_free(m, hints)
        if isinstance(t, Lam):
            return Lam(t.hint, go(t.body, (t.hint,) + hints))
        if isinstance(t, App):
            return App(go(t.fn, hints), go(t.arg, hints))
        return t

    return go(c, ())


def unfold(target: TermLike, depth: int, system: RationalSystem | None = None) -> Term:
    """Finite prefix of the denoted tree, cut at applicative depth ``depth``.

    Every subterm whose occurrence crosses ``depth`` or more argument edges
    is replaced by the cut marker. Terminates on guarded systems because
    each unfolding lap crosses at least one argument edge.
    """
    if isinstance(target, RationalSystem):
        system = target
        t: Term = target.root_term()
    else:
        t = target

    def go(u: Term, budget: int, hints: tuple[str, ...]) -> Term:
        if budget <= 0:
            return HOLE
        if isinstance(u, RecRef):
            if system is None:
                raise UndefinedSymbolError(f"unresolved symbol {u.symbol!r}")
            return go(resolve_ref(u, system, hints), budget, hints)
        if isinstance(u, Lam):
            return Lam(u.hint, go(u.body, budget, (u.hint,) + hints))
        if isinstance(u, App):
            return App(go(u.fn, budget, hints), go(u.arg, budget - 1, hints))
        return u

    return go(t, depth, ())


def power_apply(m: Term, n: Term, k: int) -> Term:
    """Left-nested application of ``k`` copies of ``n`` to ``m``."""
    out = m
    for _ in range(k):
        out = App(out, n)
    return out


def power_tail(n: Term, k: int) -> Term:
    """Right-nested tower ``(n)(n)...(n) n`` with ``k`` occurrences."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = n
    for _ in range(k - 1):
        out = App(n, out)
    return out


# ---------------------------------------------------------------------------
# Printing

_PREC_TOP = 0
_PREC_FUN = 1
_PREC_ARG = 2


def _dangling(t: Term, memo: dict[int, frozenset[int]]) -> frozenset[int]:
    got = memo.get(id(t))
    if got is not None:
        return got
    if isinstance(t, Var):
        out = frozenset((t.index,))
    elif isinstance(t, Lam):
        out = frozenset(k - 1 for k in _dangling(t.body, memo) if k >= 1)
    elif isinstance(t, App):
        out = _dangling(t.fn, memo) | _dangling(t.arg, memo)
    else:
        out = frozenset()
    memo[id(t)] = out
    return out


def _free_names(t: Term, memo: dict[int, frozenset[str]]) -> frozenset[str]:
    got = memo.get(id(t))
    if got is not None:
        return got
    if isinstance(t, FreeVar):
        out = frozenset((t.name,))
    elif isinstance(t, Lam):
        out = _free_names(t.body, memo)
    elif isinstance(t, App):
        out = _free_names(t.fn, memo) | _free_names(t.arg, memo)
    else:
        out = frozenset()
    memo[id(t)] = out
    return out


def pretty(t: Term, cut: str = "*", avoid: frozenset[str] = frozenset()) -> str:
    """ASCII rendering; ``parse_term(pretty(t))`` is alpha-equal to ``t``.

    ``cut`` selects how holes print ("*" for contexts, "◻" for
    truncated trees). ``avoid`` adds names a binder must not shadow (used
    when printing system equations, whose references must stay references).
    """
    dmemo: dict[int, frozenset[int]] = {}
    fmemo: dict[int, frozenset[str]] = {}

    def render(u: Term, env: tuple[str, ...], prec: int) -> str:
        if isinstance(u, Var):
            return env[u.index] if u.index < len(env) else f"#{u.index}"
        if isinstance(u, FreeVar):
            return u.name
        if isinstance(u, Bottom):
            return "_|_"
        if isinstance(u, Hole):
            return cut
        if isinstance(u, RecRef):
            return u.symbol
        if isinstance(u, Lam):
            taken = set(_free_names(u.body, fmemo)) | set(avoid)
            for k in _dangling(u.body, dmemo):
                if k >= 1 and (k - 1) < len(env):
                    taken.add(env[k - 1])
            name = u.hint or "x"
            while name in taken:
                name += "'"
            body = render(u.body, (name,) + env, _PREC_TOP)
            out = f"\\{name}. {body}"
            return f"({out})" if prec > _PREC_TOP else out
        if isinstance(u, App):
            out = f"{render(u.fn, env, _PREC_FUN)} {render(u.arg, env, _PREC_ARG)}"
            return f"({out})" if prec > _PREC_FUN else out
        raise TypeError(f"not a term: {u!r}")

    return render(t, (), _PREC_TOP)


def pretty_system(system: RationalSystem, cut: str = "*") -> str:
    syms = frozenset(system.equations)
    defs = [
        f"{sym} = {pretty(body, cut=cut, avoid=syms)}"
        for sym, body in system.equations.items()
        if not (system._synthetic_root and sym == system.root)
    ]
    if system._synthetic_root:
        tail = pretty(system.equations[system.root], cut=cut, avoid=syms)
    else:
        tail = system.root
    return "let rec " + " and ".join(defs) + " in " + tail


# ---------------------------------------------------------------------------
# Parsing

_KEYWORDS = {"let", "rec", "and", "in"}


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        self._lex()
        self.i = 0

    def _lex(self) -> None:
        text = self.text
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "\\λ":
                self.toks.append(("LAM", ch, i))
                i += 1
            elif ch == ".":
                self.toks.append(("DOT", ch, i))
                i += 1
            elif ch == "(":
                self.toks.append(("LP", ch, i))
                i += 1
            elif ch == ")":
                self.toks.append(("RP", ch, i))
                i += 1
            elif ch == "=":
                self.toks.append(("EQ", ch, i))
                i += 1
            elif ch in "*◻?":
                self.toks.append(("HOLE", ch, i))
                i += 1
            elif ch == "⊥":
                self.toks.append(("BOT", ch, i))
                i += 1
            elif text.startswith("_|_", i):
                self.toks.append(("BOT", "_|_", i))
                i += 3
            elif ch.isalpha() or ch == "_":
                j = i + 1
                while j < n and (text[j].isalnum() or text[j] in "_'"):
                    j += 1
                word = text[i:j]
                if word in _KEYWORDS:
                    self.toks.append((word.upper(), word, i))
                else:
                    self.toks.append(("IDENT", word, i))
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", i, text)
        self.toks.append(("EOF", "", n))

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok


def parse_term(text: str) -> Term | RationalSystem:
    """Parse the surface grammar; ``let rec`` blocks yield a system.

    Grammar: ``\\x. M`` or ``λx. M`` (multiple binders allowed);
    application is juxtaposition, left-associative, with parentheses;
    ``_|_``/``⊥``; ``*``/``◻``/``?`` for a hole;
    ``let rec X = B and Y = B in M``.
    """
    toks = _Tokens(text)
    if toks.peek()[0] == "LET":
        result: Term | RationalSystem = _parse_letrec(toks)
    else:
        result = _parse_lam(toks, (), frozenset())
    tok = toks.peek()
    if tok[0] != "EOF":
        raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2], text)
    return result


def _parse_letrec(toks: _Tokens) -> RationalSystem:
    toks.expect("LET")
    toks.expect("REC")
    equations: dict[str, Term] = {}
    recnames: set[str] = set()
    raw: list[tuple[str, int, int]] = []  # (symbol, start token index, end token index)
    while True:
        sym_tok = toks.expect("IDENT")
        toks.expect("EQ")
        start = toks.i
        depth = 0
        while True:
            kind = toks.peek()[0]
            if kind == "LP":
                depth += 1
            elif kind == "RP":
                depth -= 1
            elif depth == 0 and kind in ("AND", "IN"):
                break
            elif kind == "EOF":
                raise ParseError("unterminated let rec", toks.peek()[2], toks.text)
            toks.next()
        raw.append((sym_tok[1], start, toks.i))
        recnames.add(sym_tok[1])
        if toks.peek()[0] == "AND":
            toks.next()
            continue
        toks.expect("IN")
        break
    rec = frozenset(recnames)
    for sym, start, end in raw:
        if sym in equations:
            raise ParseError(f"duplicate equation for {sym}", toks.toks[start][2], toks.text)
        sub = _Tokens("")
        sub.text = toks.text
        sub.toks = toks.toks[start:end] + [("EOF", "", toks.toks[end][2])]
        equations[sym] = _parse_lam(sub, (), rec)
        if sub.peek()[0] != "EOF":
            raise ParseError("unexpected input in equation", sub.peek()[2], toks.text)
    root_body = _parse_lam(toks, (), rec)
    if isinstance(root_body, RecRef):
        return RationalSystem(equations, root_body.symbol)
    root = "it"
    while root in equations:
        root += "'"
    equations[root] = root_body
    return RationalSystem(equations, root, _synthetic_root=True)


def _parse_lam(toks: _Tokens, env: tuple[str, ...], rec: frozenset[str]) -> Term:
    if toks.peek()[0] == "LAM":
        toks.next()
        names = [toks.expect("IDENT")[1]]
        while toks.peek()[0] == "IDENT":
            names.append(toks.next()[1])
        toks.expect("DOT")
        body = _parse_lam(toks, tuple(reversed(names)) + env, rec)
        for name in reversed(names):
            body = Lam(name, body)
        return body
    return _parse_app(toks, env, rec)


_ATOM_STARTS = ("IDENT", "LP", "BOT", "HOLE", "LAM")


def _parse_app(toks: _Tokens, env: tuple[str, ...], rec: frozenset[str]) -> Term:
    out = _parse_atom(toks, env, rec)
    while toks.peek()[0] in _ATOM_STARTS:
        out = App(out, _parse_atom(toks, env, rec))
    return out


def _parse_atom(toks: _Tokens, env: tuple[str, ...], rec: frozenset[str]) -> Term:
    kind, value, pos = toks.peek()
    if kind == "LAM":
        return _parse_lam(toks, env, rec)
    if kind == "IDENT":
        toks.next()
        for i, name in enumerate(env):
            if name == value:
                return Var(i)
        if value in rec:
            return RecRef(value)
        return FreeVar(value)
    if kind == "BOT":
        toks.next()
        return BOTTOM
    if kind == "HOLE":
        toks.next()
        return HOLE
    if kind == "LP":
        toks.next()
        inner = _parse_lam(toks, env, rec)
        toks.expect("RP")
        return inner
    raise ParseError(f"expected a term, found {value or 'end of input'!r}", pos, toks.text)
