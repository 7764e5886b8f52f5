"""Abstract syntax of first-order formulas over Aut(A)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


# terms -----------------------------------------------------------------------
@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Compose:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inverse:
    arg: "Term"


Term = Union[Var, Identity, Compose, Inverse]


# formulas --------------------------------------------------------------------
@dataclass(frozen=True)
class Guard:
    kind: str = "All"
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Prim:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    guard: Guard
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    guard: Guard
    body: "Formula"


Formula = Union[Truth, Equal, Prim, Not, And, Or, Implies, Iff, Forall, Exists]

BINARY = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}


def pair_forall(x: str, e: str, body: Formula) -> Forall:
    """forall (x, e) : Pair . body, expanded."""
    return Forall(x, Guard("Involution"),
                  Forall(e, Guard("PairComponent", (x,)),
                         Implies(Prim("Pair", (Var(x), Var(e))), body)))


def pair_exists(x: str, e: str, body: Formula) -> Exists:
    return Exists(x, Guard("Involution"),
                  Exists(e, Guard("PairComponent", (x,)),
                         And(Prim("Pair", (Var(x), Var(e))), body)))


def unparse_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Identity):
        return "id"
    if isinstance(t, Inverse):
        inner = unparse_term(t.arg)
        if isinstance(t.arg, Compose):
            inner = f"({inner})"
        return f"{inner}^-1"
    if isinstance(t, Compose):
        right = unparse_term(t.right)
        if isinstance(t.right, Compose):
            right = f"({right})"
        return f"{unparse_term(t.left)} * {right}"
    raise TypeError(t)


def _guard_text(g: Guard) -> str:
    if g.kind == "All" and not g.args:
        return ""
    if g.args:
        return f" : {g.kind}({', '.join(g.args)})"
    return f" : {g.kind}"


def unparse(f: Formula) -> str:
    """Canonical text; parse(unparse(f)) == f."""
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Equal):
        return f"{unparse_term(f.left)} = {unparse_term(f.right)}"
    if isinstance(f, Prim):
        return f"{f.name}({', '.join(unparse_term(a) for a in f.args)})"
    if isinstance(f, Not):
        return f"not ({unparse(f.arg)})"
    for cls, word in BINARY.items():
        if isinstance(f, cls):
            return f"({unparse(f.left)} {word} {unparse(f.right)})"
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"({q} {f.var}{_guard_text(f.guard)} . {unparse(f.body)})"
    raise TypeError(f)


def free_variables(f, bound: frozenset = frozenset()) -> set[str]:
    if isinstance(f, Var):
        return set() if f.name in bound else {f.name}
    if isinstance(f, (Identity, Truth)):
        return set()
    if isinstance(f, Compose):
        return free_variables(f.left, bound) | free_variables(f.right, bound)
    if isinstance(f, Inverse):
        return free_variables(f.arg, bound)
    if isinstance(f, Equal):
        return free_variables(f.left, bound) | free_variables(f.right, bound)
    if isinstance(f, Prim):
        out = set()
        for a in f.args:
            out |= free_variables(a, bound)
        return out
    if isinstance(f, Not):
        return free_variables(f.arg, bound)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_variables(f.left, bound) | free_variables(f.right, bound)
    if isinstance(f, (Forall, Exists)):
        out = {a for a in f.guard.args if a not in bound}
        return out | free_variables(f.body, bound | {f.var})
    raise TypeError(f)


def primitives_used(f) -> set[tuple[str, int]]:
    if isinstance(f, Prim):
        return {(f.name, len(f.args))}
    if isinstance(f, Not):
        return primitives_used(f.arg)
    if isinstance(f, (And, Or, Implies, Iff)):
        return primitives_used(f.left) | primitives_used(f.right)
    if isinstance(f, (Forall, Exists)):
        return primitives_used(f.body)
    return set()


def guards_used(f) -> set[str]:
    if isinstance(f, Not):
        return guards_used(f.arg)
    if isinstance(f, (And, Or, Implies, Iff)):
        return guards_used(f.left) | guards_used(f.right)
    if isinstance(f, (Forall, Exists)):
        return {f.guard.kind} | guards_used(f.body)
    return set()
