"""Recursive-descent parser for the formula language (EBNF in README.md)."""
from __future__ import annotations

import re

from ..errors import FormulaSyntaxError
from .ast import (
    And,
    Compose,
    Equal,
    Exists,
    Forall,
    Guard,
    Identity,
    Iff,
    Implies,
    Inverse,
    Not,
    Or,
    Prim,
    Truth,
    Var,
    pair_exists,
    pair_forall,
)

# unicode spellings mapped onto the ASCII token set
_ALIASES = {
    "∀": "forall", "∃": "exists", "¬": "not", "∧": "and", "∨": "or",
    "→": "implies", "⇒": "implies", "->": "implies", "↔": "iff", "⇔": "iff", "<->": "iff",
    "&": "and", "|": "or", "~": "not", "≠": "!=", "∘": "*", "·": "*", "⁻¹": "^-1",
}

_TOKEN = re.compile(
    r"\s*(?:(?P<comment>#[^\n]*)|(?P<sym><->|->|\^-1|⁻¹|!=|[()∀∃¬∧∨→⇒↔⇔≠∘·,.:*=&|~])"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_']*))"
)

KEYWORDS = {"forall", "exists", "not", "and", "or", "implies", "iff", "true", "false", "id"}


def tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("comment") if m.group("comment") else (m.start("sym") if m.group("sym") else m.start("name"))
        if m.group("comment"):
            pos = m.end()
            continue
        tok = m.group("sym") or m.group("name")
        out.append((_ALIASES.get(tok, tok), start))
        pos = m.end()
    out.append(("<eof>", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> str:
        return self.toks[self.i][0]

    @property
    def pos(self) -> int:
        return self.toks[self.i][1]

    def eat(self, tok: str) -> None:
        if self.cur != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {self.cur!r}", self.pos)
        self.i += 1

    def name(self) -> str:
        tok = self.cur
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) or tok in KEYWORDS:
            raise FormulaSyntaxError(f"expected a name, found {tok!r}", self.pos)
        self.i += 1
        return tok

    # formulas
    def formula(self):
        left = self.implies()
        while self.cur == "iff":
            self.i += 1
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.disj()
        if self.cur == "implies":
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disj(self):
        left = self.conj()
        while self.cur == "or":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.cur == "and":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.cur == "not":
            self.i += 1
            return Not(self.unary())
        if self.cur in ("forall", "exists"):
            return self.quantifier()
        return self.atom()

    def guard(self) -> Guard:
        kind = self.name()
        args = ()
        if self.cur == "(":
            self.i += 1
            names = [self.name()]
            while self.cur == ",":
                self.i += 1
                names.append(self.name())
            self.eat(")")
            args = tuple(names)
        return Guard(kind, args)

    def quantifier(self):
        q = self.cur
        self.i += 1
        binders = []  # (kind, names, guard)
        pending: list[str] = []  # names waiting for a shared guard
        while True:
            if self.cur == "(":
                at = self.pos
                self.i += 1
                x = self.name()
                self.eat(",")
                e = self.name()
                self.eat(")")
                self.eat(":")
                g = self.guard()
                if g.kind != "Pair" or g.args:
                    raise FormulaSyntaxError("a bracketed binder needs the Pair guard", at)
                binders.extend(("plain", (n,), Guard()) for n in pending)
                pending = []
                binders.append(("pair", (x, e), None))
            else:
                pending.append(self.name())
                if self.cur == ":":
                    self.i += 1
                    g = self.guard()
                    binders.extend(("plain", (n,), g) for n in pending)
                    pending = []
            if self.cur == ",":
                self.i += 1
                continue
            break
        binders.extend(("plain", (n,), Guard()) for n in pending)
        self.eat(".")
        body = self.formula()
        for kind, names, g in reversed(binders):
            if kind == "pair":
                body = (pair_forall if q == "forall" else pair_exists)(names[0], names[1], body)
            else:
                body = (Forall if q == "forall" else Exists)(names[0], g, body)
        return body

    def atom(self):
        tok = self.cur
        if tok == "true":
            self.i += 1
            return Truth(True)
        if tok == "false":
            self.i += 1
            return Truth(False)
        if tok == "(":
            # either a parenthesised formula or a term starting an equation
            save = self.i
            try:
                return self.equation()
            except FormulaSyntaxError:
                self.i = save
            self.i += 1
            f = self.formula()
            self.eat(")")
            return f
        if (re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) and tok not in KEYWORDS
                and self.toks[self.i + 1][0] == "("):
            name = self.name()
            self.eat("(")
            args = []
            if self.cur != ")":
                args.append(self.term())
                while self.cur == ",":
                    self.i += 1
                    args.append(self.term())
            self.eat(")")
            return Prim(name, tuple(args))
        return self.equation()

    def equation(self):
        left = self.term()
        if self.cur == "=":
            self.i += 1
            return Equal(left, self.term())
        if self.cur == "!=":
            self.i += 1
            return Not(Equal(left, self.term()))
        raise FormulaSyntaxError(f"expected '=' or '!=', found {self.cur!r}", self.pos)

    # terms
    def term(self):
        left = self.postfix()
        while self.cur == "*":
            self.i += 1
            left = Compose(left, self.postfix())
        return left

    def postfix(self):
        t = self.primary()
        while self.cur == "^-1":
            self.i += 1
            t = Inverse(t)
        return t

    def primary(self):
        if self.cur == "id":
            self.i += 1
            return Identity()
        if self.cur == "(":
            self.i += 1
            t = self.term()
            self.eat(")")
            return t
        return Var(self.name())


def parse(text: str):
    p = _Parser(text)
    f = p.formula()
    if p.cur != "<eof>":
        raise FormulaSyntaxError(f"trailing input {p.cur!r}", p.pos)
    return f


def parse_term(text: str):
    p = _Parser(text)
    t = p.term()
    if p.cur != "<eof>":
        raise FormulaSyntaxError(f"trailing input {p.cur!r}", p.pos)
    return t
