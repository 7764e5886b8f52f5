"""Brute-force evaluation of formulas over a Universe.

Formulas are compiled once into nested closures.  Quantifier domains come
from guards; each candidate substitution costs one unit of budget.  Witnesses
are extracted afterwards by walking the true path of the formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from ..errors import (
    ArityMismatch,
    BudgetExceeded,
    DuplicateName,
    UnboundVariable,
    UnknownPrimitive,
)
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
    free_variables,
    unparse,
)

DEFAULT_BUDGET = 10 ** 7


@dataclass
class PrimitiveDef:
    name: str
    arity: int
    oracle: Callable[..., bool]  # oracle(ctx, *values) -> bool
    memo: bool = True


@dataclass
class GuardDef:
    """A quantifier domain plus the formula that carves it out of its base.

    base is "All" (automorphisms) or "Side" (every involution/side choice).
    """

    name: str
    domain: Callable[..., list]  # domain(ctx, *arg_values) -> list
    base: str
    relativizer: Callable[..., Any]  # relativizer(var, args) -> Formula


@dataclass
class Handle:
    registry: "Registry"
    name: str


class Registry:
    def __init__(self):
        self.primitives: dict[str, PrimitiveDef] = {}
        self.guards: dict[str, GuardDef] = {}
        self._compiled: dict[int, tuple] = {}
        self._builtin_guards()

    def register_primitive(self, name: str, arity: int, oracle, memo: bool = True) -> Handle:
        if name in self.primitives:
            raise DuplicateName(f"primitive {name!r} already registered")
        self.primitives[name] = PrimitiveDef(name, arity, oracle, memo)
        return Handle(self, name)

    def register_formula(self, name: str, params: tuple[str, ...], formula) -> Handle:
        """A primitive defined by another formula with the given parameters."""
        compiled: dict = {}

        def oracle(ctx, *values):
            fn = compiled.get("fn")
            if fn is None:
                fn = compiled["fn"] = compile_formula(formula, self)
            return fn(ctx, dict(zip(params, values)))

        return self.register_primitive(name, len(params), oracle)

    def register_guard(self, name: str, domain, base: str, relativizer) -> Handle:
        if name in self.guards:
            raise DuplicateName(f"guard {name!r} already registered")
        self.guards[name] = GuardDef(name, domain, base, relativizer)
        return Handle(self, name)

    def _builtin_guards(self):
        self.guards["All"] = GuardDef("All", lambda ctx: ctx.universe.auts, "All", None)
        self.guards["Side"] = GuardDef("Side", lambda ctx: ctx.universe.side_candidates, "Side", None)
        self.guards["Involution"] = GuardDef(
            "Involution", lambda ctx: [i.auto for i in ctx.universe.involutions], "All",
            lambda v, args: Prim("Involution", (Var(v),)))
        self.guards["Extreme"] = GuardDef(
            "Extreme", lambda ctx: ctx.universe.extremes, "Side",
            lambda v, args: Prim("Extreme", (Var(v),)))
        self.guards["PairComponent"] = GuardDef(
            "PairComponent", lambda ctx, xi: ctx.universe.pair_components(_auto(xi)), "Side",
            lambda v, args: And(Prim("Extreme", (Var(v),)),
                                Equal(Compose(Var(args[0]), Var(v)), Compose(Var(v), Var(args[0])))))

    def check(self, formula) -> None:
        _check(formula, self)

    def compiled(self, formula):
        """Checked and compiled formula, cached per formula object."""
        hit = self._compiled.get(id(formula))
        if hit is None or hit[0] is not formula:
            _check(formula, self)
            hit = self._compiled[id(formula)] = (formula, compile_formula(formula, self),
                                                 frozenset(free_variables(formula)))
        return hit[1]

    def free(self, formula) -> frozenset:
        self.compiled(formula)
        return self._compiled[id(formula)][2]


def _auto(value):
    return getattr(value, "auto", value)


def _check(f, reg: Registry):
    if isinstance(f, Prim):
        d = reg.primitives.get(f.name)
        if d is None:
            raise UnknownPrimitive(f"unknown primitive {f.name!r}")
        if d.arity != len(f.args):
            raise ArityMismatch(f"{f.name} expects {d.arity} arguments, got {len(f.args)}")
    elif isinstance(f, Not):
        _check(f.arg, reg)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _check(f.left, reg)
        _check(f.right, reg)
    elif isinstance(f, (Forall, Exists)):
        if f.guard.kind not in reg.guards:
            raise UnknownPrimitive(f"unknown guard {f.guard.kind!r}")
        _check(f.body, reg)


class EvalContext:
    """Shared state of one evaluation: universe, budget counter, memo, options."""

    def __init__(self, universe, registry: Registry, budget: int = DEFAULT_BUDGET, options=None):
        self.universe = universe
        self.registry = registry
        self.budget = budget
        self.count = 0
        self.memo: dict = {}
        self.options: dict = dict(options or {})
        self._domains: dict = {}

    def charge(self, node):
        self.count += 1
        if self.count > self.budget:
            raise BudgetExceeded(
                f"budget of {self.budget} substitutions exhausted at {unparse(node)[:80]}",
                count=self.count, node=node)

    def domain(self, guard: Guard, env: dict) -> list:
        gd = self.registry.guards[guard.kind]
        if not guard.args:
            d = self._domains.get(guard.kind)
            if d is None:
                d = self._domains[guard.kind] = list(gd.domain(self))
            return d
        vals = tuple(_lookup(env, a) for a in guard.args)
        key = (guard.kind,) + tuple(id(v) for v in vals)
        d = self._domains.get(key)
        if d is None:
            d = self._domains[key] = list(gd.domain(self, *vals))
        return d


def _lookup(env: dict, name: str):
    try:
        return env[name]
    except KeyError:
        raise UnboundVariable(f"variable {name!r} is unbound") from None


def compile_term(t) -> Callable:
    if isinstance(t, Var):
        name = t.name
        return lambda ctx, env: _auto(_lookup(env, name))
    if isinstance(t, Identity):
        return lambda ctx, env: ctx.universe.identity
    if isinstance(t, Compose):
        lf, rf = compile_term(t.left), compile_term(t.right)
        return lambda ctx, env: ctx.universe.mul(lf(ctx, env), rf(ctx, env))
    if isinstance(t, Inverse):
        af = compile_term(t.arg)
        return lambda ctx, env: ctx.universe.inv(af(ctx, env))
    raise TypeError(t)


def _compile_arg(t) -> Callable:
    # bare variables pass their bound value through (it may carry a side)
    if isinstance(t, Var):
        name = t.name
        return lambda ctx, env: _lookup(env, name)
    return compile_term(t)


def compile_formula(f, reg: Registry) -> Callable[[EvalContext, dict], bool]:
    if isinstance(f, Truth):
        v = f.value
        return lambda ctx, env: v
    if isinstance(f, Equal):
        lf, rf = compile_term(f.left), compile_term(f.right)
        return lambda ctx, env: lf(ctx, env) is rf(ctx, env)
    if isinstance(f, Prim):
        if f.name not in reg.primitives:
            raise UnknownPrimitive(f"unknown primitive {f.name!r}")
        d = reg.primitives[f.name]
        if d.arity != len(f.args):
            raise ArityMismatch(f"{f.name} expects {d.arity} arguments, got {len(f.args)}")
        argfs = [_compile_arg(a) for a in f.args]
        oracle, name, memo = d.oracle, f.name, d.memo

        def prim(ctx, env):
            vals = [a(ctx, env) for a in argfs]
            if not memo:
                return bool(oracle(ctx, *vals))
            key = (name,) + tuple(id(v) for v in vals)
            r = ctx.memo.get(key)
            if r is None:
                r = bool(oracle(ctx, *vals))
                ctx.memo[key] = r
            return r
        return prim
    if isinstance(f, Not):
        a = compile_formula(f.arg, reg)
        return lambda ctx, env: not a(ctx, env)
    if isinstance(f, And):
        l, r = compile_formula(f.left, reg), compile_formula(f.right, reg)
        return lambda ctx, env: l(ctx, env) and r(ctx, env)
    if isinstance(f, Or):
        l, r = compile_formula(f.left, reg), compile_formula(f.right, reg)
        return lambda ctx, env: l(ctx, env) or r(ctx, env)
    if isinstance(f, Implies):
        l, r = compile_formula(f.left, reg), compile_formula(f.right, reg)
        return lambda ctx, env: (not l(ctx, env)) or r(ctx, env)
    if isinstance(f, Iff):
        l, r = compile_formula(f.left, reg), compile_formula(f.right, reg)
        return lambda ctx, env: l(ctx, env) == r(ctx, env)
    if isinstance(f, (Forall, Exists)):
        if f.guard.kind not in reg.guards:
            raise UnknownPrimitive(f"unknown guard {f.guard.kind!r}")
        body = compile_formula(f.body, reg)
        var, guard, node = f.var, f.guard, f
        want = isinstance(f, Exists)

        def quant(ctx, env):
            dom = ctx.domain(guard, env)
            inner = dict(env)
            for v in dom:
                ctx.charge(node)
                inner[var] = v
                if body(ctx, inner) == want:
                    return want
            return not want
        return quant
    raise TypeError(f)


@dataclass
class PredicateOutcome:
    value: bool
    witnesses: list = field(default_factory=list)  # [(variable, value), ...]
    substitutions: int = 0


@dataclass
class Environment:
    universe: Any
    bindings: dict = field(default_factory=dict)
    budget: int = DEFAULT_BUDGET
    registry: Optional[Registry] = None
    options: dict = field(default_factory=dict)

    @property
    def group(self):
        return self.universe.group


def extract_witnesses(f, ctx: EvalContext, env: dict, reg: Registry) -> list:
    """Bindings of existentials on the path that makes f true."""
    if isinstance(f, Exists):
        body = reg.compiled(f.body)
        inner = dict(env)
        for v in ctx.domain(f.guard, env):
            inner[f.var] = v
            if body(ctx, inner):
                return [(f.var, v)] + extract_witnesses(f.body, ctx, inner, reg)
        return []
    if isinstance(f, And):
        return extract_witnesses(f.left, ctx, env, reg) + extract_witnesses(f.right, ctx, env, reg)
    if isinstance(f, Or):
        if reg.compiled(f.left)(ctx, env):
            return extract_witnesses(f.left, ctx, env, reg)
        return extract_witnesses(f.right, ctx, env, reg)
    return []


def canonical_value(universe, v):
    """Replace a value by the universe's own object for it."""
    from ..endo import Automorphism, ExtremeInvolution, Involution
    if isinstance(v, ExtremeInvolution):
        return universe.extreme(universe.canonical(v.auto), v.side)
    if isinstance(v, Involution):
        return universe.canonical(v.auto)
    if isinstance(v, Automorphism):
        return universe.canonical(v)
    return v


def evaluate(formula, env: Environment) -> PredicateOutcome:
    reg = env.registry
    if reg is None:
        from ..predicates.primitives import default_registry
        reg = default_registry()
    fn = reg.compiled(formula)
    free = reg.free(formula) - set(env.bindings)
    if free:
        raise UnboundVariable(f"free variables without bindings: {sorted(free)}")
    ctx = EvalContext(env.universe, reg, env.budget, env.options)
    bindings = {k: canonical_value(env.universe, v) for k, v in env.bindings.items()}
    value = fn(ctx, dict(bindings))
    witnesses = extract_witnesses(formula, ctx, dict(bindings), reg) if value else []
    return PredicateOutcome(value, witnesses, ctx.count)


def unguard(f, reg: Registry):
    """Rewrite every guarded quantifier over its base domain with the guard as a formula."""
    if isinstance(f, Not):
        return Not(unguard(f.arg, reg))
    for cls in (And, Or, Implies, Iff):
        if isinstance(f, cls):
            return cls(unguard(f.left, reg), unguard(f.right, reg))
    if isinstance(f, (Forall, Exists)):
        gd = reg.guards[f.guard.kind]
        body = unguard(f.body, reg)
        if gd.relativizer is None:
            return type(f)(f.var, f.guard, body)
        cond = gd.relativizer(f.var, f.guard.args)
        if isinstance(f, Forall):
            return Forall(f.var, Guard(gd.base), Implies(cond, body))
        return Exists(f.var, Guard(gd.base), And(cond, body))
    return f
