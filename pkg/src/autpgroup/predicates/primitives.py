"""The standard primitive registry for folang.

Primitives are computed on subgroups through the Universe's core tables.
Formula-backed primitives (ByOrd, InBase, ...) come from the shipped corpus.
"""
from __future__ import annotations

from functools import lru_cache

from ..endo import ExtremeInvolution
from ..errors import NotExtreme, PreconditionViolated
from ..folang.ast import Prim, Var
from ..folang.corpus import corpus_entry, load_corpus
from ..folang.evaluator import (
    DEFAULT_BUDGET,
    Environment,
    PredicateOutcome,
    Registry,
    evaluate,
    unguard,
)

# evaluation options understood by the primitives
DEFAULT_OPTIONS = {
    "zero_convention": True,   # identity encodes 0
    "similar": "enc_eq",       # reading of the similarity sign in EncAdd: enc_eq | sim
    "family": None,            # TransvectionFamily for FB / FG / Encoder
    "sim_pair": None,          # Pair used when similar == "sim"
}


def _auto(v):
    return getattr(v, "auto", v)


def _ext(v) -> ExtremeInvolution:
    if not isinstance(v, ExtremeInvolution):
        raise NotExtreme(f"{v!r} is not an extreme involution")
    return v


def _cid(ctx, v) -> int:
    return ctx.universe.core_id(_ext(v))


def pair_sides(ctx, x, e) -> tuple[frozenset, frozenset]:
    """(summand, complement) index sets of the pair (x, e)."""
    key = ("#pair", id(x), id(e))
    r = ctx.memo.get(key)
    if r is None:
        inv = ctx.universe.involution_of(_auto(x))
        core = _ext(e).core.idx
        if inv is None:
            raise PreconditionViolated(f"{x!r} is not an involution")
        if ctx.universe.mul(inv.auto, e.auto) is not ctx.universe.mul(e.auto, inv.auto):
            raise PreconditionViolated("pair components do not commute")
        if core <= inv.plus.idx:
            r = (inv.plus.idx, inv.minus.idx)
        elif core <= inv.minus.idx:
            r = (inv.minus.idx, inv.plus.idx)
        else:
            raise PreconditionViolated("core lies in neither side")
        ctx.memo[key] = r
    return r


def _commute(ctx, a, b) -> bool:
    u = ctx.universe
    a, b = _auto(a), _auto(b)
    return u.mul(a, b) is u.mul(b, a)


# primitive oracles --------------------------------------------------------
def p_extreme(ctx, v):
    return isinstance(v, ExtremeInvolution)


def p_involution(ctx, v):
    return ctx.universe.involution_of(_auto(v)) is not None


def p_pair(ctx, x, e):
    return p_involution(ctx, x) and p_extreme(ctx, e) and _commute(ctx, x, e)


def p_commute(ctx, a, b):
    return _commute(ctx, a, b)


def p_in_sum(ctx, e, e1, e2):
    """Core of e inside A_e1 + A_e2; perp clause only when e1, e2 commute."""
    u = ctx.universe
    c = _ext(e).core.idx
    if not c <= u.core_sum(_cid(ctx, e1), _cid(ctx, e2)):
        return False
    if not _commute(ctx, e1, e2):
        return True
    return (e1.perp.idx & e2.perp.idx) <= e.perp.idx


def p_core_eq(ctx, e1, e2):
    return _cid(ctx, e1) == _cid(ctx, e2)


def p_app_core(ctx, f, e1, e):
    """f(A_e1) = A_e."""
    return ctx.universe.image_core(_auto(f), _cid(ctx, e1)) == _cid(ctx, e)


def p_maps_to(ctx, f, e1, e2):
    u = ctx.universe
    c1, c2 = _cid(ctx, e1), _cid(ctx, e2)
    img = u.image_core(_auto(f), c1)
    return img != c1 and img != c2 and u.cores[img] <= u.core_sum(c1, c2)


def p_member(ctx, e, x, ep):
    return _ext(e).core.idx <= pair_sides(ctx, x, ep)[0]


def p_in_compl(ctx, e, x, ep):
    return _ext(e).core.idx <= pair_sides(ctx, x, ep)[1]


def p_in_cap_compl(ctx, e, x0, e0, x1, e1):
    c = _ext(e).core.idx
    return c <= pair_sides(ctx, x0, e0)[0] and c <= pair_sides(ctx, x1, e1)[1]


def p_subset(ctx, x1, e1, x2, e2):
    return pair_sides(ctx, x1, e1)[0] <= pair_sides(ctx, x2, e2)[0]


def p_proper_subset(ctx, x1, e1, x2, e2):
    return pair_sides(ctx, x1, e1)[0] < pair_sides(ctx, x2, e2)[0]


def _ord(op):
    def oracle(ctx, e1, e2):
        return op(_ext(e1).core.size, _ext(e2).core.size)
    return oracle


def p_zero(ctx, f):
    return bool(ctx.options.get("zero_convention", True)) and _auto(f) is ctx.universe.identity


def _family(ctx):
    fam = ctx.options.get("family")
    if fam is None:
        raise PreconditionViolated("no transvection family given in the evaluation options")
    return fam


def fb_domain(ctx) -> list:
    return _family(ctx).fb(ctx.universe)


def fg_domain(ctx) -> list:
    return _family(ctx).fg(ctx.universe)


def encoder_domain(ctx) -> list:
    from .encoding import encoder_set
    key = ("#encoders",)
    r = ctx.memo.get(key)
    if r is None:
        r = ctx.memo[key] = encoder_set(ctx.universe, _family(ctx),
                                        zero_convention=ctx.options.get("zero_convention", True))
    return r


def p_in_fb(ctx, v):
    return isinstance(v, ExtremeInvolution) and any(v is d for d in fb_domain(ctx))


def p_in_fg(ctx, v):
    return any(_auto(v) is g for g in fg_domain(ctx))


def p_encoder(ctx, v):
    return any(_auto(v) is g for g in encoder_domain(ctx))


def p_similar(ctx, f1, f2):
    """Similarity used by EncAdd: EncEq, or agreement on one pair's summand."""
    mode = ctx.options.get("similar", "enc_eq")
    reg = ctx.registry
    if mode == "enc_eq":
        return reg.primitives["EncEq"].oracle(ctx, f1, f2)
    if mode == "sim":
        pr = ctx.options.get("sim_pair")
        u = ctx.universe
        if pr is None:
            pr = whole_group_pair(u)
        return reg.primitives["Sim"].oracle(ctx, f1, f2, u.canonical(pr.xi.auto),
                                            u.extreme(u.canonical(pr.eps.auto), pr.eps.side))
    raise ValueError(f"unknown similarity reading {mode!r}")


def whole_group_pair(u):
    """A pair whose summand is the whole group (xi = identity)."""
    for pr in u.pairs:
        if pr.summand.size == u.group.size:
            return pr
    raise PreconditionViolated("no pair with the whole group as summand (identity excluded?)")


PRIMITIVES = [
    ("Extreme", 1, p_extreme),
    ("Involution", 1, p_involution),
    ("Pair", 2, p_pair),
    ("commute", 2, p_commute),
    ("in_sum", 3, p_in_sum),
    ("core_eq", 2, p_core_eq),
    ("app_core", 3, p_app_core),
    ("maps_to", 3, p_maps_to),
    ("member", 3, p_member),
    ("in_compl", 3, p_in_compl),
    ("in_cap_compl", 5, p_in_cap_compl),
    ("subset", 4, p_subset),
    ("proper_subset", 4, p_proper_subset),
    ("ord_lt", 2, _ord(lambda a, b: a < b)),
    ("ord_le", 2, _ord(lambda a, b: a <= b)),
    ("ord_eq", 2, _ord(lambda a, b: a == b)),
    ("ord_ge", 2, _ord(lambda a, b: a >= b)),
    ("ord_gt", 2, _ord(lambda a, b: a > b)),
    ("zero", 1, p_zero),
    ("InFB", 1, p_in_fb),
    ("InFG", 1, p_in_fg),
    ("Encoder", 1, p_encoder),
    ("Similar", 2, p_similar),
]


def standard_registry(unguarded: bool = False) -> Registry:
    """A fresh registry with every standard primitive, guard and corpus definition.

    With unguarded, formula-backed primitives quantify over base domains.
    """
    reg = Registry()
    for name, arity, oracle in PRIMITIVES:
        reg.register_primitive(name, arity, oracle)
    reg.register_guard("FB", fb_domain, "Side", lambda v, args: Prim("InFB", (Var(v),)))
    reg.register_guard("FG", fg_domain, "All", lambda v, args: Prim("InFG", (Var(v),)))
    reg.register_guard("Encoder", encoder_domain, "All", lambda v, args: Prim("Encoder", (Var(v),)))
    for entry in load_corpus().values():
        if entry.register:
            f = unguard(entry.formula, reg) if unguarded else entry.formula
            reg.register_formula(entry.name, entry.params, f)
    return reg


@lru_cache(maxsize=None)
def default_registry(unguarded: bool = False) -> Registry:
    return standard_registry(unguarded)


def run_corpus(name: str, universe, bindings: dict, budget: int | None = None,
               options: dict | None = None, registry: Registry | None = None,
               unguarded: bool = False) -> PredicateOutcome:
    """Evaluate the named corpus formula with its parameters bound.

    unguarded evaluates every quantifier over its base domain instead.
    """
    entry = corpus_entry(name)
    missing = set(entry.params) - set(bindings)
    if missing:
        raise PreconditionViolated(f"{name} needs bindings for {sorted(missing)}")
    opts = dict(DEFAULT_OPTIONS)
    opts.update(options or {})
    reg = registry or default_registry(unguarded)
    formula = _unguarded_formula(name, reg) if unguarded else entry.formula
    env = Environment(universe, dict(bindings), budget or DEFAULT_BUDGET, reg, opts)
    return evaluate(formula, env)


_UNGUARDED: dict = {}


def _unguarded_formula(name: str, reg: Registry):
    key = (name, id(reg))
    f = _UNGUARDED.get(key)
    if f is None:
        f = _UNGUARDED[key] = (reg, unguard(corpus_entry(name).formula, reg))
    return f[1]
