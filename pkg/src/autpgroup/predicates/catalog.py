"""Stable names for predicates, with argument sweeps and module-side results.

Every corpus formula has an entry here.  ``oracle`` computes the same truth
value without folang: semantically where the meaning is finite, otherwise as
a second, loop-based transcription of the text.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from ..universe import Universe
from . import basic, encoding
from .families import TransvectionFamily, canonical_family
from .primitives import run_corpus
from .relations import in_sum_total, maps_to_subgroups, rel_maps_to


@dataclass
class NamedPredicate:
    name: str
    params: tuple[str, ...]
    oracle: Callable[[Universe, TransvectionFamily, dict], bool]
    # sweep returns slots; each slot is a list of value tuples covering
    # consecutive params (pairs are swept jointly)
    sweep: Callable[[Universe, TransvectionFamily], list[list[tuple]]]
    needs_family: bool = False
    note: str = ""


def sample_product(lists: list[list], limit: Optional[int]) -> Iterable[tuple]:
    """All tuples of the product, or `limit` evenly spaced ones (deterministic)."""
    total = 1
    for l in lists:
        total *= len(l)
    if limit is None or total <= limit:
        yield from itertools.product(*lists)
        return
    for n in range(limit):
        k = (n * total) // limit
        out = []
        for l in reversed(lists):
            k, r = divmod(k, len(l))
            out.append(l[r])
        yield tuple(reversed(out))


# helpers -----------------------------------------------------------------------
def _pair(u: Universe, x, e):
    from ..endo import make_pair
    return make_pair(u.involution_of(x), e)


def _maps_to(f, e1, e2) -> bool:
    return maps_to_subgroups(f.image(e1.core), e1.core, e2.core)


def _splits(u: Universe) -> list[tuple]:
    """One (x, e) per distinct designated summand."""
    return [(pr.xi.auto, pr.eps) for pr in u.distinct_pair_summands]


def _pairs(u: Universe) -> list[tuple]:
    return [(pr.xi.auto, pr.eps) for pr in u.pairs]


def _one(values) -> list[tuple]:
    return [(v,) for v in values]


def _encoders(u: Universe, fam: TransvectionFamily) -> list[tuple]:
    out = [u.identity]
    for i in range(fam.rank):
        for a in encoding.encodable(fam, i, include_zero=False):
            out.append(u.canonical(encoding.encode(a, fam, i)))
    return _one(out)


# second transcriptions -----------------------------------------------------------
def _by_ord_literal(u, x, e) -> bool:
    pr = _pair(u, x, e)
    return all((e1.core <= pr.summand) == (e1.order >= e.order) for e1 in u.extremes)


def _qualifying_fin(u, nu, fin) -> list:
    """Extremes ef inside A_fin hit by nu from a strictly larger extreme of A_fin."""
    inside = [e1 for e1 in u.extremes if e1.core <= fin]
    return [ef for ef in inside
            if any(e1.order > ef.order and _maps_to(nu, e1, ef) for e1 in inside)]


def _in_base_direct(u, e, nu, x0, e0, literal=False, qualifying=None) -> bool:
    split = _pair(u, x0, e0)
    low, fin = split.complement, split.summand
    lows = [el for el in u.extremes if el.core <= low]
    if qualifying is None:
        qualifying = _qualifying_fin(u, nu, fin)
    for ef in qualifying:
        if any(in_sum_total(e, el, ef) for el in lows):
            return True
        if not literal and e.core == ef.core:
            return True
    return not literal and e.core <= low


_BASE_SETS: dict = {}


def _base_set(u, nu, x0, e0) -> frozenset:
    """Ids of extremes satisfying InBase for (nu, split); cached per universe."""
    key = (id(u), id(nu), id(x0), id(e0))
    hit = _BASE_SETS.get(key)
    if hit is None or hit[0] is not u:
        q = _qualifying_fin(u, nu, _pair(u, x0, e0).summand)
        hit = _BASE_SETS[key] = (u, frozenset(id(e) for e in u.extremes
                                             if _in_base_direct(u, e, nu, x0, e0, qualifying=q)))
    return hit[1]


def _captures_direct(u, eb, x, e, nu, x0, e0, base=None) -> bool:
    pr = _pair(u, x, e)
    base = _base_set(u, nu, x0, e0) if base is None else base
    return all((e1.core <= pr.summand) == (e1.order <= eb.order and id(e1) in base) for e1 in u.extremes)


def _member_sets(u) -> list[tuple]:
    """(pair, ids of extremes whose core lies in its summand) for every pair."""
    key = (id(u), "members")
    hit = _BASE_SETS.get(key)
    if hit is None or hit[0] is not u:
        rows = [(pr, frozenset(id(e) for e in u.extremes if e.core <= pr.summand)) for pr in u.pairs]
        hit = _BASE_SETS[key] = (u, rows)
    return hit[1]


def _is_base_literal_direct(u, nu, x0, e0) -> bool:
    base = _base_set(u, nu, x0, e0)
    members = _member_sets(u)
    for eb in u.extremes:
        target = frozenset(id(e) for e in u.extremes if e.order <= eb.order and id(e) in base)
        for pr, inside in members:
            if inside == target and not basic.max_rest(pr, eb, "semantic"):
                return False
    return True


def _enc_eq_literal_direct(u, fam, f1, f2) -> bool:
    fb, fg = fam.fb(u), fam.fg(u)
    for e1, e2 in itertools.product(fb, repeat=2):
        conj = any(_maps_to(g, e1, e2) and u.mul(u.mul(u.inv(g), f2), g) is f1 for g in fg)
        if not conj:
            continue
        if any(_maps_to(f1, e1, ea) and _maps_to(f2, e2, ea) for ea in u.extremes):
            return True
    return False


def _encoded_map(u, f1, f2, e1, e2) -> bool:
    return encoding.rel_encoded_map(f1, f2, e1, e2, "semantic", u)


# the catalog ---------------------------------------------------------------------
def _mk() -> dict[str, NamedPredicate]:
    C: dict[str, NamedPredicate] = {}

    def add(np_: NamedPredicate):
        C[np_.name] = np_

    add(NamedPredicate("Tautology", (), lambda u, F, b: True, lambda u, F: []))
    add(NamedPredicate("GroupAxiom", (), lambda u, F, b: True, lambda u, F: []))
    add(NamedPredicate("OrdIrreflexive", (), lambda u, F, b: False, lambda u, F: []))
    add(NamedPredicate(
        "MapsTo", ("f", "e1", "e2"),
        lambda u, F, b: rel_maps_to(b["f"], b["e1"], b["e2"]),
        lambda u, F: [_one(u.auts), _one(u.extremes), _one(u.extremes)]))
    add(NamedPredicate(
        "ByOrd", ("x", "e"),
        lambda u, F, b: basic.by_ord(_pair(u, b["x"], b["e"]), "semantic"),
        lambda u, F: [_pairs(u)]))
    add(NamedPredicate(
        "ByOrdLiteral", ("x", "e"),
        lambda u, F, b: _by_ord_literal(u, b["x"], b["e"]),
        lambda u, F: [_pairs(u)]))
    add(NamedPredicate(
        "Final", ("x0", "e0"),
        lambda u, F, b: basic.final_pair_direct(_pair(u, b["x0"], b["e0"]), u),
        lambda u, F: [_splits(u)]))
    add(NamedPredicate(
        "InBase", ("e", "nu", "x0", "e0"),
        lambda u, F, b: _in_base_direct(u, b["e"], b["nu"], b["x0"], b["e0"]),
        lambda u, F: [_one(u.extremes), _one(u.auts), _splits(u)]))
    add(NamedPredicate(
        "InBaseLiteral", ("e", "nu", "x0", "e0"),
        lambda u, F, b: _in_base_direct(u, b["e"], b["nu"], b["x0"], b["e0"], literal=True),
        lambda u, F: [_one(u.extremes), _one(u.auts), _splits(u)]))
    add(NamedPredicate(
        "Rest", ("e", "x1", "e1"),
        lambda u, F, b: basic.rest(_pair(u, b["x1"], b["e1"]), b["e"], "semantic"),
        lambda u, F: [_one(u.extremes), _pairs(u)]))
    add(NamedPredicate(
        "MaxRest", ("e", "x1", "e1"),
        lambda u, F, b: basic.max_rest(_pair(u, b["x1"], b["e1"]), b["e"], "semantic"),
        lambda u, F: [_one(u.extremes), _pairs(u)]))
    add(NamedPredicate(
        "Captures", ("eb", "x", "e", "nu", "x0", "e0"),
        lambda u, F, b: _captures_direct(u, b["eb"], b["x"], b["e"], b["nu"], b["x0"], b["e0"]),
        lambda u, F: [_one(u.extremes), _pairs(u), _one(u.auts), _splits(u)]))
    add(NamedPredicate(
        "IsBase", ("nu", "x0", "e0"),
        lambda u, F, b: _is_base_literal_direct(u, b["nu"], b["x0"], b["e0"]),
        lambda u, F: [_one(u.auts), _splits(u)]))
    add(NamedPredicate(
        "IsBaseStrict", ("nu", "x0", "e0"),
        lambda u, F, b: basic.is_base(b["nu"], _pair(u, b["x0"], b["e0"]), "semantic", u),
        lambda u, F: [_one(u.auts), _splits(u)]))
    add(NamedPredicate(
        "EncodedMap", ("f1", "f2", "e1", "e2"),
        lambda u, F, b: _encoded_map(u, b["f1"], b["f2"], b["e1"], b["e2"]),
        lambda u, F: [_one(u.auts), _one(u.auts), _one(u.extremes), _one(u.extremes)]))
    add(NamedPredicate(
        "IsEncoder", ("f",),
        lambda u, F, b: encoding.is_encoder(b["f"], F, "semantic", u),
        lambda u, F: [_one(u.auts)], needs_family=True))
    add(NamedPredicate(
        "EncEq", ("f1", "f2"),
        lambda u, F, b: encoding.enc_eq(b["f1"], b["f2"], F, "semantic", u),
        lambda u, F: [_encoders(u, F), _encoders(u, F)], needs_family=True))
    add(NamedPredicate(
        "EncEqLiteral", ("f1", "f2"),
        lambda u, F, b: _enc_eq_literal_direct(u, F, b["f1"], b["f2"]),
        lambda u, F: [_encoders(u, F), _encoders(u, F)], needs_family=True))
    add(NamedPredicate(
        "EncAdd", ("f1", "f2", "f3"),
        lambda u, F, b: encoding.enc_add(b["f1"], b["f2"], b["f3"], F, "semantic", u),
        lambda u, F: [_encoders(u, F)] * 3, needs_family=True))
    add(NamedPredicate(
        "Sim", ("f1", "f2", "x", "e"),
        lambda u, F, b: encoding.sim(b["f1"], b["f2"], _pair(u, b["x"], b["e"]), "semantic", u),
        lambda u, F: [_one(u.auts), _one(u.auts), _splits(u)]))
    return C


CATALOG: dict[str, NamedPredicate] = _mk()


@dataclass
class AgreementResult:
    name: str
    checked: int
    mismatches: list  # [(bindings-description, formula value, module value), ...]
    substitutions: int

    @property
    def ok(self) -> bool:
        return not self.mismatches


def describe_value(v) -> str:
    core = getattr(v, "core", None)
    if core is not None:
        return f"ext({[list(r) for r in v.auto.matrix]},{v.side})"
    if hasattr(v, "matrix"):
        return str([list(r) for r in v.matrix])
    return repr(v)


def agreement(name: str, u: Universe, fam: TransvectionFamily | None = None,
              limit: Optional[int] = None, unguarded: bool = False,
              compare_to: str = "oracle", budget: Optional[int] = None) -> AgreementResult:
    """Compare the corpus formula with the module result (or with its own
    unguarded evaluation when compare_to == "unguarded") over the sweep."""
    np_ = CATALOG[name]
    if fam is None:
        fam = canonical_family(u.group)
    opts = {"family": fam}
    checked, subs, bad = 0, 0, []
    lists = np_.sweep(u, fam) if np_.params else []
    for slots in sample_product(lists, limit) if np_.params else [()]:
        vals = [v for slot in slots for v in slot]
        b = dict(zip(np_.params, vals))
        out = run_corpus(name, u, b, budget=budget, options=opts, unguarded=unguarded)
        subs += out.substitutions
        if compare_to == "unguarded":
            other = run_corpus(name, u, b, budget=budget, options=opts, unguarded=not unguarded).value
        else:
            other = np_.oracle(u, fam, b)
        checked += 1
        if out.value != other:
            bad.append(({k: describe_value(v) for k, v in b.items()}, out.value, other))
    return AgreementResult(name, checked, bad, subs)
