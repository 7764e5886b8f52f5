"""Group elements encoded as automorphisms moving one basis summand."""
from __future__ import annotations

from ..endo import Automorphism, ExtremeInvolution, hom_from_images, try_automorphism
from ..errors import NotEncoder, OrderViolation
from ..groups import Element, Subgroup, order_of, span
from ..universe import Universe, universe_for
from .families import TransvectionFamily
from .primitives import run_corpus
from .relations import maps_to_subgroups


def _u(fam: TransvectionFamily, universe) -> Universe:
    return universe if universe is not None else universe_for(fam.group)


def encode(a: Element, fam: TransvectionFamily, i: int) -> Automorphism:
    """f with f(b_i) = b_i + a, identity on the other basis elements."""
    if order_of(a) >= fam.order(i):
        raise OrderViolation(f"ord(a)={order_of(a)} is not below ord(b_{i + 1})={fam.order(i)}")
    images = list(fam.elements)
    images[i] = fam.elements[i] + a
    return try_automorphism(hom_from_images(fam.group, fam.elements, images))


def encodable(fam: TransvectionFamily, i: int, include_zero: bool = True) -> list[Element]:
    """Elements whose encoders on carrier i pass the selection formula.

    ord(a) < ord(b_i) and a outside <b_i>; zero is added by convention.
    """
    g = fam.group
    carrier = span([fam.elements[i]], group=g)
    out = []
    for n in range(g.size):
        a = g.element_at(n)
        if n == 0:
            if include_zero:
                out.append(a)
            continue
        if order_of(a) < fam.order(i) and n not in carrier.idx:
            out.append(a)
    return out


def moved_carrier(f: Automorphism, fam: TransvectionFamily) -> int | None:
    """The unique basis summand f does not preserve, else None."""
    moved = [m for m in range(fam.rank) if f.image(fam.core(m)) != fam.core(m)]
    return moved[0] if len(moved) == 1 else None


def _semantic_encoder(f: Automorphism, fam: TransvectionFamily, u: Universe) -> bool:
    i = moved_carrier(f, fam)
    if i is None:
        return False
    ci = fam.core(i)
    img = f.image(ci)
    return any(maps_to_subgroups(img, ci, Subgroup(u.group, c)) for c in u.cores)


def is_canonical_encoder(f: Automorphism, fam: TransvectionFamily) -> bool:
    """f fixes every other b_m and moves b_i to b_i + a with a encodable."""
    for i in range(fam.rank):
        if all(f(fam.elements[m]) == fam.elements[m] for m in range(fam.rank) if m != i):
            a = f(fam.elements[i]) - fam.elements[i]
            if a.index != 0 and any(a == x for x in encodable(fam, i, include_zero=False)):
                return True
    return False


def is_encoder(f: Automorphism, fam: TransvectionFamily, mode: str = "formula",
               universe: Universe | None = None, budget: int | None = None) -> bool:
    """Selection test.

    formula: the selection formula; semantic: f moves exactly one basis core,
    onto a core sharing a sum with it; canonical: the shape encode() produces.
    """
    u = _u(fam, universe)
    if mode == "formula":
        return run_corpus("IsEncoder", u, {"f": f}, budget=budget, options={"family": fam}).value
    if mode == "semantic":
        return _semantic_encoder(f, fam, u)
    if mode == "canonical":
        return is_canonical_encoder(f, fam)
    raise ValueError(f"unknown mode {mode!r}")


def encoder_set(u: Universe, fam: TransvectionFamily, zero_convention: bool = True) -> list[Automorphism]:
    """Canonical automorphisms passing the semantic selection test (plus id)."""
    key = ("encoders", id(u), zero_convention)
    hit = fam._cache.get(key)
    if hit is None:
        hit = [a for a in u.auts if _semantic_encoder(a, fam, u)]
        if zero_convention:
            hit = [u.identity] + hit
        fam._cache[key] = hit
    return hit


def decode(f: Automorphism, fam: TransvectionFamily) -> Element:
    """a = f(b_i) - b_i for the moved carrier; identity decodes to 0."""
    if f.is_identity():
        return fam.group.zero()
    i = moved_carrier(f, fam)
    if i is None:
        raise NotEncoder("f does not move exactly one basis summand")
    return f(fam.elements[i]) - fam.elements[i]


def _check(f, fam, u):
    if not (f.is_identity() or _semantic_encoder(f, fam, u)):
        raise NotEncoder(f"{f!r} is not an encoder")


def enc_eq(f1: Automorphism, f2: Automorphism, fam: TransvectionFamily, mode: str = "formula",
           universe: Universe | None = None, budget: int | None = None, literal: bool = False) -> bool:
    u = _u(fam, universe)
    for f in (f1, f2):
        _check(f, fam, u)
    if mode == "semantic":
        return decode(f1, fam) == decode(f2, fam)
    name = "EncEqLiteral" if literal else "EncEq"
    return run_corpus(name, u, {"f1": f1, "f2": f2}, budget=budget, options={"family": fam}).value


def enc_add(f1: Automorphism, f2: Automorphism, f3: Automorphism, fam: TransvectionFamily,
            mode: str = "formula", universe: Universe | None = None, budget: int | None = None,
            similar: str = "enc_eq") -> bool:
    u = _u(fam, universe)
    for f in (f1, f2, f3):
        _check(f, fam, u)
    if mode == "semantic":
        return decode(f1, fam) + decode(f2, fam) == decode(f3, fam)
    return run_corpus("EncAdd", u, {"f1": f1, "f2": f2, "f3": f3}, budget=budget,
                      options={"family": fam, "similar": similar}).value


def rel_encoded_map(f1: Automorphism, f2: Automorphism, e1: ExtremeInvolution, e2: ExtremeInvolution,
                    mode: str = "formula", universe: Universe | None = None, budget: int | None = None) -> bool:
    """Some extreme is sent to e1 by f1 and to e2 by f2."""
    u = universe if universe is not None else universe_for(e1.core.group)
    if mode == "semantic":
        for c in u.cores:
            core = Subgroup(u.group, c)
            if maps_to_subgroups(f1.image(core), core, e1.core) and \
                    maps_to_subgroups(f2.image(core), core, e2.core):
                return True
        return False
    return run_corpus("EncodedMap", u, {"f1": f1, "f2": f2, "e1": e1, "e2": e2}, budget=budget).value


def sim(f1: Automorphism, f2: Automorphism, pr, mode: str = "formula",
        universe: Universe | None = None, budget: int | None = None) -> bool:
    """f1 and f2 differ by a map fixing every cyclic summand inside A_P."""
    u = universe if universe is not None else universe_for(pr.summand.group)
    if mode == "semantic":
        return all(f1.image(Subgroup(u.group, c)) == f2.image(Subgroup(u.group, c))
                   for c in u.cores if c <= pr.summand.idx)
    return run_corpus("Sim", u, {"f1": f1, "f2": f2, "x": pr.xi.auto, "e": pr.eps}, budget=budget).value
