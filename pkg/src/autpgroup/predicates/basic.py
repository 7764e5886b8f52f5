"""Order splits, the subgroup B_nu and the base test.

Each predicate has a formula mode (the corpus text evaluated by folang) and,
where the meaning is finite, a semantic mode computed on subgroups.
"""
from __future__ import annotations

from ..endo import Automorphism, ExtremeInvolution, Pair, hom_from_images, try_automorphism
from ..errors import PreconditionViolated
from ..groups import Element, GroupSpec, Subgroup, is_pure, order_of, span, subgroup_sum
from ..universe import Universe, universe_for
from .primitives import run_corpus
from .relations import in_sum_total


def _u(obj, universe) -> Universe:
    return universe if universe is not None else universe_for(obj.group if hasattr(obj, "group") else obj.core.group)


def _pair_binding(pr: Pair, x: str, e: str) -> dict:
    return {x: pr.xi.auto, e: pr.eps}


def _orders(h: Subgroup) -> list[int]:
    p = h.group.p
    return [p ** m for m in h.invariant_factors()]


# order splits -------------------------------------------------------------
def by_ord(pr: Pair, mode: str = "formula", universe: Universe | None = None,
           budget: int | None = None) -> bool:
    """A_P takes exactly the cyclic summands of order >= ord(eps)."""
    if mode == "semantic":
        o = pr.eps.order
        return all(q < o for q in _orders(pr.complement)) and all(q >= o for q in _orders(pr.summand))
    if mode in ("formula", "literal"):
        name = "ByOrd" if mode == "formula" else "ByOrdLiteral"
        return run_corpus(name, _u(pr.summand, universe), _pair_binding(pr, "x", "e"), budget=budget).value
    raise ValueError(f"unknown mode {mode!r}")


def final_pair(pr: Pair, universe: Universe | None = None, budget: int | None = None):
    """Evaluate Final at (x0, e0); returns the PredicateOutcome (witnesses included)."""
    return run_corpus("Final", _u(pr.summand, universe), _pair_binding(pr, "x0", "e0"), budget=budget)


def final_pair_direct(pr: Pair, universe: Universe | None = None) -> bool:
    """Second transcription of Final written as plain loops over subgroups."""
    u = _u(pr.summand, universe)

    def byord(q: Pair) -> bool:
        for e1 in u.extremes:
            if not (u.mul(q.xi.auto, e1.auto) is u.mul(e1.auto, q.xi.auto)):
                continue
            if (e1.core <= q.summand) != (e1.order >= q.eps.order):
                return False
        return True

    if not byord(pr):
        return False
    for p1 in u.pairs:
        if not (p1.summand < pr.summand) or not byord(p1):
            continue
        fixed = [e for e in u.extremes if e.core <= p1.complement]
        moved = [e for e in u.extremes if e.core <= pr.summand and e.core <= p1.complement]
        inner = [e for e in u.extremes if e.core <= p1.summand]
        ok = False
        for f in u.auts:
            if any(f.image(e.core) != e.core for e in fixed):
                continue
            if all(any(_maps_to(f, e2, e) for e2 in inner) for e in moved):
                ok = True
                break
        if not ok:
            return False
    return True


def _maps_to(f: Automorphism, e1: ExtremeInvolution, e2: ExtremeInvolution) -> bool:
    img = f.image(e1.core)
    return img <= subgroup_sum([e1.core, e2.core]) and img != e1.core and img != e2.core


# order-dropping automorphisms ------------------------------------------------
def order_drop_nu(group: GroupSpec, split: Pair, drop: dict[int, Element]) -> Automorphism:
    """nu = id on A_low, id + eps on A_fin.

    drop maps a basis index of A_fin to eps(b); every eps(b) must have order
    strictly below ord(b).  Basis elements are the cyclic generators of the
    split's summand followed by its complement's.
    """
    from ..groups import cyclic_decomposition
    fin = cyclic_decomposition(split.summand)
    low = cyclic_decomposition(split.complement)
    basis = fin + low
    images = list(basis)
    for i, img in drop.items():
        if i >= len(fin):
            raise PreconditionViolated("only A_fin generators may move")
        if order_of(img) >= order_of(fin[i]):
            raise PreconditionViolated("eps must drop the order of every moved generator")
        if img.group != group:
            raise PreconditionViolated("image in the wrong group")
        images[i] = fin[i] + img
    return try_automorphism(hom_from_images(group, basis, images))


def whole_split(universe: Universe) -> Pair:
    """The split with A_low = 0 (summand = whole group)."""
    for pr in universe.pairs:
        if pr.summand.size == universe.group.size:
            return pr
    raise PreconditionViolated("no pair with the whole group as summand")


# B_nu ----------------------------------------------------------------------
def in_base(e: ExtremeInvolution, nu: Automorphism, split: Pair, universe: Universe | None = None,
            budget: int | None = None, literal: bool = False) -> bool:
    u = _u(e, universe)
    b = {"e": e, "nu": nu, "x0": split.xi.auto, "e0": split.eps}
    return run_corpus("InBaseLiteral" if literal else "InBase", u, b, budget=budget).value


def in_base_cores(nu: Automorphism, split: Pair, universe: Universe | None = None,
                  budget: int | None = None, literal: bool = False) -> list[Subgroup]:
    """Distinct cores whose extremes satisfy InBase."""
    u = _u(split.summand, universe)
    seen: dict[frozenset, Subgroup] = {}
    for e in u.extremes:
        if e.core.idx in seen:
            continue
        if in_base(e, nu, split, u, budget, literal):
            seen[e.core.idx] = e.core
    return sorted(seen.values(), key=lambda c: (c.size, c.sorted_indices))


def collect_B(nu: Automorphism, split: Pair, universe: Universe | None = None,
              budget: int | None = None, literal: bool = False) -> Subgroup:
    """B_nu: the subgroup generated by every core in the base."""
    cores = in_base_cores(nu, split, universe, budget, literal)
    if not cores:
        return Subgroup(split.summand.group, split.summand.group.trivial().idx)
    return subgroup_sum(cores)


def predicted_base_cores(nu: Automorphism, split: Pair, universe: Universe | None = None) -> list[Subgroup]:
    """Cores predicted by the witness construction, found by element enumeration.

    A fin-core D qualifies when some a in A_fin generating a pure cyclic
    subgroup with ord(a) > |D| satisfies <a> + <nu(a)> = <a> + D, <a> & D = 0.
    Predicted cores: those inside A_low, the qualifying D, and cores in the
    sum of a low core and a qualifying D.
    """
    u = _u(split.summand, universe)
    g = u.group
    fin_cores = {e.core.idx: e.core for e in u.extremes if e.core <= split.summand}
    qualifying: dict[frozenset, Subgroup] = {}
    for i in sorted(split.summand.idx):
        a = g.element_at(i)
        oa = order_of(a)
        if oa == 1:
            continue
        ca = span([a], group=g)
        if not is_pure(ca):
            continue
        na = span([nu(a)], group=g)
        lhs = subgroup_sum([ca, na])
        for key, d in fin_cores.items():
            if key in qualifying or d.size >= oa or (ca & d).size != 1:
                continue
            if lhs == subgroup_sum([ca, d]):
                qualifying[key] = d
    out: dict[frozenset, Subgroup] = {}
    for e in u.extremes:
        c = e.core
        if c.idx in out:
            continue
        if c <= split.complement or c.idx in qualifying:
            out[c.idx] = c
            continue
        for el in u.extremes:
            if not el.core <= split.complement:
                continue
            hit = False
            for ef in u.extremes:
                if ef.core.idx in qualifying and in_sum_total(e, el, ef):
                    hit = True
                    break
            if hit:
                out[c.idx] = c
                break
    return sorted(out.values(), key=lambda c: (c.size, c.sorted_indices))


# bounded summands ------------------------------------------------------------
def rest(pr: Pair, e: ExtremeInvolution, mode: str = "formula", universe: Universe | None = None,
         budget: int | None = None) -> bool:
    """A_P has exponent at most ord(e)."""
    if mode == "semantic":
        return all(q <= e.order for q in _orders(pr.summand))
    b = {"e": e, "x1": pr.xi.auto, "e1": pr.eps}
    return run_corpus("Rest", _u(e, universe), b, budget=budget).value


def max_rest(pr: Pair, e: ExtremeInvolution, mode: str = "formula", universe: Universe | None = None,
             budget: int | None = None) -> bool:
    """A_P is a maximal summand of exponent at most ord(e)."""
    if mode == "semantic":
        o = e.order
        g = pr.summand.group
        small = sorted(g.p ** m for m in g.exponents if g.p ** m <= o)
        return sorted(_orders(pr.summand)) == small
    b = {"e": e, "x1": pr.xi.auto, "e1": pr.eps}
    return run_corpus("MaxRest", _u(e, universe), b, budget=budget).value


def is_base(nu: Automorphism, split: Pair, mode: str = "formula", universe: Universe | None = None,
            budget: int | None = None) -> bool:
    """B_nu is basic.

    formula: the base test with a capturing pair required for every order;
    literal: the base test as written (vacuous when nothing captures);
    semantic: collect_B(nu) is a basic subgroup.
    """
    from ..groups import is_basic_subgroup
    u = _u(split.summand, universe)
    if mode == "semantic":
        return is_basic_subgroup(collect_B(nu, split, u, budget))
    b = {"nu": nu, "x0": split.xi.auto, "e0": split.eps}
    name = {"formula": "IsBaseStrict", "literal": "IsBase"}[mode]
    return run_corpus(name, u, b, budget=budget).value


def splits(universe: Universe) -> list[Pair]:
    """Representative pairs, one per distinct summand."""
    return universe.distinct_pair_summands


def pair_of(universe: Universe, summand: Subgroup) -> Pair:
    for pr in universe.pairs:
        if pr.summand == summand:
            return pr
    raise PreconditionViolated(f"no pair designates {summand!r}")
