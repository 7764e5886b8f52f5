"""Relations on extreme involutions and pairs, computed on subgroups.

These are the semantic oracles.  Formula-mode counterparts live in the
shipped corpus and are evaluated by folang.
"""
from __future__ import annotations

import operator

from ..endo import Automorphism, ExtremeInvolution, Pair, commute
from ..errors import NotCommuting
from ..groups import Subgroup, is_direct_sum, subgroup_sum


def _sum(a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_sum([a, b])


def rel_in_sum(e: ExtremeInvolution, e1: ExtremeInvolution, e2: ExtremeInvolution) -> bool:
    """A_e inside A_e1 + A_e2, and perp(e) containing perp(e1) & perp(e2)."""
    if not commute(e1.auto, e2.auto):
        raise NotCommuting("in-sum relation needs commuting e1, e2")
    return in_sum_total(e, e1, e2)


def in_sum_total(e, e1, e2) -> bool:
    """rel_in_sum extended to non-commuting e1, e2 by dropping the perp clause there."""
    if not (e.core <= _sum(e1.core, e2.core)):
        return False
    if not commute(e1.auto, e2.auto):
        return True
    return (e1.perp & e2.perp) <= e.perp


def rel_pair_member(e: ExtremeInvolution, pr: Pair) -> bool:
    return e.core <= pr.summand


def rel_pair_subset(p1: Pair, p2: Pair) -> bool:
    return p1.summand <= p2.summand


def rel_pair_eq(p1: Pair, p2: Pair) -> bool:
    return p1.summand == p2.summand


def rel_pair_cap(p1: Pair, p2: Pair, p3: Pair) -> bool:
    return p3.summand == (p1.summand & p2.summand)


def rel_pair_oplus(p1: Pair, p2: Pair, p3: Pair) -> bool:
    return is_direct_sum([p1.summand, p2.summand]) and p3.summand == _sum(p1.summand, p2.summand)


def rel_pair_complement(p1: Pair, p2: Pair) -> bool:
    s = _sum(p1.summand, p2.summand)
    return is_direct_sum([p1.summand, p2.summand]) and s.size == s.group.size


def maps_to_subgroups(image: Subgroup, c1: Subgroup, c2: Subgroup) -> bool:
    return image <= _sum(c1, c2) and image != c1 and image != c2


def rel_maps_to(f: Automorphism, e1: ExtremeInvolution, e2: ExtremeInvolution,
                mode: str = "semantic", universe=None, budget=None) -> bool:
    """e1 maps to e2 under f: f(A_e1) lies in A_e1 + A_e2 and equals neither."""
    if mode == "semantic":
        return maps_to_subgroups(f.image(e1.core), e1.core, e2.core)
    if mode == "formula":
        from .primitives import run_corpus
        return run_corpus("MapsTo", universe, {"f": f, "e1": e1, "e2": e2}, budget=budget).value
    raise ValueError(f"unknown mode {mode!r}")


_ORD = {"lt": operator.lt, "le": operator.le, "eq": operator.eq, "ge": operator.ge, "gt": operator.gt}


def rel_ord(e1: ExtremeInvolution, e2: ExtremeInvolution, op: str = "lt") -> bool:
    return _ORD[op](e1.core.size, e2.core.size)


def rel_ord_lt(e1, e2):
    return rel_ord(e1, e2, "lt")


def rel_ord_le(e1, e2):
    return rel_ord(e1, e2, "le")


def rel_ord_eq(e1, e2):
    return rel_ord(e1, e2, "eq")


def rel_ord_ge(e1, e2):
    return rel_ord(e1, e2, "ge")


def rel_ord_gt(e1, e2):
    return rel_ord(e1, e2, "gt")
