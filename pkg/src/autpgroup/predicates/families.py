"""Basis families of extreme involutions and their transvections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..endo import (
    MINUS,
    Automorphism,
    ExtremeInvolution,
    designate,
    hom_from_images,
    make_involution,
    transvection_map,
    try_automorphism,
)
from ..errors import IllFormed, NotInvertible, OrderViolation, PreconditionViolated
from ..groups import Element, GroupSpec, Subgroup, is_direct_sum, order_of, span, subgroup_sum


def reflection(group: GroupSpec, basis: list[Element], i: int) -> ExtremeInvolution:
    """-1 on <b_i>, +1 on the other basis summands; core <b_i>."""
    images = [(-b if m == i else b) for m, b in enumerate(basis)]
    inv = make_involution(try_automorphism(hom_from_images(group, basis, images)))
    return designate(inv, MINUS)


def transvection(group: GroupSpec, basis: list[Element], i: int, j: int, coeff: int = 1) -> Automorphism:
    """g_ij: b_i -> b_i + coeff*b_j, identity on the other basis elements."""
    return transvection_map(group, basis, i, j, coeff)


@dataclass
class TransvectionFamily:
    group: GroupSpec
    elements: list[Element]                      # b_1, ..., b_r
    basis: list[ExtremeInvolution]               # reflections with cores <b_i>
    maps: dict[tuple[int, int], Automorphism] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.elements)

    def order(self, i: int) -> int:
        return order_of(self.elements[i])

    def core(self, i: int) -> Subgroup:
        return self.basis[i].core

    def fb(self, universe) -> list[ExtremeInvolution]:
        key = ("fb", id(universe))
        if key not in self._cache:
            self._cache[key] = [universe.extreme(universe.canonical(e.auto), e.side) for e in self.basis]
        return self._cache[key]

    def fg(self, universe) -> list[Automorphism]:
        key = ("fg", id(universe))
        if key not in self._cache:
            self._cache[key] = [universe.canonical(self.maps[k]) for k in sorted(self.maps)]
        return self._cache[key]

    @property
    def _cache(self) -> dict:
        c = self.__dict__.get("_memo")
        if c is None:
            c = self.__dict__["_memo"] = {}
        return c

    def coefficients(self, x: Element) -> tuple[int, ...]:
        """(c_1, ..., c_r) with x = sum c_m b_m, each c_m reduced mod ord(b_m)."""
        return tuple(int(v) for v in self._coeff_table[x.index])

    @property
    def _coeff_table(self) -> np.ndarray:
        t = self._cache.get("coeffs")
        if t is None:
            g = self.group
            orders = [self.order(m) for m in range(self.rank)]
            combos = np.array(list(itertools.product(*[range(o) for o in orders])), dtype=np.int64)
            bc = np.array([b.coords for b in self.elements], dtype=np.int64)
            idx = g.encode((combos @ bc) % g.mod_array)
            t = np.zeros((g.size, self.rank), dtype=np.int64)
            t[idx] = combos
            self._cache["coeffs"] = t
        return t

    def with_map(self, i: int, j: int, g: Automorphism) -> "TransvectionFamily":
        maps = dict(self.maps)
        maps[(i, j)] = g
        return TransvectionFamily(self.group, self.elements, self.basis, maps)


def canonical_basis(group: GroupSpec) -> list[Element]:
    """Standard generators sorted by decreasing order (stable)."""
    gens = group.generators()
    return sorted(gens, key=lambda b: -order_of(b))


def canonical_family(group: GroupSpec, basis: list[Element] | None = None) -> TransvectionFamily:
    basis = list(basis) if basis is not None else canonical_basis(group)
    if not is_direct_sum([span([b], group=group) for b in basis]) or \
            subgroup_sum([span([b], group=group) for b in basis]).size != group.size:
        raise PreconditionViolated("basis does not decompose the group")
    refl = [reflection(group, basis, i) for i in range(len(basis))]
    maps = {}
    for i, j in itertools.permutations(range(len(basis)), 2):
        if order_of(basis[i]) >= order_of(basis[j]):
            maps[(i, j)] = transvection(group, basis, i, j)
    return TransvectionFamily(group, basis, refl, maps)


def family_independent(cands: list[ExtremeInvolution]) -> bool:
    """The cores form a direct sum."""
    return is_direct_sum([e.core for e in cands]) if cands else True


def family_is_decomposition(cands: list[ExtremeInvolution], b: Subgroup) -> bool:
    """Independent, and the cores add up to b."""
    if not cands:
        return b.is_zero()
    return family_independent(cands) and subgroup_sum([e.core for e in cands]) == b


# checks ----------------------------------------------------------------------
def _fixes_others(fam: TransvectionFamily, g: Automorphism, i: int) -> bool:
    return all(g(fam.elements[m]) == fam.elements[m] for m in range(fam.rank) if m != i)


def family_failures(fam: TransvectionFamily) -> list[str]:
    """Every violated family constraint, as readable messages."""
    out = []
    seen = {}
    for (i, j), g in sorted(fam.maps.items()):
        # shape: fixes the other summands, B_i lands in B_i + B_j on neither
        if not _fixes_others(fam, g, i):
            out.append(f"g_{i + 1}{j + 1} moves a basis element other than b_{i + 1}")
        img = g.image(fam.core(i))
        if not (img <= subgroup_sum([fam.core(i), fam.core(j)])) or img == fam.core(i) or img == fam.core(j):
            out.append(f"g_{i + 1}{j + 1} does not move B_{i + 1} inside B_{i + 1} + B_{j + 1}")
        if g.key in seen:
            out.append(f"g_{i + 1}{j + 1} repeats g_{seen[g.key][0] + 1}{seen[g.key][1] + 1}")
        seen[g.key] = (i, j)
        # coefficient form b_i -> k1 b_i + k2 b_j with k1 = 1
        c = fam.coefficients(g(fam.elements[i]))
        others = [c[m] for m in range(fam.rank) if m not in (i, j)]
        if any(others) or c[i] % fam.order(i) != 1 or c[j] == 0:
            out.append(f"g_{i + 1}{j + 1}(b_{i + 1}) is not b_{i + 1} + k b_{j + 1}")
    for i, j, k in itertools.permutations(range(fam.rank), 3):
        if not all(key in fam.maps for key in ((i, j), (j, k), (i, k))):
            continue
        gij, gjk, gik = fam.maps[(i, j)], fam.maps[(j, k)], fam.maps[(i, k)]
        lhs = gjk.inv() * gij.inv() * gjk * gij
        if lhs != gik:
            out.append(f"commutator law fails for ({i + 1}, {j + 1}, {k + 1})")
    return out


def family_check(fam: TransvectionFamily) -> bool:
    return not family_failures(fam)


def commutator(fam: TransvectionFamily, i: int, j: int, k: int) -> Automorphism:
    """g_jk^-1 g_ij^-1 g_jk g_ij."""
    gij, gjk = fam.maps[(i, j)], fam.maps[(j, k)]
    return gjk.inv() * gij.inv() * gjk * gij


# the k1 = 1 criterion ----------------------------------------------------------
def conjugation_maps(fam: TransvectionFamily, i: int, j: int, k: int,
                k1: int, k2: int, l1: int, l2: int) -> tuple[Automorphism, Automorphism]:
    """g: b_i -> k1 b_i + k2 b_j and g0: b_k -> l1 b_k + l2 b_i, identity elsewhere."""
    b = fam.elements
    gi = list(b)
    gi[i] = k1 * b[i] + k2 * b[j]
    g0i = list(b)
    g0i[k] = l1 * b[k] + l2 * b[i]
    try:
        g = try_automorphism(hom_from_images(fam.group, b, gi))
        g0 = try_automorphism(hom_from_images(fam.group, b, g0i))
    except (IllFormed, NotInvertible) as exc:
        raise PreconditionViolated(f"coefficients do not give automorphisms: {exc}") from None
    return g, g0


def conjugation_criterion(g: Automorphism, g0: Automorphism, fam: TransvectionFamily,
                     i: int, j: int, k: int) -> tuple[bool, bool]:
    """(k1 = 1, g0^-1 g g0 (B_k) inside B_k + B_j)."""
    if len({i, j, k}) != 3:
        raise PreconditionViolated("i, j, k must be distinct")
    b = fam.elements
    if not _fixes_others(fam, g, i) or not _fixes_others(fam, g0, k):
        raise PreconditionViolated("g or g0 moves a basis element it should fix")
    cg = fam.coefficients(g(b[i]))
    c0 = fam.coefficients(g0(b[k]))
    if any(cg[m] for m in range(fam.rank) if m not in (i, j)) or cg[i] == 0 or cg[j] == 0:
        raise PreconditionViolated("g(b_i) is not k1 b_i + k2 b_j with nonzero k1, k2")
    if any(c0[m] for m in range(fam.rank) if m not in (k, i)) or c0[k] == 0 or c0[i] == 0:
        raise PreconditionViolated("g0(b_k) is not l1 b_k + l2 b_i with nonzero l1, l2")
    lhs = cg[i] % fam.order(i) == 1
    conj = g0.inv() * g * g0
    rhs = conj.image(fam.core(k)) <= subgroup_sum([fam.core(k), fam.core(j)])
    return lhs, rhs


def conjugation_image(fam: TransvectionFamily, i: int, j: int, k: int,
                 k1: int, k2: int, l1: int, l2: int) -> tuple[Element, Element]:
    """(computed image of b_k under g0^-1 g g0, b_k + l2(k1-1) b_i + l2 k2 b_j)."""
    g, g0 = conjugation_maps(fam, i, j, k, k1, k2, l1, l2)
    b = fam.elements
    computed = (g0.inv() * g * g0)(b[k])
    predicted = b[k] + (l2 * (k1 - 1)) * b[i] + (l2 * k2) * b[j]
    return computed, predicted


def admissible_tuples(fam: TransvectionFamily, i: int, j: int, k: int):
    """Admissible (k1, k2, l1, l2): both maps are automorphisms with nonzero
    multipliers, and ord(b_k) >= ord(b_i)."""
    if fam.order(k) < fam.order(i):
        return
    oi, oj, ok = fam.order(i), fam.order(j), fam.order(k)
    for k1, k2, l1, l2 in itertools.product(range(1, oi), range(1, oj), range(1, ok), range(1, oi)):
        b = fam.elements
        if (k2 * b[j]).index == 0 or (l2 * b[i]).index == 0:
            continue
        try:
            conjugation_maps(fam, i, j, k, k1, k2, l1, l2)
        except PreconditionViolated:
            continue
        yield k1, k2, l1, l2


def conjugation_sweep(fam: TransvectionFamily, include_low: bool = False) -> dict:
    """Check lhs <=> rhs and the image identity on every admissible tuple.

    With include_low, also sweep triples with ord(b_k) < ord(b_i) (outside
    the admissible range) and report them separately.
    """
    res = {"tuples": 0, "equivalence_failures": [], "identity_failures": [], "low_order_counterexamples": []}
    for i, j, k in itertools.permutations(range(fam.rank), 3):
        for t in admissible_tuples(fam, i, j, k):
            g, g0 = conjugation_maps(fam, i, j, k, *t)
            lhs, rhs = conjugation_criterion(g, g0, fam, i, j, k)
            res["tuples"] += 1
            if lhs != rhs:
                res["equivalence_failures"].append((i, j, k) + t)
            comp, pred = conjugation_image(fam, i, j, k, *t)
            if comp != pred:
                res["identity_failures"].append((i, j, k) + t)
        if include_low and fam.order(k) < fam.order(i):
            oi, oj, ok = fam.order(i), fam.order(j), fam.order(k)
            for t in itertools.product(range(1, oi), range(1, oj), range(1, ok), range(1, oi)):
                b = fam.elements
                if (t[1] * b[j]).index == 0 or (t[3] * b[i]).index == 0:
                    continue
                try:
                    g, g0 = conjugation_maps(fam, i, j, k, *t)
                except PreconditionViolated:
                    continue
                lhs, rhs = conjugation_criterion(g, g0, fam, i, j, k)
                if lhs != rhs:
                    res["low_order_counterexamples"].append((i, j, k) + t)
    return res


__all__ = [
    "TransvectionFamily", "canonical_family", "canonical_basis", "reflection", "transvection",
    "family_check", "family_failures", "family_independent", "family_is_decomposition",
    "commutator", "conjugation_criterion", "conjugation_maps", "conjugation_image", "admissible_tuples", "conjugation_sweep",
    "OrderViolation",
]
