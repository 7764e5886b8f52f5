"""Endomorphisms and automorphisms as integer matrices, involutions and pairs.

Column j of a matrix holds the coordinates of the image of generator g_j.
Every homomorphism also carries ``perm``: the image index of each element,
which makes application, composition checks and subgroup images cheap.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    IllFormed,
    NeitherSideContains,
    NotCommuting,
    NotExtreme,
    NotInvertible,
    NotInvolution,
    OrderViolation,
)
from .groups import Element, GroupSpec, Subgroup, order_of

PLUS = "plus"
MINUS = "minus"

DEFAULT_AUT_BUDGET = 100_000


def _min_divisor(g: GroupSpec, i: int, j: int) -> int:
    return g.p ** max(g.exponents[i] - g.exponents[j], 0)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    group: GroupSpec
    matrix: tuple[tuple[int, ...], ...]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @cached_property
    def perm(self) -> np.ndarray:
        g = self.group
        img = (g.coords @ self.array.T) % g.mod_array
        return g.encode(img)

    def __eq__(self, other):
        return isinstance(other, Homomorphism) and self.group == other.group and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.group, self.matrix))

    def __call__(self, a: Element) -> Element:
        return apply(self, a)

    def image(self, h: Subgroup) -> Subgroup:
        return Subgroup(self.group, frozenset(self.perm[list(h.idx)].tolist()))

    def flat(self) -> list[int]:
        return [x for row in self.matrix for x in row]

    def __repr__(self):
        return f"Hom{[list(r) for r in self.matrix]}"


def _reduce(g: GroupSpec, m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) % g.moduli[i] for x in row) for i, row in enumerate(m))


def hom_from_matrix(g: GroupSpec, m: Sequence[Sequence[int]]) -> Homomorphism:
    rows = [list(r) for r in m]
    if len(rows) != g.k or any(len(r) != g.k for r in rows):
        raise IllFormed(f"matrix must be {g.k}x{g.k}")
    for i in range(g.k):
        for j in range(g.k):
            d = _min_divisor(g, i, j)
            if rows[i][j] % d:
                raise IllFormed(
                    f"entry ({i + 1},{j + 1})={rows[i][j]} not divisible by {d}: "
                    f"image of g{j + 1} would have too large an order"
                )
    return Homomorphism(g, _reduce(g, rows))


def hom_from_flat(g: GroupSpec, flat: Sequence[int]) -> Homomorphism:
    if len(flat) != g.k * g.k:
        raise IllFormed(f"expected {g.k * g.k} entries, got {len(flat)}")
    return hom_from_matrix(g, [flat[r * g.k:(r + 1) * g.k] for r in range(g.k)])


def identity_hom(g: GroupSpec) -> Homomorphism:
    return Homomorphism(g, tuple(tuple(int(i == j) for j in range(g.k)) for i in range(g.k)))


def apply(f: Homomorphism, a: Element) -> Element:
    if a.group != f.group:
        raise AmbientMismatch("element and map live in different groups")
    g = f.group
    return Element(g, tuple(
        sum(f.matrix[i][j] * a.coords[j] for j in range(g.k)) % g.moduli[i] for i in range(g.k)
    ))


def compose(f: Homomorphism, h: Homomorphism) -> Homomorphism:
    """f after h."""
    if f.group != h.group:
        raise AmbientMismatch("maps live in different groups")
    return Homomorphism(f.group, _reduce(f.group, f.array @ h.array))


def hom_from_images(g: GroupSpec, basis: Sequence[Element], images: Sequence[Element]) -> Homomorphism:
    """The homomorphism sending basis[m] to images[m].

    basis must be a direct decomposition of the whole group into cyclics.
    """
    orders = [order_of(b) for b in basis]
    for b, im, o in zip(basis, images, orders):
        if order_of(im) > o:
            raise IllFormed(f"image {im} of {b} has order exceeding {o}")
    src = np.zeros(g.size, dtype=np.int64)
    dst = np.zeros(g.size, dtype=np.int64)
    combos = np.array(list(itertools.product(*[range(o) for o in orders])), dtype=np.int64)
    bc = np.array([b.coords for b in basis], dtype=np.int64)
    ic = np.array([im.coords for im in images], dtype=np.int64)
    src = g.encode((combos @ bc) % g.mod_array)
    if len(np.unique(src)) != g.size:
        raise IllFormed("basis does not decompose the group")
    dst = (combos @ ic) % g.mod_array
    lookup = np.empty(g.size, dtype=np.int64)
    lookup[src] = np.arange(len(src))
    cols = [dst[lookup[g.generator(j).index]] for j in range(g.k)]
    return hom_from_matrix(g, [[int(cols[j][i]) for j in range(g.k)] for i in range(g.k)])


@dataclass(frozen=True, eq=False)
class Automorphism:
    hom: Homomorphism
    inverse: Homomorphism

    @property
    def group(self) -> GroupSpec:
        return self.hom.group

    @property
    def matrix(self):
        return self.hom.matrix

    @property
    def perm(self) -> np.ndarray:
        return self.hom.perm

    @property
    def key(self):
        return self.hom.matrix

    @property
    def auto(self) -> "Automorphism":
        return self

    def inv(self) -> "Automorphism":
        return Automorphism(self.inverse, self.hom)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(compose(self.hom, other.hom), compose(other.inverse, self.inverse))

    def __call__(self, a: Element) -> Element:
        return apply(self.hom, a)

    def image(self, h: Subgroup) -> Subgroup:
        return self.hom.image(h)

    def is_identity(self) -> bool:
        return self.hom == identity_hom(self.group)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.hom == other.hom

    def __hash__(self):
        return hash(self.hom)

    def __repr__(self):
        return f"Aut{[list(r) for r in self.matrix]}"


def try_automorphism(f: Homomorphism) -> Automorphism:
    g = f.group
    perm = f.perm
    if len(np.unique(perm)) != g.size:
        raise NotInvertible(f"{f} is not bijective")
    inv = np.empty(g.size, dtype=np.int64)
    inv[perm] = np.arange(g.size)
    cols = [g.coords[inv[g.generator(j).index]] for j in range(g.k)]
    inverse = hom_from_matrix(g, [[int(cols[j][i]) for j in range(g.k)] for i in range(g.k)])
    return Automorphism(f, inverse)


def identity_aut(g: GroupSpec) -> Automorphism:
    e = identity_hom(g)
    return Automorphism(e, e)


def negation_aut(g: GroupSpec) -> Automorphism:
    m = hom_from_matrix(g, [[-int(i == j) for j in range(g.k)] for i in range(g.k)])
    return Automorphism(m, m)


def _entry_ranges(g: GroupSpec) -> list[range]:
    out = []
    for i in range(g.k):
        for j in range(g.k):
            d = _min_divisor(g, i, j)
            out.append(range(0, g.moduli[i], d))
    return out


def count_well_formed(g: GroupSpec) -> int:
    n = 1
    for r in _entry_ranges(g):
        n *= len(r)
    return n


def well_formed_matrices(g: GroupSpec):
    """All endomorphism matrices, row-major lexicographic order."""
    k = g.k
    for flat in itertools.product(*_entry_ranges(g)):
        yield tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))


def enumerate_aut(g: GroupSpec, budget: int = DEFAULT_AUT_BUDGET, chunk: int = 4096) -> list[Automorphism]:
    """Every automorphism, filtered by bijectivity, in lexicographic matrix order."""
    out: list[Automorphism] = []
    k = g.k
    mats = well_formed_matrices(g)
    while True:
        batch = list(itertools.islice(mats, chunk))
        if not batch:
            break
        arr = np.array(batch, dtype=np.int64)  # (B, k, k)
        img = np.einsum("bij,nj->bni", arr, g.coords) % g.mod_array
        perms = img @ g.strides  # (B, N)
        srt = np.sort(perms, axis=1)
        ok = ~(srt[:, 1:] == srt[:, :-1]).any(axis=1)
        for b in np.nonzero(ok)[0]:
            out.append(try_automorphism(Homomorphism(g, batch[b])))
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} automorphisms", count=len(out))
    return out


def _det_mod(m: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in m]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for r in range(c + 1, n):
            f = m[r][c] * inv % p
            for cc in range(c, n):
                m[r][cc] = (m[r][cc] - f * m[c][cc]) % p
    return det % p


def is_invertible_by_blocks(f: Homomorphism) -> bool:
    """Matrix criterion: each diagonal block of equal exponents is invertible mod p."""
    g = f.group
    for e in sorted(set(g.exponents)):
        ids = [i for i in range(g.k) if g.exponents[i] == e]
        block = [[f.matrix[i][j] for j in ids] for i in ids]
        if _det_mod(block, g.p) == 0:
            return False
    return True


def count_aut_by_blocks(g: GroupSpec) -> int:
    return sum(1 for m in well_formed_matrices(g) if is_invertible_by_blocks(Homomorphism(g, m)))


def _half(g: GroupSpec) -> int:
    return pow(2, -1, g.p ** g.exponent)


def eigensplit(eps: Automorphism) -> tuple[Subgroup, Subgroup]:
    """(A+, A-) via the idempotents (1 + eps)/2 and (1 - eps)/2."""
    g = eps.group
    if not (eps * eps).is_identity():
        raise NotInvolution(f"{eps} does not square to the identity")
    half = _half(g)
    c = g.coords
    ec = g.coords[eps.perm]
    plus = g.encode(((c + ec) * half) % g.mod_array)
    minus = g.encode(((c - ec) * half) % g.mod_array)
    return Subgroup(g, frozenset(plus.tolist())), Subgroup(g, frozenset(minus.tolist()))


@dataclass(frozen=True, eq=False)
class Involution:
    auto: Automorphism
    plus: Subgroup
    minus: Subgroup

    @property
    def key(self):
        return self.auto.key

    def side(self, name: str) -> Subgroup:
        return self.plus if name == PLUS else self.minus

    def __eq__(self, other):
        return isinstance(other, Involution) and self.auto == other.auto

    def __hash__(self):
        return hash(self.auto)

    def __repr__(self):
        return f"Involution({[list(r) for r in self.auto.matrix]})"


def make_involution(eps: Automorphism) -> Involution:
    plus, minus = eigensplit(eps)
    return Involution(eps, plus, minus)


def involutions(g: GroupSpec, auts: Sequence[Automorphism] | None = None,
                include_identity: bool = True) -> list[Involution]:
    """Automorphisms with eps^2 = id; the identity is kept unless asked otherwise."""
    if auts is None:
        auts = enumerate_aut(g)
    out = []
    for a in auts:
        if not (a * a).is_identity():
            continue
        if not include_identity and a.is_identity():
            continue
        out.append(make_involution(a))
    return out


@dataclass(frozen=True, eq=False)
class ExtremeInvolution:
    """An involution together with the side whose eigen-summand is the core."""

    inv: Involution
    side: str
    core: Subgroup
    perp: Subgroup

    @property
    def auto(self) -> Automorphism:
        return self.inv.auto

    @property
    def key(self):
        return (self.inv.key, self.side)

    @property
    def order(self) -> int:
        return self.core.size

    def __eq__(self, other):
        return isinstance(other, ExtremeInvolution) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Extreme({[list(r) for r in self.auto.matrix]}, {self.side}, |core|={self.core.size})"


def _indecomposable(h: Subgroup) -> bool:
    return not h.is_zero() and h.is_cyclic()


def designate(inv: Involution, side: str) -> ExtremeInvolution:
    core = inv.side(side)
    if not _indecomposable(core):
        raise NotExtreme(f"{side} side of {inv} is not nonzero cyclic")
    other = inv.minus if side == PLUS else inv.plus
    return ExtremeInvolution(inv, side, core, other)


def designations(inv: Involution) -> list[ExtremeInvolution]:
    """Every side of inv that can serve as a core (plus first)."""
    return [designate(inv, s) for s in (PLUS, MINUS) if _indecomposable(inv.side(s))]


def extreme_of(inv: Involution, tie: str = MINUS) -> ExtremeInvolution:
    """Default designation: the only cyclic side, else the smaller one, ties to `tie`."""
    cands = designations(inv)
    if not cands:
        raise NotExtreme(f"{inv} has no nonzero cyclic eigen-summand")
    if len(cands) == 1:
        return cands[0]
    plus, minus = cands
    if plus.core.size == minus.core.size:
        return plus if tie == PLUS else minus
    return plus if plus.core.size < minus.core.size else minus


def is_extreme(inv: Involution) -> bool:
    return bool(designations(inv))


def ord_of_extreme(eps: ExtremeInvolution) -> int:
    return eps.core.size


def commute(a: Automorphism, b: Automorphism) -> bool:
    return (a * b) == (b * a)


@dataclass(frozen=True, eq=False)
class Pair:
    xi: Involution
    eps: ExtremeInvolution
    side: str
    summand: Subgroup
    complement: Subgroup

    @property
    def key(self):
        return (self.xi.key, self.eps.key)

    def __eq__(self, other):
        return isinstance(other, Pair) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Pair(xi={[list(r) for r in self.xi.auto.matrix]}, eps={self.eps!r}, |summand|={self.summand.size})"


def make_pair(xi: Involution, eps: ExtremeInvolution) -> Pair:
    if not commute(xi.auto, eps.auto):
        raise NotCommuting("xi and eps do not commute")
    if eps.core <= xi.plus:
        return Pair(xi, eps, PLUS, xi.plus, xi.minus)
    if eps.core <= xi.minus:
        return Pair(xi, eps, MINUS, xi.minus, xi.plus)
    raise NeitherSideContains(f"core of {eps} lies in neither eigen-summand of {xi}")


def transvection_map(g: GroupSpec, basis: Sequence[Element], i: int, j: int, coeff: int = 1) -> Automorphism:
    """b_i -> b_i + coeff*b_j, other basis elements fixed."""
    if order_of(basis[i]) < order_of(basis[j]):
        raise OrderViolation(
            f"ord(b_{i + 1})={order_of(basis[i])} < ord(b_{j + 1})={order_of(basis[j])}"
        )
    images = list(basis)
    images[i] = basis[i] + coeff * basis[j]
    return try_automorphism(hom_from_images(g, basis, images))
