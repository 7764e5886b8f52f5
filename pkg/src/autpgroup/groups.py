"""Finite abelian p-groups Z(p^e1) + ... + Z(p^ek), their elements and subgroups.

Elements are addressed by a mixed-radix index (first coordinate most
significant), so sorting indices sorts coordinate vectors lexicographically.
Subgroups are stored as frozensets of indices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, BudgetExceeded, EmptyExponents, NotOddPrime

DEFAULT_SIZE_BUDGET = 3 ** 8


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    p: int
    exponents: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.exponents)

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p ** e for e in self.exponents)

    @cached_property
    def size(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    @property
    def exponent(self) -> int:
        """Largest e_i; p**exponent annihilates the group."""
        return max(self.exponents)

    @cached_property
    def strides(self) -> np.ndarray:
        s = [1] * self.k
        for i in range(self.k - 2, -1, -1):
            s[i] = s[i + 1] * self.moduli[i + 1]
        return np.array(s, dtype=np.int64)

    @cached_property
    def mod_array(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """All elements as an (N, k) coordinate array, row r is element index r."""
        idx = np.arange(self.size, dtype=np.int64)
        return (idx[:, None] // self.strides[None, :]) % self.mod_array[None, :]

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Coordinate rows (already reduced) -> element indices."""
        return coords @ self.strides

    def index_of(self, coords: Sequence[int]) -> int:
        return int(sum((c % m) * int(s) for c, m, s in zip(coords, self.moduli, self.strides)))

    def element(self, coords: Sequence[int]) -> "Element":
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        return Element(self, tuple(int(c) % m for c, m in zip(coords, self.moduli)))

    def element_at(self, index: int) -> "Element":
        return Element(self, tuple(int(c) for c in self.coords[index]))

    def zero(self) -> "Element":
        return Element(self, (0,) * self.k)

    def generator(self, i: int) -> "Element":
        """The i-th standard generator g_i (0-based)."""
        c = [0] * self.k
        c[i] = 1
        return Element(self, tuple(c))

    def generators(self) -> list["Element"]:
        return [self.generator(i) for i in range(self.k)]

    def elements(self) -> list["Element"]:
        return [self.element_at(i) for i in range(self.size)]

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.size)), tuple(self.generators()))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]), ())

    @cached_property
    def order_table(self) -> np.ndarray:
        """order_table[i] is the order of element i."""
        orders = np.ones(self.size, dtype=np.int64)
        cur = self.coords.copy()
        nonzero = cur.any(axis=1)
        while nonzero.any():
            orders[nonzero] *= self.p
            cur = (cur * self.p) % self.mod_array
            nonzero = cur.any(axis=1)
        return orders

    def scaled_indices(self, idx: np.ndarray, n: int) -> np.ndarray:
        return self.encode((self.coords[idx] * n) % self.mod_array)

    def describe(self) -> str:
        return " + ".join(f"Z{m}" for m in self.moduli)

    def __repr__(self):
        return f"GroupSpec(p={self.p}, exponents={list(self.exponents)})"


def make_group(p: int, exponents: Iterable[int], budget: int = DEFAULT_SIZE_BUDGET) -> GroupSpec:
    exps = sorted(int(e) for e in exponents)
    if not _is_prime(p) or p == 2:
        raise NotOddPrime(f"p={p} is not an odd prime")
    if not exps:
        raise EmptyExponents("exponent list is empty")
    if any(e < 1 for e in exps):
        raise ValueError(f"exponents must be positive, got {exps}")
    size = p ** sum(exps)
    if size > budget:
        raise BudgetExceeded(f"group of size {size} exceeds budget {budget}", count=size)
    return GroupSpec(p, tuple(exps))


@dataclass(frozen=True)
class Element:
    group: GroupSpec
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def __add__(self, other: "Element") -> "Element":
        return elem_add(self, other)

    def __neg__(self) -> "Element":
        return elem_neg(self)

    def __sub__(self, other: "Element") -> "Element":
        return elem_add(self, elem_neg(other))

    def __rmul__(self, n: int) -> "Element":
        return scalar_mul(n, self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"Element{self.coords}"


def _same(a: Element, b: Element):
    if a.group != b.group:
        raise AmbientMismatch(f"{a.group} vs {b.group}")


def elem_add(a: Element, b: Element) -> Element:
    _same(a, b)
    return Element(a.group, tuple((x + y) % m for x, y, m in zip(a.coords, b.coords, a.group.moduli)))


def elem_neg(a: Element) -> Element:
    return Element(a.group, tuple((-x) % m for x, m in zip(a.coords, a.group.moduli)))


def scalar_mul(n: int, a: Element) -> Element:
    return Element(a.group, tuple((n * x) % m for x, m in zip(a.coords, a.group.moduli)))


def order_of(a: Element) -> int:
    """Smallest p**m with p**m * a == 0."""
    n = 1
    cur = a
    while not cur.is_zero():
        cur = scalar_mul(a.group.p, cur)
        n *= a.group.p
    return n


class Subgroup:
    """A subgroup stored canonically as its set of element indices.

    Two subgroups are equal iff they have the same ambient group and the same
    element set; the generating list is kept only for display.
    """

    __slots__ = ("group", "idx", "generators", "_sorted", "_factors")

    def __init__(self, group: GroupSpec, idx: frozenset, generators: tuple = ()):
        self.group = group
        self.idx = idx
        self.generators = tuple(generators)
        self._sorted = None
        self._factors = None

    @property
    def size(self) -> int:
        return len(self.idx)

    def __len__(self):
        return len(self.idx)

    @property
    def sorted_indices(self) -> tuple[int, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.idx))
        return self._sorted

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(self.group.element_at(i) for i in self.sorted_indices)

    def __contains__(self, a: Element) -> bool:
        return a.group == self.group and a.index in self.idx

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group == other.group and self.idx == other.idx

    def __hash__(self):
        return hash((self.group, self.idx))

    def __le__(self, other: "Subgroup") -> bool:
        _check_ambient([self, other])
        return self.idx <= other.idx

    def __lt__(self, other: "Subgroup") -> bool:
        _check_ambient([self, other])
        return self.idx < other.idx

    def __and__(self, other: "Subgroup") -> "Subgroup":
        _check_ambient([self, other])
        return Subgroup(self.group, self.idx & other.idx)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_sum([self, other])

    def is_zero(self) -> bool:
        return len(self.idx) == 1

    def scaled(self, n: int) -> "Subgroup":
        """n*H."""
        arr = np.fromiter(self.idx, dtype=np.int64, count=len(self.idx))
        return Subgroup(self.group, frozenset(self.group.scaled_indices(arr, n).tolist()))

    def invariant_factors(self) -> tuple[int, ...]:
        if self._factors is None:
            self._factors = invariant_factors(self)
        return self._factors

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors()) <= 1

    def exponent(self) -> int:
        """Largest element order in H."""
        return int(self.group.order_table[list(self.idx)].max())

    def __repr__(self):
        if len(self.idx) <= 9:
            return "Subgroup{" + ", ".join(str(e.coords) for e in self.elements) + "}"
        return f"Subgroup(size={self.size}, factors={list(self.invariant_factors())})"


def _check_ambient(parts):
    groups = {h.group for h in parts}
    if len(groups) > 1:
        raise AmbientMismatch("subgroups live in different groups")


def _sumset(group: GroupSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    c = (group.coords[a][:, None, :] + group.coords[b][None, :, :]) % group.mod_array
    return np.unique(group.encode(c.reshape(-1, group.k)))


def _cyclic_indices(a: Element) -> np.ndarray:
    g = a.group
    n = order_of(a)
    mult = np.arange(n, dtype=np.int64)[:, None] * np.array(a.coords, dtype=np.int64)[None, :]
    return g.encode(mult % g.mod_array)


def span(gens: Sequence[Element], group: GroupSpec | None = None) -> Subgroup:
    """Subgroup of all integer combinations of gens."""
    gens = list(gens)
    if group is None:
        if not gens:
            raise ValueError("span of an empty list needs the ambient group")
        group = gens[0].group
    for x in gens:
        if x.group != group:
            raise AmbientMismatch("generators live in different groups")
    cur = np.array([0], dtype=np.int64)
    for x in gens:
        cur = _sumset(group, cur, _cyclic_indices(x))
    return Subgroup(group, frozenset(cur.tolist()), tuple(gens))


def subgroup_sum(parts: Sequence[Subgroup]) -> Subgroup:
    _check_ambient(parts)
    group = parts[0].group
    cur = np.array([0], dtype=np.int64)
    for h in parts:
        cur = _sumset(group, cur, np.fromiter(h.idx, dtype=np.int64))
    gens = tuple(g for h in parts for g in h.generators)
    return Subgroup(group, frozenset(cur.tolist()), gens)


def is_subgroup(group: GroupSpec, idx: frozenset) -> bool:
    """Closure check on all pairs; used by tests as an oracle."""
    if 0 not in idx:
        return False
    arr = np.fromiter(idx, dtype=np.int64)
    return set(_sumset(group, arr, arr).tolist()) <= idx


def is_pure(h: Subgroup) -> bool:
    """n*H == H & n*A for n = p, p^2, ..., p^exponent."""
    g = h.group
    whole = g.whole()
    n = 1
    for _ in range(g.exponent):
        n *= g.p
        if h.scaled(n) != (h & whole.scaled(n)):
            return False
    return True


def is_direct_sum(parts: Sequence[Subgroup]) -> bool:
    """Directness of the listed parts only; whether they exhaust A is separate."""
    if not parts:
        return True
    total = subgroup_sum(parts)
    prod = 1
    for h in parts:
        prod *= h.size
    return total.size == prod


def decomposes(parts: Sequence[Subgroup]) -> bool:
    """Parts form a direct decomposition of the whole ambient group."""
    return is_direct_sum(parts) and subgroup_sum(parts).size == parts[0].group.size


def invariant_factors(h: Subgroup) -> tuple[int, ...]:
    """Exponents (m_1 <= ... <= m_r) with H = sum of Z(p^m_i).

    The number of m_i exceeding j equals log_p |p^j H| / |p^(j+1) H|.
    """
    g = h.group
    sizes = [h.size]
    cur = h
    while cur.size > 1:
        cur = cur.scaled(g.p)
        sizes.append(cur.size)
    counts = []
    for j in range(len(sizes) - 1):
        ratio = sizes[j] // sizes[j + 1]
        r = 0
        while ratio > 1:
            ratio //= g.p
            r += 1
        counts.append(r)
    # counts[j] = #{m_i > j}
    factors = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        factors.extend([j + 1] * (c - nxt))
    return tuple(sorted(factors))


def rank(h: Subgroup) -> int:
    return len(h.invariant_factors())


def cyclic_decomposition(h: Subgroup) -> list[Element]:
    """Elements b_1, ..., b_r with H the direct sum of the <b_i>.

    Greedy: repeatedly lift a coset of maximal order in H/S to an element of
    the same order, which then meets S trivially.
    """
    g = h.group
    basis: list[Element] = []
    s = g.trivial()
    members = sorted(h.idx)
    while s.size < h.size:
        best = None
        best_q = 0
        for i in members:
            if i in s.idx:
                continue
            x = g.element_at(i)
            q, cur = 1, x
            while cur.index not in s.idx:
                cur = scalar_mul(g.p, cur)
                q *= g.p
            if q > best_q:
                best, best_q = x, q
        lifted = None
        for si in sorted(s.idx):
            cand = best + g.element_at(si)
            if order_of(cand) == best_q:
                lifted = cand
                break
        assert lifted is not None
        basis.append(lifted)
        s = subgroup_sum([s, span([lifted])])
    return basis


def all_subgroups(group: GroupSpec) -> list[Subgroup]:
    """Full subgroup lattice, ordered by (size, sorted element indices)."""
    found = {group.trivial().idx: group.trivial()}
    frontier = [group.trivial()]
    while frontier:
        nxt = []
        for h in frontier:
            for i in range(group.size):
                if i in h.idx:
                    continue
                bigger = subgroup_sum([h, span([group.element_at(i)])])
                if bigger.idx not in found:
                    found[bigger.idx] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.size, s.sorted_indices))


def is_p_divisible_quotient(b: Subgroup) -> bool:
    """A/B is p-divisible, checked on explicit coset representatives."""
    g = b.group
    reps = {}
    for i in range(g.size):
        key = min(_coset(g, i, b))
        reps.setdefault(key, i)
    pa = g.whole().scaled(g.p)
    pa_plus_b = subgroup_sum([pa, b])
    # coset a+B is divisible by p iff it meets pA
    return all(r in pa_plus_b.idx for r in reps.values())


def _coset(g: GroupSpec, i: int, b: Subgroup) -> list[int]:
    arr = np.fromiter(b.idx, dtype=np.int64)
    return _sumset(g, np.array([i]), arr).tolist()


def is_direct_summand(s: Subgroup) -> bool:
    """At finite scale a subgroup is a direct summand iff it is pure."""
    return is_pure(s)


def is_bounded_by(s: Subgroup, n: int) -> bool:
    return s.scaled(s.group.p ** n).is_zero()


def is_maximal_bounded_summand(s: Subgroup, n: int) -> bool:
    """S is a p^n-bounded direct summand not properly inside another one.

    With A = S + T, maximality holds iff T has no cyclic summand of exponent
    at most n, i.e. S takes every invariant factor of A that is <= n.
    """
    if not is_bounded_by(s, n) or not is_direct_summand(s):
        return False
    small = tuple(m for m in s.group.exponents if m <= n)
    return s.invariant_factors() == small


def is_basic_subgroup(b: Subgroup, route: str = "definition") -> bool:
    if route == "definition":
        return is_pure(b) and is_p_divisible_quotient(b)
    if route == "max-bounded":
        return _basic_by_truncations(b)
    raise ValueError(f"unknown route {route!r}")


def _basic_by_truncations(b: Subgroup) -> bool:
    g = b.group
    basis = cyclic_decomposition(b)
    for n in range(1, g.exponent + 1):
        trunc = span([x for x in basis if order_of(x) <= g.p ** n], group=g)
        if not is_maximal_bounded_summand(trunc, n):
            return False
    return True


# group definition files ----------------------------------------------------------
class GroupFileError(ValueError):
    pass


def parse_group_text(text: str) -> tuple[int, list[int]]:
    """(p, exponents) from a JSON object or key=value lines.

    key=value form: ``p=3`` and ``exponents=1,2`` (brackets and spaces are
    tolerated); ``;`` also separates records and ``#`` starts a comment.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupFileError(f"bad JSON: {exc}") from None
    else:
        data = {}
        for n, line in enumerate(text.replace(";", "\n").splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise GroupFileError(f"line {n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            if k == "exponents":
                v = [s for s in v.strip("[]").replace(",", " ").split()]
            data[k] = v
    missing = {"p", "exponents"} - set(data)
    if missing:
        raise GroupFileError(f"missing fields: {sorted(missing)}")
    unknown = set(data) - {"p", "exponents"}
    if unknown:
        raise GroupFileError(f"unknown fields: {sorted(unknown)}")
    try:
        p = int(data["p"])
        exps = [int(e) for e in data["exponents"]]
    except (TypeError, ValueError):
        raise GroupFileError("p must be an integer and exponents a list of integers") from None
    return p, exps


def load_group(source: str, budget: int = DEFAULT_SIZE_BUDGET) -> GroupSpec:
    """Group from a file path, or from inline JSON / key=value text."""
    import os
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    elif not ("=" in source or source.lstrip().startswith("{")):
        raise GroupFileError(f"no such group file: {source}")
    p, exps = parse_group_text(source)
    return make_group(p, exps, budget)
