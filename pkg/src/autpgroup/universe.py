"""Cached quantifier domains over Aut(A) for one group.

Every automorphism handed out by a Universe is canonical (one object per
matrix), so values can be compared with ``is`` and used as cache keys by
``id``.  Cores of extreme involutions are interned as integer ids; the image
of a core under an automorphism is again a core, which gives an integer table.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .endo import (
    DEFAULT_AUT_BUDGET,
    MINUS,
    PLUS,
    Automorphism,
    ExtremeInvolution,
    Involution,
    Pair,
    commute,
    designations,
    enumerate_aut,
    extreme_of,
    involutions,
    make_pair,
)
from .errors import NotExtreme
from .groups import GroupSpec, Subgroup, subgroup_sum


class SideCandidate:
    """An (involution, side) choice whose side is NOT a nonzero cyclic summand.

    Only used to spell out the unguarded domain of extreme quantifiers.
    """

    def __init__(self, inv: Involution, side: str):
        self.inv = inv
        self.side = side

    @property
    def auto(self):
        return self.inv.auto

    def __repr__(self):
        return f"SideCandidate({[list(r) for r in self.auto.matrix]}, {self.side})"


class Universe:
    def __init__(self, group: GroupSpec, include_identity: bool = True,
                 aut_budget: int = DEFAULT_AUT_BUDGET, tie: str = MINUS):
        self.group = group
        self.include_identity = include_identity
        self.tie = tie
        self.aut_budget = aut_budget
        self._mul: dict[tuple[int, int], Automorphism] = {}
        self._core_image: dict[tuple[int, int], int] = {}
        self._sum_cache: dict[tuple[int, int], frozenset] = {}

    # automorphisms -------------------------------------------------------
    @cached_property
    def auts(self) -> list[Automorphism]:
        return enumerate_aut(self.group, budget=self.aut_budget)

    @cached_property
    def _by_perm(self) -> dict[bytes, Automorphism]:
        return {a.perm.tobytes(): a for a in self.auts}

    @cached_property
    def _aut_index(self) -> dict[int, int]:
        return {id(a): n for n, a in enumerate(self.auts)}

    def index(self, a: Automorphism) -> int:
        return self._aut_index[id(a)]

    def canonical(self, a: Automorphism) -> Automorphism:
        return self._by_perm[a.perm.tobytes()]

    @cached_property
    def identity(self) -> Automorphism:
        return self._by_perm[np.arange(self.group.size, dtype=np.int64).tobytes()]

    def mul(self, a: Automorphism, b: Automorphism) -> Automorphism:
        """a after b."""
        key = (id(a), id(b))
        r = self._mul.get(key)
        if r is None:
            r = self._by_perm[a.perm[b.perm].tobytes()]
            self._mul[key] = r
        return r

    def inv(self, a: Automorphism) -> Automorphism:
        return self.canonical(a.inv())

    def from_matrix(self, matrix) -> Automorphism:
        from .endo import hom_from_matrix, try_automorphism
        return self.canonical(try_automorphism(hom_from_matrix(self.group, matrix)))

    # involutions and extremes --------------------------------------------
    @cached_property
    def involutions(self) -> list[Involution]:
        return involutions(self.group, self.auts, include_identity=self.include_identity)

    @cached_property
    def _inv_of(self) -> dict[int, Involution]:
        return {id(i.auto): i for i in self.involutions}

    def involution_of(self, a: Automorphism) -> Involution | None:
        return self._inv_of.get(id(a))

    @cached_property
    def extremes(self) -> list[ExtremeInvolution]:
        """Every (involution, side) whose side is nonzero cyclic."""
        return [d for i in self.involutions for d in designations(i)]

    @cached_property
    def default_extremes(self) -> list[ExtremeInvolution]:
        out = []
        for i in self.involutions:
            try:
                out.append(self._ext_by_key[extreme_of(i, self.tie).key])
            except NotExtreme:
                pass
        return out

    @cached_property
    def side_candidates(self) -> list:
        """All (involution, side) choices, extreme or not, in a fixed order."""
        out = []
        for i in self.involutions:
            valid = {s: self._ext_by_key[(i.key, s)] for s in (PLUS, MINUS) if (i.key, s) in self._ext_by_key}
            for s in (PLUS, MINUS):
                out.append(valid.get(s) or SideCandidate(i, s))
        return out

    @cached_property
    def _ext_by_key(self) -> dict:
        return {e.key: e for e in self.extremes}

    def extreme(self, auto: Automorphism, side: str) -> ExtremeInvolution:
        return self._ext_by_key[(auto.key, side)]

    @cached_property
    def pairs(self) -> list[Pair]:
        out = []
        for xi in self.involutions:
            for e in self.extremes:
                if commute(xi.auto, e.auto):
                    out.append(make_pair(xi, e))
        return out

    def pair_components(self, xi: Automorphism) -> list[ExtremeInvolution]:
        """Extremes commuting with xi (the second slot of pairs over xi)."""
        return [e for e in self.extremes if self.mul(xi, e.auto) is self.mul(e.auto, xi)]

    @cached_property
    def distinct_pair_summands(self) -> list[Pair]:
        """One representative pair per distinct designated summand."""
        seen = {}
        for pr in self.pairs:
            seen.setdefault(pr.summand.idx, pr)
        return list(seen.values())

    # cores -----------------------------------------------------------------
    @cached_property
    def _core_ids(self) -> dict[frozenset, int]:
        ids: dict[frozenset, int] = {}
        for e in self.extremes:
            ids.setdefault(e.core.idx, len(ids))
        return ids

    @cached_property
    def cores(self) -> list[frozenset]:
        out = [None] * len(self._core_ids)
        for s, n in self._core_ids.items():
            out[n] = s
        return out

    def core_id(self, e: ExtremeInvolution) -> int:
        return self._core_ids[e.core.idx]

    def core_id_of_set(self, s: frozenset) -> int | None:
        return self._core_ids.get(s)

    def image_core(self, a: Automorphism, cid: int) -> int:
        key = (id(a), cid)
        r = self._core_image.get(key)
        if r is None:
            img = frozenset(a.perm[list(self.cores[cid])].tolist())
            r = self._core_ids[img]
            self._core_image[key] = r
        return r

    def core_sum(self, c1: int, c2: int) -> frozenset:
        key = (c1, c2) if c1 <= c2 else (c2, c1)
        r = self._sum_cache.get(key)
        if r is None:
            r = subgroup_sum([Subgroup(self.group, self.cores[c1]),
                              Subgroup(self.group, self.cores[c2])]).idx
            self._sum_cache[key] = r
        return r


_UNIVERSES: dict = {}


def universe_for(group: GroupSpec) -> Universe:
    """Shared Universe per group (default options)."""
    u = _UNIVERSES.get(group)
    if u is None:
        u = _UNIVERSES[group] = Universe(group)
    return u
