"""Verification suites run by the CLI.

A suite is a function (SuiteContext) -> list[Check].  Checks carry the two
truth values being compared and whether they agree.  Timing is kept apart
from the check body so report bodies are reproducible.
"""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable, Optional

from .errors import AutGroupError, BudgetExceeded, OrderViolation
from .groups import GroupSpec, cyclic_decomposition, order_of
from .predicates import basic, encoding
from .predicates.catalog import CATALOG, agreement, describe_value, sample_product
from .predicates.families import (
    canonical_family,
    commutator,
    family_failures,
    conjugation_sweep,
    transvection,
)
from .predicates.primitives import run_corpus
from .predicates.relations import (
    rel_in_sum,
    rel_maps_to,
    rel_ord,
    rel_pair_cap,
    rel_pair_complement,
    rel_pair_eq,
    rel_pair_subset,
)
from .universe import Universe

DEFAULT_LIMIT = 200


def _anchors() -> dict[str, str]:
    return json.loads((resources.files(__package__) / "data" / "anchors.json").read_text(encoding="utf-8"))


ANCHORS = _anchors()


@dataclass
class Check:
    id: str
    anchor: str
    formula: Any = None
    oracle: Any = None
    agree: bool = True
    informational: bool = False  # recorded, never fails the suite
    substitutions: int = 0
    witness: Optional[list] = None
    details: dict = field(default_factory=dict)
    error: Optional[str] = None
    budget_exceeded: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        # informational checks may disagree, but errors always fail
        return self.error is None and (self.informational or self.agree)

    def body(self) -> dict:
        d = {
            "id": self.id, "ref": ANCHORS.get(self.anchor, self.anchor),
            "formula": self.formula, "oracle": self.oracle, "agree": self.agree,
            "informational": self.informational, "substitutions": self.substitutions,
            "witness": self.witness, "details": self.details, "passed": self.passed,
        }
        if self.error is not None:
            d["error"] = self.error
            d["budget_exceeded"] = self.budget_exceeded
        return d


@dataclass
class SuiteContext:
    universe: Universe
    budget: int
    limit: Optional[int] = DEFAULT_LIMIT
    zero_convention: bool = True
    similar: str = "enc_eq"

    @property
    def group(self) -> GroupSpec:
        return self.universe.group


def _guarded(cid: str, anchor: str, fn: Callable[[], Check]) -> Check:
    """Run fn, turning library errors into failed checks."""
    t = time.perf_counter()
    try:
        c = fn()
    except BudgetExceeded as exc:
        c = Check(cid, anchor, agree=False, error=f"BudgetExceeded: {exc}", budget_exceeded=True)
    except AutGroupError as exc:
        c = Check(cid, anchor, agree=False, error=f"{type(exc).__name__}: {exc}")
    c.elapsed = time.perf_counter() - t
    return c


def _count_check(cid: str, anchor: str, rows, informational: bool = False) -> Check:
    """Aggregate (formula value, oracle value, description) rows into one check."""
    n = ft = ot = mism = 0
    examples = []
    for fval, oval, desc in rows:
        n += 1
        ft += bool(fval)
        ot += bool(oval)
        if fval != oval:
            mism += 1
            if len(examples) < 5:
                examples.append(desc)
    return Check(cid, anchor, formula=ft, oracle=ot, agree=mism == 0, informational=informational,
                 details={"cases": n, "mismatches": mism, "examples": examples})


# relations ---------------------------------------------------------------------
def suite_relations(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe
    out = []

    def maps_to():
        subs = 0
        rows = []
        for f, e1, e2 in sample_product([u.auts, u.extremes, u.extremes], None):
            r = run_corpus("MapsTo", u, {"f": f, "e1": e1, "e2": e2}, budget=ctx.budget)
            subs += r.substitutions
            rows.append((r.value, rel_maps_to(f, e1, e2),
                         [describe_value(f), describe_value(e1), describe_value(e2)]))
        c = _count_check("relations.maps_to.mode_agreement", "relations.maps_to", rows)
        c.substitutions = subs
        return c
    out.append(_guarded("relations.maps_to.mode_agreement", "relations.maps_to", maps_to))

    def in_sum():
        # the sum of two commuting cores contains both, and no core outside it
        n = bad = 0
        for e1, e2 in itertools.product(u.extremes, repeat=2):
            if not (u.mul(e1.auto, e2.auto) is u.mul(e2.auto, e1.auto)):
                continue
            n += 1
            bad += not rel_in_sum(e1, e1, e2) or not rel_in_sum(e2, e1, e2)
        return Check("relations.in_sum.contains_summands", "relations.in_sum", formula=n - bad, oracle=n,
                     agree=bad == 0, details={"cases": n})
    out.append(_guarded("relations.in_sum.contains_summands", "relations.in_sum", in_sum))

    def pairs():
        prs = u.distinct_pair_summands
        bad = []
        for p1 in prs:
            if not rel_pair_eq(p1, p1):
                bad.append("pair_eq not reflexive")
            if not any(rel_pair_complement(p1, p2) for p2 in u.pairs) and p1.complement.size > 1:
                bad.append("complement pair missing")
            for p2 in prs:
                both = rel_pair_subset(p1, p2) and rel_pair_subset(p2, p1)
                if both != rel_pair_eq(p1, p2):
                    bad.append("subset antisymmetry")
                cap = [p3 for p3 in prs if rel_pair_cap(p1, p2, p3)]
                if cap and cap[0].summand != (p1.summand & p2.summand):
                    bad.append("cap mismatch")
        return Check("relations.pairs.consistency", "relations.pairs", formula=len(bad), oracle=0,
                     agree=not bad, details={"summands": len(prs), "problems": sorted(set(bad))})
    out.append(_guarded("relations.pairs.consistency", "relations.pairs", pairs))

    def ord_preorder():
        ex = u.extremes
        ok = all(rel_ord(a, b, "le") or rel_ord(b, a, "le") for a in ex for b in ex)
        ok &= not any(rel_ord(a, a, "lt") for a in ex)
        return Check("relations.ord.total_preorder", "relations.ord", formula=ok, oracle=True, agree=ok)
    out.append(_guarded("relations.ord.total_preorder", "relations.ord", ord_preorder))
    return out


# splits ---------------------------------------------------------------------------
def suite_lemma1(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe
    out = []

    def byord():
        rows = [(basic.by_ord(pr, "formula", u, ctx.budget), basic.by_ord(pr, "semantic"), describe_value(pr.eps))
                for pr in u.pairs]
        return _count_check("lemma1.by_ord.mode_agreement", "lemma1.by_ord", rows)
    out.append(_guarded("lemma1.by_ord.mode_agreement", "lemma1.by_ord", byord))

    def byord_lit():
        rows = [(basic.by_ord(pr, "literal", u, ctx.budget), basic.by_ord(pr, "semantic"), describe_value(pr.eps))
                for pr in u.pairs]
        return _count_check("lemma1.by_ord.literal_reading", "lemma1.by_ord_literal", rows, informational=True)
    out.append(_guarded("lemma1.by_ord.literal_reading", "lemma1.by_ord_literal", byord_lit))

    def final():
        rows, subs, wit = [], 0, None
        for pr in u.distinct_pair_summands:
            r = basic.final_pair(pr, u, ctx.budget)
            subs += r.substitutions
            if r.value and wit is None and r.witnesses:
                wit = [[k, describe_value(v)] for k, v in r.witnesses]
            rows.append((r.value, basic.final_pair_direct(pr, u), list(pr.summand.invariant_factors())))
        c = _count_check("lemma1.final.second_transcription", "lemma1.final", rows)
        c.substitutions, c.witness = subs, wit
        return c
    out.append(_guarded("lemma1.final.second_transcription", "lemma1.final", final))
    return out


def order_drop_cases(u: Universe) -> list[tuple[str, Any, Any]]:
    """(label, nu, split) for order-dropping automorphisms on every split."""
    g = u.group
    cases = []
    for s_no, split in enumerate(u.distinct_pair_summands):
        fin = cyclic_decomposition(split.summand)
        low = cyclic_decomposition(split.complement)
        gens = fin + low
        for i, b in enumerate(fin):
            for c in gens:
                if c is b or order_of(c) >= order_of(b):
                    continue
                try:
                    nu = u.canonical(basic.order_drop_nu(g, split, {i: c}))
                except AutGroupError:
                    continue
                label = f"split{s_no}.b{i}+{list(c.coords)}"
                cases.append((label, nu, split))
    return cases


def suite_inbase(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe
    out = []
    cases = order_drop_cases(u)
    for label, nu, split in cases:
        cid = f"inbase.witness.{label}"

        def run(nu=nu, split=split, cid=cid):
            got = sorted(c.sorted_indices for c in basic.in_base_cores(nu, split, u, ctx.budget))
            pred = sorted(c.sorted_indices for c in basic.predicted_base_cores(nu, split, u))
            b = basic.collect_B(nu, split, u, ctx.budget)
            return Check(cid, "inbase.witness", formula=len(got), oracle=len(pred), agree=got == pred,
                         details={"nu": describe_value(nu), "B_nu_factors": list(b.invariant_factors()),
                                  "B_nu_size": b.size})
        out.append(_guarded(cid, "inbase.witness", run))
    if not cases:
        out.append(Check("inbase.witness.none", "inbase.witness", informational=True,
                         details={"reason": "no generator admits an order-dropping image"}))

    def lit():
        rows = []
        for label, nu, split in cases:
            a = [c.idx for c in basic.in_base_cores(nu, split, u, ctx.budget, literal=True)]
            b = [c.idx for c in basic.in_base_cores(nu, split, u, ctx.budget)]
            rows.append((len(a), len(b), label))
        return _count_check("inbase.literal_reading", "inbase.literal", rows, informational=True)
    out.append(_guarded("inbase.literal_reading", "inbase.literal", lit))
    out.append(_agreement_check(ctx, "InBase", "inbase.agreement"))
    return out


def suite_isbase(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe
    out = []
    nus = [("identity", u.identity, basic.whole_split(u))] + order_drop_cases(u)
    for label, nu, split in nus:
        cid = f"isbase.strict.{label}"

        def run(nu=nu, split=split, cid=cid):
            f = basic.is_base(nu, split, "formula", u, ctx.budget)
            s = basic.is_base(nu, split, "semantic", u, ctx.budget)
            lit = basic.is_base(nu, split, "literal", u, ctx.budget)
            return Check(cid, "isbase.strict", formula=f, oracle=s, agree=f == s,
                         details={"literal_reading": lit})
        out.append(_guarded(cid, "isbase.strict", run))

    def rests():
        rows = []
        for pr, e in sample_product([u.pairs, u.extremes], ctx.limit):
            rows.append(((basic.rest(pr, e, "formula", u, ctx.budget), basic.max_rest(pr, e, "formula", u, ctx.budget)),
                         (basic.rest(pr, e, "semantic"), basic.max_rest(pr, e, "semantic")),
                         describe_value(e)))
        return _count_check("isbase.rest_max_rest.mode_agreement", "isbase.rest", rows)
    out.append(_guarded("isbase.rest_max_rest.mode_agreement", "isbase.rest", rests))
    return out


# families ---------------------------------------------------------------------------
def suite_lemma5(ctx: SuiteContext) -> list[Check]:
    fam = canonical_family(ctx.group)
    if fam.rank < 3:
        return [Check("lemma5.skipped", "lemma5.equivalence", informational=True,
                      details={"reason": "needs at least three basis summands"})]
    out = []

    t = time.perf_counter()
    try:
        r = conjugation_sweep(fam, include_low=True)
    except AutGroupError as exc:
        return [Check("lemma5.equivalence", "lemma5.equivalence", agree=False, error=str(exc))]
    el = time.perf_counter() - t
    out.append(Check("lemma5.equivalence", "lemma5.equivalence", formula=r["tuples"] - len(r["equivalence_failures"]),
                     oracle=r["tuples"], agree=not r["equivalence_failures"],
                     details={"tuples": r["tuples"], "failures": r["equivalence_failures"][:5]}, elapsed=el))
    out.append(Check("lemma5.image_identity", "lemma5.identity", formula=r["tuples"] - len(r["identity_failures"]),
                     oracle=r["tuples"], agree=not r["identity_failures"],
                     details={"failures": r["identity_failures"][:5]}))
    low = r["low_order_counterexamples"]
    out.append(Check("lemma5.low_order_triples", "lemma5.low_order", formula=len(low), oracle=0,
                     agree=not low, informational=True,
                     details={"counterexamples": len(low), "examples": [list(x) for x in low[:3]]}))
    return out


def suite_transvections(ctx: SuiteContext) -> list[Check]:
    g = ctx.group
    fam = canonical_family(g)
    out = []
    fails = family_failures(fam)
    out.append(Check("transvections.family_check", "transvections.shape", formula=not fails, oracle=True,
                     agree=not fails, details={"maps": len(fam.maps), "failures": fails[:5]}))
    for i, j, k in itertools.permutations(range(fam.rank), 3):
        if not all(key in fam.maps for key in ((i, j), (j, k), (i, k))):
            continue
        ok = commutator(fam, i, j, k) == fam.maps[(i, k)]
        out.append(Check(f"transvections.commutator.{i + 1}{j + 1}{k + 1}", "transvections.commutator",
                         formula=ok, oracle=True, agree=ok))
    # mutating any single map must break the family
    mutated = []
    for (i, j) in sorted(fam.maps):
        m = fam.with_map(i, j, transvection(g, fam.elements, i, j, 2))
        mutated.append(((i, j), not family_failures(m)))
    has_triples = any(True for t in itertools.permutations(range(fam.rank), 3)
                      if all(key in fam.maps for key in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2]))))
    if has_triples:
        caught = [ij for ij, passed in mutated if not passed]
        out.append(Check("transvections.mutation_detected", "transvections.mutation", formula=len(caught),
                         oracle=len(mutated), agree=len(caught) == len(mutated),
                         details={"mutations": len(mutated), "detected": len(caught),
                                  "undetected": [list(ij) for ij, p in mutated if p]}))
    # the order requirement
    neg = 0
    tried = 0
    for i, j in itertools.permutations(range(fam.rank), 2):
        if fam.order(i) < fam.order(j):
            tried += 1
            try:
                transvection(g, fam.elements, i, j)
            except OrderViolation:
                neg += 1
    out.append(Check("transvections.order_violation", "transvections.order", formula=neg, oracle=tried,
                     agree=neg == tried, details={"ill_defined_pairs": tried}))
    return out


# encoding ---------------------------------------------------------------------------
def suite_encoding(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe
    fam = canonical_family(ctx.group)
    out = []
    out.append(Check("encoding.zero_convention", "encoding.zero", formula=ctx.zero_convention,
                     oracle=ctx.zero_convention, informational=True,
                     details={"identity_encodes_zero": ctx.zero_convention, "similarity": ctx.similar}))

    def selection():
        rows = [(encoding.is_encoder(f, fam, "formula", u, ctx.budget), encoding.is_encoder(f, fam, "semantic", u),
                 describe_value(f)) for f in u.auts]
        return _count_check("encoding.selection.mode_agreement", "encoding.selection", rows)
    out.append(_guarded("encoding.selection.mode_agreement", "encoding.selection", selection))

    def roundtrip():
        n = bad = 0
        for i in range(fam.rank):
            for a in encoding.encodable(fam, i):
                n += 1
                bad += encoding.decode(encoding.encode(a, fam, i), fam) != a
        return Check("encoding.roundtrip", "encoding.roundtrip", formula=n - bad, oracle=n, agree=bad == 0)
    out.append(_guarded("encoding.roundtrip", "encoding.roundtrip", roundtrip))

    for i in range(fam.rank):
        encs = [u.canonical(encoding.encode(a, fam, i)) for a in encoding.encodable(fam, i, ctx.zero_convention)]
        if len(encs) <= 1:
            continue

        def eq(encs=encs, i=i):
            rows = [(_enc_eq(ctx, fam, f1, f2), encoding.decode(f1, fam) == encoding.decode(f2, fam),
                     [describe_value(f1), describe_value(f2)])
                    for f1, f2 in itertools.product(encs, repeat=2)]
            return _count_check(f"encoding.enc_eq.carrier{i + 1}", "encoding.enc_eq", rows)
        out.append(_guarded(f"encoding.enc_eq.carrier{i + 1}", "encoding.enc_eq", eq))

        def add(encs=encs, i=i):
            rows = [(_enc_add(ctx, fam, f1, f2, f3),
                     encoding.decode(f1, fam) + encoding.decode(f2, fam) == encoding.decode(f3, fam),
                     [describe_value(f1), describe_value(f2), describe_value(f3)])
                    for f1, f2, f3 in sample_product([encs] * 3, None)]
            return _count_check(f"encoding.enc_add.carrier{i + 1}", "encoding.enc_add", rows)
        out.append(_guarded(f"encoding.enc_add.carrier{i + 1}", "encoding.enc_add", add))

    def cross():
        # the same element encoded on two carriers
        rows = []
        for i, j in itertools.permutations(range(fam.rank), 2):
            on_j = {a.index for a in encoding.encodable(fam, j, False)}
            for a in encoding.encodable(fam, i, False):
                if a.index in on_j:
                    f1 = u.canonical(encoding.encode(a, fam, i))
                    f2 = u.canonical(encoding.encode(a, fam, j))
                    rows.append((_enc_eq(ctx, fam, f1, f2), True, [i + 1, j + 1, list(a.coords)]))
        return _count_check("encoding.enc_eq.cross_carrier", "encoding.cross_carrier", rows, informational=True)
    out.append(_guarded("encoding.enc_eq.cross_carrier", "encoding.cross_carrier", cross))
    return out


def _enc_opts(ctx, fam):
    return {"family": fam, "zero_convention": ctx.zero_convention, "similar": ctx.similar}


def _enc_eq(ctx, fam, f1, f2) -> bool:
    return run_corpus("EncEq", ctx.universe, {"f1": f1, "f2": f2}, budget=ctx.budget,
                      options=_enc_opts(ctx, fam)).value


def _enc_add(ctx, fam, f1, f2, f3) -> bool:
    return run_corpus("EncAdd", ctx.universe, {"f1": f1, "f2": f2, "f3": f3}, budget=ctx.budget,
                      options=_enc_opts(ctx, fam)).value


def suite_sim(ctx: SuiteContext) -> list[Check]:
    u = ctx.universe

    def run():
        rows = []
        for f1, f2, pr in sample_product([u.auts, u.auts, u.distinct_pair_summands], ctx.limit):
            rows.append((encoding.sim(f1, f2, pr, "formula", u, ctx.budget), encoding.sim(f1, f2, pr, "semantic", u),
                         [describe_value(f1), describe_value(f2)]))
        return _count_check("sim.mode_agreement", "sim.agreement", rows)
    return [_guarded("sim.mode_agreement", "sim.agreement", run)]


def _agreement_check(ctx: SuiteContext, name: str, anchor: str, compare_to: str = "oracle") -> Check:
    cid = f"folang.{name}.{'module' if compare_to == 'oracle' else 'unguarded'}"

    def run():
        r = agreement(name, ctx.universe, limit=ctx.limit, compare_to=compare_to, budget=ctx.budget)
        return Check(cid, anchor, formula=r.checked - len(r.mismatches), oracle=r.checked, agree=r.ok,
                     substitutions=r.substitutions,
                     details={"bindings": r.checked, "mismatches": len(r.mismatches),
                              "examples": [m[0] for m in r.mismatches[:3]]})
    return _guarded(cid, anchor, run)


def suite_folang(ctx: SuiteContext) -> list[Check]:
    out = []
    for name in CATALOG:
        out.append(_agreement_check(ctx, name, "folang.agreement"))
        out.append(_agreement_check(ctx, name, "folang.guards", compare_to="unguarded"))
    return out


SUITES: dict[str, Callable[[SuiteContext], list[Check]]] = {
    "relations": suite_relations,
    "lemma1": suite_lemma1,
    "inbase": suite_inbase,
    "isbase": suite_isbase,
    "lemma5": suite_lemma5,
    "transvections": suite_transvections,
    "encoding": suite_encoding,
    "sim": suite_sim,
    "folang-agreement": suite_folang,
}


def run_suite(name: str, ctx: SuiteContext) -> list[tuple[str, list[Check]]]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}")
        out.append((n, SUITES[n](ctx)))
    return out


__all__ = ["Check", "SuiteContext", "SUITES", "run_suite"]
