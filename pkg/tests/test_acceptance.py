"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line; the
terminal summary repeats them in order (see conftest.py)."""
import itertools
import json

import pytest

from autpgroup.cli import main as cli_main
from autpgroup.endo import (
    count_aut_by_blocks,
    designations,
    enumerate_aut,
    extreme_of,
    is_extreme,
)
from autpgroup.errors import NotExtreme
from autpgroup.groups import all_subgroups, is_basic_subgroup, make_group, order_of
from autpgroup.predicates import basic, encoding
from autpgroup.predicates.catalog import CATALOG, agreement
from autpgroup.predicates.families import (
    canonical_family,
    commutator,
    family_check,
    conjugation_sweep,
    transvection,
)
from autpgroup.predicates.relations import rel_maps_to
from autpgroup.report import Conventions, canonical_json
from autpgroup.cli import run_check
from autpgroup.suites import order_drop_cases
from autpgroup.universe import universe_for

FOUR = [(1,), (1, 1), (1, 2), (1, 1, 1)]


def _say(n, ok, text):
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")


def _fixed(eps, sign):
    """Elements a with eps(a) = sign * a, by direct evaluation."""
    g = eps.group
    return frozenset(a.index for a in g.elements() if eps(a) == (a if sign > 0 else -a))


def _cyclic_brute(h) -> bool:
    return any(order_of(a) == h.size for a in h.elements)


def test_criterion_01_eigensplit_soundness():
    """Eigen-split soundness: A+ (+) A- = A for every involution of the four groups."""
    bad = []
    count = 0
    for exps in FOUR:
        u = universe_for(make_group(3, exps))
        for inv in u.involutions:
            count += 1
            plus, minus = inv.plus, inv.minus
            ok = (plus.idx == _fixed(inv.auto, 1) and minus.idx == _fixed(inv.auto, -1)
                  and plus.idx & minus.idx == {0} and plus.size * minus.size == u.group.size
                  and (plus + minus).size == u.group.size)
            if not ok:
                bad.append((exps, inv))
    _say(1, not bad, f"{count} involutions, {len(bad)} failures")
    assert not bad


def test_criterion_02_extreme_characterization():
    """Extreme characterization: extreme_of agrees with the brute-force cyclic-side test."""
    bad = []
    count = 0
    for exps in FOUR:
        u = universe_for(make_group(3, exps))
        for inv in u.involutions:
            count += 1
            brute = [s for s in (inv.plus, inv.minus) if s.size > 1 and _cyclic_brute(s)]
            if is_extreme(inv) != bool(brute):
                bad.append((exps, inv))
                continue
            if brute:
                e = extreme_of(inv)
                if e.core not in brute or len(designations(inv)) != len(brute):
                    bad.append((exps, inv))
            else:
                with pytest.raises(NotExtreme):
                    extreme_of(inv)
    _say(2, not bad, f"{count} involutions, {len(bad)} disagreements")
    assert not bad


def test_criterion_03_aut_counts():
    """Aut counts 2, 48, 108 by two independent filters, with closure under composition and inverse."""
    ok = True
    for exps, want in [((1,), 2), ((1, 1), 48), ((1, 2), 108)]:
        g = make_group(3, exps)
        auts = enumerate_aut(g)
        keys = {a.key for a in auts}
        closed = all((a * b).key in keys for a in auts for b in auts) and all(a.inv().key in keys for a in auts)
        inverse_ok = all((a * a.inv()).is_identity() for a in auts)
        this = len(auts) == want and count_aut_by_blocks(g) == want and closed and inverse_ok
        ok &= this
        print(f"  Aut({g.describe()}): bijectivity filter {len(auts)}, block filter {count_aut_by_blocks(g)}")
    _say(3, ok, "counts 2, 48, 108 reproduced; closed under composition and inverse")
    assert ok


def test_criterion_04_maps_to_modes():
    """maps_to: formula mode equals semantic mode on all triples of Z3+Z3 and Z3+Z9."""
    total = bad = 0
    for exps in [(1, 1), (1, 2)]:
        u = universe_for(make_group(3, exps))
        for f, e1, e2 in itertools.product(u.auts, u.extremes, u.extremes):
            total += 1
            bad += rel_maps_to(f, e1, e2, "formula", u) != rel_maps_to(f, e1, e2, "semantic", u)
    _say(4, bad == 0, f"{total} triples, {bad} disagreements")
    assert bad == 0


def test_criterion_05_conjugation_equivalence():
    """Conjugation criterion: k1 = 1 iff containment, and the image identity, on every admissible tuple."""
    ok = True
    for exps in [(1, 1, 1), (1, 1, 2)]:
        fam = canonical_family(make_group(3, exps))
        r = conjugation_sweep(fam)
        print(f"  {fam.group.describe()}: {r['tuples']} tuples, {len(r['equivalence_failures'])} equivalence "
              f"failures, {len(r['identity_failures'])} identity failures")
        ok &= r["tuples"] > 0 and not r["equivalence_failures"] and not r["identity_failures"]
    _say(5, ok, "equivalence and image identity on (Z3)^3 and Z3+Z3+Z9")
    assert ok


def test_criterion_06_commutator_law():
    """Transvection commutator law on every admissible triple; a mutated family fails the check."""
    ok = True
    triples = 0
    for exps in [(1, 1, 1), (1, 1, 2)]:
        fam = canonical_family(make_group(3, exps))
        ok &= family_check(fam)
        for i, j, k in itertools.permutations(range(fam.rank), 3):
            if all(key in fam.maps for key in ((i, j), (j, k), (i, k))):
                triples += 1
                ok &= commutator(fam, i, j, k) == fam.maps[(i, k)]
        for (i, j) in fam.maps:
            mutated = fam.with_map(i, j, transvection(fam.group, fam.elements, i, j, 2))
            ok &= not family_check(mutated)
    _say(6, ok, f"{triples} triples; every single-map mutation rejected")
    assert ok


def _encoders(u, fam, i):
    return [u.canonical(encoding.encode(a, fam, i)) for a in encoding.encodable(fam, i)]


def test_criterion_07_encoding_homomorphism():
    """Encoding: enc_add iff decoded sum, enc_eq iff decoded equality, on Z3+Z9 and Z9+Z9."""
    total = bad = 0
    for exps in [(1, 2), (2, 2)]:
        g = make_group(3, exps)
        u = universe_for(g)
        fam = canonical_family(g)
        for i in range(fam.rank):
            encs = _encoders(u, fam, i)
            for f1, f2 in itertools.product(encs, repeat=2):
                total += 1
                bad += encoding.enc_eq(f1, f2, fam, "formula", u) != \
                    (encoding.decode(f1, fam) == encoding.decode(f2, fam))
            for f1, f2, f3 in itertools.product(encs, repeat=3):
                total += 1
                want = encoding.decode(f1, fam) + encoding.decode(f2, fam) == encoding.decode(f3, fam)
                bad += encoding.enc_add(f1, f2, f3, fam, "formula", u) != want
    _say(7, bad == 0, f"{total} enc_eq/enc_add cases, {bad} disagreements")
    assert bad == 0


def test_criterion_08_basic_subgroups():
    """Basic subgroups of Z3+Z9: basic iff B = A, both routes agreeing on the whole lattice."""
    g = make_group(3, [1, 2])
    subs = all_subgroups(g)
    bad = [s for s in subs
           if not (is_basic_subgroup(s, "definition") == is_basic_subgroup(s, "max-bounded") == (s.size == g.size))]
    _say(8, not bad, f"{len(subs)} subgroups, {len(bad)} failures")
    assert not bad


def test_criterion_09_inbase_witnesses():
    """InBase replays the witness construction for order-dropping nu on Z3+Z9."""
    u = universe_for(make_group(3, [1, 2]))
    cases = order_drop_cases(u)
    bad = []
    nonempty = 0
    for label, nu, split in cases:
        got = sorted(c.sorted_indices for c in basic.in_base_cores(nu, split, u))
        want = sorted(c.sorted_indices for c in basic.predicted_base_cores(nu, split, u))
        nonempty += bool(want)
        if got != want:
            bad.append(label)
    ok = bool(cases) and not bad
    _say(9, ok, f"{len(cases)} constructed nu, {nonempty} with predicted cores, {len(bad)} mismatches")
    assert ok


def test_criterion_10_guards_and_corpus():
    """Every corpus formula: guarded = unguarded, and folang = module result, on Z3 and Z3+Z3."""
    failures = []
    checked = 0
    for exps, limit in [((1,), None), ((1, 1), 150)]:
        u = universe_for(make_group(3, exps))
        for name in CATALOG:
            for mode in ("oracle", "unguarded"):
                r = agreement(name, u, limit=limit, compare_to=mode)
                checked += r.checked
                if not r.ok:
                    failures.append((exps, name, mode, len(r.mismatches)))
    _say(10, not failures, f"{len(CATALOG)} formulas, {checked} bindings, failures {failures}")
    assert not failures


def test_criterion_11_determinism(tmp_path):
    """Two runs of `check all` give byte-identical report bodies."""
    g = make_group(3, [1])
    a = canonical_json(run_check(g, "all", 10 ** 7, Conventions())["body"])
    b = canonical_json(run_check(g, "all", 10 ** 7, Conventions())["body"])
    paths = [tmp_path / "r1.json", tmp_path / "r2.json"]
    codes = [cli_main(["check", "--group", "p=3;exponents=1", "--suite", "all", "--out", str(p), "--quiet"])
             for p in paths]
    bodies = [canonical_json(json.loads(p.read_text())["body"]) for p in paths]
    ok = a == b and bodies[0] == bodies[1] and codes == [0, 0]
    _say(11, ok, f"body sha256 identical across runs ({len(a)} bytes)")
    assert ok
