import itertools

import pytest

from autpgroup.errors import NotCommuting, NotEncoder, OrderViolation, PreconditionViolated
from autpgroup.groups import cyclic_decomposition, order_of, span
from autpgroup.predicates import basic, encoding, families, relations
from autpgroup.predicates.catalog import CATALOG, agreement, sample_product


def _ext_with_core(u, *gens):
    core = span([u.group.element(c) for c in gens], group=u.group)
    return next(e for e in u.extremes if e.core == core)


# relations -------------------------------------------------------------------------
def test_in_sum_needs_commuting(u33):
    e1, e2 = next((a, b) for a, b in itertools.product(u33.extremes, repeat=2)
                  if a.auto * b.auto != b.auto * a.auto)
    with pytest.raises(NotCommuting):
        relations.rel_in_sum(e1, e1, e2)
    # the total version only checks core containment there
    assert relations.in_sum_total(e1, e1, e2)


def test_in_sum_on_commuting_pair(u33):
    e1 = _ext_with_core(u33, (1, 0))
    e2 = next(e for e in u33.extremes if e.core == _ext_with_core(u33, (0, 1)).core
              and e.auto * e1.auto == e1.auto * e.auto)
    diag = _ext_with_core(u33, (1, 1))
    assert diag.core <= relations._sum(e1.core, e2.core)
    assert relations.rel_in_sum(e1, e1, e2)


def test_maps_to_example(u33):
    e1 = _ext_with_core(u33, (1, 0))
    e2 = _ext_with_core(u33, (0, 1))
    shear = u33.from_matrix([[1, 0], [1, 1]])  # (1,0) -> (1,1)
    assert relations.rel_maps_to(shear, e1, e2)
    assert not relations.rel_maps_to(u33.identity, e1, e2)
    assert not relations.rel_maps_to(shear, e2, e1)  # fixes (0,1)
    for f in (shear, u33.identity):
        for a, b in ((e1, e2), (e2, e1)):
            assert relations.rel_maps_to(f, a, b, mode="formula", universe=u33) == \
                relations.rel_maps_to(f, a, b)


def test_maps_to_bad_mode(u33):
    e = u33.extremes[0]
    with pytest.raises(ValueError):
        relations.rel_maps_to(u33.identity, e, e, mode="nope")


def test_ord_relations(u39):
    small = next(e for e in u39.extremes if e.order == 3)
    big = next(e for e in u39.extremes if e.order == 9)
    assert relations.rel_ord_lt(small, big) and relations.rel_ord_gt(big, small)
    assert relations.rel_ord_le(small, small) and relations.rel_ord_eq(big, big)
    assert not relations.rel_ord_ge(small, big)


def test_pair_relations(u33):
    whole = basic.whole_split(u33)
    lines = [p for p in u33.distinct_pair_summands if p.summand.size == 3]
    assert len(lines) == 4
    a, b = lines[:2]
    assert relations.rel_pair_subset(a, whole) and not relations.rel_pair_subset(whole, a)
    assert relations.rel_pair_complement(a, b)
    assert relations.rel_pair_oplus(a, b, whole)
    assert not relations.rel_pair_oplus(a, a, whole)
    zero_cap = [p for p in u33.pairs if p.summand.size == 1]
    assert all(relations.rel_pair_cap(a, b, z) for z in zero_cap)
    assert relations.rel_pair_eq(a, a) and not relations.rel_pair_eq(a, b)
    assert all(relations.rel_pair_member(e, whole) for e in u33.extremes)


# order splits and bases -----------------------------------------------------------
def test_by_ord_on_whole_summand(u39):
    for pr in u39.pairs:
        if pr.summand.size == 27:
            assert basic.by_ord(pr, "semantic") == (pr.eps.order == 3)


def test_by_ord_formula_agrees(u39):
    for pr in basic.splits(u39):
        assert basic.by_ord(pr, "formula", u39) == basic.by_ord(pr, "semantic")


def test_final_two_transcriptions(u39):
    for pr in basic.splits(u39):
        assert basic.final_pair(pr, u39).value == basic.final_pair_direct(pr, u39)


def test_unknown_mode(u39):
    with pytest.raises(ValueError):
        basic.by_ord(u39.pairs[0], "other")


def test_rest_and_max_rest(u39):
    small = next(e for e in u39.extremes if e.order == 3)
    big = next(e for e in u39.extremes if e.order == 9)
    whole = basic.whole_split(u39)
    assert basic.rest(whole, big, "semantic") and not basic.rest(whole, small, "semantic")
    assert basic.max_rest(whole, big, "semantic") and not basic.max_rest(whole, small, "semantic")
    for pr in basic.splits(u39):
        for e in (small, big):
            assert basic.rest(pr, e, "formula", u39) == basic.rest(pr, e, "semantic")


def test_identity_has_empty_base(u33):
    split = basic.whole_split(u33)
    assert basic.collect_B(u33.identity, split, u33).is_zero()
    assert not basic.is_base(u33.identity, split, "semantic", u33)
    assert not basic.is_base(u33.identity, split, "formula", u33)
    # nothing captures, so the unstrengthened test holds vacuously
    assert basic.is_base(u33.identity, split, "literal", u33)


def test_order_drop_nu_checks(u39):
    g = u39.group
    split = basic.whole_split(u39)
    with pytest.raises(PreconditionViolated):
        basic.order_drop_nu(g, split, {0: g.element([0, 1])})
    with pytest.raises(PreconditionViolated):
        basic.order_drop_nu(g, split, {5: g.element([1, 0])})


def test_order_drop_base_matches_prediction(u39):
    g = u39.group
    split = basic.whole_split(u39)
    fin = cyclic_decomposition(split.summand)
    i = max(range(len(fin)), key=lambda n: order_of(fin[n]))
    nu = basic.order_drop_nu(g, split, {i: next(x for x in g.elements() if order_of(x) == 3
                                                 and x not in span([fin[i]], group=g).elements)})
    got = [c.sorted_indices for c in basic.in_base_cores(nu, split, u39)]
    want = [c.sorted_indices for c in basic.predicted_base_cores(nu, split, u39)]
    assert got == want


def test_pair_of(u33):
    whole = basic.whole_split(u33)
    assert basic.pair_of(u33, whole.summand).summand == whole.summand


# transvection families -------------------------------------------------------------
def test_canonical_family_shapes(g39, g333):
    f39 = families.canonical_family(g39)
    assert [f39.order(i) for i in range(f39.rank)] == [9, 3]
    assert sorted(f39.maps) == [(0, 1)]
    f333 = families.canonical_family(g333)
    assert len(f333.maps) == 6
    assert families.family_check(f333) and families.family_check(f39)
    assert families.family_is_decomposition(f333.basis, g333.whole())
    assert families.family_independent(f333.basis[:2])


def test_bad_basis_rejected(g33):
    with pytest.raises(PreconditionViolated):
        families.canonical_family(g33, [g33.generator(0), 2 * g33.generator(0)])


def test_coefficients_round_trip(g39):
    fam = families.canonical_family(g39)
    for x in g39.elements():
        c = fam.coefficients(x)
        y = g39.zero()
        for m, k in enumerate(c):
            y = y + k * fam.elements[m]
        assert y == x


def test_reflection_core(g39):
    fam = families.canonical_family(g39)
    for i, b in enumerate(fam.elements):
        assert fam.core(i) == span([b], group=g39)


def test_commutator_law(g333):
    fam = families.canonical_family(g333)
    for i, j, k in itertools.permutations(range(3), 3):
        assert families.commutator(fam, i, j, k) == fam.maps[(i, k)]


def test_squared_map_is_rejected(g333):
    fam = families.canonical_family(g333)
    g = fam.maps[(0, 1)]
    bad = fam.with_map(0, 1, g * g)
    assert not families.family_check(bad)
    assert families.family_failures(bad)


def test_transvection_order_rule(g39):
    fam = families.canonical_family(g39)
    with pytest.raises(OrderViolation):
        families.transvection(g39, fam.elements, 1, 0)


def test_conjugation_sweep_elementary(g333):
    fam = families.canonical_family(g333)
    # k1, k2, l1, l2 each range over {1, 2}; six ordered triples
    assert sum(1 for _ in families.admissible_tuples(fam, 0, 1, 2)) == 16
    res = families.conjugation_sweep(fam)
    assert res["tuples"] == 96
    assert not res["equivalence_failures"] and not res["identity_failures"]


def test_conjugation_criterion_needs_distinct_indices(g333):
    fam = families.canonical_family(g333)
    g, g0 = families.conjugation_maps(fam, 0, 1, 2, 1, 1, 1, 1)
    with pytest.raises(PreconditionViolated):
        families.conjugation_criterion(g, g0, fam, 0, 1, 1)


# encodings -------------------------------------------------------------------------
def test_encodable_sets(g39):
    fam = families.canonical_family(g39)
    # order <= 3 and outside <b_1>: nine elements of order <= 3, three of them in <b_1>
    nonzero = encoding.encodable(fam, 0, include_zero=False)
    assert len(nonzero) == 6 and all(x.index != 0 for x in nonzero)
    assert [x.index for x in encoding.encodable(fam, 1)] == [0]


def test_encode_decode_round_trip(g39):
    fam = families.canonical_family(g39)
    for a in encoding.encodable(fam, 0):
        f = encoding.encode(a, fam, 0)
        assert encoding.decode(f, fam) == a
    with pytest.raises(OrderViolation):
        encoding.encode(fam.elements[0], fam, 0)


def test_decode_rejects_non_encoder(u39):
    fam = families.canonical_family(u39.group)
    neg = u39.from_matrix([[2, 0], [0, 8]])
    with pytest.raises(NotEncoder):
        encoding.decode(neg, fam)
    with pytest.raises(NotEncoder):
        encoding.enc_eq(neg, u39.identity, fam, "semantic", u39)


def test_encoder_modes(u39):
    fam = families.canonical_family(u39.group)
    for f in u39.auts:
        sem = encoding.is_encoder(f, fam, "semantic", u39)
        if encoding.is_encoder(f, fam, "canonical", u39):
            assert sem
        assert encoding.is_encoder(f, fam, "formula", u39) == sem
    with pytest.raises(ValueError):
        encoding.is_encoder(u39.identity, fam, "other", u39)


def test_encoder_set_convention(u39):
    fam = families.canonical_family(u39.group)
    with_id = encoding.encoder_set(u39, fam, True)
    without = encoding.encoder_set(u39, fam, False)
    assert with_id[0] is u39.identity and with_id[1:] == without
    assert u39.identity not in without


def test_enc_eq_and_add(u39):
    fam = families.canonical_family(u39.group)
    enc = {a.index: u39.canonical(encoding.encode(a, fam, 0)) for a in encoding.encodable(fam, 0)}
    els = sorted(enc)
    for x, y in itertools.product(els[:4], repeat=2):
        f1, f2 = enc[x], enc[y]
        assert encoding.enc_eq(f1, f2, fam, "semantic", u39) == (x == y)
        assert encoding.enc_eq(f1, f2, fam, "formula", u39) == (x == y)
        s = (u39.group.element_at(x) + u39.group.element_at(y)).index
        if s in enc:
            assert encoding.enc_add(f1, f2, enc[s], fam, "semantic", u39)
            assert encoding.enc_add(f1, f2, enc[s], fam, "formula", u39)


def test_sim(u33):
    whole = basic.whole_split(u33)
    for f in u33.auts[::7]:
        assert encoding.sim(f, f, whole, "semantic", u33)
    f, g = u33.auts[1], u33.auts[2]
    for pr in basic.splits(u33):
        assert encoding.sim(f, g, pr, "formula", u33) == encoding.sim(f, g, pr, "semantic", u33)


# catalog ---------------------------------------------------------------------------
def test_sample_product():
    lists = [list(range(5)), list("abc"), [True, False]]
    full = list(sample_product(lists, None))
    assert full == list(itertools.product(*lists))
    some = list(sample_product(lists, 7))
    assert len(some) == 7 and set(some) <= set(full)
    assert some == list(sample_product(lists, 7))
    assert list(sample_product(lists, 100)) == full


@pytest.mark.parametrize("name", ["ByOrd", "Final", "MapsTo", "IsEncoder", "EncEq"])
def test_catalog_agreement(u39, name):
    res = agreement(name, u39, limit=60)
    assert res.checked > 0 and res.ok, res.mismatches


def test_catalog_names_cover_corpus():
    from autpgroup.folang.corpus import load_corpus
    assert set(CATALOG) <= set(load_corpus())
