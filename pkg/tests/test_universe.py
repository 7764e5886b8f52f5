import itertools

from autpgroup.endo import MINUS, PLUS, hom_from_matrix, try_automorphism
from autpgroup.groups import Subgroup, make_group, subgroup_sum
from autpgroup.universe import Universe, universe_for


def test_small_universe_sizes(u3, u33, u39):
    assert (len(u3.auts), len(u3.involutions), len(u3.extremes), len(u3.pairs)) == (2, 2, 2, 4)
    # Z3+Z3: identity, -1 and 12 ordered line decompositions; each of the latter has two cyclic sides
    assert len(u33.involutions) == 14 and len(u33.extremes) == 24
    assert len(u33.cores) == 4
    # whole group plus the four lines
    assert len(u33.distinct_pair_summands) == 5
    assert len(u39.auts) == 108


def test_universe_is_shared(g33):
    assert universe_for(g33) is universe_for(g33)


def test_canonical_objects_compare_by_identity(u33):
    a = u33.auts[7]
    b = u33.from_matrix([list(r) for r in a.matrix])
    assert b is a
    assert u33.mul(u33.identity, a) is a
    assert u33.mul(a, u33.inv(a)) is u33.identity


def test_mul_matches_composition(u39):
    for a, b in itertools.product(u39.auts[::9], u39.auts[::13]):
        assert u39.mul(a, b) is u39.canonical(a * b)


def test_involution_lookup(u33):
    for inv in u33.involutions:
        assert u33.involution_of(inv.auto) is inv
    non = next(a for a in u33.auts if not (a * a).is_identity())
    assert u33.involution_of(non) is None


def test_extreme_lookup(u33):
    for e in u33.extremes:
        assert u33.extreme(e.auto, e.side) is e
        assert e.core.is_cyclic() and e.core.size > 1


def test_core_tables(u39):
    g = u39.group
    for a in u39.auts[::5]:
        for cid, core in enumerate(u39.cores):
            img = a.image(Subgroup(g, core))
            assert u39.cores[u39.image_core(a, cid)] == img.idx
    for c1, c2 in itertools.combinations(range(len(u39.cores)), 2):
        want = subgroup_sum([Subgroup(g, u39.cores[c1]), Subgroup(g, u39.cores[c2])]).idx
        assert u39.core_sum(c1, c2) == want == u39.core_sum(c2, c1)


def test_pairs_commute_and_designate(u39):
    for pr in u39.pairs:
        assert pr.xi.auto * pr.eps.auto == pr.eps.auto * pr.xi.auto
        assert pr.eps.core <= pr.summand
        assert pr.summand.size * pr.complement.size == u39.group.size


def test_side_candidates_reuse_extremes(u33):
    ext_ids = {id(e) for e in u33.extremes}
    cands = u33.side_candidates
    assert len(cands) == 2 * len(u33.involutions)
    assert sum(id(c) in ext_ids for c in cands) == len(u33.extremes)


def test_tiebreak_option():
    g = make_group(3, [1, 1])
    minus = Universe(g, tie=MINUS).default_extremes
    plus = Universe(g, tie=PLUS).default_extremes
    assert len(minus) == len(plus) == 12
    assert {e.side for e in minus} == {MINUS} and {e.side for e in plus} == {PLUS}


def test_identity_involution_option():
    g = make_group(3, [1])
    u = Universe(g, include_identity=False)
    assert len(u.involutions) == 1
    ident = try_automorphism(hom_from_matrix(g, [[1]]))
    assert u.involution_of(u.canonical(ident)) is None
