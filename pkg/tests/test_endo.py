import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autpgroup.endo import (
    MINUS,
    PLUS,
    compose,
    count_aut_by_blocks,
    count_well_formed,
    designate,
    designations,
    eigensplit,
    enumerate_aut,
    extreme_of,
    hom_from_flat,
    hom_from_images,
    hom_from_matrix,
    identity_aut,
    make_involution,
    make_pair,
    negation_aut,
    transvection_map,
    try_automorphism,
)
from autpgroup.errors import (
    BudgetExceeded,
    IllFormed,
    NotCommuting,
    NotExtreme,
    NotInvertible,
    NotInvolution,
    OrderViolation,
)
from autpgroup.groups import make_group


def test_ill_formed_entry_rejected():
    g = make_group(3, [1, 2])
    # column 0 is the image of the order-3 generator; its Z9 entry must be a multiple of 3
    with pytest.raises(IllFormed):
        hom_from_matrix(g, [[1, 0], [1, 1]])
    assert hom_from_matrix(g, [[1, 0], [3, 1]]).matrix == ((1, 0), (3, 1))


def test_matrix_shape_checked():
    g = make_group(3, [1, 1])
    with pytest.raises(IllFormed):
        hom_from_matrix(g, [[1, 0]])
    with pytest.raises(IllFormed):
        hom_from_flat(g, [1, 0, 0])


def test_entries_reduced_mod_row_modulus():
    g = make_group(3, [1, 2])
    assert hom_from_matrix(g, [[4, 0], [12, 10]]).matrix == ((1, 0), (3, 1))


def test_application_matches_matrix():
    g = make_group(3, [1, 2])
    f = hom_from_matrix(g, [[1, 1], [3, 2]])
    for a in g.elements():
        x, y = a.coords
        assert f(a).coords == ((x + y) % 3, (3 * x + 2 * y) % 9)
        assert f.perm[a.index] == f(a).index


def test_non_bijective_rejected():
    g = make_group(3, [1, 1])
    with pytest.raises(NotInvertible):
        try_automorphism(hom_from_matrix(g, [[1, 1], [1, 1]]))


@pytest.mark.parametrize("exps,count", [((1,), 2), ((1, 1), 48), ((1, 2), 108), ((2, 2), 3888)])
def test_aut_counts_two_paths(exps, count):
    g = make_group(3, exps)
    assert count_aut_by_blocks(g) == count
    if g.size <= 27:
        assert len(enumerate_aut(g)) == count


def test_aut_order_of_z5():
    assert len(enumerate_aut(make_group(5, [1]))) == 4


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_aut(make_group(3, [1, 1]), budget=10)


def test_enumeration_is_lexicographic():
    auts = enumerate_aut(make_group(3, [1, 2]))
    flats = [[x for r in a.matrix for x in r] for a in auts]
    assert flats == sorted(flats)


def test_well_formed_count():
    # Z3+Z9: entries (0,0):3, (0,1):3, (1,0):3 (multiples of 3 mod 9), (1,1):9
    assert count_well_formed(make_group(3, [1, 2])) == 3 * 3 * 3 * 9


def test_inverse_and_composition():
    g = make_group(3, [1, 2])
    auts = enumerate_aut(g)
    for a, b in itertools.product(auts[::7], auts[::11]):
        ab = a * b
        assert (ab * ab.inv()).is_identity()
        for x in g.elements()[::5]:
            assert ab(x) == a(b(x))
    assert compose(auts[3].hom, auts[3].inverse) == identity_aut(g).hom


def test_eigensplit_of_negation_and_identity():
    g = make_group(3, [1, 2])
    plus, minus = eigensplit(negation_aut(g))
    assert plus.size == 1 and minus.size == 27
    plus, minus = eigensplit(identity_aut(g))
    assert plus.size == 27 and minus.size == 1


def test_eigensplit_requires_involution():
    g = make_group(3, [1, 1])
    f = try_automorphism(hom_from_matrix(g, [[1, 1], [0, 1]]))
    with pytest.raises(NotInvolution):
        eigensplit(f)


def test_designations_and_tiebreak():
    g = make_group(3, [1, 1])
    inv = make_involution(try_automorphism(hom_from_matrix(g, [[1, 0], [0, 2]])))
    assert [d.side for d in designations(inv)] == [PLUS, MINUS]
    assert extreme_of(inv).side == MINUS
    assert extreme_of(inv, tie=PLUS).side == PLUS


def test_extreme_prefers_smaller_side():
    g = make_group(3, [1, 2])
    inv = make_involution(try_automorphism(hom_from_matrix(g, [[2, 0], [0, 1]])))
    e = extreme_of(inv, tie=PLUS)
    assert e.side == MINUS and e.order == 3


def test_non_extreme():
    g = make_group(3, [1, 1, 1])
    inv = make_involution(try_automorphism(hom_from_matrix(g, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])))
    with pytest.raises(NotExtreme):
        extreme_of(inv)
    with pytest.raises(NotExtreme):
        designate(inv, MINUS)


def test_pair_construction():
    g = make_group(3, [1, 2])
    xi = make_involution(try_automorphism(hom_from_matrix(g, [[2, 0], [0, 1]])))
    eps = designate(make_involution(try_automorphism(hom_from_matrix(g, [[1, 0], [0, 8]]))), MINUS)
    pr = make_pair(xi, eps)
    assert pr.side == PLUS and pr.summand.size == 9
    other = designate(make_involution(try_automorphism(hom_from_matrix(g, [[2, 0], [0, 1]]))), MINUS)
    assert make_pair(xi, other).summand.size == 3


def test_pair_errors():
    g = make_group(3, [1, 1])
    xi = make_involution(try_automorphism(hom_from_matrix(g, [[1, 0], [0, 2]])))
    swap = designate(make_involution(try_automorphism(hom_from_matrix(g, [[0, 1], [1, 0]]))), MINUS)
    with pytest.raises(NotCommuting):
        make_pair(xi, swap)
    neg = make_involution(negation_aut(g))
    ident = make_involution(identity_aut(g))
    e = designate(xi, MINUS)
    assert make_pair(neg, e).summand.size == 9
    assert make_pair(ident, e).side == PLUS


def test_transvection_order_rule():
    g = make_group(3, [1, 2])
    basis = [g.generator(1), g.generator(0)]  # orders 9, 3
    t = transvection_map(g, basis, 0, 1)
    assert t(basis[0]) == basis[0] + basis[1] and t(basis[1]) == basis[1]
    with pytest.raises(OrderViolation):
        transvection_map(g, basis, 1, 0)


def test_hom_from_images_on_nonstandard_basis():
    g = make_group(3, [1, 2])
    basis = [g.element([1, 3]), g.generator(1)]
    f = hom_from_images(g, basis, [basis[0], basis[1] + basis[0]])
    assert f(basis[0]) == basis[0] and f(basis[1]) == basis[1] + basis[0]
    with pytest.raises(IllFormed):
        hom_from_images(g, basis, [g.generator(1), basis[1]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=4, max_size=4))
def test_random_matrices_well_formed_or_rejected(flat):
    g = make_group(3, [1, 2])
    ok = flat[2] % 3 == 0
    if not ok:
        with pytest.raises(IllFormed):
            hom_from_flat(g, flat)
        return
    f = hom_from_flat(g, flat)
    for a, b in itertools.product(g.elements()[::4], repeat=2):
        assert f(a + b) == f(a) + f(b)
