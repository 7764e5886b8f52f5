import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autpgroup.errors import AmbientMismatch, BudgetExceeded, EmptyExponents, NotOddPrime
from autpgroup.groups import (
    GroupFileError,
    all_subgroups,
    cyclic_decomposition,
    decomposes,
    invariant_factors,
    is_direct_sum,
    is_pure,
    is_subgroup,
    load_group,
    make_group,
    order_of,
    parse_group_text,
    span,
    subgroup_sum,
)

GROUPS = [(1,), (1, 1), (1, 2), (2, 2), (1, 1, 1)]


def test_make_group_normalizes_exponents():
    g = make_group(3, [2, 1])
    assert g.exponents == (1, 2)
    assert g.moduli == (3, 9)
    assert g.size == 27
    assert g.describe() == "Z3 + Z9"


@pytest.mark.parametrize("p", [2, 4, 9, 1, 0, -3])
def test_make_group_rejects_bad_primes(p):
    with pytest.raises(NotOddPrime):
        make_group(p, [1])


def test_make_group_rejects_empty_and_nonpositive():
    with pytest.raises(EmptyExponents):
        make_group(3, [])
    with pytest.raises(ValueError):
        make_group(3, [0, 1])


def test_size_budget():
    with pytest.raises(BudgetExceeded):
        make_group(3, [5, 5])
    assert make_group(3, [5, 5], budget=3 ** 10).size == 3 ** 10


def test_index_roundtrip_and_lexicographic_order():
    g = make_group(3, [1, 2])
    els = g.elements()
    assert [e.index for e in els] == list(range(g.size))
    assert [e.coords for e in els] == sorted(e.coords for e in els)
    assert g.element([4, 10]).coords == (1, 1)


def test_element_arithmetic_matches_coordinates():
    g = make_group(5, [1, 2])
    for a, b in itertools.product(g.elements()[:40], g.elements()[::7]):
        s = a + b
        assert s.coords == ((a.coords[0] + b.coords[0]) % 5, (a.coords[1] + b.coords[1]) % 25)
        assert (a - a).is_zero()
        assert (3 * a) == a + a + a


def test_elements_of_different_groups_do_not_mix():
    with pytest.raises(AmbientMismatch):
        make_group(3, [1]).generator(0) + make_group(3, [2]).generator(0)


def test_order_table_matches_repeated_addition():
    g = make_group(3, [1, 2])
    for a in g.elements():
        n, x = 1, a
        while not x.is_zero():
            x, n = x + a, n + 1
        assert order_of(a) == n


@pytest.mark.parametrize("exps", GROUPS)
def test_invariant_factors_of_whole_group(exps):
    g = make_group(3, exps)
    assert invariant_factors(g.whole()) == tuple(sorted(exps))


def test_subgroup_lattice_of_z3_z9():
    g = make_group(3, [1, 2])
    subs = all_subgroups(g)
    # order 9: three cyclic (18 elements of order 9, 6 generators each) plus the 3-socle
    sizes = sorted(s.size for s in subs)
    assert [sizes.count(n) for n in (1, 3, 9, 27)] == [1, 4, 4, 1]
    assert all(is_subgroup(g, s.idx) for s in subs)
    assert len({s.idx for s in subs}) == len(subs)


def test_subgroup_count_of_elementary_group():
    # subspaces of F3^2: 1 + 4 + 1
    assert len(all_subgroups(make_group(3, [1, 1]))) == 6


def test_cyclic_decomposition_is_direct():
    for exps in GROUPS:
        g = make_group(3, exps)
        for h in all_subgroups(g) if g.size <= 27 else [g.whole()]:
            basis = cyclic_decomposition(h)
            parts = [span([b]) for b in basis]
            assert is_direct_sum(parts)
            assert subgroup_sum(parts) == h if parts else h.size == 1
            assert sorted(order_of(b) for b in basis) == [3 ** m for m in invariant_factors(h)]


def test_purity_examples():
    g = make_group(3, [1, 2])
    z9 = span([g.generator(1)])
    three_z9 = span([3 * g.generator(1)])
    diag = span([g.element([1, 3])])
    assert is_pure(z9)
    assert not is_pure(three_z9)
    assert is_pure(span([g.generator(0)]))
    assert is_pure(diag)  # meets 3A trivially; a complement of <(0,1)>
    assert decomposes([z9, span([g.generator(0)])])
    assert decomposes([z9, diag])
    assert not decomposes([z9, three_z9])


def test_parse_group_text_formats():
    assert parse_group_text('{"p": 3, "exponents": [1, 2]}') == (3, [1, 2])
    assert parse_group_text("p=3\nexponents=1,2\n") == (3, [1, 2])
    assert parse_group_text("# comment\np = 5 ; exponents = [2 2]") == (5, [2, 2])


@pytest.mark.parametrize("text", ["p=3", "p=3;exponents=x", "{bad json", "p=3;exponents=1;q=2", "junk"])
def test_parse_group_text_errors(text):
    with pytest.raises(GroupFileError):
        parse_group_text(text)


def test_load_group_from_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("p=3\nexponents=2,1\n")
    assert load_group(str(f)).exponents == (1, 2)
    with pytest.raises(GroupFileError):
        load_group(str(tmp_path / "missing.txt"))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_span_is_closed(data):
    g = make_group(3, data.draw(st.sampled_from(GROUPS[:4])))
    idx = data.draw(st.lists(st.integers(0, g.size - 1), max_size=3))
    h = span([g.element_at(i) for i in idx], group=g)
    assert is_subgroup(g, h.idx)
    assert h.size in {3 ** n for n in range(sum(g.exponents) + 1)}
