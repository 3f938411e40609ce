"""Cayley tables, the census and marked groups."""
import pytest
from hypothesis import given, settings, strategies as st

from fq.finite.cayley import (
    CapExceeded, MarkedGroup, MarkingDoesNotGenerate, NotAssociative, NotPermutationRow, conjugacy_class,
    cyclic_group, dihedral_group, direct_product, evaluate_word, finite_lamplighter, is_conjugate_in_finite,
    is_marked_quotient, lamp_decode, lamp_index, normal_subgroups, quotient_group, relabel,
    subgroup_generated, validate_cayley,
)
from fq.finite.census import (
    automorphisms, canonical_form, census_counts, find_isomorphism, groups_of_order, is_isomorphic,
    regular_permutation_census,
)
from fq.finite.marked import (
    dump_cayley, enumerate_marked_groups, from_cayley_dict, load_cayley, marked_isomorphic, marked_map,
    table_presentation, to_cayley_dict,
)
from fq.core.presentation import free_presentation, parse_presentation

from oracles import brute_isomorphic, brute_marked_groups, bfs_marked_key

KLEIN = direct_product(cyclic_group(2), cyclic_group(2))


def z(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def test_validate_cayley():
    m = validate_cayley(2, z(2), {"a": 1})
    assert m.marking == (1,) and m.names == ("a",)
    with pytest.raises(MarkingDoesNotGenerate):
        validate_cayley(4, z(4), [2])
    bad = z(3)
    bad[1][1] = 0
    bad[1][2] = 2
    with pytest.raises((NotAssociative, NotPermutationRow)):
        validate_cayley(3, bad, [1])


def test_validate_cayley_nonassociative_loop():
    # a Latin square with identity that is not a group (loops of order < 5 are groups)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        validate_cayley(5, loop, [1])


def test_small_constructions():
    assert finite_lamplighter(1).order == 2
    d4 = finite_lamplighter(2)
    assert d4.order == 8
    assert brute_isomorphic(d4, dihedral_group(4))
    assert not brute_isomorphic(d4, direct_product(cyclic_group(2), cyclic_group(4)))
    assert cyclic_group(6).element_order(5) == 6
    with pytest.raises(ValueError):
        cyclic_group(0)


def lamp_mul_ref(n, g, h):
    # (alpha, S)(beta, T) = (alpha + beta, (S - beta) ^ T), bits mod n
    a, s = g
    b, t = h
    shifted = 0
    for i in range(n):
        if s >> i & 1:
            shifted |= 1 << ((i - b) % n)
    return ((a + b) % n, shifted ^ t)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lamplighter_table_matches_pair_arithmetic(n):
    g = finite_lamplighter(n)
    assert g.order == n * 2 ** n
    assert lamp_index(n, 0, 0) == 0
    for x in range(g.order):
        for y in range(g.order):
            assert lamp_decode(n, g.table[x][y]) == lamp_mul_ref(n, lamp_decode(n, x), lamp_decode(n, y))


def test_evaluate_word():
    m = MarkedGroup(cyclic_group(6), (1,))
    assert evaluate_word(m, [1] * 4) == 4
    assert evaluate_word(m, [1] * 6) == 0
    assert evaluate_word(m, [-1]) == 5
    d4 = MarkedGroup(finite_lamplighter(2), (lamp_index(2, 1, 0), lamp_index(2, 0, 1)))
    assert lamp_decode(2, evaluate_word(d4, [1, 2])) == lamp_mul_ref(2, (1, 0), (0, 1))
    with pytest.raises(IndexError):
        evaluate_word(m, [2])


def test_is_marked_quotient():
    p = parse_presentation("< a, b | a^2, b^2, [a,b] >")
    assert is_marked_quotient(MarkedGroup(KLEIN, (1, 2)), p)
    assert not is_marked_quotient(MarkedGroup(cyclic_group(4), (1, 1)), p)
    free = free_presentation(["a"])
    for m in enumerate_marked_groups(1, 6):
        assert is_marked_quotient(m, free)
    with pytest.raises(ValueError):
        is_marked_quotient(MarkedGroup(cyclic_group(2), (1,)), p)


def test_normal_subgroups_and_quotients():
    z6 = cyclic_group(6)
    assert sorted(map(sorted, normal_subgroups(z6))) == [[0], [0, 1, 2, 3, 4, 5], [0, 2, 4], [0, 3]]
    q, proj = quotient_group(z6, {0, 3})
    assert brute_isomorphic(q, cyclic_group(3))
    assert len(normal_subgroups(dihedral_group(4))) == 6
    assert subgroup_generated(z6, [2]) == {0, 2, 4}
    with pytest.raises(ValueError):
        quotient_group(dihedral_group(3), subgroup_generated(dihedral_group(3), [3]))


@pytest.mark.parametrize("g", [cyclic_group(6), dihedral_group(4), finite_lamplighter(2), dihedral_group(6),
                               direct_product(KLEIN, cyclic_group(3))])
def test_quotient_projection_is_homomorphism(g):
    for n in normal_subgroups(g):
        q, pi = quotient_group(g, n)
        assert pi[0] == 0
        for x in range(g.order):
            for y in range(g.order):
                assert q.table[pi[x]][pi[y]] == pi[g.table[x][y]]


def test_conjugacy_in_finite():
    d4 = dihedral_group(4)
    reflections = [x for x in range(8) if d4.element_order(x) == 2 and x not in (0,)]
    classes = {conjugacy_class(d4, x) for x in reflections}
    # D4: center {r^2}, and two classes of two reflections each
    assert sorted(len(c) for c in classes) == [1, 2, 2]
    a, b = [min(c) for c in classes if len(c) == 2]
    assert not is_conjugate_in_finite(d4, a, b)
    for x in range(8):
        assert is_conjugate_in_finite(d4, x, x)


CENSUS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]


def test_census_to_12():
    assert census_counts(12) == CENSUS[:12]


@pytest.mark.slow
def test_census_13_to_16():
    assert [len(groups_of_order(m, cap=16)) for m in range(13, 17)] == CENSUS[12:16]


def test_census_cap():
    with pytest.raises(CapExceeded):
        groups_of_order(13)


def test_census_cross_check_with_permutation_backend():
    for m in range(1, 9):
        a = groups_of_order(m)
        b = regular_permutation_census(m)
        assert len(a) == len(b) == CENSUS[m - 1]
        # every permutation-backend group matches exactly one table-backend group
        for h in b:
            assert sum(brute_isomorphic(g, h) for g in a) == 1 if m <= 6 else sum(is_isomorphic(g, h) for g in a) == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(8, i) for i in range(5)] + [(12, i) for i in range(5)] + [(6, 1)]), st.randoms())
def test_canonical_form_invariant_under_relabeling(which, rnd):
    m, i = which
    g = groups_of_order(m)[i]
    perm = list(range(1, m))
    rnd.shuffle(perm)
    h = relabel(g, [0] + perm)
    assert canonical_form(h) == canonical_form(g)
    f = find_isomorphism(g, h)
    assert all(f[g.table[x][y]] == h.table[f[x]][f[y]] for x in range(m) for y in range(m))


def test_automorphism_counts():
    from sympy import totient
    for n in range(1, 13):
        assert len(automorphisms(cyclic_group(n))) == int(totient(n))
    assert len(automorphisms(KLEIN)) == 6
    assert len(automorphisms(dihedral_group(4))) == 8
    assert len(automorphisms(dihedral_group(3))) == 6
    q8 = [g for g in groups_of_order(8) if not g.is_abelian() and sorted(g.element_orders).count(2) == 1]
    assert len(q8) == 1 and len(automorphisms(q8[0])) == 24


def test_enumerate_marked_groups_examples():
    e = enumerate_marked_groups(1, 4)
    assert e.orders() == [1, 2, 3, 4]
    assert len(enumerate_marked_groups(1, 1)) == 1
    with pytest.raises(CapExceeded):
        enumerate_marked_groups(1, 13)


@pytest.mark.parametrize("n,k,count", [(1, 8, 8), (2, 6, None), (2, 8, None), (3, 4, None)])
def test_enumeration_matches_brute_force(n, k, count):
    e = enumerate_marked_groups(n, k)
    keys = [bfs_marked_key(m) for m in e]
    assert len(set(keys)) == len(keys)
    assert set(keys) == brute_marked_groups(n, k)
    if count is not None:
        assert len(e) == count


def hall_count(n, k):
    # marked classes of order m are Epi(F_n, G) / |Aut G| summed over G (Hall)
    from itertools import product as prod
    total = 0
    for m in range(1, k + 1):
        for g in groups_of_order(m):
            epi = sum(1 for t in prod(range(m), repeat=n) if len(subgroup_generated(g, t)) == m)
            assert epi % len(automorphisms(g)) == 0
            total += epi // len(automorphisms(g))
    return total


def test_marked_counts_against_hall_formula():
    # one cyclic group per order, one marking class each
    assert len(enumerate_marked_groups(1, 12)) == 12 == hall_count(1, 12)
    assert len(enumerate_marked_groups(2, 12)) == 150 == hall_count(2, 12)
    assert len(enumerate_marked_groups(3, 8)) == hall_count(3, 8)


def test_entries_validate_and_sorted():
    e = enumerate_marked_groups(2, 8)
    for m in e:
        validate_cayley(m.order, m.group.table, m.marking)
    assert e.orders() == sorted(e.orders())


def test_marked_isomorphic_examples():
    z2 = MarkedGroup(cyclic_group(2), (1,))
    assert marked_isomorphic(z2, z2)
    assert marked_isomorphic(MarkedGroup(cyclic_group(4), (1,)), MarkedGroup(cyclic_group(4), (3,)))
    assert not marked_isomorphic(MarkedGroup(KLEIN, (1, 2)), MarkedGroup(cyclic_group(4), (1, 2)))
    f = marked_map(MarkedGroup(cyclic_group(4), (1,)), MarkedGroup(cyclic_group(4), (3,)))
    assert f == (0, 3, 2, 1)


def test_cayley_json_round_trip():
    for m in enumerate_marked_groups(2, 6):
        assert load_cayley(dump_cayley(m)) == m
        assert from_cayley_dict(to_cayley_dict(m, ["x", "y"])) == m


def test_table_presentation_accepts_only_its_group():
    for m in enumerate_marked_groups(2, 6):
        p = table_presentation(m)
        assert is_marked_quotient(m, p)
        from fq.quotients import marked_quotients
        top = max(marked_quotients(p, m.order), key=lambda q: q.order)
        assert top.order == m.order and marked_isomorphic(top, m)
