"""Words, presentations, relator consequences and wreath presentations."""
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from fq.core.derivation import check_derivation, derives_identity, expand_factors
from fq.core.presentation import (
    Presentation,
    PresentationSyntaxError,
    add_relators,
    free_presentation,
    parse_presentation,
    parse_word,
)
from fq.core.verdict import Budget, Outcome, Verdict
from fq.core.words import GeneratorSet, Word, commutator, cyclic_reduce, format_word, free_reduce, is_reduced, reduced_words
from fq.core.wreath import WreathInputError, wreath_presentation
from fq.finite.cayley import MarkedGroup, cyclic_group, trivial_group
from fq.quotients import marked_quotients

letters3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def naive_reduce(w):
    # repeated pair deletion, an independent implementation
    w = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


def test_free_reduce_examples():
    g = ["a", "b"]
    assert free_reduce(parse_word("a a^-1", g)) == Word()
    assert free_reduce(Word([1, 2, -2, 1])) == Word([1, 1])
    assert free_reduce(Word()) == Word()


def test_free_reduce_idempotent_exhaustive_short():
    for n in range(7):
        for w in product([1, -1, 2, -2, 3, -3], repeat=n):
            r = free_reduce(w)
            assert free_reduce(r) == r
            assert tuple(r) == naive_reduce(w)


@given(letters3)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert is_reduced(r)
    assert tuple(r) == naive_reduce(w)


@given(letters3, letters3)
def test_inverse_and_product(u, v):
    u, v = Word(u), Word(v)
    assert free_reduce(u + u.inverse()) == Word()
    assert free_reduce(u + v).inverse() == free_reduce(v.inverse() + u.inverse())


def test_reduced_words_count():
    # 2n (2n-1)^(k-1) reduced words of length k on n generators
    for k in range(1, 5):
        assert sum(1 for _ in reduced_words(2, k, k)) == 4 * 3 ** (k - 1)


def test_cyclic_reduce_and_commutator():
    assert cyclic_reduce(Word([2, 1, 1, -2])) == Word([1, 1])
    assert commutator(Word([1]), Word([2])) == Word([1, 2, -1, -2])


def test_generator_set_validation():
    with pytest.raises(ValueError):
        GeneratorSet([])
    with pytest.raises(ValueError):
        GeneratorSet(["a", "a"])
    with pytest.raises(ValueError):
        GeneratorSet(["a^"])


def test_parse_examples():
    p = parse_presentation("< a | a^6 >")
    assert list(p.generators) == ["a"] and p.relators == (Word([1] * 6),)
    p = parse_presentation("< a,b | [a,b] >")
    assert p.relators == (Word([1, 2, -1, -2]),)
    p = parse_presentation("< a | >")
    assert p.n_gens == 1 and p.relators == ()


def test_parse_errors():
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation("< a | a^2 ")
    assert err.value.position >= 0
    with pytest.raises((PresentationSyntaxError, KeyError, ValueError)):
        parse_presentation("< a | b >")
    with pytest.raises((PresentationSyntaxError, ValueError)):
        parse_presentation("< | >")


def test_run_splitting():
    assert parse_word("abab", ["a", "b"]) == Word([1, 2, 1, 2])
    assert parse_word("e eh", ["a", "ah", "e", "eh"]) == Word([3, 4])


@pytest.mark.parametrize("text", [
    "< a | a^6 >", "< a, b | [a,b] >", "< a | >", "< x, y | x^2, y^3, (x y)^1 >".replace("(x y)^1", "x y x y"),
    "< a, b, c | a b c, c^-2 a >",
])
def test_parse_format_round_trip(text):
    p = parse_presentation(text)
    assert parse_presentation(p.format()) == p


def test_format_word():
    assert format_word(Word([1, 1, -2]), ["a", "b"]) == "a^2 b^-1"
    assert format_word(Word(), ["a"]) == "1"


def test_add_relators():
    p = add_relators(free_presentation(["a"]), [Word([1] * 6)])
    assert p == parse_presentation("< a | a^6 >")
    q = parse_presentation("< a, b | [a,b] >")
    assert add_relators(q, []) == q
    assert add_relators(q, [Word([1, -1])]) == q  # empty after reduction


def test_derives_identity_examples():
    p = parse_presentation("< a | a^2 >")
    v = derives_identity(p, Word([1] * 4), Budget(steps=50))
    assert v.outcome is Outcome.YES
    assert check_derivation(p, Word([1] * 4), v.certificate["factors"])
    q = parse_presentation("< a, b | [a,b] >")
    w = parse_word("a b a b^-1 a^-2", q.generators)
    # abelianization oracle: exponent sums vanish
    assert sum(1 if x == 1 else -1 if x == -1 else 0 for x in w) == 0
    v = derives_identity(q, w, Budget(steps=2000))
    assert v.outcome is Outcome.YES
    assert expand_factors(q, v.certificate["factors"]) == free_reduce(w)
    v = derives_identity(p, Word([1]), Budget(steps=200))
    assert v.outcome is Outcome.UNKNOWN


def test_derivation_deterministic():
    q = parse_presentation("< a, b | [a,b] >")
    w = parse_word("b a b^-1 a^-1", q.generators)
    a = derives_identity(q, w, Budget(steps=500))
    b = derives_identity(q, w, Budget(steps=500))
    assert a.certificate == b.certificate


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=3), st.integers(0, 1),
                          st.sampled_from([1, -1])), min_size=1, max_size=2))
def test_derivation_certificates_reexpand(parts):
    # build w as a product of conjugated relators; the search must prove it
    p = parse_presentation("< a, b | a^2, [a,b] >")
    w = []
    for conj, idx, sign in parts:
        r = p.relators[idx] if sign > 0 else p.relators[idx].inverse()
        c = Word(conj)
        w += list(c + r + c.inverse())
    w = free_reduce(w)
    v = derives_identity(p, w, Budget(steps=3000))
    if v.outcome is Outcome.YES:
        assert check_derivation(p, w, v.certificate["factors"])
    else:
        assert v.outcome is Outcome.UNKNOWN


def test_verdict_is_not_boolean():
    with pytest.raises(TypeError):
        bool(Verdict(Outcome.YES))
    with pytest.raises(ValueError):
        Budget(steps=-1)
    assert Budget().order_cap == 12


def sympy_order(p: Presentation) -> int:
    F = free_group(",".join(p.generators))[0]
    gens = F.generators
    rels = []
    for r in p.relators:
        x = F.identity
        for letter in r:
            g = gens[abs(letter) - 1]
            x = x * (g if letter > 0 else g ** -1)
        rels.append(x)
    return int(FpGroup(F, rels).order())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wreath_orders_against_coset_enumeration(n):
    base = parse_presentation("< e | e^2 >")
    p = wreath_presentation(base, cyclic_group(n))
    assert sympy_order(p) == n * 2 ** n


def test_wreath_z3_base_order_via_enumeration():
    # |Z/3 wr Z/2| = 2 * 3^2 = 18; enumeration of quotients must reach it
    base = parse_presentation("< e | e^3 >")
    p = wreath_presentation(base, cyclic_group(2))
    assert sympy_order(p) == 18
    assert max(marked_quotients(p, 18, cap=18).orders()) == 18


def test_wreath_trivial_and_errors():
    base = parse_presentation("< a | >")
    assert wreath_presentation(base, trivial_group()) == base
    with pytest.raises(WreathInputError):
        wreath_presentation(base, cyclic_group(2), acting_names=["a"])
    with pytest.raises(WreathInputError):
        wreath_presentation(base, MarkedGroup(cyclic_group(3), (1,)), acting_words={1: [1]})
    with pytest.raises(WreathInputError):
        wreath_presentation(base, MarkedGroup(cyclic_group(3), (1,)), acting_words={1: [1], 2: [1]})
