"""
Dyson's groups L(A)
===================

Two lamplighter groups glued along the lamps whose positions lie in A.
Normal forms solve the word problem when membership in A is decidable;
finite quotients need more, namely A mod n.
"""
from fq.core.presentation import parse_word
from fq.dyson import (
    GENERATORS, DysonContext, identification_word, lan_presentation, normal_form, quotient_check_dyson,
    rf_witness, separate_in_finite, wp_dyson,
)
from fq.finite.cayley import MarkedGroup, cyclic_group
from fq.profinite.oracle import parse_zset


def W(text):
    return parse_word(text, GENERATORS)


# The lamp at i is identified with its hat copy exactly when i is in A
evens = DysonContext(parse_zset("prog:0/2"))
print("u_i = uh_i in L(2Z):", {i: wp_dyson(identification_word(i), evens) for i in range(-3, 4)})

# A normal form is an alternating list of syllables
for spec in ("finite:", "finite:0", "prog:0/1"):
    nf = normal_form(W("a e a^-1 eh"), DysonContext(parse_zset(spec)))
    print(f"{spec:10} a e a^-1 eh -> {nf.to_json()}")

# A separating quotient: first a modulus N with w alive in L(A)_N, then a
# small quotient of L(A)_N
w = W("a e a^-1 eh")
print("rf_witness:", rf_witness(w, evens))
v = separate_in_finite(w, evens, 16)
print("separated in a group of order", v.certificate["group"].order, "image", v.certificate["image"])

empty = DysonContext(parse_zset("finite:"))
print(lan_presentation(empty, 1).format())

# Does a marking extend to L(A)?  Read off L(A)_n with n = ord(a) ord(ah).
z5 = MarkedGroup(cyclic_group(5), (1, 0, 0, 0))
tm = DysonContext(parse_zset("lemma55:registry=test"))
v = quotient_check_dyson(z5, tm)
print("Z/5 over the machine set:", v.outcome.value, v.certificate)
# Knowing by hand that machine 1 never halts, A mod 5 = {1, 2, 3, 4}
v = quotient_check_dyson(z5, DysonContext(parse_zset("finite:1,2,3,4")))
print("Z/5 over the decided set:", v.outcome.value)
