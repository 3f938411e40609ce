"""
Word problems by McKinsey's method
==================================

Derivations from the relators prove that a word dies; a finite quotient
where it survives proves that it does not.  Both searches run side by side.
"""
from fq.core.presentation import free_presentation, parse_presentation, parse_word
from fq.core.verdict import Budget
from fq.mckinsey import (
    FgSubgroup, Singleton, ZProgressionUnion, conjugacy_check, depth, free_group_oracle, separate, wp_mckinsey,
)

z2 = parse_presentation("< a, b | [a,b] >")
for text in ("a b a^-1 b^-1", "a^2 b", "b a b^-1 a^-1 a"):
    w = parse_word(text, z2.generators)
    v = wp_mckinsey(z2, w, Budget(steps=2000, max_order=9))
    print(f"{text!r:20} -> {v.outcome.value:8} via {v.certificate['kind']}")

# Proving triviality is a search too; a tiny budget leaves it open
v = wp_mckinsey(z2, parse_word("a^2 b^2 a^-2 b^-2", z2.generators), Budget(steps=3))
print("tiny budget:", v.outcome.value, v.certificate)

# Separation in Z: residues mod 4 tell 0+4Z from 2+4Z
z = free_presentation(["a"])
for k in (8, 6, -4, -2):
    g = [1] * k if k > 0 else [-1] * -k
    v = separate(z, ZProgressionUnion([(0, 4)]), ZProgressionUnion([(2, 4)]), g, Budget(steps=50))
    print(f"a^{k}: {v.outcome.value} (quotient of order {v.certificate['group'].order})")

# Free groups are LERF: b is kept away from <a> in a finite quotient
f2 = free_presentation(["a", "b"])
v = separate(f2, FgSubgroup([[1]]), Singleton([2]), [2], Budget(steps=50))
print("b vs <a> in F_2:", v.outcome.value)

# Conjugacy: ab ~ ba in F_2, found with an explicit conjugator
v = conjugacy_check(f2, [1, 2], [2, 1], Budget(steps=500))
print("ab ~ ba:", v.outcome.value, "conjugator", list(v.certificate["conjugator"]))

# Depth function of Z: how large a quotient is needed to see short words
t = depth(z, free_group_oracle, 10, 12)
print(t.to_text())
