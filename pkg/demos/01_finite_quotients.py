"""
Finite quotients of finitely presented groups
=============================================

Enumerate marked finite quotients, move them between generating sets, and
recover a finite quotient from a normal subgroup of finite index.
"""
from fq.core.presentation import free_presentation, parse_presentation
from fq.core.verdict import Budget
from fq.finite.census import census_counts
from fq.finite.marked import enumerate_marked_groups
from fq.quotients import marked_quotients, normal_to_quotient, remark_quotient, schreier_kernel_generators

# How many groups of each order?  Tables are built row by row and
# isomorphic copies are rejected through a canonical form.
print("groups of order 1..12:", census_counts(12))

# Marked groups: a finite group plus a generating tuple.  One generator:
# one marked class per cyclic group.
print("1-marked groups up to order 8:", enumerate_marked_groups(1, 8).orders())

# The quotients of <a | a^6> are the marked groups where a^6 dies.
p = parse_presentation("< a | a^6 >")
print(p.format(), "->", marked_quotients(p, 6).orders())

# Klein four: a and b independent.  Five classes up to order 4.
klein = parse_presentation("< a, b | a^2, b^2, [a,b] >")
for m in marked_quotients(klein, 4):
    print("  order", m.order, "marking", m.marking)

# Change of generators on Z^2: {x, y} -> {x, xy}.  Each quotient keeps its
# group and gets the marking (f(x), f(x) f(y)).
z2 = parse_presentation("< x, y | [x,y] >")
qs = marked_quotients(z2, 4)
moved = [remark_quotient(m, [[1], [-1, 2]], [[1], [1, 2]]) for m in qs]
print(len(qs), "quotients of Z^2 up to order 4; first few re-marked:",
      [(a.marking, b.marking) for a, b in zip(qs, moved)][:4])

# Schreier generators of the kernel of F_2 -> Z/2 (a -> 1, b -> 0)
from fq.finite.cayley import MarkedGroup, cyclic_group
m = MarkedGroup(cyclic_group(2), (1, 0))
print("kernel generators:", [list(w) for w in schreier_kernel_generators(2, m)])

# Normal closure of a^3 in Z: both bounds meet at Z/3
v = normal_to_quotient(free_presentation(["a"]), [[1, 1, 1]], Budget(steps=2000))
print("Z / <<a^3>> ->", v.outcome.value, "order", v.certificate["group"].order)
