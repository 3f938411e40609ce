"""
Closed subsets of Z in the profinite topology
=============================================

Three kinds of sets: the complement of a union of progressions (closed, with
A mod n computable), a set built from Turing machine runs (membership
decidable, A mod n not), and a sparse stream that meets every residue class.
"""
from fq.core.verdict import Budget
from fq.profinite.fasth import fasth_stream, pow10
from fq.profinite.lemma55 import a55_member, a55_mod_n, a55_witness
from fq.profinite.lemma_b import b_member, complement_mod_n, identity_f, prog_subset_b, x_seq, y_seq
from fq.profinite.oracle import parse_zset
from fq.profinite.turing import sample_registry

# x_n = p_n x_{n-1}^2 grows doubly exponentially
print("x_1..x_4:", [x_seq(n) for n in range(1, 5)], " y_1..y_4:", [y_seq(n) for n in range(1, 5)])

f = identity_f()
print("2+12Z inside B:", prog_subset_b(2, 12, f), "  0+2Z inside B:", prog_subset_b(0, 2, f))
print("(Z - B) mod n for n = 1..12:", [sorted(complement_mod_n(n, f)) for n in range(1, 13)])
print("14 in B:", b_member(14, f, Budget(steps=50)).outcome.value)

# Machine 1 loops forever, machine 2 halts at step 3.  Powers of p_{2n}
# record how long machine n ran; a power of p_{2n+1} records when it stopped.
reg = sample_registry()
print("members:", [x for x in (3, 9, 243, 7, 49, 343, 2401, 11, 14641) if a55_member(x, reg)])
print("witness for 15:", a55_witness(15, reg), " for 7^4:", a55_witness(7 ** 4, reg))

# 0 mod 5 would need machine 1 to halt: no budget settles it
for steps in (4, 16, 64):
    res, complete, details = a55_mod_n(5, reg, steps)
    print(f"A mod 5 after {steps:2} steps: {sorted(res)} complete={complete} undecided={details['undecided']}")

# The stream 2h(1), 2h(2)+1, 3h(3), ... hits every class mod n
print("stream:", fasth_stream(pow10, 6))
res, complete = parse_zset("prog:0/4,2/6").mod_n(12)
print("(0+4Z) u (2+6Z) mod 12:", sorted(res), "complete" if complete else "partial")
