"""
Counting hypermaps at alpha = 1
===============================

At alpha = 1 each g^pi_{mu,nu} counts pairs of permutations with prescribed
cycle types, where fixed points may be marked as degree-one faces.  The
brute-force count is an independent check on the algebra.
"""

from jackmaps import structure as st
from jackmaps.oracle import count_factorizations, marked_hypermap_count
from jackmaps.partitions import partitions_of, partitions_upto

print("transpositions whose product is a 3-cycle:", count_factorizations((3,), (2, 1), (2, 1)))

# %%
agree = total = 0
for n in range(5):
    for pi in partitions_of(n):
        for mu in partitions_upto(n):
            for nu in partitions_upto(n):
                total += 1
                agree += marked_hypermap_count(pi, mu, nu) == st.g_via_c(pi, mu, nu).eval_at_alpha(1)
print(f"{agree}/{total} triples match")

# %%
# Away from alpha = 1 the polynomial in b refines the count
print("g^[1,1,1]_[2,1],[2] =", st.g_via_c((1, 1, 1), (2, 1), (2,)),
      " at alpha = 1:", marked_hypermap_count((1, 1, 1), (2, 1), (2,)))
