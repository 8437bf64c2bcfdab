"""
Catalytic operators B_n and C_l
===============================

B_n is built from a catalytic variable y_i that is created, moved and
finally absorbed back into the power sums.  Grading by u keeps track of
how many times the raising step was used.
"""

from jackmaps.catalytic import (
    b_n_apply,
    b_n_dual_apply,
    c_ell_k,
    c_ell_k_closed,
    commutator_check,
    ugraded_str,
)
from jackmaps.psym import PExpr, parse_pexpr

f = parse_pexpr("p[1]")
for n in (1, 2):
    print(f"B_{n} p[1] =", ugraded_str(b_n_apply(n, f)))
print("adjoint B_1 on p[2] =", ugraded_str(b_n_dual_apply(1, parse_pexpr("p[2]"))))

# %%
# C_l collects the u^l layers of all B_n; its low t-layers have closed forms
g = PExpr.mono((2,))
for k in range(3):
    print(f"C_(2,{k}) p[2] =", c_ell_k(2, k, g), "  closed form agrees:", c_ell_k(2, k, g) == c_ell_k_closed(2, k, g))

# %%
# The C_l commute for l >= 1, and C_0 acts as a raising operator among them
print(commutator_check(1, 2, basis_degree=2, t_max=5))
print(commutator_check(0, 1, basis_degree=2, t_max=5))
