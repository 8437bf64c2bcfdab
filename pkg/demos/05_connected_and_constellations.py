"""
Connected coefficients and constellations
=========================================

Taking alpha log of the generating series keeps only connected objects.
Iterating the product of characters gives coefficients with more factors.
"""

from jackmaps import structure as st

print("ghat^[1]_[1],[] =", st.ghat_coefficient((1,), (1,), ()))
print("ghat^[1,1]_[1],[1] =", st.ghat_coefficient((1, 1), (1,), (1,)), "(two separate pieces)")
print("ghat^[2]_[1],[1] =", st.ghat_coefficient((2,), (1,), (1,)))

# %%
print(st.verify_log_shift(3))
print(st.degree_bound_check(4))

# %%
# theta_[1]^3 expanded in the character basis
for pi in [(1,), (1, 1), (1, 1, 1)]:
    print(f"[{list(pi)}] theta_[1]^3 =", st.constellation_g(pi, [(1,), (1,), (1,)]))
print(st.verify_constellation_equation(2, 3))
