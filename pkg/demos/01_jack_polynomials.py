"""
Jack polynomials and Jack characters
====================================

Everything lives over Q(b) with b = alpha - 1, so alpha = 1 (Schur case)
and alpha = 2 (zonal case) are just evaluations of the same exact objects.
"""

from jackmaps import jack_character, jack_norm, jack_polynomial
from jackmaps.psym import hall_inner

# J_lambda is returned in the power-sum basis
for lam in [(2,), (1, 1), (2, 1), (3,)]:
    print(f"J{list(lam)} =", jack_polynomial(lam))

# %%
# Squared norms under the alpha-deformed Hall product
for lam in [(2,), (1, 1)]:
    J = jack_polynomial(lam)
    print(f"j{list(lam)} =", jack_norm(lam), "  check:", hall_inner(J, J) == jack_norm(lam))

# %%
# Specializing alpha turns coefficients into plain rationals
print("J[2,1] at alpha = 1:", {k: str(c.eval_at_alpha(1)) for k, c in jack_polynomial((2, 1)).items()})

# %%
# A Jack character is a function on partitions; theta_[1] counts boxes
for lam in [(1,), (2, 1), (3, 2)]:
    print(f"theta_[1]({list(lam)}) =", jack_character((1,), lam),
          f"  theta_[2]({list(lam)}) =", jack_character((2,), lam))
