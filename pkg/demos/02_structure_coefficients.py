"""
Structure coefficients three ways
=================================

theta_mu * theta_nu = sum_pi g^pi_{mu,nu} theta_pi.  The coefficients can be
read off Jack polynomials ("c"), produced by the operator recursion ("rec"),
or expanded as an alternating sum over chains ("sum").
"""

from jackmaps import structure as st

mu, nu = (2,), (1, 1)
for pi in [(2,), (2, 1), (3, 1), (2, 1, 1), (2, 2)]:
    vals = {r: st.g_coefficient(pi, mu, nu, r) for r in ("c", "rec", "sum")}
    same = len({str(v) for v in vals.values()}) == 1
    print(f"g^{list(pi)}_[2],[1,1] = {vals['c']}   routes agree: {same}")

# %%
# Every coefficient is a polynomial in b with integer coefficients, and in
# small cases those coefficients are nonnegative.
report = st.conjecture_scan(4)
print(report["entries"], "entries,", len(report["integrality_errors"]), "non-integral,",
      len(report["violations"]), "with a negative coefficient")

# %%
# The same information as a table with provenance tags
table = st.CoeffTable.build(2, route="rec")
for (pi, mu, nu), g in sorted(table.items()):
    if g:
        print(list(pi), list(mu), list(nu), g, table.provenance[(pi, mu, nu)])
