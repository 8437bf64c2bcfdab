"""The thirteen acceptance criteria, each checked exactly over Q(b).

Run with ``pytest -v tests/test_acceptance.py``; one pass/fail line per
criterion is printed in the terminal summary.  Constants hard-coded below are
first reproduced by an independent route inside the same test.
"""

from _oracles import hook_norm, solve_character_products

from jackmaps import structure as st
from jackmaps.catalytic import adjointness_check, c_ell_k_closed, closed_forms_check, commutator_check
from jackmaps.jack import c_coefficient, jack_norm, jack_polynomial
from jackmaps.oracle import marked_hypermap_count
from jackmaps.partitions import dominance_leq, partitions_of, partitions_upto
from jackmaps.psym import PExpr, hall_inner, p_to_m
from jackmaps.scalar import ALPHA, B, ONE, ZERO

ROUTE_NAMES = ("c", "rec", "sum")


def test_criterion_01_route_equivalence(criterion):
    checked, bad = 0, None
    for pi, mu, nu in st.triples(6, 6, window=False):
        vals = [st.g_coefficient(pi, mu, nu, r) for r in ROUTE_NAMES]
        checked += 1
        if not (vals[0] == vals[1] == vals[2]) or (not st.in_window(pi, mu, nu) and vals[0]):
            bad = (pi, mu, nu, [str(v) for v in vals])
            break
    ok = criterion(1, "three routes for g agree on |mu|+|nu| <= 6, |pi| <= 6", bad is None,
                   f"{checked} triples" if bad is None else f"mismatch {bad}")
    assert ok


def test_criterion_02_spot_values(criterion):
    # c by direct summation over hand-entered J_[2] = p11 + alpha p2, J_[11] = p11 - p2
    J = {(2,): {(1, 1): ONE, (2,): ALPHA}, (1, 1): {(1, 1): ONE, (2,): -ONE}}
    j = {(2,): 2 * ALPHA ** 2 * (ALPHA + 1), (1, 1): 2 * ALPHA * (ALPHA + 1)}

    def c_hand(pi, mu, nu):
        zl = {(2,): 2, (1, 1): 2}[pi] * ALPHA ** len(pi)
        return zl * sum((J[t][pi] * J[t][mu] * J[t][nu] / j[t] for t in J), ZERO)

    assert c_hand((2,), (2,), (2,)) == B
    assert c_hand((1, 1), (2,), (2,)) == ONE + B
    solved = solve_character_products((1,), (1,))
    assert solved[(1, 1)] == 2 and solved[(1,)] == 1 and solved[(2,)] == 0
    # a^[1]_[2] from the closed form of C_{1,1}: alpha * [p_2] C_{1,1} . 1 / 2
    a_closed = ALPHA * c_ell_k_closed(1, 1, PExpr.one()).coeff((2,)) / 2
    assert a_closed == B / 2

    checks = {
        "c^[2]_[2],[2] = b": c_coefficient((2,), (2,), (2,)) == B,
        "c^[1,1]_[2],[2] = 1+b": c_coefficient((1, 1), (2,), (2,)) == ONE + B,
        "g^[1,1]_[1],[1] = 2": all(st.g_coefficient((1, 1), (1,), (1,), r) == 2 for r in ROUTE_NAMES),
        "g^[1]_[1],[1] = 1": all(st.g_coefficient((1,), (1,), (1,), r) == 1 for r in ROUTE_NAMES),
        "g^[2]_[1],[1] = 0": all(st.g_coefficient((2,), (1,), (1,), r) == 0 for r in ROUTE_NAMES),
        "a^[1]_[2] = b/2": st.a_coefficient((1,), (2,)) == B / 2,
    }
    failed = [k for k, v in checks.items() if not v]
    ok = criterion(2, "spot values", not failed, ", ".join(failed))
    assert ok


def test_criterion_03_alpha_one_oracle(criterion):
    checked, bad = 0, None
    for size in range(6):
        for pi in partitions_of(size):
            for mu in partitions_upto(size):
                for nu in partitions_upto(size):
                    o = marked_hypermap_count(pi, mu, nu)
                    g1 = st.g_via_c(pi, mu, nu).eval_at_alpha(1)
                    checked += 1
                    if o != g1 and bad is None:
                        bad = (pi, mu, nu, o, g1)
    ok = criterion(3, "marked hypermap counts equal g at alpha = 1 for |pi| <= 5", bad is None,
                   f"{checked} triples" if bad is None else f"mismatch {bad}")
    assert ok


def test_criterion_04_jack_characterization(criterion):
    problems = []
    for n in range(7):
        lams = partitions_of(n)
        for i, lam in enumerate(lams):
            J = jack_polynomial(lam)
            if J.coeff((1,) * n) != ONE:
                problems.append(f"normalization {lam}")
            m = p_to_m(J, n)
            if not m.get(lam) or any(c and not dominance_leq(mu, lam) for mu, c in m.items()):
                problems.append(f"triangularity {lam}")
            for other in lams[i + 1:]:
                if hall_inner(J, jack_polynomial(other)):
                    problems.append(f"orthogonality {lam} {other}")
            if jack_norm(lam) != hook_norm(lam) or hall_inner(J, J) != jack_norm(lam):
                problems.append(f"norm {lam}")
    if jack_polynomial((2,)) != PExpr({(1, 1): ONE, (2,): ALPHA}):
        problems.append("J_[2]")
    if jack_polynomial((1, 1)) != PExpr({(1, 1): ONE, (2,): -ONE}):
        problems.append("J_[1,1]")
    if jack_norm((2,)) != 2 * ALPHA ** 2 * (1 + ALPHA) or jack_norm((1, 1)) != 2 * ALPHA * (1 + ALPHA):
        problems.append("j values")
    ok = criterion(4, "Jack polynomials: orthogonal, triangular, normalized, |lambda| <= 6",
                   not problems, "; ".join(problems[:3]))
    assert ok


def test_criterion_05_closed_forms(criterion):
    res = closed_forms_check(ell_max=4, k_max=2, basis_degree=4)
    ok = criterion(5, "engine C_{l,k} equals closed forms, l <= 4, k <= 2, |lambda| <= 4", res["pass"],
                   f"{res['checked']} cases" if res["pass"] else str(res["counterexample"]))
    assert ok


def test_criterion_06_commutators(criterion):
    checked, bad = 0, None
    for ell in range(0, 4):
        for m in range(1, 4):
            if ell == m:
                continue
            res = commutator_check(ell, m, basis_degree=3, t_max=6)
            checked += res["checked"]
            if not res["pass"]:
                bad = res["counterexample"]
    ok = criterion(6, "[C_l, C_m] = 0 and [C_0, C_m] = (m+1) C_{m+1}, |lambda| <= 3, t <= 6", bad is None,
                   f"{checked} cases" if bad is None else str(bad))
    assert ok


def test_criterion_07_main_equation(criterion):
    results = {ell: st.verify_main_equation(ell, 5) for ell in range(4)}
    bad = {ell: r["counterexample"] for ell, r in results.items() if not r["pass"]}
    ok = criterion(7, "differential equation for G, u-layers l <= 3, |mu|+|nu| <= 5", not bad,
                   f"{sum(r['checked'] for r in results.values())} coefficients" if not bad else str(bad))
    assert ok


def test_criterion_08_low_degree_operators(criterion):
    res = st.verify_low_terms(4)
    ok = criterion(8, "G_0, G_1, G_2 closed forms on |pi| <= 4", res["pass"],
                   f"{res['checked']} cases" if res["pass"] else str(res["counterexample"]))
    assert ok


def test_criterion_09_adjointness(criterion):
    results = [adjointness_check(n, 6) for n in (1, 2, 3)]
    bad = [r["counterexample"] for r in results if not r["pass"]]
    ok = criterion(9, "<B_n f, g> = <f, B_n^perp g> per u-layer, |g| <= 6, n <= 3", not bad,
                   f"{sum(r['checked'] for r in results)} pairings" if not bad else str(bad[0]))
    assert ok


def test_criterion_10_integrality_and_positivity(criterion):
    res = st.conjecture_scan(6)
    ok = criterion(10, "integrality on |mu|+|nu| <= 6; positivity violations reported",
                   not res["integrality_errors"] and not res["violations"],
                   f"{res['entries']} entries, {len(res['integrality_errors'])} non-integral, "
                   f"{len(res['violations'])} negative")
    assert not res["integrality_errors"]
    assert ok


def test_criterion_11_connected_series(criterion):
    parts = {
        "log shift": st.verify_log_shift(4),
        "degree bound": st.degree_bound_check(6),
        "connected equation": st.verify_connected_equation(3),
    }
    bad = {k: r["counterexample"] for k, r in parts.items() if not r["pass"]}
    ok = criterion(11, "connected series: log shift (<= 4), degree bound (<= 6), equation (<= 3)",
                   not bad, ", ".join(f"{k} {r['checked']}" for k, r in parts.items()) if not bad else str(bad))
    assert ok


def test_criterion_12_constellations(criterion):
    eq = st.verify_constellation_equation(2, 4, ell_max=3)
    expected = solve_character_products((1,), (1,), (1,))[(1, 1, 1)]
    assert expected == 6
    triple = st.constellation_g((1, 1, 1), [(1,), (1,), (1,)])
    ok = criterion(12, "k = 2 constellation equation at total size <= 4; [1,1,1] coefficient of theta_1^3",
                   eq["pass"] and triple == expected,
                   f"{eq['checked']} coefficients, coefficient {triple}")
    assert ok


def test_criterion_13_defining_identity(criterion):
    prod = st.verify_character_products(4, 6)
    skew = st.verify_skew_composition(3)
    ok = criterion(13, "theta_mu theta_nu = sum g theta_pi on |lambda| <= 4; skew composition at size <= 3",
                   prod["pass"] and skew["pass"],
                   f"{prod['checked']} evaluations, {skew['checked']} skew identities")
    assert ok


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
