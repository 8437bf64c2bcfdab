import pytest

from _oracles import solve_character_products
from jackmaps import structure as st
from jackmaps.partitions import partitions_of, partitions_upto
from jackmaps.psym import PExpr
from jackmaps.scalar import ALPHA, B, ONE, ZERO, Qb

ROUTES = ("c", "rec", "sum")


@pytest.mark.parametrize("mu, nu", [((1,), (1,)), ((2,), (1,)), ((2,), (2,)), ((1, 1), (2,)),
                                    ((2, 1), (1,)), ((3,), (1, 1))])
def test_routes_match_character_solve(mu, nu):
    solved = solve_character_products(mu, nu)
    for pi, x in solved.items():
        for r in ROUTES:
            assert st.g_coefficient(pi, mu, nu, r) == x, (pi, r)


def test_spot_values():
    assert st.g_coefficient((1, 1), (1,), (1,)) == 2
    assert st.g_coefficient((1,), (1,), (1,)) == 1
    assert st.g_coefficient((2,), (1,), (1,)) == 0
    assert st.a_coefficient((1,), (2,)) == B / 2
    assert st.a_coefficient((1,), (1, 1)) == Qb(1, 2)
    assert st.d_coefficient((1, 1), (1,), (1,)) == 2


def test_symmetry_and_unit():
    for pi, mu, nu in st.triples(5):
        assert st.g_via_c(pi, mu, nu) == st.g_via_c(pi, nu, mu)
    for pi in partitions_upto(4):
        for nu in partitions_upto(4):
            assert st.g_via_c(pi, (), nu) == (ONE if pi == nu else ZERO)


def test_top_a_coefficients():
    # the lowest layer of prod alpha lam_i C_{lam_i} . 1 is p_lam
    for lam in partitions_upto(4):
        assert st.a_coefficient(lam, lam) == ONE
        for xi in partitions_of(sum(lam)):
            if xi != lam:
                assert st.a_coefficient(lam, xi) == ZERO
        for xi in partitions_upto(sum(lam) - 1):
            assert st.a_coefficient(lam, xi) == ZERO


def test_table_and_window():
    table = st.CoeffTable.build(3, route="rec")
    assert table[((1, 1), (1,), (1,))] == 2
    assert set(table.provenance.values()) == {"via_recursion"}
    assert table.bounds() == {"max_total": 3, "max_pi": 3}
    assert all(st.in_window(*k) for k, _ in table.items())
    assert not st.in_window((1,), (1, 1), ())


def test_g_series_normalization():
    G = st.g_series(2)
    assert G.constant_term() == ONE
    # g^[1,1]_{[1],[1]} / (z alpha^2) at t^0
    assert G.coeff((0, (1, 1), (1,), (1,))) == 2 / (2 * ALPHA * ALPHA)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_low_closed_forms(k):
    for pi in partitions_upto(4):
        assert st.g_low_closed(k, pi) == st.g_operator_apply(k, pi)
    with pytest.raises(ValueError):
        st.g_low_closed(3, (1,))


def test_psi():
    assert st.psi((1, 1)) == {((1, 1), ()): Qb(1), ((1,), (1,)): Qb(2), ((), (1, 1)): Qb(1)}


@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_main_equation(ell):
    assert st.verify_main_equation(ell, 4)["pass"]


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_main_equation_other_routes(ell):
    assert st.verify_main_equation(ell, 4, route="rec")["pass"]


@pytest.mark.parametrize("lam", [(0,), (1,), (2,), (1, 1)])
def test_product_commutation(lam):
    assert st.verify_product_commutation(lam, 3, 4)["pass"]


def test_iso_divided():
    assert st.verify_iso_all(4)["pass"]


def test_iso_literal_fails():
    """Without the 1/prod m_i! weights, A_[1]^2 differs from the g-expansion by a factor 2."""
    res = st.verify_iso((1,), (1,), divided=False)
    assert not res["pass"]
    assert st.a_mu_symfun((1,), divided=False) * st.a_mu_symfun((1,), divided=False) == PExpr.mono((1, 1))


def test_connected_identities():
    assert st.verify_log_shift(4)["pass"]
    assert st.verify_g_tau_shift(4)["pass"]
    assert st.degree_bound_check(5)["pass"]


def test_connected_values():
    # a single face of each colour meeting at one vertex is connected
    assert st.ghat_coefficient((1,), (1,), ()) == ONE
    # two separate one-face components are not connected
    assert st.ghat_coefficient((1, 1), (1,), (1,)) == ZERO
    assert st.h_coefficient((1,), (1,), (1,)) == ONE


def test_connected_equation():
    assert st.verify_connected_equation(3)["pass"]


def test_connected_equation_literal_seed_fails():
    assert not st.verify_connected_equation(2, literal=True)["pass"]


def test_constellations():
    for pi, mu, nu in st.triples(3):
        assert st.constellation_g(pi, [mu, nu]) == st.g_via_c(pi, mu, nu)
    assert st.constellation_g((1, 1, 1), [(1,), (1,), (1,)]) == 6
    with pytest.raises(ValueError):
        st.constellation_g((1,), [(1,)])
    assert st.verify_constellation_equation(2, 3)["pass"]
    assert st.verify_constellation_equation(3, 2)["pass"]
    for k in (1, 2, 3):
        assert st.verify_constellation_shift(k, 3)["pass"]


def test_constellation_matches_character_solve():
    solved = solve_character_products((1,), (2,), (1,))
    for pi, x in solved.items():
        assert st.constellation_g(pi, [(1,), (2,), (1,)]) == x


def test_evaluation_identities():
    assert st.verify_character_products(4, 4)["pass"]
    assert st.verify_skew_composition(2)["pass"]


def test_scan_report():
    res = st.conjecture_scan(4)
    assert res["pass"] and res["violations"] == [] and res["entries"] > 0


# ---- the verifiers notice a single corrupted coefficient -----------------------------


@pytest.fixture
def corrupted(monkeypatch):
    target = ((1, 1), (1,), (1,))

    def bad(pi, mu, nu):
        g = st.g_via_c(pi, mu, nu)
        return g + ONE if (pi, mu, nu) == target else g

    monkeypatch.setitem(st.ROUTES, "bad", bad)
    yield "bad"
    st.connected_series.cache_clear()


def test_mutation_main_equation(corrupted):
    assert not all(st.verify_main_equation(ell, 3, route=corrupted)["pass"] for ell in range(3))


def test_mutation_character_products(corrupted):
    assert not st.verify_character_products(3, 2, route=corrupted)["pass"]


def test_mutation_low_terms(corrupted):
    assert not st.verify_low_terms(2, route=corrupted)["pass"]


def test_mutation_iso(corrupted):
    assert not st.verify_iso_all(2, route=corrupted)["pass"]


def test_mutation_log_shift(corrupted):
    assert not st.verify_log_shift(2, route=corrupted)["pass"]


def test_mutation_skew(corrupted):
    assert not st.verify_skew_composition(2, route=corrupted)["pass"]
