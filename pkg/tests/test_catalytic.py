import pytest

from jackmaps import catalytic as cat
from jackmaps.catalytic import (
    CatalyticExpr,
    adjointness_check,
    apply_gamma,
    apply_theta,
    apply_y_plus,
    b_n_apply,
    b_n_dual_apply,
    b_n_words_apply,
    c_ell_apply,
    c_ell_k,
    c_ell_k_closed,
    closed_forms_check,
    commutator_check,
)
from jackmaps.partitions import partitions_upto
from jackmaps.psym import PExpr
from jackmaps.scalar import ALPHA, B, ONE

BASIS = [PExpr.mono(lam) for lam in partitions_upto(3)]


def _b1_display(f: PExpr) -> dict:
    """u p_1 / alpha + sum_i p_{i+1} i d/dp_i, u-graded."""
    plain = PExpr()
    for i in range(1, 4):
        plain = plain + f.derivative(i).times_p(i + 1).scale(i)
    out = {1: f.times_p(1).scale(ONE / ALPHA)}
    if plain:
        out[0] = plain
    return out


@pytest.mark.parametrize("f", BASIS)
def test_b1_matches_display(f):
    assert b_n_apply(1, f) == _b1_display(f)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_iterative_engine_matches_word_enumeration(n):
    for f in BASIS:
        assert b_n_apply(n, f) == b_n_words_apply(n, f)


def test_b2_on_one():
    # words on y_0/alpha: YY gives y_2; Gamma Y gives y_1 p_1 + b y_2; words ending in Gamma vanish
    res = b_n_apply(2, PExpr.one())
    assert res == {2: PExpr.mono((2,), ONE / ALPHA),
                   1: PExpr({(1, 1): ONE / ALPHA, (2,): B / ALPHA})}


def test_grading():
    for n in (1, 2, 3):
        for f in BASIS:
            d = sum(next(iter(f.terms)))
            for k, g in b_n_apply(n, f).items():
                assert g.degrees() == {d + n}
                assert 0 <= k <= n


def test_catalytic_wrappers():
    e = CatalyticExpr.y(0)
    assert apply_theta(e) == PExpr()
    assert apply_theta(apply_y_plus(apply_y_plus(e))) == PExpr.mono((2,))
    assert apply_gamma(e) == CatalyticExpr()
    # Gamma y_1 = y_1 p_1 + b y_2
    assert apply_gamma(CatalyticExpr.y(1)) == CatalyticExpr(cat={(1, (1,)): ONE, (2, ()): B})
    # Gamma y_0 p_2 = (1+b) 2 y_3
    assert apply_gamma(CatalyticExpr.y(0, PExpr.mono((2,)))) == CatalyticExpr(cat={(3, ()): 2 * ALPHA})


def test_invalid_n():
    with pytest.raises(ValueError):
        b_n_apply(0, PExpr.one())
    with pytest.raises(ValueError):
        b_n_dual_apply(0, PExpr.one())


def test_dual_on_p1():
    assert b_n_dual_apply(1, PExpr.mono((1,))) == {1: PExpr.one()}


def test_adjointness_small():
    for n in (1, 2, 3):
        res = adjointness_check(n, 5)
        assert res["pass"], res


def test_adjointness_detects_literal_dual_y(monkeypatch):
    """Restricting the dual Y operator to y_i with i >= 2 breaks adjointness."""

    def literal(catd):
        return {(i - 1, lam): c for (i, lam), c in catd.items() if i >= 2}

    cat._b_dual_layers_mono.cache_clear()
    monkeypatch.setattr(cat, "_y_plus_dual", literal)
    try:
        assert b_n_dual_apply(1, PExpr.mono((1,))) == {}
        assert not adjointness_check(1, 3)["pass"]
    finally:
        cat._b_dual_layers_mono.cache_clear()


def test_c_ell_zero_layer():
    # C_{l,0} = p_l / alpha
    for ell in range(1, 5):
        for f in BASIS:
            assert c_ell_k(ell, 0, f) == (f.times_p(ell)).scale(ONE / ALPHA)


def test_closed_forms():
    res = closed_forms_check(4, 2, 3)
    assert res["pass"], res


def test_closed_form_with_half_denominator_is_wrong():
    """Doubling the b(l+2)((l+1)^2 - i1 i2) term no longer matches the engine."""
    ell = 1
    extra = PExpr()
    for i1 in range(1, ell + 2):
        i2 = ell + 2 - i1
        coef = B * (ell + 2) * ((ell + 1) ** 2 - i1 * i2) / (4 * ALPHA)
        extra = extra + PExpr.mono(tuple(sorted((i1, i2), reverse=True)), coef)
    f = PExpr.one()
    assert c_ell_k(ell, 2, f) == c_ell_k_closed(ell, 2, f)
    assert c_ell_k(ell, 2, f) != c_ell_k_closed(ell, 2, f) + extra


def test_closed_forms_reject_l_zero():
    with pytest.raises(ValueError):
        c_ell_k_closed(0, 1, PExpr.one())


@pytest.mark.parametrize("ell, m", [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)])
def test_commutators(ell, m):
    res = commutator_check(ell, m, 2, 5)
    assert res["pass"], res


def test_commutator_check_is_not_vacuous():
    # [C_1, C_2] vanishes but C_1 C_2 itself does not
    f = PExpr.mono((1,))
    assert cat._compose(1, 2, f, 5)


def test_c_ell_negate_t():
    f = PExpr.mono((1,))
    pos = c_ell_apply(1, f, 4)
    neg = c_ell_apply(1, f, 4, negate_t=True)
    for n, g in pos.items():
        assert neg[n] == (g if n % 2 == 0 else -g)
