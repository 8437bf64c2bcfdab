import pytest
from hypothesis import given, settings, strategies as st

from jackmaps.jack import jack_polynomial
from jackmaps.partitions import partition, partitions_of, partitions_upto, z_factor
from jackmaps.psym import (
    Caps,
    CapError,
    MultiSeries,
    PExpr,
    exp_shift_ones,
    format_pexpr,
    hall_inner,
    m_to_p,
    multiply_by_variable,
    p_to_m,
    parse_pexpr,
    series_exp,
    series_log,
    series_mul,
)
from jackmaps.scalar import ALPHA, B, ONE, ZERO, Qb

parts = st.lists(st.integers(1, 3), max_size=3).map(partition)
coeffs = st.builds(lambda a, c, d: Qb([a, c], [d]), st.integers(-3, 3), st.integers(-3, 3),
                   st.integers(1, 3))
pexprs = st.dictionaries(parts, coeffs, max_size=4).map(PExpr)


def test_hall_product_on_monomials():
    for n in range(5):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                expect = z_factor(lam) * ALPHA ** len(lam) if lam == mu else ZERO
                assert hall_inner(PExpr.mono(lam), PExpr.mono(mu)) == expect


@given(pexprs, pexprs, pexprs)
def test_hall_bilinear_symmetric(f, g, h):
    assert hall_inner(f, g) == hall_inner(g, f)
    assert hall_inner(f + g, h) == hall_inner(f, h) + hall_inner(g, h)


@given(pexprs, pexprs)
def test_ring_operations(f, g):
    assert f * g == g * f
    assert (f + g) - g == f
    assert f * PExpr.one() == f


@given(pexprs, st.integers(1, 3))
def test_derivative_leibniz(f, i):
    g = PExpr.mono((i,))
    assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)


def test_monomial_transition_roundtrip():
    for n in range(6):
        for lam in partitions_of(n):
            f = PExpr.mono(lam)
            assert m_to_p(p_to_m(f, n), n) == f
    # p_2 p_1 = m_3 + m_21
    assert p_to_m(PExpr.mono((2, 1)), 3) == {(3,): 1, (2, 1): 1}


def test_format_matches_jack_example():
    assert format_pexpr(jack_polynomial((2,))) == "p[1,1] + (b+1)*p[2]"
    assert format_pexpr(PExpr()) == "0"
    assert format_pexpr(PExpr({(1,): -ONE})) == "-p[1]"


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_parse_roundtrip_on_jacks(lam):
    f = jack_polynomial(lam)
    assert parse_pexpr(format_pexpr(f)) == f


@settings(max_examples=60)
@given(pexprs)
def test_parse_roundtrip(f):
    assert parse_pexpr(format_pexpr(f)) == f


def test_parse_grammar():
    assert parse_pexpr("p[]") == PExpr.one()
    assert parse_pexpr("alpha*p[2] - 2*p[1]^2") == PExpr({(2,): ALPHA, (1, 1): Qb(-2)})
    assert parse_pexpr("(b^2-1)/(b+1) * p[3,1]") == PExpr.mono((3, 1), B - 1)
    assert parse_pexpr("p[1]*p[2]") == PExpr.mono((2, 1))
    assert parse_pexpr("p[1,1,1] + -1*p[3]") == PExpr({(1, 1, 1): ONE, (3,): -ONE})
    assert parse_pexpr("-p[1]^2") == PExpr.mono((1, 1), -ONE)
    for bad in ["p[0]", "p[1", "2**", "q[1]", ""]:
        with pytest.raises(ValueError):
            parse_pexpr(bad)


def _series(terms, cap=4):
    return MultiSeries(terms, Caps(cap, cap, cap))


def test_exp_log_inverse():
    a = _series({(1, (1,), (1,), ()): ONE, (0, (1,), (), (1,)): B, (2, (2,), (1,), (1,)): ONE / ALPHA})
    assert series_log(series_exp(a)) == a
    e = series_exp(a)
    assert series_exp(series_log(e)) == e


def test_exp_is_multiplicative():
    a = _series({(1, (1,), (1,), ()): ONE})
    b = _series({(0, (1,), (), (1,)): B})
    assert series_exp(a + b) == series_mul(series_exp(a), series_exp(b))


def test_caps_truncate_and_reject():
    a = _series({(1, (2,), (2,), ()): ONE}, cap=3)
    assert len(series_mul(a, a)) == 0
    with pytest.raises(CapError):
        multiply_by_variable(a, "q", 2)


def test_shift_ones_is_taylor():
    # exp(d/(t dq_1)) q_1^2 = q_1^2 + 2 q_1 / t + 1 / t^2
    a = _series({(0, (), (1, 1), ()): ONE})
    out = dict(exp_shift_ones(a, "q").items())
    assert out == {(0, (), (1, 1), ()): ONE, (-1, (), (1,), ()): Qb(2), (-2, (), (), ()): ONE}


def test_json_roundtrip():
    a = _series({(1, (1,), (1,), ()): ONE, (0, (1,), (), (1,)): B})
    assert MultiSeries.from_json(a.to_json(), a.caps) == a
