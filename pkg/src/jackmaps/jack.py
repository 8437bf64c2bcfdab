"""Jack polynomials J_lambda, their norms, Jack characters and the tau series."""

from functools import lru_cache
from math import comb

from .catalytic import b_n_apply
from .partitions import Partition, m1, pad_ones, partitions_of, z_factor
from .psym import (
    MONOMIAL_DEGREE_CAP,
    Caps,
    MultiSeries,
    PExpr,
    alpha_pow,
    hall_inner,
    m_to_p,
)
from .scalar import ALPHA, ONE, ZERO, Qb

JACK_DEGREE_CAP = MONOMIAL_DEGREE_CAP


class JackCache:
    """J_lambda in the power-sum basis and j_lambda = <J_lambda, J_lambda>.

    Filled one degree at a time; a finished degree layer is never modified.
    """

    def __init__(self, cap: int = JACK_DEGREE_CAP):
        self.cap = cap
        self.polys: dict[Partition, PExpr] = {}
        self.norms: dict[Partition, Qb] = {}
        self._done: set[int] = set()

    def _fill(self, n: int):
        if n in self._done:
            return
        if n > self.cap:
            raise ValueError(f"degree {n} exceeds the Jack cache cap {self.cap}")
        # Gram-Schmidt on monomials, smallest in dominance first
        built: list[tuple[Partition, PExpr, Qb]] = []
        for lam in reversed(partitions_of(n)):
            f = m_to_p({lam: ONE}, n)
            for _, g, gg in built:
                c = hall_inner(f, g)
                if c:
                    f = f - g.scale(c / gg)
            built.append((lam, f, hall_inner(f, f)))
        ones = (1,) * n
        for lam, f, _ in built:
            J = f.scale(ONE / f.coeff(ones))
            self.polys[lam] = J
            self.norms[lam] = hall_inner(J, J)
        self._done.add(n)

    def poly(self, lam: Partition) -> PExpr:
        lam = tuple(lam)
        self._fill(sum(lam))
        return self.polys[lam]

    def norm(self, lam: Partition) -> Qb:
        lam = tuple(lam)
        self._fill(sum(lam))
        return self.norms[lam]


_CACHE = JackCache()


def jack_polynomial(lam: Partition) -> PExpr:
    return _CACHE.poly(lam)


def jack_norm(lam: Partition) -> Qb:
    return _CACHE.norm(lam)


@lru_cache(maxsize=None)
def jack_character(mu: Partition, lam: Partition) -> Qb:
    """theta_mu(lam)."""
    n, k = sum(lam), sum(mu)
    if n < k:
        return ZERO
    c = jack_polynomial(lam).coeff(pad_ones(tuple(mu), n - k))
    return c * comb(n - k + m1(mu), m1(mu)) if c else ZERO


def tau_series(n_max: int) -> MultiSeries:
    """sum_n t^n sum_theta J_theta(p) J_theta(q) J_theta(r) / j_theta, through t^n_max."""
    caps = Caps(n_max, n_max, 2 * n_max)
    terms: dict = {}
    for n in range(n_max + 1):
        for theta in partitions_of(n):
            J = list(jack_polynomial(theta).items())
            inv = ONE / jack_norm(theta)
            for pi, a in J:
                a = a * inv
                for mu, b in J:
                    ab = a * b
                    for nu, c in J:
                        key = (n, pi, mu, nu)
                        s = terms.get(key)
                        terms[key] = ab * c if s is None else s + ab * c
    return MultiSeries(terms, caps)


@lru_cache(maxsize=None)
def c_coefficient(pi: Partition, mu: Partition, nu: Partition) -> Qb:
    """z_pi alpha^l(pi) [t^n p_pi q_mu r_nu] tau."""
    n = sum(pi)
    if sum(mu) != n or sum(nu) != n:
        raise ValueError(f"c needs equal sizes, got {pi}, {mu}, {nu}")
    out = ZERO
    for theta in partitions_of(n):
        J = jack_polynomial(theta)
        x = J.coeff(pi)
        if not x:
            continue
        y = J.coeff(mu)
        if not y:
            continue
        z = J.coeff(nu)
        if z:
            out = out + x * y * z / jack_norm(theta)
    return out * alpha_pow(len(pi)) * z_factor(pi)


# ---- skew characters ------------------------------------------------------------


def _poly_add(a: list, b: list) -> list:
    out = list(a) + [ZERO] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


@lru_cache(maxsize=None)
def _exp_b_infty(nu: Partition, gap: int) -> dict[int, PExpr]:
    """[t^gap] exp(B_infty(-t, p, -alpha v)) . p_nu as {v_exponent: PExpr}."""
    # state maps (t_degree, v_exponent) -> PExpr; X = sum_n (-t)^n/n B_n(u -> -alpha v)
    total: dict[tuple[int, int], PExpr] = {(0, 0): PExpr.mono(nu)}
    power = dict(total)
    k = 0
    while power:
        k += 1
        new: dict[tuple[int, int], PExpr] = {}
        for (d, e), f in power.items():
            for n in range(1, gap - d + 1):
                w = Qb((-1) ** n, n * k)
                for u, g in b_n_apply(n, f).items():
                    term = g.scale(w * (-ALPHA) ** u)
                    key = (d + n, e + u)
                    new[key] = new[key] + term if key in new else term
        power = {key: f for key, f in new.items() if f}
        for key, f in power.items():
            total[key] = total[key] + f if key in total else f
    return {e: f for (d, e), f in total.items() if d == gap and f}


def skew_character(mu: Partition, nu: Partition) -> list[Qb]:
    """theta_{mu/nu}(v) as coefficients in v, constant term first."""
    mu, nu = tuple(mu), tuple(nu)
    gap = sum(mu) - sum(nu)
    if gap < 0:
        return []
    layers = _exp_b_infty(nu, gap)
    out: list[Qb] = []
    for e, f in layers.items():
        c = f.coeff(mu)
        if c:
            out = _poly_add(out, [ZERO] * e + [c])
    while out and not out[-1]:
        out.pop()
    return out


def eval_v(poly: list[Qb], v) -> Qb:
    out = ZERO
    for c in reversed(poly):
        out = out * v + c
    return out
