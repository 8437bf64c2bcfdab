"""Catalytic operator engine for the operators B_n, their adjoints and C_l.

A catalytic state is a linear combination of ``y_i p_lambda``; it is stored
as a dict ``(i, lambda) -> Qb``.  Words in ``Gamma_Y + u Y_+`` are expanded
step by step on a u-graded state instead of enumerating the 2^n words.

Index conventions: ``Y_+`` sends ``y_i -> y_{i+1}`` for every ``i >= 0``
(including the seed ``y_0``), and its adjoint sends ``y_i -> y_{i-1}`` for
``i >= 1``.  These are the readings under which ``B_1 . 1 = u p_1/alpha``.
"""

from functools import lru_cache
from math import comb

from .partitions import Partition, add_part, partitions_of, remove_part, union
from .psym import PExpr, hall_inner
from .scalar import ALPHA, B, ONE, Qb, qb

ONE_PLUS_B = ALPHA
INV_ALPHA = ONE / ALPHA

UGraded = dict[int, PExpr]
"""A polynomial in u with PExpr coefficients: ``{u_exponent: PExpr}``."""


def _acc(out: dict, key, val):
    s = out.get(key)
    out[key] = val if s is None else s + val


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


class CatalyticExpr:
    """Element of P + P_Y: a plain part and a part linear in one y_i."""

    __slots__ = ("plain", "cat")

    def __init__(self, plain: PExpr | None = None, cat: dict | None = None):
        self.plain = plain if plain is not None else PExpr()
        self.cat = _clean({(int(i), tuple(lam)): qb(c) for (i, lam), c in (cat or {}).items()})

    @classmethod
    def y(cls, i: int, f: PExpr | None = None) -> "CatalyticExpr":
        f = PExpr.one() if f is None else f
        return cls(cat={(i, lam): c for lam, c in f.items()})

    def __eq__(self, other):
        return isinstance(other, CatalyticExpr) and self.plain == other.plain and self.cat == other.cat

    def __add__(self, other):
        cat = dict(self.cat)
        for k, v in other.cat.items():
            _acc(cat, k, v)
        return CatalyticExpr(self.plain + other.plain, cat)

    def __repr__(self):
        terms = " + ".join(f"({c})*y{i}*p{list(lam)}" for (i, lam), c in sorted(self.cat.items()))
        return f"CatalyticExpr(plain={self.plain}, cat={terms or 0})"


# ---- raw actions on the catalytic part --------------------------------------


def _y_plus(cat: dict) -> dict:
    return {(i + 1, lam): c for (i, lam), c in cat.items()}


def _gamma(cat: dict) -> dict:
    out: dict = {}
    for (i, lam), c in cat.items():
        # (1+b) sum_j y_{i+1+j} j d/dp_j
        for j in set(lam):
            _acc(out, (i + 1 + j, remove_part(lam, j)), c * (ONE_PLUS_B * (j * lam.count(j))))
        # sum_{j=1..i} y_{i-j+1} p_j
        for j in range(1, i + 1):
            _acc(out, (i - j + 1, add_part(lam, j)), c)
        # b i y_{i+1}
        if i:
            _acc(out, (i + 1, lam), c * (B * i))
    return _clean(out)


def _theta(cat: dict) -> dict:
    out: dict = {}
    for (i, lam), c in cat.items():
        if i >= 1:
            _acc(out, add_part(lam, i), c)
    return _clean(out)


def _y_plus_dual(cat: dict) -> dict:
    return {(i - 1, lam): c for (i, lam), c in cat.items() if i >= 1}


def _gamma_dual(cat: dict) -> dict:
    out: dict = {}
    for (i, lam), c in cat.items():
        # sum y_{i'-1} p_j d/dy_{i'+j}
        for j in range(1, i):
            _acc(out, (i - j - 1, add_part(lam, j)), c)
        # (1+b) sum y_{i+j-1} j d^2/dy_i dp_j
        if i >= 1:
            for j in set(lam):
                _acc(out, (i + j - 1, remove_part(lam, j)), c * (ONE_PLUS_B * (j * lam.count(j))))
        # b (i-1) y_{i-1}
        if i >= 2:
            _acc(out, (i - 1, lam), c * (B * (i - 1)))
    return _clean(out)


def _theta_dual(f: PExpr) -> dict:
    out: dict = {}
    for lam, c in f.items():
        for i in set(lam):
            _acc(out, (i, remove_part(lam, i)), c * (i * lam.count(i)))
    return _clean(out)


def apply_y_plus(f: CatalyticExpr) -> CatalyticExpr:
    if f.plain:
        raise ValueError("Y_+ acts on the catalytic component only")
    return CatalyticExpr(cat=_y_plus(f.cat))


def apply_gamma(f: CatalyticExpr) -> CatalyticExpr:
    if f.plain:
        raise ValueError("Gamma_Y acts on the catalytic component only")
    return CatalyticExpr(cat=_gamma(f.cat))


def apply_theta(f: CatalyticExpr) -> PExpr:
    if f.plain:
        raise ValueError("Theta_Y acts on the catalytic component only")
    return PExpr._wrap(_theta(f.cat))


def apply_y_plus_dual(f: CatalyticExpr) -> CatalyticExpr:
    return CatalyticExpr(cat=_y_plus_dual(f.cat))


def apply_gamma_dual(f: CatalyticExpr) -> CatalyticExpr:
    return CatalyticExpr(cat=_gamma_dual(f.cat))


def apply_theta_dual(f: PExpr) -> CatalyticExpr:
    return CatalyticExpr(cat=_theta_dual(f))


# ---- B_n and its adjoint -----------------------------------------------------


def _step(state: dict[int, dict], up, gam) -> dict[int, dict]:
    """One application of (Gamma + u Y) to a u-graded catalytic state."""
    new: dict[int, dict] = {}
    for k, cat in state.items():
        g = gam(cat)
        if g:
            layer = new.setdefault(k, {})
            for key, v in g.items():
                _acc(layer, key, v)
        y = up(cat)
        if y:
            layer = new.setdefault(k + 1, {})
            for key, v in y.items():
                _acc(layer, key, v)
    return {k: c for k, c in ((k, _clean(c)) for k, c in new.items()) if c}


@lru_cache(maxsize=None)
def _b_layers_mono(lam: Partition, n_max: int) -> tuple[UGraded, ...]:
    """(B_1 p_lam, ..., B_{n_max} p_lam), each u-graded."""
    state = {0: {(0, lam): INV_ALPHA}}
    out = []
    for _ in range(n_max):
        state = _step(state, _y_plus, _gamma)
        out.append({k: PExpr._wrap(_theta(cat)) for k, cat in state.items() if _theta(cat)})
    return tuple(out)


@lru_cache(maxsize=None)
def _b_dual_layers_mono(lam: Partition, n_max: int) -> tuple[UGraded, ...]:
    state = {0: _theta_dual(PExpr.mono(lam))}
    out = []
    for _ in range(n_max):
        state = _step(state, _y_plus_dual, _gamma_dual)
        res = {}
        for k, cat in state.items():
            f = {lam2: c for (i, lam2), c in cat.items() if i == 0}
            if f:
                res[k] = PExpr._wrap(f)
        out.append(res)
    return tuple(out)


def _linear(f: PExpr, mono_fn) -> UGraded:
    out: dict[int, PExpr] = {}
    for lam, c in f.items():
        for k, g in mono_fn(lam).items():
            term = g.scale(c)
            out[k] = out[k] + term if k in out else term
    return {k: v for k, v in out.items() if v}


def b_n_apply(n: int, f: PExpr) -> UGraded:
    """B_n(p, u) . f as ``{u_exponent: PExpr}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return _linear(f, lambda lam: _b_layers_mono(lam, n)[n - 1])


def b_n_dual_apply(n: int, f: PExpr) -> UGraded:
    """Adjoint of B_n for the alpha-Hall product, u-graded."""
    if n < 1:
        raise ValueError("n must be positive")
    return _linear(f, lambda lam: _b_dual_layers_mono(lam, n)[n - 1] if sum(lam) >= n else {})


def b_n_words_apply(n: int, f: PExpr) -> UGraded:
    """B_n . f by explicit enumeration of the 2^n words (slow reference)."""
    out: dict[int, PExpr] = {}
    seed = {(0, lam): c * INV_ALPHA for lam, c in f.items()}
    for word in range(2**n):
        cat, k = seed, 0
        for pos in range(n):
            if word >> pos & 1:
                cat, k = _y_plus(cat), k + 1
            else:
                cat = _gamma(cat)
        res = PExpr._wrap(_theta(cat))
        if res:
            out[k] = out[k] + res if k in out else res
    return {k: v for k, v in out.items() if v}


# ---- C_l ---------------------------------------------------------------------

TGraded = dict[int, PExpr]
"""A polynomial in t with PExpr coefficients: ``{t_exponent: PExpr}``."""


@lru_cache(maxsize=None)
def _c_mono(ell: int, lam: Partition, t_max: int) -> TGraded:
    """[t^n] C_l(t) . p_lam for n <= t_max."""
    out = {}
    if t_max < max(ell, 1):
        return out
    layers = _b_layers_mono(lam, t_max)
    for n in range(max(ell, 1), t_max + 1):
        g = layers[n - 1].get(ell)
        if g:
            out[n] = g.scale(Qb(1, n))
    return out


@lru_cache(maxsize=None)
def _c_dual_mono(ell: int, lam: Partition, t_max: int) -> TGraded:
    out = {}
    top = min(t_max, sum(lam))
    if top < max(ell, 1):
        return out
    layers = _b_dual_layers_mono(lam, top)
    for n in range(max(ell, 1), top + 1):
        g = layers[n - 1].get(ell)
        if g:
            out[n] = g.scale(Qb(1, n))
    return out


def _t_linear(f: PExpr, mono_fn, sign: bool) -> TGraded:
    out: dict[int, PExpr] = {}
    for lam, c in f.items():
        for n, g in mono_fn(lam).items():
            cc = -c if (sign and n % 2) else c
            term = g.scale(cc)
            out[n] = out[n] + term if n in out else term
    return {n: v for n, v in out.items() if v}


def c_ell_apply(ell: int, f: PExpr, t_max: int, negate_t: bool = False) -> TGraded:
    """C_l(t) . f = sum_n t^n/n [u^l] B_n f, through t^t_max.

    With ``negate_t`` the series is C_l(-t) (odd t-layers negated).
    """
    return _t_linear(f, lambda lam: _c_mono(ell, lam, t_max), negate_t)


def c_ell_dual_apply(ell: int, f: PExpr, t_max: int, negate_t: bool = False) -> TGraded:
    """Adjoint of C_l(t) applied to f, through t^t_max."""
    return _t_linear(f, lambda lam: _c_dual_mono(ell, lam, t_max), negate_t)


def c_ell_apply_series(ell: int, f: TGraded, t_max: int, negate_t: bool = False) -> TGraded:
    """C_l(t) applied to a t-graded expression, truncated at t^t_max."""
    out: dict[int, PExpr] = {}
    for d, g in f.items():
        if d > t_max:
            continue
        for n, h in c_ell_apply(ell, g, t_max - d, negate_t).items():
            out[d + n] = out[d + n] + h if d + n in out else h
    return {n: v for n, v in out.items() if v}


def c_ell_k(ell: int, k: int, f: PExpr) -> PExpr:
    """C_{l,k} = (l+k) [t^{l+k}] C_l computed by the engine."""
    g = c_ell_apply(ell, f, ell + k).get(ell + k, PExpr())
    return g.scale(ell + k)


# ---- closed forms of C_{l,k}, k <= 2 -------------------------------------------


def _mul_poly(f: PExpr, parts_coeffs) -> PExpr:
    """Multiply f by sum_c c * p_parts."""
    out: dict = {}
    for lam, c in f.items():
        for parts, coeff in parts_coeffs:
            _acc(out, union(lam, parts), c * coeff)
    return PExpr._wrap(_clean(out))


def _first_order(f: PExpr, rule) -> PExpr:
    """sum_m rule(m) * m d/dp_m, where rule(m) is a list of (parts, coeff)."""
    out: dict = {}
    for lam, c in f.items():
        for m in set(lam):
            rest = remove_part(lam, m)
            w = c * (m * lam.count(m))
            for parts, coeff in rule(m):
                _acc(out, union(rest, parts), w * coeff)
    return PExpr._wrap(_clean(out))


def _second_order(f: PExpr, rule) -> PExpr:
    """sum_{m,k} rule(m,k) * m d/dp_m k d/dp_k."""
    out: dict = {}
    for lam, c in f.items():
        for m in set(lam):
            lam1 = remove_part(lam, m)
            w1 = c * (m * lam.count(m))
            for k in set(lam1):
                rest = remove_part(lam1, k)
                w = w1 * (k * lam1.count(k))
                for parts, coeff in rule(m, k):
                    _acc(out, union(rest, parts), w * coeff)
    return PExpr._wrap(_clean(out))


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def c_ell_k_closed(ell: int, k: int, f: PExpr) -> PExpr:
    """Closed differential forms of C_{l,k} for k in {0, 1, 2} and l >= 1."""
    if ell < 1:
        raise ValueError("closed forms are stated for l >= 1")
    if k == 0:
        return _mul_poly(f, [((ell,), INV_ALPHA)])
    if k == 1:
        out = _mul_poly(f, [((ell + 1,), B * INV_ALPHA * comb(ell + 1, 2))])
        out = out + _first_order(f, lambda m: [((m + ell + 1,), Qb(ell + 1))])
        out = out + _mul_poly(f, [(tuple(sorted(c, reverse=True)), Qb(ell + 1) * INV_ALPHA / 2)
                                  for c in _compositions(ell + 1, 2)])
        return out
    if k == 2:
        return _c_ell_2_closed(ell, f)
    raise ValueError("closed forms exist only for k <= 2")


def _c_ell_2_closed(ell: int, f: PExpr) -> PExpr:
    c2 = comb(ell + 2, 2)
    poly = []
    for i in _compositions(ell + 2, 3):
        poly.append((tuple(sorted(i, reverse=True)), INV_ALPHA * Qb(c2, 3)))
    poly.append(((ell + 2,), B * B * INV_ALPHA * Qb(comb(ell + 2, 3) * (3 * ell + 5), 4)))
    for i1, i2 in _compositions(ell + 2, 2):
        poly.append((tuple(sorted((i1, i2), reverse=True)),
                     B * INV_ALPHA * Qb((ell + 2) * ((ell + 1) ** 2 - i1 * i2), 4)))
    poly.append(((ell + 2,), Qb(comb(ell + 3, 4))))
    out = _mul_poly(f, poly)
    out = out + _second_order(f, lambda m, kk: [((ell + kk + m + 2,), ALPHA * c2)])
    out = out + _first_order(f, lambda m: [((m + ell + 2,), B * (c2 * (ell + m + 1)))])
    out = out + _first_order(
        f, lambda m: [(tuple(sorted(c, reverse=True)), Qb(c2)) for c in _compositions(ell + m + 2, 2)])
    return out


# ---- commutators ------------------------------------------------------------------


def _compose(ell: int, m: int, f: PExpr, t_max: int) -> TGraded:
    """C_l(t) C_m(t) . f through t^t_max."""
    return c_ell_apply_series(ell, c_ell_apply(m, f, t_max), t_max)


def _tg_sub(a: TGraded, b: TGraded) -> TGraded:
    out = dict(a)
    for n, g in b.items():
        out[n] = out[n] - g if n in out else -g
    return {n: v for n, v in out.items() if v}


def commutator_check(ell: int, m: int, basis_degree: int, t_max: int) -> dict:
    """Check [C_l, C_m] = 0 (l > 0) or (m+1) C_{m+1} (l = 0) on p_lam, |lam| <= basis_degree.

    Returns ``{"pass": bool, "checked": int, "counterexample": ...}``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    checked = 0
    for d in range(basis_degree + 1):
        for lam in partitions_of(d):
            f = PExpr.mono(lam)
            lhs = _tg_sub(_compose(ell, m, f, t_max), _compose(m, ell, f, t_max))
            if ell == 0:
                rhs = {n: g.scale(m + 1) for n, g in c_ell_apply(m + 1, f, t_max).items()}
            else:
                rhs = {}
            checked += 1
            diff = _tg_sub(lhs, rhs)
            if diff:
                n = min(diff)
                return {"pass": False, "checked": checked,
                        "counterexample": {"lambda": list(lam), "t": n, "diff": str(diff[n])}}
    return {"pass": True, "checked": checked, "counterexample": None}


def adjointness_check(n: int, max_degree: int) -> dict:
    """<B_n f, g> = <f, B_n^perp g> per u-layer for monomials f, g with |g| = |f| + n."""
    checked = 0
    for dg in range(n, max_degree + 1):
        for mu in partitions_of(dg):
            g = PExpr.mono(mu)
            dual = b_n_dual_apply(n, g)
            for lam in partitions_of(dg - n):
                f = PExpr.mono(lam)
                direct = b_n_apply(n, f)
                for u in set(direct) | set(dual):
                    left = hall_inner(direct.get(u, PExpr()), g)
                    right = hall_inner(f, dual.get(u, PExpr()))
                    checked += 1
                    if left != right:
                        return {"pass": False, "checked": checked,
                                "counterexample": {"n": n, "f": list(lam), "g": list(mu), "u": u,
                                                   "left": str(left), "right": str(right)}}
    return {"pass": True, "checked": checked, "counterexample": None}


def closed_forms_check(ell_max: int = 4, k_max: int = 2, basis_degree: int = 4) -> dict:
    checked = 0
    for ell in range(1, ell_max + 1):
        for k in range(k_max + 1):
            for d in range(basis_degree + 1):
                for lam in partitions_of(d):
                    f = PExpr.mono(lam)
                    a, b = c_ell_k(ell, k, f), c_ell_k_closed(ell, k, f)
                    checked += 1
                    if a != b:
                        return {"pass": False, "checked": checked,
                                "counterexample": {"l": ell, "k": k, "lambda": list(lam),
                                                   "engine": str(a), "closed": str(b)}}
    return {"pass": True, "checked": checked, "counterexample": None}


def ugraded_str(f: UGraded, var: str = "u") -> str:
    if not f:
        return "0"
    return " + ".join(f"{var}^{k}*({f[k]})" for k in sorted(f))


__all__ = [
    "CatalyticExpr", "apply_y_plus", "apply_gamma", "apply_theta", "apply_y_plus_dual",
    "apply_gamma_dual", "apply_theta_dual", "b_n_apply", "b_n_dual_apply", "b_n_words_apply",
    "c_ell_apply", "c_ell_dual_apply", "c_ell_apply_series", "c_ell_k", "c_ell_k_closed",
    "commutator_check", "adjointness_check", "closed_forms_check", "ugraded_str",
]
