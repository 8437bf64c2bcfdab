"""Sparse power-sum algebra over Q(b).

``PExpr`` is a finite combination of power-sum monomials ``p_lambda`` in one
alphabet.  ``MultiSeries`` is a truncated combination of monomials
``t^k p_pi q_mu r_nu`` (or more alphabets); its truncation caps are part of
the value.
"""

from functools import lru_cache
from math import factorial

from .partitions import (
    Partition,
    add_part,
    partitions_of,
    remove_part,
    union,
    z_factor,
)
from .scalar import ALPHA, ONE, ZERO, Qb, qb


@lru_cache(maxsize=None)
def alpha_pow(k: int) -> Qb:
    return ALPHA**k


@lru_cache(maxsize=None)
def hall_norm(lam: Partition) -> Qb:
    """<p_lam, p_lam>_alpha = z_lam alpha^l(lam)."""
    return alpha_pow(len(lam)) * z_factor(lam)


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


class PExpr:
    """A polynomial in p_1, p_2, ... with coefficients in Q(b)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else _clean({k: qb(v) for k, v in dict(terms).items()})

    @classmethod
    def _wrap(cls, terms: dict) -> "PExpr":
        out = object.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def mono(cls, lam: Partition, coeff=ONE) -> "PExpr":
        return cls({tuple(lam): coeff})

    @classmethod
    def one(cls) -> "PExpr":
        return cls._wrap({(): ONE})

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, lam: Partition) -> Qb:
        return self.terms.get(lam, ZERO)

    def __getitem__(self, lam):
        return self.coeff(lam)

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self.terms}

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (n is None or degs == {n})

    def homogeneous_part(self, n: int) -> "PExpr":
        return PExpr._wrap({k: v for k, v in self.terms.items() if sum(k) == n})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return PExpr._wrap(_clean(out))

    def __neg__(self):
        return PExpr._wrap({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PExpr":
        c = qb(c)
        if not c:
            return PExpr()
        return PExpr._wrap({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PExpr):
            return self.scale(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = union(k1, k2)
                s = out.get(k)
                out[k] = v1 * v2 if s is None else s + v1 * v2
        return PExpr._wrap(_clean(out))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, PExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def times_p(self, i: int) -> "PExpr":
        return PExpr._wrap({add_part(k, i): v for k, v in self.terms.items()})

    def derivative(self, i: int) -> "PExpr":
        """d/dp_i."""
        out: dict = {}
        for k, v in self.terms.items():
            m = k.count(i)
            if m:
                kk = remove_part(k, i)
                s = out.get(kk)
                out[kk] = v * m if s is None else s + v * m
        return PExpr._wrap(_clean(out))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self):
        return f"PExpr({self})"

    def __str__(self):
        return format_pexpr(self)


def format_pexpr(f: PExpr, var: str = "p") -> str:
    """Render as ``c*p[lam] + ...`` with the grammar accepted by ``parse_pexpr``."""
    if not f.terms:
        return "0"
    parts = []
    for lam, c in f.sorted_items():
        mono = f"{var}[" + ",".join(map(str, lam)) + "]"
        cs = str(c)
        if cs == "1":
            body, sign = mono, "+"
        elif cs == "-1":
            body, sign = mono, "-"
        else:
            neg = cs.startswith("-") and "+" not in cs[1:] and "-" not in cs[1:] and "/" not in cs
            if neg:
                body, sign = f"{cs[1:]}*{mono}", "-"
            else:
                wrap = any(ch in cs[1:] for ch in "+-/") or cs.startswith("-")
                body, sign = (f"({cs})*{mono}" if wrap else f"{cs}*{mono}"), "+"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def hall_inner(f: PExpr, g: PExpr) -> Qb:
    """alpha-deformed Hall scalar product."""
    if len(g.terms) < len(f.terms):
        f, g = g, f
    out = ZERO
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            out = out + c * d * hall_norm(lam)
    return out


# ---- monomial basis ------------------------------------------------------


@lru_cache(maxsize=None)
def _p_in_m(lam: Partition) -> dict[Partition, int]:
    """Coefficients L with p_lam = sum_mu L[mu] m_mu.

    L[mu] counts maps f from the parts of lam to the rows of mu with the
    parts landing in row i summing to mu_i.
    """
    n = sum(lam)
    out = {}
    for mu in partitions_of(n):
        if len(mu) > len(lam):
            continue
        count = 0
        caps = list(mu)

        def place(j):
            nonlocal count
            if j == len(lam):
                if all(c == 0 for c in caps):
                    count += 1
                return
            for i in range(len(caps)):
                if caps[i] >= lam[j]:
                    caps[i] -= lam[j]
                    place(j + 1)
                    caps[i] += lam[j]

        place(0)
        if count:
            out[mu] = count
    return out


MONOMIAL_DEGREE_CAP = 8


def p_to_m(f: PExpr, n: int) -> dict[Partition, Qb]:
    """Expand a homogeneous degree-n element in the monomial basis."""
    if n > MONOMIAL_DEGREE_CAP:
        raise ValueError(f"monomial conversion is limited to degree {MONOMIAL_DEGREE_CAP}")
    if not f.is_homogeneous(n) and f.terms:
        raise ValueError(f"expression is not homogeneous of degree {n}")
    out: dict = {}
    for lam, c in f.terms.items():
        for mu, k in _p_in_m(lam).items():
            s = out.get(mu)
            out[mu] = c * k if s is None else s + c * k
    return _clean(out)


@lru_cache(maxsize=None)
def _m_in_p(n: int) -> dict[Partition, dict[Partition, Qb]]:
    """Invert the triangular p -> m transition at degree n.

    p_lam = L[lam][lam] m_lam + sum over mu dominating lam, so m_lam is
    solved from the top of the dominance order downwards.
    """
    out: dict[Partition, dict[Partition, Qb]] = {}
    for lam in partitions_of(n):  # reverse lex: dominating partitions come first
        row = _p_in_m(lam)
        expr = {lam: Qb(1)}
        for mu, k in row.items():
            if mu == lam:
                continue
            for nu, c in out[mu].items():
                expr[nu] = expr.get(nu, ZERO) - c * k
        lead = row[lam]
        out[lam] = _clean({k: v / lead for k, v in expr.items()})
    return out


def m_to_p(coeffs: dict[Partition, Qb], n: int | None = None) -> PExpr:
    """Inverse of ``p_to_m`` on a degree-n monomial vector."""
    total = PExpr()
    for mu, c in coeffs.items():
        deg = sum(mu)
        if n is not None and deg != n:
            raise ValueError(f"monomial m{mu} is not of degree {n}")
        total = total + PExpr(_m_in_p(deg)[mu]).scale(c)
    return total


# ---- truncated multi-alphabet series ---------------------------------------


class CapError(ValueError):
    """A series term or operation falls outside the stored truncation caps."""


class Caps:
    """Truncation bounds: t-degree, size of the p-part, total size of the rest."""

    __slots__ = ("max_t", "max_p", "max_rest")

    def __init__(self, max_t: int, max_p: int, max_rest: int):
        if min(max_p, max_rest) < 0:
            raise ValueError("caps must be nonnegative")
        self.max_t, self.max_p, self.max_rest = max_t, max_p, max_rest

    def admits(self, key) -> bool:
        t, pi, *rest = key
        return (t <= self.max_t and sum(pi) <= self.max_p
                and sum(sum(m) for m in rest) <= self.max_rest)

    def __eq__(self, other):
        return isinstance(other, Caps) and self.astuple() == other.astuple()

    def __hash__(self):
        return hash(self.astuple())

    def astuple(self):
        return (self.max_t, self.max_p, self.max_rest)

    def __repr__(self):
        return f"Caps(max_t={self.max_t}, max_p={self.max_p}, max_rest={self.max_rest})"


class MultiSeries:
    """Truncated series in t and several power-sum alphabets.

    Keys are ``(t, pi, mu, nu, ...)``: the t-exponent followed by one
    partition per alphabet (``names``).  Negative t-exponents are allowed so
    that the 1/t shift operators stay inside the type; caps bound t from
    above only.
    """

    __slots__ = ("terms", "caps", "names")

    def __init__(self, terms=None, caps: Caps | None = None, names=("p", "q", "r")):
        if caps is None:
            raise ValueError("a MultiSeries needs explicit caps")
        self.caps, self.names = caps, tuple(names)
        self.terms = {}
        for key, v in (terms or {}).items():
            key = (int(key[0]),) + tuple(tuple(m) for m in key[1:])
            if len(key) != len(self.names) + 1:
                raise ValueError(f"key {key} does not match alphabets {self.names}")
            if not caps.admits(key):
                raise CapError(f"term {key} exceeds {caps}")
            v = qb(v)
            if v:
                self.terms[key] = v

    @classmethod
    def _wrap(cls, terms, caps, names):
        out = object.__new__(cls)
        out.terms, out.caps, out.names = terms, caps, names
        return out

    @classmethod
    def one(cls, caps: Caps, names=("p", "q", "r")) -> "MultiSeries":
        return cls._wrap({(0,) + ((),) * len(names): ONE}, caps, tuple(names))

    @classmethod
    def zero(cls, caps: Caps, names=("p", "q", "r")) -> "MultiSeries":
        return cls._wrap({}, caps, tuple(names))

    def _compatible(self, other):
        if self.caps != other.caps or self.names != other.names:
            raise CapError(f"incompatible series: {self.caps}/{self.names} vs {other.caps}/{other.names}")

    def coeff(self, key) -> Qb:
        return self.terms.get(key, ZERO)

    def constant_term(self) -> Qb:
        return self.coeff((0,) + ((),) * len(self.names))

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultiSeries) and self.names == other.names
                and self.caps == other.caps and self.terms == other.terms)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return MultiSeries._wrap(_clean(out), self.caps, self.names)

    def __neg__(self):
        return MultiSeries._wrap({k: -v for k, v in self.terms.items()}, self.caps, self.names)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        c = qb(c)
        if not c:
            return MultiSeries.zero(self.caps, self.names)
        return MultiSeries._wrap({k: v * c for k, v in self.terms.items()}, self.caps, self.names)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def restrict(self, caps: Caps) -> "MultiSeries":
        """Explicit truncation to smaller caps."""
        for a, b in zip(caps.astuple(), self.caps.astuple()):
            if a > b:
                raise CapError(f"cannot widen {self.caps} to {caps}")
        return MultiSeries._wrap({k: v for k, v in self.terms.items() if caps.admits(k)},
                                 caps, self.names)

    def shift_t(self, k: int) -> "MultiSeries":
        """Multiply by t^k; terms pushed above the t cap are rejected."""
        out = {}
        for key, v in self.terms.items():
            nk = (key[0] + k,) + key[1:]
            if not self.caps.admits(nk):
                raise CapError(f"t-shift pushes {key} outside {self.caps}")
            out[nk] = v
        return MultiSeries._wrap(out, self.caps, self.names)

    def sorted_items(self):
        def order(kv):
            return (kv[0][0],) + tuple((sum(m), m) for m in kv[0][1:])
        return sorted(self.terms.items(), key=order)

    def to_json(self) -> list[dict]:
        out = []
        for key, v in self.sorted_items():
            rec = {"t": key[0]}
            for name, m in zip(self.names, key[1:]):
                rec[name] = list(m)
            rec["coeff"] = v.to_json()
            out.append(rec)
        return out

    @classmethod
    def from_json(cls, records, caps: Caps, names=("p", "q", "r")) -> "MultiSeries":
        terms = {}
        for rec in records:
            key = (rec["t"],) + tuple(tuple(rec[n]) for n in names)
            terms[key] = Qb.from_json(rec["coeff"])
        return cls(terms, caps, names)

    def __repr__(self):
        return f"MultiSeries({len(self.terms)} terms, {self.caps}, names={self.names})"


def _key_mul(k1, k2):
    return (k1[0] + k2[0],) + tuple(union(a, b) for a, b in zip(k1[1:], k2[1:]))


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Truncated product; the result keeps the common caps."""
    a._compatible(b)
    caps = a.caps
    out: dict = {}
    for k1, v1 in a.terms.items():
        for k2, v2 in b.terms.items():
            k = _key_mul(k1, k2)
            if not caps.admits(k):
                continue
            s = out.get(k)
            out[k] = v1 * v2 if s is None else s + v1 * v2
    return MultiSeries._wrap(_clean(out), caps, a.names)


def _nilpotency_bound(a: MultiSeries) -> int:
    """Power beyond which a constant-free series vanishes under its caps."""
    for key in a.terms:
        sizes = sum(sum(m) for m in key[1:])
        if sizes == 0 and key[0] <= 0:
            raise CapError(f"term {key} is not nilpotent under the caps")
    c = a.caps
    return c.max_t + c.max_p + c.max_rest + max(0, -min((k[0] for k in a.terms), default=0)) * (c.max_p + c.max_rest) + 1


def series_exp(a: MultiSeries) -> MultiSeries:
    if a.constant_term():
        raise ValueError("exp needs a series with zero constant term")
    out = MultiSeries.one(a.caps, a.names)
    power = MultiSeries.one(a.caps, a.names)
    for k in range(1, _nilpotency_bound(a) + 1):
        power = series_mul(power, a)
        if not power.terms:
            break
        out = out + power.scale(Qb(1, factorial(k)))
    return out


def series_log(a: MultiSeries) -> MultiSeries:
    if a.constant_term() != ONE:
        raise ValueError("log needs a series with constant term 1")
    x = a - MultiSeries.one(a.caps, a.names)
    out = MultiSeries.zero(a.caps, a.names)
    power = MultiSeries.one(a.caps, a.names)
    for k in range(1, _nilpotency_bound(x) + 1):
        power = series_mul(power, x)
        if not power.terms:
            break
        out = out + power.scale(Qb((-1) ** (k + 1), k))
    return out


def _alphabet_index(s: MultiSeries, alphabet) -> int:
    if isinstance(alphabet, int):
        return alphabet
    return s.names.index(alphabet)


def partial_derivative(a: MultiSeries, alphabet, i: int) -> MultiSeries:
    """d/dx_i in one alphabet, all monomials treated as commuting variables."""
    j = _alphabet_index(a, alphabet) + 1
    out: dict = {}
    for key, v in a.terms.items():
        m = key[j].count(i)
        if not m:
            continue
        nk = key[:j] + (remove_part(key[j], i),) + key[j + 1:]
        s = out.get(nk)
        out[nk] = v * m if s is None else s + v * m
    return MultiSeries._wrap(_clean(out), a.caps, a.names)


def multiply_by_variable(a: MultiSeries, alphabet, i: int) -> MultiSeries:
    """Multiply by x_i; a product leaving the caps is rejected."""
    j = _alphabet_index(a, alphabet) + 1
    out = {}
    for key, v in a.terms.items():
        nk = key[:j] + (add_part(key[j], i),) + key[j + 1:]
        if not a.caps.admits(nk):
            raise CapError(f"multiplication by {a.names[j - 1]}_{i} leaves {a.caps}")
        out[nk] = v
    return MultiSeries._wrap(out, a.caps, a.names)


def exp_shift_ones(a: MultiSeries, alphabet) -> MultiSeries:
    """Apply exp(d/(t dx_1)) in one alphabet: a Taylor shift x_1 -> x_1 + 1/t."""
    out = a
    term = a
    k = 1
    while True:
        term = partial_derivative(term, alphabet, 1).shift_t(-1).scale(Qb(1, k))
        if not term.terms:
            return out
        out = out + term
        k += 1


# ---- text grammar ------------------------------------------------------------


def parse_pexpr(text: str, var: str = "p") -> PExpr:
    """Parse ``c*p[lam] + ...`` back into a PExpr.

    Scalars are rational expressions in ``b`` (``alpha`` is accepted as
    ``b+1``) built from integers, ``+ - * / ^`` and parentheses; ``p[3,1]``
    is a power-sum monomial and ``p[]`` the constant 1.
    """
    return _Parser(text, var).parse()


class _Parser:
    def __init__(self, text: str, var: str):
        self.s, self.i, self.var = text.replace(" ", ""), 0, var

    def error(self, msg):
        raise ValueError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> PExpr:
        if not self.s:
            self.error("empty expression")
        out = self.expr()
        if self.i != len(self.s):
            self.error("unexpected character")
        return out

    def expr(self) -> PExpr:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        out = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.i += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> PExpr:
        out = self.power()
        while self.peek() in ("*", "/"):
            op = self.peek()
            self.i += 1
            f = self.power()
            if op == "*":
                out = out * f
            else:
                if set(f.terms) != {()}:
                    self.error("division by a non-scalar")
                out = out.scale(ONE / f.coeff(()))
        return out

    def power(self) -> PExpr:
        if self.peek() == "-":
            self.i += 1
            return -self.power()
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            k = self.integer()
            out = PExpr.one()
            for _ in range(k):
                out = out * base
            return out
        return base

    def integer(self) -> int:
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected an integer")
        return int(self.s[start:self.i])

    def atom(self) -> PExpr:
        c = self.peek()
        if c == "(":
            self.i += 1
            out = self.expr()
            if self.peek() != ")":
                self.error("missing ')'")
            self.i += 1
            return out
        if c.isdigit():
            return PExpr.one().scale(self.integer())
        if self.s.startswith("alpha", self.i):
            self.i += 5
            return PExpr.one().scale(ALPHA)
        if c == "b":
            self.i += 1
            return PExpr.one().scale(Qb([0, 1]))
        if self.s.startswith(self.var + "[", self.i):
            self.i += len(self.var) + 1
            parts = []
            while self.peek() != "]":
                if not self.peek():
                    self.error("missing ']'")
                parts.append(self.integer())
                if self.peek() == ",":
                    self.i += 1
            self.i += 1
            if any(p < 1 for p in parts):
                self.error("parts must be positive")
            return PExpr.mono(tuple(sorted(parts, reverse=True)))
        self.error("unexpected token")
