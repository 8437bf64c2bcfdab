"""Exact arithmetic in Q(b), rational functions of b = alpha - 1.

Values are stored as a reduced pair of integer polynomials (FLINT
``fmpz_poly``) with a denominator of positive leading coefficient, so two
values are equal exactly when their stored pairs are equal.
"""

from fractions import Fraction

from flint import fmpq, fmpz_poly

_ONE_POLY = fmpz_poly([1])
_ZERO_POLY = fmpz_poly([])


def _to_poly(obj) -> fmpz_poly:
    if isinstance(obj, fmpz_poly):
        return obj
    if isinstance(obj, int):
        return fmpz_poly([obj])
    if isinstance(obj, (list, tuple)):
        return fmpz_poly([int(c) for c in obj])
    raise TypeError(f"cannot build an integer polynomial from {obj!r}")


class Qb:
    """An element of Q(b)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, Qb) and den == 1:
            self.num, self.den, self._hash = num.num, num.den, num._hash
            return
        if isinstance(num, Fraction):
            num, den = num.numerator, _to_poly(den) * num.denominator
        n, d = _to_poly(num), _to_poly(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator in Q(b)")
        self.num, self.den = _reduce(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: fmpz_poly, den: fmpz_poly) -> "Qb":
        out = object.__new__(cls)
        out.num, out.den, out._hash = num, den, None
        return out

    @classmethod
    def _make(cls, num: fmpz_poly, den: fmpz_poly) -> "Qb":
        return cls._raw(*_reduce(num, den))

    @classmethod
    def from_poly(cls, coeffs, den=1) -> "Qb":
        """Build from constant-term-first coefficients (ints or Fractions)."""
        fr = [Fraction(c) for c in coeffs]
        lcm = 1
        for c in fr:
            lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
        return cls([int(c * lcm) for c in fr], fmpz_poly([lcm]) * _to_poly(den))

    # ---- predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    # ---- arithmetic -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return Qb._raw(self.num + other.num, _ONE_POLY)
            return Qb._make(self.num + other.num, self.den)
        return Qb._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Qb._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return Qb._make(self.num * other, self.den)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return Qb._raw(self.num * other.num, _ONE_POLY)
        return Qb._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Qb":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(b)")
        return Qb._make(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(b)")
        return Qb._make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Qb._raw(self.num**k, self.den**k)

    # ---- comparison / hashing -----------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # ---- views ------------------------------------------------------

    def numerator_coeffs(self) -> list[int]:
        return [int(c) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list[int]:
        return [int(c) for c in self.den.coeffs()]

    def as_polynomial(self) -> list[Fraction] | None:
        """Constant-term-first coefficients in b, or None if not a polynomial."""
        if self.den.degree() != 0:
            return None
        d = int(self.den[0])
        return [Fraction(int(c), d) for c in self.num.coeffs()]

    def integer_coefficients(self) -> list[int] | None:
        poly = self.as_polynomial()
        if poly is None or any(c.denominator != 1 for c in poly):
            return None
        return [int(c) for c in poly]

    def degree(self) -> int:
        """Degree in b of a polynomial value; -1 for zero."""
        if self.den.degree() != 0:
            raise ValueError(f"{self} is not a polynomial in b")
        return self.num.degree()

    def eval_b(self, b0) -> Fraction:
        b0 = Fraction(b0)
        q = fmpq(b0.numerator, b0.denominator)
        d = self.den(q)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at b = {b0}")
        v = self.num(q) / d
        return Fraction(int(v.p), int(v.q))

    def eval_at_alpha(self, alpha0) -> Fraction:
        return self.eval_b(Fraction(alpha0) - 1)

    def to_json(self) -> dict:
        return {"num": self.numerator_coeffs(), "den": self.denominator_coeffs()}

    @classmethod
    def from_json(cls, obj) -> "Qb":
        return cls(obj["num"], obj["den"])

    def __repr__(self):
        return f"Qb({self})"

    def __str__(self):
        n = _poly_str(self.num)
        if self.den == _ONE_POLY:
            return n
        d = _poly_str(self.den)
        if self.num.degree() > 0 and len(self.num.coeffs()) - _zeros(self.num) > 1:
            n = f"({n})"
        if self.den.degree() > 0 and len(self.den.coeffs()) - _zeros(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _reduce(n: fmpz_poly, d: fmpz_poly):
    if n.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if d == _ONE_POLY:
        return n, d
    g = n.gcd(d)
    if g != _ONE_POLY:
        n, d = n // g, d // g
    if d[d.degree()] < 0:
        n, d = -n, -d
    return n, d


def _coerce(x):
    if isinstance(x, Qb):
        return x
    if isinstance(x, int):
        return Qb._raw(fmpz_poly([x]), _ONE_POLY)
    if isinstance(x, Fraction):
        return Qb(x)
    return NotImplemented


def _zeros(p: fmpz_poly) -> int:
    return sum(1 for c in p.coeffs() if c == 0)


def _poly_str(p: fmpz_poly) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "b" if k == 1 else f"b^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


def qb(x) -> Qb:
    """Coerce an int, Fraction or Qb."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} into Q(b)")
    return out


ZERO = Qb(0)
ONE = Qb(1)
B = Qb([0, 1])
ALPHA = Qb([1, 1])
