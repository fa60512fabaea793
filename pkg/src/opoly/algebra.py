"""Exact scalar and polynomial arithmetic.

Everything in this package is computed over an exact coefficient field:
either plain rationals (``fractions.Fraction``) or univariate rational
functions over the rationals in one formal parameter (``RationalFunction``,
used to differentiate with respect to a family parameter).  No floating
point is used anywhere.

Polynomials are dense and univariate, and carry a basis tag: ``MONOMIAL``
(powers x^k) or ``FALLING`` (falling factorials x(x-1)...(x-k+1)).  The
difference operators delta/nabla/shift and the formal derivative act on
them exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

#: Field elements are rationals or rational functions in one parameter.
FieldElement = Union[int, Fraction, "RationalFunction"]

MONOMIAL = "monomial"
FALLING = "falling"


class BasisError(ValueError):
    """Raised when an operation gets a polynomial in the wrong basis."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` with integer p, q.  Decimals are rejected."""
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    if "/" in s:
        num, _, den = s.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(a: FieldElement, k: int) -> FieldElement:
    """Shifted factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    result: FieldElement = Fraction(1)
    for j in range(k):
        result = result * (a + j)
    return result


def factorial(n: int) -> Fraction:
    if n < 0:
        raise ValueError("factorial needs n >= 0")
    result = 1
    for j in range(2, n + 1):
        result *= j
    return Fraction(result)


def binomial(top: FieldElement, k: int) -> FieldElement:
    """Generalized binomial coefficient C(top, k) = (top-k+1)_k / k!."""
    if k < 0:
        raise ValueError("binomial needs k >= 0")
    return pochhammer(top - k + 1, k) / factorial(k)


# ---------------------------------------------------------------------------
# Raw dense polynomial helpers over Fraction (used by RationalFunction).
# ---------------------------------------------------------------------------

def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _raw_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = max(len(p), len(q))
    return _trim([
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    ])


def _raw_scale(p: Sequence[Fraction], s: Fraction) -> tuple[Fraction, ...]:
    if s == 0:
        return ()
    return tuple(c * s for c in p)


def _raw_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _raw_divmod(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    inv_lead = 1 / q[-1]
    for i in range(len(rem) - len(q), -1, -1):
        factor = rem[i + len(q) - 1] * inv_lead
        if factor == 0:
            continue
        quot[i] = factor
        for j, b in enumerate(q):
            rem[i + j] -= factor * b
    return _trim(quot), _trim(rem)


def _raw_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a, b = _trim(p), _trim(q)
    while b:
        _, r = _raw_divmod(a, b)
        a, b = b, r
    if a:
        a = tuple(c / a[-1] for c in a)  # monic
    return a


class RationalFunction:
    """Rational function num(t)/den(t) over Fraction in one formal parameter.

    Normalized so that gcd(num, den) = 1 and den is monic; this makes
    equality a plain tuple comparison.  Forms a field: any nonzero element
    has an inverse.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[Fraction] | Fraction | int = 0,
                 den: Iterable[Fraction] | Fraction | int = 1):
        num = self._as_coeffs(num)
        den = self._as_coeffs(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = _raw_gcd(num, den)
        if g and len(g) > 1 or (g and g != (Fraction(1),)):
            num, _ = _raw_divmod(num, g)
            den, _ = _raw_divmod(den, g)
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        self.num: tuple[Fraction, ...] = _trim(num)
        self.den: tuple[Fraction, ...] = _trim(den)

    @staticmethod
    def _as_coeffs(value) -> tuple[Fraction, ...]:
        if isinstance(value, RationalFunction):
            raise TypeError("nested RationalFunction")
        if isinstance(value, (int, Fraction)):
            return _trim((Fraction(value),))
        return _trim(tuple(Fraction(c) for c in value))

    @classmethod
    def parameter(cls) -> "RationalFunction":
        """The formal parameter t itself."""
        return cls([0, 1])

    @classmethod
    def const(cls, value: Fraction | int) -> "RationalFunction":
        return cls(value)

    @staticmethod
    def _coerce(value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (int, Fraction)):
            return RationalFunction(value)
        return NotImplemented  # type: ignore[return-value]

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        num = _raw_add(_raw_mul(self.num, o.den), _raw_mul(o.num, self.den))
        return RationalFunction(num, _raw_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(_raw_mul(self.num, o.num), _raw_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(_raw_mul(self.num, o.den), _raw_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return (1 / self) ** (-exponent)
        result = RationalFunction(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "RationalFunction":
        """Formal derivative d/dt via the quotient rule."""
        dn = _trim(tuple(self.num[i] * i for i in range(1, len(self.num))))
        dd = _trim(tuple(self.den[i] * i for i in range(1, len(self.den))))
        num = _raw_add(_raw_mul(dn, self.den), _raw_scale(_raw_mul(self.num, dd), Fraction(-1)))
        return RationalFunction(num, _raw_mul(self.den, self.den))

    def evaluate(self, point: Fraction) -> Fraction:
        """Value at a rational point; raises ZeroDivisionError at a pole."""
        point = Fraction(point)

        def horner(coeffs):
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * point + c
            return acc

        den = horner(self.den)
        if den == 0:
            raise ZeroDivisionError(f"pole at t = {point}")
        return horner(self.num) / den

    def as_fraction(self) -> Fraction:
        """Return the value when constant; error otherwise."""
        if len(self.den) == 1 and len(self.num) <= 1:
            return (self.num[0] / self.den[0]) if self.num else Fraction(0)
        raise ValueError("rational function is not constant")

    def __repr__(self) -> str:
        def side(coeffs):
            if not coeffs:
                return "0"
            parts = []
            for i, c in enumerate(coeffs):
                if c == 0:
                    continue
                if i == 0:
                    parts.append(format_rational(c))
                elif i == 1:
                    parts.append(f"{format_rational(c)}*t")
                else:
                    parts.append(f"{format_rational(c)}*t^{i}")
            return " + ".join(parts) or "0"

        if self.den == (Fraction(1),):
            return side(self.num)
        return f"({side(self.num)})/({side(self.den)})"


def as_field(value: FieldElement) -> FieldElement:
    """Promote plain ints to Fraction; pass Fraction/RationalFunction through."""
    if isinstance(value, int):
        return Fraction(value)
    return value


class Polynomial:
    """Dense univariate polynomial over an exact field, with a basis tag.

    ``coeffs[k]`` multiplies x^k in the monomial basis, or the falling
    factorial x(x-1)...(x-k+1) in the falling basis.  Trailing zeros are
    trimmed; the zero polynomial has an empty coefficient tuple and
    degree -1.  Instances are immutable.
    """

    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs: Iterable[FieldElement] = (), basis: str = MONOMIAL):
        if basis not in (MONOMIAL, FALLING):
            raise BasisError(f"unknown basis {basis!r}")
        cs = [as_field(c) for c in coeffs]
        end = len(cs)
        while end > 0 and cs[end - 1] == 0:
            end -= 1
        self.coeffs: tuple[FieldElement, ...] = tuple(cs[:end])
        self.basis = basis

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, basis: str = MONOMIAL) -> "Polynomial":
        return cls((), basis)

    @classmethod
    def const(cls, value: FieldElement, basis: str = MONOMIAL) -> "Polynomial":
        return cls((value,), basis)

    @classmethod
    def x(cls, basis: str = MONOMIAL) -> "Polynomial":
        return cls((0, 1), basis)

    @classmethod
    def monomial(cls, degree: int, coeff: FieldElement = 1, basis: str = MONOMIAL) -> "Polynomial":
        """coeff * x^degree (or coeff * x^(falling degree))."""
        return cls([0] * degree + [coeff], basis)

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> FieldElement:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def _require_same_basis(self, other: "Polynomial") -> None:
        if self.basis != other.basis:
            raise BasisError(f"basis mismatch: {self.basis} vs {other.basis}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_basis(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial((self.coeff(i) + other.coeff(i) for i in range(n)), self.basis)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_basis(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial((self.coeff(i) - other.coeff(i) for i in range(n)), self.basis)

    def __neg__(self):
        return Polynomial((-c for c in self.coeffs), self.basis)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._require_same_basis(other)
            if self.basis == FALLING:
                prod = self.to_basis(MONOMIAL) * other.to_basis(MONOMIAL)
                return prod.to_basis(FALLING)
            if self.is_zero() or other.is_zero():
                return Polynomial.zero(self.basis)
            out: list[FieldElement] = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out, self.basis)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar: FieldElement) -> "Polynomial":
        scalar = as_field(scalar)
        return Polynomial((c * scalar for c in self.coeffs), self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        return self.to_basis(MONOMIAL).coeffs == other.to_basis(MONOMIAL).coeffs

    def __hash__(self) -> int:
        return hash(self.to_basis(MONOMIAL).coeffs)

    # -- calculus and difference operators ----------------------------------

    def derivative(self) -> "Polynomial":
        """Formal d/dx; defined on the monomial basis only."""
        if self.basis != MONOMIAL:
            raise BasisError("derivative needs the monomial basis; use delta instead")
        return Polynomial((self.coeffs[k] * k for k in range(1, len(self.coeffs))), MONOMIAL)

    def shift(self, h: int) -> "Polynomial":
        """p(x + h), exactly, in the same basis."""
        if self.basis == FALLING:
            return self.to_basis(MONOMIAL).shift(h).to_basis(FALLING)
        # Horner in (x + h).
        acc = Polynomial.zero(MONOMIAL)
        xh = Polynomial((h, 1), MONOMIAL)
        for c in reversed(self.coeffs):
            acc = acc * xh + Polynomial.const(c)
        return acc

    def delta(self) -> "Polynomial":
        """Forward difference p(x+1) - p(x).

        In the falling basis this is diagonal: delta of x^(falling m) is
        m * x^(falling m-1).
        """
        if self.basis == FALLING:
            return Polynomial((self.coeffs[k] * k for k in range(1, len(self.coeffs))), FALLING)
        return self.shift(1) - self

    def nabla(self) -> "Polynomial":
        """Backward difference p(x) - p(x-1)."""
        if self.basis == FALLING:
            return self.to_basis(MONOMIAL).nabla().to_basis(FALLING)
        return self - self.shift(-1)

    def compose_affine(self, scale: FieldElement, offset: FieldElement) -> "Polynomial":
        """p(scale * x + offset) on the monomial basis."""
        if self.basis != MONOMIAL:
            raise BasisError("compose_affine needs the monomial basis")
        acc = Polynomial.zero(MONOMIAL)
        arg = Polynomial((offset, scale), MONOMIAL)
        for c in reversed(self.coeffs):
            acc = acc * arg + Polynomial.const(c)
        return acc

    # -- basis conversion ----------------------------------------------------

    def to_basis(self, target: str) -> "Polynomial":
        if target not in (MONOMIAL, FALLING):
            raise BasisError(f"unknown basis {target!r}")
        if target == self.basis:
            return self
        if target == FALLING:
            # Horner using x * x^(falling m) = x^(falling m+1) + m x^(falling m).
            acc: list[FieldElement] = []
            for c in reversed(self.coeffs):
                shifted = [Fraction(0)] * (len(acc) + 1)
                for m, a in enumerate(acc):
                    shifted[m + 1] = shifted[m + 1] + a
                    shifted[m] = shifted[m] + a * m
                acc = shifted
                if acc:
                    acc[0] = acc[0] + c
                else:
                    acc = [as_field(c)]
            return Polynomial(acc, FALLING)
        # falling -> monomial: expand each falling factorial.
        result = Polynomial.zero(MONOMIAL)
        term = Polynomial.const(1)  # x^(falling k), expanded
        for k, c in enumerate(self.coeffs):
            if k > 0:
                term = term * Polynomial((-(k - 1), 1), MONOMIAL)
            if c != 0:
                result = result + term.scale(c)
        return result

    # -- evaluation -----------------------------------------------------------

    def __call__(self, point: FieldElement) -> FieldElement:
        point = as_field(point)
        if self.basis == FALLING:
            total: FieldElement = Fraction(0)
            factor: FieldElement = Fraction(1)
            for k, c in enumerate(self.coeffs):
                if k > 0:
                    factor = factor * (point - (k - 1))
                total = total + c * factor
            return total
        acc: FieldElement = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        var = "x" if self.basis == MONOMIAL else "x_"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{var}")
            else:
                parts.append(f"{c}*{var}^{k}")
        return " + ".join(parts)
