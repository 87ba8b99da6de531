"""Exact scalars: rationals, real quadratic fields and cyclotomic fields.

Rationals are :class:`fractions.Fraction`.  :class:`QuadScalar` represents
``a + b*sqrt(D)`` with an exactly decidable sign, and :class:`CycloElement`
an element of Q(zeta_n) stored in the power basis modulo the n-th cyclotomic
polynomial.  Cyclotomic elements support equality only, never ordering.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_rational(x) -> int:
    return (x > 0) - (x < 0)


class QuadScalar:
    """An element ``a + b*sqrt(D)`` of the real quadratic field Q(sqrt(D)).

    ``D`` is a square-free integer >= 2 and acts as a field tag: arithmetic
    between two QuadScalars with different tags raises
    :class:`FieldMismatchError`.  Plain ints and Fractions coerce into any
    quadratic field.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 2):
        if not _squarefree(D):
            raise ValueError(f"D must be a square-free integer >= 2, got {D}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.D != self.D:
                raise FieldMismatchError(
                    f"cannot combine Q(sqrt({self.D})) with Q(sqrt({other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a * o.a + self.b * o.b * self.D,
                          self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        norm = self.a * self.a - self.b * self.b * self.D
        if norm == 0:
            raise ZeroDivisionError("QuadScalar division by zero")
        return QuadScalar(self.a / norm, -self.b / norm, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def sign(self) -> int:
        sa, sb = _sign_rational(self.a), _sign_rational(self.b)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: whichever of a^2 and b^2 D is larger wins
        lhs, rhs = self.a * self.a, self.b * self.b * self.D
        return sa if lhs > rhs else sb

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.D)

    def _cmp(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadScalar):
            if other.D != self.D:
                raise FieldMismatchError(
                    f"cannot compare Q(sqrt({self.D})) with Q(sqrt({other.D}))")
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __repr__(self):
        return f"QuadScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, QuadScalar]


def sign(x: Scalar) -> int:
    """Exact sign of a rational or quadratic scalar (sqrt(D) taken positive)."""
    if isinstance(x, QuadScalar):
        return x.sign()
    return _sign_rational(x)


# ---------------------------------------------------------------------------
# text form

_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?P<a>{_RAT})\s*(?P<op>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<D>\d+)\s*\)\s*$")
_SQRT_ONLY_RE = re.compile(
    rf"^\s*(?P<b>{_RAT})\s*\*\s*sqrt\(\s*(?P<D>\d+)\s*\)\s*$")
_RAT_RE = re.compile(rf"^\s*{_RAT}\s*$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or ``"p/q+r/s*sqrt(D)"`` into an exact scalar.

    Raises ValueError on anything else; decimals are rejected on purpose.
    """
    m = _QUAD_RE.match(text)
    if m:
        b = Fraction(m["b"])
        if m["op"] == "-":
            b = -b
        return QuadScalar(Fraction(m["a"]), b, int(m["D"]))
    m = _SQRT_ONLY_RE.match(text)
    if m:
        return QuadScalar(0, Fraction(m["b"]), int(m["D"]))
    if _RAT_RE.match(text):
        return Fraction(text.strip())
    raise ValueError(f"not an exact scalar: {text!r}")


def format_scalar(x: Scalar) -> str:
    """Canonical text form; the inverse of :func:`parse_scalar`."""
    if isinstance(x, QuadScalar):
        if x.b == 0:
            return str(x.a)
        if x.a == 0:
            return f"{x.b}*sqrt({x.D})"
        op = "+" if x.b > 0 else "-"
        return f"{x.a}{op}{abs(x.b)}*sqrt({x.D})"
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# cyclotomic fields

def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Polynomial long division, coefficients low degree first."""
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = den[-1]
    quot = [0] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    for shift in range(len(num) - len(den), -1, -1):
        c = rem[shift + len(den) - 1]
        if c == 0:
            continue
        c = Fraction(c) / lead
        quot[shift] = c
        for i, d in enumerate(den):
            rem[shift + i] -= c * d
    return _poly_trim(quot), _poly_trim(rem[: len(den) - 1])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CycloElement:
    """Element of Q(zeta_n) in the reduced power basis 1, zeta, ..., zeta^(phi(n)-1).

    Equality is coefficient-wise on the canonical residue.  There is no
    ordering.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(n):
            raise ValueError(f"expected {euler_phi(n)} coefficients for n={n}")
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "CycloElement":
        poly = [0] * (power % n) + [1]
        return cyclo_reduce(poly, n)

    def _check(self, other: "CycloElement"):
        if not isinstance(other, CycloElement):
            return NotImplemented
        if other.n != self.n:
            raise FieldMismatchError(f"cannot combine Q(zeta_{self.n}) with Q(zeta_{other.n})")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = cyclo_reduce([other], self.n)
        o = self._check(other)
        if o is NotImplemented:
            return o
        return CycloElement(self.n, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.n, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.n, (a * other for a in self.coeffs))
        o = self._check(other)
        if o is NotImplemented:
            return o
        return cyclo_reduce(_poly_mul(self.coeffs, o.coeffs), self.n)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = cyclo_reduce([other], self.n)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycloElement(n={self.n}, coeffs=[{', '.join(map(str, self.coeffs))}])"

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [format_scalar(c) for c in self.coeffs]}


def cyclo_reduce(poly: Sequence, n: int) -> CycloElement:
    """Reduce a polynomial in zeta (coefficients low degree first) modulo Phi_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = cyclotomic_polynomial(n)
    _, rem = _poly_divmod([Fraction(c) for c in poly], phi)
    rem = list(rem) + [Fraction(0)] * (len(phi) - 1 - len(rem))
    return CycloElement(n, rem)


def is_zero(e: CycloElement) -> bool:
    return e.is_zero()
