"""Exact univariate arithmetic in the deformation parameter s.

``SPoly`` is a dense polynomial over Q, stored as integer coefficients
with one common positive denominator, so the hot paths (add, mul) run on
plain big ints.  ``SRat`` is an element of the fraction field Q(s) with
the denominator normalized to a primitive integer polynomial with
positive leading coefficient.  Both are immutable and thread-safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd


def _content_of(ints) -> int:
    g = 0
    for c in ints:
        g = _gcd(g, c)
    return g


class SPoly:
    """Polynomial in s over Q: integer coefficient tuple / positive int."""

    __slots__ = ("ints", "den", "_hash")

    def __init__(self, coeffs=()):
        vals = list(coeffs)
        if all(isinstance(c, int) for c in vals):
            ints = vals
            den = 1
        else:
            den = 1
            fr = []
            for c in vals:
                if isinstance(c, int):
                    fr.append(Fraction(c))
                elif isinstance(c, Fraction):
                    fr.append(c)
                else:
                    raise TypeError(f"cannot coerce {type(c).__name__} to a rational")
            for c in fr:
                den = den * c.denominator // _gcd(den, c.denominator)
            ints = [int(c * den) for c in fr]
        while ints and ints[-1] == 0:
            ints.pop()
        g = _gcd(_content_of(ints), den)
        if g > 1:
            ints = [c // g for c in ints]
            den //= g
        if not ints:
            den = 1
        object.__setattr__(self, "ints", tuple(ints))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @staticmethod
    def _make(ints: list[int], den: int) -> "SPoly":
        while ints and ints[-1] == 0:
            ints.pop()
        if not ints:
            return _SPOLY_ZERO
        if den < 0:
            den = -den
            ints = [-c for c in ints]
        g = _gcd(_content_of(ints), den)
        if g > 1:
            ints = [c // g for c in ints]
            den //= g
        p = SPoly.__new__(SPoly)
        object.__setattr__(p, "ints", tuple(ints))
        object.__setattr__(p, "den", den)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, *a):
        raise AttributeError("SPoly is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "SPoly":
        return _SPOLY_ZERO

    @staticmethod
    def one() -> "SPoly":
        return _SPOLY_ONE

    @staticmethod
    def s(power: int = 1, coeff=1) -> "SPoly":
        """coeff * s**power"""
        if power < 0:
            raise ValueError("negative power")
        return SPoly([0] * power + [coeff])

    @staticmethod
    def const(c) -> "SPoly":
        return SPoly([c])

    # -- queries ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self.den
        return tuple(Fraction(c, d) for c in self.ints)

    def is_zero(self) -> bool:
        return not self.ints

    def degree(self) -> int:
        """Degree in s; the zero polynomial has degree -1."""
        return len(self.ints) - 1

    def leading(self) -> Fraction:
        if not self.ints:
            raise ValueError("zero polynomial has no leading coefficient")
        return Fraction(self.ints[-1], self.den)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.ints):
            return Fraction(self.ints[i], self.den)
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and (self.ints == ((other,) if other else ()))
        if not isinstance(other, SPoly):
            return NotImplemented
        return self.ints == other.ints and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ints, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.ints)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = SPoly.const(other)
        if not isinstance(other, SPoly):
            return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            m1 = m2 = 1
            den = d1
        else:
            g = _gcd(d1, d2)
            m1 = d2 // g
            m2 = d1 // g
            den = d1 // g * d2
        a, b = self.ints, other.ints
        if len(a) < len(b):
            a, b, m1, m2 = b, a, m2, m1
        out = [c * m1 for c in a]
        for i, c in enumerate(b):
            out[i] += c * m2
        return SPoly._make(out, den)

    __radd__ = __add__

    def __neg__(self):
        if not self.ints:
            return self
        p = SPoly.__new__(SPoly)
        object.__setattr__(p, "ints", tuple(-c for c in self.ints))
        object.__setattr__(p, "den", self.den)
        object.__setattr__(p, "_hash", None)
        return p

    def __sub__(self, other):
        if isinstance(other, int):
            other = SPoly.const(other)
        if not isinstance(other, SPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0 or not self.ints:
                return _SPOLY_ZERO
            if isinstance(other, int):
                return SPoly._make([c * other for c in self.ints], self.den)
            return SPoly._make([c * other.numerator for c in self.ints],
                               self.den * other.denominator)
        if not isinstance(other, SPoly):
            return NotImplemented
        a, b = self.ints, other.ints
        if not a or not b:
            return _SPOLY_ZERO
        out = [0] * (len(a) + len(b) - 1)
        if len(a) < len(b):
            a, b = b, a
        for j, cb in enumerate(b):
            if cb:
                for i, ca in enumerate(a):
                    if ca:
                        out[i + j] += ca * cb
        return SPoly._make(out, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = _SPOLY_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "SPoly") -> tuple["SPoly", "SPoly"]:
        """Euclidean division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        dn, dd = self.degree(), other.degree()
        if dn < dd:
            return _SPOLY_ZERO, self
        rem = [Fraction(c, self.den) for c in self.ints]
        ocs = [Fraction(c, other.den) for c in other.ints]
        lead = ocs[-1]
        quo = [Fraction(0)] * (dn - dd + 1)
        for i in range(dn - dd, -1, -1):
            c = rem[i + dd]
            if c:
                q = c / lead
                quo[i] = q
                for j, oc in enumerate(ocs):
                    rem[i + j] -= q * oc
        return SPoly(quo), SPoly(rem[:dd])

    def __divmod__(self, other):
        return self.divmod(other)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    # -- normalization helpers ------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive; 0 for 0."""
        if not self.ints:
            return Fraction(0)
        return Fraction(abs(_content_of(self.ints)), self.den)

    def primitive(self) -> "SPoly":
        """self divided by its content (zero stays zero)."""
        if not self.ints:
            return self
        g = _content_of(self.ints)
        if self.ints[-1] < 0:
            g = -g
        return SPoly._make([c // g for c in self.ints], 1)

    def monic(self) -> "SPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.ints):
            acc = acc * x + c
        return acc / self.den

    def __repr__(self):
        return f"SPoly({format_spoly(self)})"


def _int_poly_gcd(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    """Primitive-PRS gcd of integer coefficient sequences (not both empty)."""

    def prim(p):
        g = _content_of(p)
        if g == 0:
            return list(p)
        return [c // g for c in p]

    def pseudo_rem(u, v):
        u = list(u)
        dv = len(v) - 1
        lv = v[-1]
        while True:
            while u and u[-1] == 0:
                u.pop()
            du = len(u) - 1
            if du < dv:
                break
            lu = u[-1]
            u = [c * lv for c in u]
            off = du - dv
            for j in range(dv + 1):
                u[off + j] -= lu * v[j]
        return u

    a = [c for c in a]
    b = [c for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if len(a) < len(b):
        a, b = b, a
    a = prim(a)
    b = prim(b)
    while b:
        r = pseudo_rem(a, b)
        a, b = b, prim(r)
    return a


def spoly_gcd(a: SPoly, b: SPoly) -> SPoly:
    """Primitive integer gcd over Q[s], positive leading coefficient."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = _int_poly_gcd(a.ints, b.ints)
    if g[-1] < 0:
        g = [-c for c in g]
    return SPoly._make(g, 1)


_SPOLY_ZERO = SPoly.__new__(SPoly)
object.__setattr__(_SPOLY_ZERO, "ints", ())
object.__setattr__(_SPOLY_ZERO, "den", 1)
object.__setattr__(_SPOLY_ZERO, "_hash", None)
_SPOLY_ONE = SPoly.__new__(SPoly)
object.__setattr__(_SPOLY_ONE, "ints", (1,))
object.__setattr__(_SPOLY_ONE, "den", 1)
object.__setattr__(_SPOLY_ONE, "_hash", None)


def _exact_div_ints(num: tuple[int, ...], g: list[int] | tuple[int, ...]) -> list[int]:
    """Integer quotient num / g for an exact division by a primitive g.

    Exactness makes every synthetic-division step an exact integer division
    (Gauss's lemma), which is checked and reported if violated.
    """
    dn, dg = len(num) - 1, len(g) - 1
    rem = list(num)
    lead = g[-1]
    quo = [0] * (dn - dg + 1)
    for i in range(dn - dg, -1, -1):
        c = rem[i + dg]
        if c:
            qc, r = divmod(c, lead)
            if r:
                raise ValueError("inexact division in SRat normalization")
            quo[i] = qc
            for j in range(dg):
                rem[i + j] -= qc * g[j]
            rem[i + dg] = 0
    if any(rem):
        raise ValueError("inexact division in SRat normalization")
    return quo


class SRat:
    """Element of Q(s): num/den, den a primitive integer polynomial with
    positive leading coefficient, gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = SPoly.const(num)
        if den is None:
            den = _SPOLY_ONE
        elif isinstance(den, (int, Fraction)):
            den = SPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is zero")
        num, den = _normalize_srat(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @staticmethod
    def _raw(num: SPoly, den: SPoly) -> "SRat":
        r = SRat.__new__(SRat)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den)
        object.__setattr__(r, "_hash", None)
        return r

    def __setattr__(self, *a):
        raise AttributeError("SRat is immutable")

    @staticmethod
    def zero() -> "SRat":
        return _SRAT_ZERO

    @staticmethod
    def one() -> "SRat":
        return _SRAT_ONE

    @staticmethod
    def s(power: int = 1, coeff=1) -> "SRat":
        return SRat(SPoly.s(power, coeff))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SPoly)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        if isinstance(other, (int, Fraction, SPoly)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den == _SPOLY_ONE:
                total = self.num + other.num
                if total.is_zero():
                    return _SRAT_ZERO
                return SRat._raw(total, _SPOLY_ONE)
            return SRat(self.num + other.num, self.den)
        return SRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return SRat._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, SPoly)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0 or self.num.is_zero():
                return _SRAT_ZERO
            return SRat(self.num * other, self.den)
        if isinstance(other, (Fraction, SPoly)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _SRAT_ZERO
        if self.den == _SPOLY_ONE and other.den == _SPOLY_ONE:
            return SRat._raw(self.num * other.num, _SPOLY_ONE)
        return SRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, SPoly)):
            other = SRat(other)
        if not isinstance(other, SRat):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(s)")
        return SRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return SRat(other) / self

    def inv(self) -> "SRat":
        return _SRAT_ONE / self

    def __repr__(self):
        return f"SRat({format_srat(self)})"


def _normalize_srat(num: SPoly, den: SPoly) -> tuple[SPoly, SPoly]:
    if num.is_zero():
        return _SPOLY_ZERO, _SPOLY_ONE
    if den.degree() == 0:
        c = den.leading()
        if c == 1:
            return num, _SPOLY_ONE
        return num * (1 / c), _SPOLY_ONE
    g = spoly_gcd(num, den)
    if g.degree() > 0:
        num = SPoly._make(_exact_div_ints(num.ints, g.ints), num.den)
        den = SPoly._make(_exact_div_ints(den.ints, g.ints), den.den)
        if den.degree() == 0:
            c = den.leading()
            return (num if c == 1 else num * (1 / c)), _SPOLY_ONE
    # den -> primitive integer with positive leading coefficient
    c_int = _content_of(den.ints)
    if den.ints[-1] < 0:
        c_int = -c_int
    new_den = SPoly._make([v // c_int for v in den.ints], 1)
    return num * Fraction(den.den, c_int), new_den


def format_spoly(p: SPoly, var: str = "s") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree(), -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            v = var if i == 1 else f"{var}^{i}"
            body = v if mag == 1 else f"{mag}*{v}"
        parts.append(sign + body if not parts else f" {sign} {body}")
    return "".join(parts)


def format_srat(r: SRat, var: str = "s") -> str:
    if r.is_polynomial():
        return format_spoly(r.num, var)
    return f"({format_spoly(r.num, var)})/({format_spoly(r.den, var)})"


_SRAT_ZERO = SRat.__new__(SRat)
object.__setattr__(_SRAT_ZERO, "num", _SPOLY_ZERO)
object.__setattr__(_SRAT_ZERO, "den", _SPOLY_ONE)
object.__setattr__(_SRAT_ZERO, "_hash", None)
_SRAT_ONE = SRat.__new__(SRat)
object.__setattr__(_SRAT_ONE, "num", _SPOLY_ONE)
object.__setattr__(_SRAT_ONE, "den", _SPOLY_ONE)
object.__setattr__(_SRAT_ONE, "_hash", None)
