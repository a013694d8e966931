"""Multivariate monomials and polynomials over Q(s), with weighted orders."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .rationals import SRat, format_srat

Exponent = tuple[int, ...]


def weighted_degree(m: Exponent, weights) -> int:
    """Sum of m_i * w_i; the weighted degree of the monomial x^m."""
    if len(m) != len(weights):
        raise ValueError(f"exponent length {len(m)} != weight length {len(weights)}")
    return sum(e * w for e, w in zip(m, weights))


def exp_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a: Exponent, b: Exponent) -> bool:
    """x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def exp_div(a: Exponent, b: Exponent) -> Exponent:
    """b - a componentwise (exponent of x^b / x^a)."""
    return tuple(y - x for x, y in zip(a, b))


def exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class WeightedOrder:
    """Total order on exponents: weighted degree, ties reverse-lexicographic.

    Reverse-lex tie-break: among equal weighted degrees, a < b iff at the
    last position where they differ a has the *larger* entry.  This is
    multiplicative (compatible with monomial multiplication).
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        ws = tuple(int(w) for w in weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        self.weights = ws

    def key(self, m: Exponent):
        """Sort key: ascending in the order."""
        return (weighted_degree(m, self.weights), tuple(-e for e in reversed(m)))

    def less(self, a: Exponent, b: Exponent) -> bool:
        return self.key(a) < self.key(b)

    def max(self, monomials: Iterable[Exponent]) -> Exponent:
        return max(monomials, key=self.key)

    def __eq__(self, other):
        return isinstance(other, WeightedOrder) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"WeightedOrder{self.weights}"


class MultiPoly:
    """Polynomial in x_1..x_n over Q(s); sparse dict from exponent to SRat."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, SRat] | None = None):
        clean: dict[Exponent, SRat] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent length mismatch")
                if not isinstance(c, SRat):
                    c = SRat(c)
                if not c.is_zero():
                    clean[tuple(e)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(n: int) -> "MultiPoly":
        return MultiPoly(n)

    @staticmethod
    def monomial(n: int, e: Exponent, coeff=1) -> "MultiPoly":
        return MultiPoly(n, {tuple(e): SRat(coeff) if not isinstance(coeff, SRat) else coeff})

    @staticmethod
    def variable(n: int, i: int) -> "MultiPoly":
        """x_i with 1-based index i."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        e = tuple(1 if j == i - 1 else 0 for j in range(n))
        return MultiPoly.monomial(n, e)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            other = MultiPoly.monomial(self.n, (0,) * self.n, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def coeff(self, e: Exponent) -> SRat:
        return self.terms.get(tuple(e), SRat.zero())

    def leading_monomial(self, order: WeightedOrder) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return order.max(self.terms.keys())

    def leading_coeff(self, order: WeightedOrder) -> SRat:
        return self.terms[self.leading_monomial(order)]

    def weighted_degree(self, weights) -> int:
        """Max weighted degree over the support (-1 for zero)."""
        if not self.terms:
            return -1
        return max(weighted_degree(e, weights) for e in self.terms)

    def is_homogeneous(self, weights) -> bool:
        degs = {weighted_degree(e, weights) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _binop(self, other, sign: int) -> "MultiPoly":
        if isinstance(other, (int, SRat)):
            other = MultiPoly.monomial(self.n, (0,) * self.n, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            val = c if sign > 0 else -c
            if acc is None:
                out[e] = val
            else:
                tot = acc + val
                if tot.is_zero():
                    del out[e]
                else:
                    out[e] = tot
        r = MultiPoly.__new__(MultiPoly)
        object.__setattr__(r, "n", self.n)
        object.__setattr__(r, "terms", out)
        return r

    def __add__(self, other):
        return self._binop(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        r = MultiPoly.__new__(MultiPoly)
        object.__setattr__(r, "n", self.n)
        object.__setattr__(r, "terms", {e: -c for e, c in self.terms.items()})
        return r

    def __mul__(self, other):
        if isinstance(other, (int, SRat)):
            c = other if isinstance(other, SRat) else SRat(other)
            if c.is_zero():
                return MultiPoly.zero(self.n)
            r = MultiPoly.__new__(MultiPoly)
            object.__setattr__(r, "n", self.n)
            object.__setattr__(r, "terms", {e: v * c for e, v in self.terms.items()})
            return r
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        out: dict[Exponent, SRat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_mul(e1, e2)
                c = c1 * c2
                acc = out.get(e)
                if acc is None:
                    out[e] = c
                else:
                    tot = acc + c
                    if tot.is_zero():
                        del out[e]
                    else:
                        out[e] = tot
        r = MultiPoly.__new__(MultiPoly)
        object.__setattr__(r, "n", self.n)
        object.__setattr__(r, "terms", out)
        return r

    __rmul__ = __mul__

    def mul_term(self, e: Exponent, c: SRat) -> "MultiPoly":
        """Multiply by the term c * x^e."""
        if c.is_zero():
            return MultiPoly.zero(self.n)
        r = MultiPoly.__new__(MultiPoly)
        object.__setattr__(r, "n", self.n)
        object.__setattr__(r, "terms",
                           {exp_mul(e, e1): c1 * c for e1, c1 in self.terms.items()})
        return r

    def partial_derivative(self, i: int) -> "MultiPoly":
        """Formal d/dx_i, 1-based index."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable index {i} out of range 1..{self.n}")
        k = i - 1
        out: dict[Exponent, SRat] = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
            out[e2] = c * e[k]
        return MultiPoly(self.n, out)

    # -- rendering -----------------------------------------------------------

    def format(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.n)]
        order = sorted(self.terms.keys(), reverse=True)
        parts = []
        for e in order:
            c = self.terms[e]
            mono = format_monomial(e, names)
            cs = format_srat(c)
            if mono == "1":
                body = cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = f"-{mono}"
            elif ("+" in cs[1:]) or ("-" in cs[1:]) or "/" in cs:
                body = f"({cs})*{mono}"
            else:
                body = f"{cs}*{mono}"
            if parts and not body.startswith("-"):
                parts.append(f" + {body}")
            elif parts:
                parts.append(f" - {body[1:]}")
            else:
                parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def format_monomial(e: Exponent, names: list[str]) -> str:
    parts = []
    for i, p in enumerate(e):
        if p == 0:
            continue
        parts.append(names[i] if p == 1 else f"{names[i]}^{p}")
    return "*".join(parts) if parts else "1"


def arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Exact ring arithmetic dispatch: op in {add, sub, mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: MultiPoly, i: int) -> MultiPoly:
    return p.partial_derivative(i)
