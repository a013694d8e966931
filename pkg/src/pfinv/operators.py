"""Closed-form differential operators for the one-parameter family.

For g invertible and Calabi-Yau, the family g + s*prod(x_i) satisfies an
ODE in delta = s d/ds built entirely from the dual weights: a left summand
prod(q^q) * s^D * prod(delta + alpha_j) and a right summand
(-D)^D * prod(delta - beta_j), where D is the dual degree.  The
uncancelled variant (one extra linear factor per element of the integer
index set I) is the one-variable reduction of the associated
hypergeometric system; removing one copy of each I-element from both
sides gives the minimal operator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .invertible import ExponentMatrix, WeightSystem, require_calabi_yau, transpose, weights
from .rationals import SPoly


@dataclass(frozen=True)
class IndexSets:
    d_hat: int
    D: frozenset
    Q: tuple[tuple[Fraction, ...], ...]
    QZ: tuple[tuple[int, ...], ...]
    QQ: tuple[tuple[Fraction, ...], ...]
    I: frozenset
    V: frozenset
    u: int
    v: int
    dual_weights: tuple[int, ...]


@dataclass(frozen=True)
class PFOperator:
    """c_left * s^s_power * prod(delta + a) - c_right * prod(delta - b)."""

    c_left: int
    s_power: int
    alphas: tuple[Fraction, ...]
    c_right: int
    betas: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(sorted(Fraction(a) for a in self.alphas)))
        object.__setattr__(self, "betas", tuple(sorted(Fraction(b) for b in self.betas)))

    @property
    def order(self) -> int:
        return len(self.alphas)

    def to_json(self) -> dict:
        return {
            "c_left": self.c_left,
            "s_power": self.s_power,
            "alphas": [{"num": a.numerator, "den": a.denominator} for a in self.alphas],
            "c_right": self.c_right,
            "betas": [{"num": b.numerator, "den": b.denominator} for b in self.betas],
        }


@dataclass(frozen=True)
class ExpandedOperator:
    """Canonical expansion sum_i coefficients[i](s) * delta^i.

    Integer coefficients, overall content 1, and the s^{s_power} part of the
    top delta-coefficient positive.
    """

    coefficients: tuple[SPoly, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def format(self) -> str:
        from .rationals import format_spoly
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coefficients[i]
            if c.is_zero():
                continue
            dpow = "" if i == 0 else ("d" if i == 1 else f"d^{i}")
            body = f"({format_spoly(c)})" if i else format_spoly(c)
            parts.append(f"{body}*{dpow}" if dpow else body)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LambdaOperator:
    """c_left * prod(D - z) - c_right * lambda * prod(D + p), D = lambda d/dlambda.

    lambda = (-s)^(-d_hat); zero_shifts are the exponents of the solution
    space at lambda = 0, pole_shifts at lambda = infinity.
    """

    c_left: int
    zero_shifts: tuple[Fraction, ...]
    c_right: int
    pole_shifts: tuple[Fraction, ...]


def dual_data(E: ExponentMatrix) -> tuple[WeightSystem, WeightSystem]:
    """(weights of g, weights of g^t), validating the Calabi-Yau condition."""
    W = require_calabi_yau(E)
    Wt = weights(transpose(E))
    return W, Wt


def index_sets(E: ExponentMatrix) -> IndexSets:
    _, Wt = dual_data(E)
    qh, dh = Wt.q, Wt.d
    Q = tuple(tuple(Fraction(j * dh, qi) for j in range(1, qi + 1)) for qi in qh)
    QZ = tuple(tuple(int(x) for x in Qi if x.denominator == 1) for Qi in Q)
    QQ = tuple(tuple(x for x in Qi if x.denominator != 1) for Qi in Q)
    D = frozenset(range(1, dh + 1))
    union_z = set()
    for Zi in QZ:
        union_z.update(Zi)
    V = frozenset(D - union_z)
    u = sum(len(Qi) for Qi in Q) - len(union_z)
    v = len(V)
    I = frozenset(x for x in range(dh)
                  if any(x * qi % dh == 0 for qi in qh))
    if u != v:
        raise AssertionError(f"u = {u} != v = {v}; index-set bookkeeping broken")
    return IndexSets(d_hat=dh, D=D, Q=Q, QZ=QZ, QQ=QQ, I=I, V=V, u=u, v=v,
                     dual_weights=qh)


def pf_order(E: ExponentMatrix) -> int:
    return index_sets(E).u


def alpha_beta(E: ExponentMatrix) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Shift multisets of the two summands of the minimal operator."""
    S = index_sets(E)
    dh = S.d_hat
    bag: Counter[Fraction] = Counter()
    for qi in S.dual_weights:
        for j in range(qi):
            bag[Fraction(j * dh, qi)] += 1
    for ell in S.I:
        bag[Fraction(ell)] -= 1
        if bag[Fraction(ell)] < 0:
            raise AssertionError("I-cancellation removed a missing factor")
    alphas = tuple(sorted(bag.elements()))
    betas = tuple(sorted(set(range(dh)) - set(S.I)))
    if len(alphas) != S.u or len(betas) != S.u:
        raise AssertionError("alpha/beta multisets disagree with the order")
    return alphas, betas


def _c_left(dual: WeightSystem) -> int:
    c = 1
    for qi in dual.q:
        c *= qi ** qi
    return c


def pf_operator(E: ExponentMatrix) -> PFOperator:
    _, Wt = dual_data(E)
    alphas, betas = alpha_beta(E)
    dh = Wt.d
    return PFOperator(c_left=_c_left(Wt), s_power=dh, alphas=alphas,
                      c_right=(-dh) ** dh, betas=tuple(Fraction(b) for b in betas))


def gkz_operator(E: ExponentMatrix) -> PFOperator:
    """Uncancelled one-variable operator; the minimal operator divides it."""
    _, Wt = dual_data(E)
    dh = Wt.d
    alphas = []
    for qi in Wt.q:
        alphas.extend(Fraction(j * dh, qi) for j in range(qi))
    betas = tuple(Fraction(j) for j in range(1, dh + 1))
    return PFOperator(c_left=_c_left(Wt), s_power=dh, alphas=tuple(alphas),
                      c_right=(-dh) ** dh, betas=betas)


def _poly_from_roots(shifts, sign: int) -> list[Fraction]:
    """Coefficients of prod(X + sign*shift), ascending in X."""
    coeffs = [Fraction(1)]
    for sh in shifts:
        root = sign * Fraction(sh)
        coeffs = [Fraction(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] += coeffs[i + 1] * root
    return coeffs


def expand(op: PFOperator) -> ExpandedOperator:
    left = _poly_from_roots(op.alphas, +1)
    right = _poly_from_roots(op.betas, -1)
    u = len(op.alphas)
    if len(op.betas) != u:
        raise ValueError("alpha and beta counts differ")
    raw: list[SPoly] = []
    for i in range(u + 1):
        c = SPoly.s(op.s_power, op.c_left * left[i]) - SPoly.const(op.c_right * right[i])
        raw.append(c)
    # clear denominators and divide out the integer content
    den = 1
    for c in raw:
        for f in c.coeffs:
            den = den * f.denominator // gcd(den, f.denominator)
    num_gcd = 0
    scaled = [c * den for c in raw]
    for c in scaled:
        for f in c.coeffs:
            num_gcd = gcd(num_gcd, f.numerator)
    if num_gcd:
        scaled = [c * Fraction(1, num_gcd) for c in scaled]
    # fix the sign: the s^{s_power} part of the top coefficient is positive
    top = scaled[u][op.s_power]
    if top < 0:
        scaled = [-c for c in scaled]
    return ExpandedOperator(tuple(scaled))


def normalize_expanded(coeffs) -> ExpandedOperator:
    """Content-normalize an arbitrary coefficient list (SPoly per delta power)."""
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    if not cs:
        raise ValueError("zero operator")
    den = 1
    for c in cs:
        for f in c.coeffs:
            den = den * f.denominator // gcd(den, f.denominator)
    scaled = [c * den for c in cs]
    num_gcd = 0
    for c in scaled:
        for f in c.coeffs:
            num_gcd = gcd(num_gcd, f.numerator)
    if num_gcd:
        scaled = [c * Fraction(1, num_gcd) for c in scaled]
    top = scaled[-1]
    lead = top.coeffs[-1] if not top.is_zero() else 0
    if lead < 0:
        scaled = [-c for c in scaled]
    return ExpandedOperator(tuple(scaled))


def projectively_equal(a: ExpandedOperator, b: ExpandedOperator) -> bool:
    """Equality of the Q(s)-lines spanned by two expanded operators."""
    return normalize_expanded(a.coefficients).coefficients == \
        normalize_expanded(b.coefficients).coefficients


def to_lambda(op: PFOperator) -> LambdaOperator:
    """Rewrite in D = lambda d/dlambda with lambda = (-s)^(-s_power)."""
    dh = op.s_power
    zero_shifts = tuple(sorted(a / dh for a in op.alphas))
    pole_shifts = tuple(sorted(Fraction(b, dh) for b in op.betas))
    return LambdaOperator(c_left=op.c_left, zero_shifts=zero_shifts,
                          c_right=dh ** dh, pole_shifts=pole_shifts)


# -- rendering and parsing in the table style ----------------------------

def factor_int(n: int) -> str:
    """Render |n| as a product of prime powers, e.g. 2^24 3^9."""
    n = abs(n)
    if n <= 1:
        return str(n)
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        p += 1
    if n > 1:
        parts.append(str(n))
    return " ".join(parts)


def _shift_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_operator(op: PFOperator, var: str = "d") -> str:
    """Table style: `s^10 d^3(d+5) - 2^6 5^5 (d-1)(d-3)(d-7)(d-9)`."""
    zero_count = sum(1 for a in op.alphas if a == 0)
    pieces = []
    if op.c_left != 1:
        pieces.append(factor_int(op.c_left))
    pieces.append(f"s^{op.s_power}" if op.s_power != 1 else "s")
    block = ""
    if zero_count:
        block += var if zero_count == 1 else f"{var}^{zero_count}"
    for a in op.alphas:
        if a != 0:
            block += f"({var}+{_shift_str(a)})"
    pieces.append(block)
    left = " ".join(p for p in pieces if p)
    sign = " - " if op.c_right > 0 else " + "
    rblock = ""
    for b in op.betas:
        rblock += f"({var}-{_shift_str(b)})" if b > 0 else (
            var if b == 0 else f"({var}+{_shift_str(-b)})")
    right = f"{factor_int(op.c_right)} {rblock}"
    return left + sign + right


_WS = " \t"


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def expect(self, c):
        got = self.take()
        if got != c:
            raise ValueError(f"expected {c!r} at {self.pos} in operator text, got {got!r}")

    def int_(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at {start} in operator text")
        return int(self.text[start:self.pos])


def parse_operator_text(text: str, var: str = "d") -> PFOperator:
    """Parse the table-style rendering back into a PFOperator.

    The right-hand prefactor keeps the written sign: `... - C (...)` stores
    c_right = +C, `... + C (...)` stores c_right = -C.
    """
    sc = _Scanner(text)

    def parse_prefactor() -> int:
        total = 1
        while True:
            c = sc.peek()
            if not c.isdigit():
                break
            base = sc.int_()
            if sc.peek() == "^":
                sc.take()
                total *= base ** sc.int_()
            else:
                total *= base
        return total

    def parse_frac() -> Fraction:
        num = sc.int_()
        if sc.peek() == "/":
            sc.take()
            return Fraction(num, sc.int_())
        return Fraction(num)

    def parse_side(expect_s: bool):
        pre = parse_prefactor()
        s_power = 0
        if expect_s:
            if sc.peek() != "s":
                raise ValueError("left summand must contain a power of s")
            sc.take()
            if sc.peek() == "^":
                sc.take()
                s_power = sc.int_()
            else:
                s_power = 1
        shifts: list[Fraction] = []
        while True:
            c = sc.peek()
            if c == var:
                sc.take()
                if sc.peek() == "^":
                    sc.take()
                    shifts.extend([Fraction(0)] * sc.int_())
                else:
                    shifts.append(Fraction(0))
            elif c == "(":
                sc.take()
                if sc.take() != var:
                    raise ValueError("expected the operator variable inside (...)")
                sign_c = sc.take()
                if sign_c not in "+-":
                    raise ValueError("expected + or - inside (...)")
                val = parse_frac()
                sc.expect(")")
                shifts.append(val if sign_c == "+" else -val)
            else:
                break
        return pre, s_power, shifts

    c_left, s_power, left_shifts = parse_side(expect_s=True)
    mid = sc.take()
    if mid not in "+-":
        raise ValueError("expected + or - between the two summands")
    c_right_mag, _, right_shifts = parse_side(expect_s=False)
    c_right = c_right_mag if mid == "-" else -c_right_mag
    if sc.peek():
        raise ValueError(f"trailing junk in operator text at {sc.pos}")
    alphas = tuple(left_shifts)
    betas = tuple(-b for b in right_shifts)
    return PFOperator(c_left=c_left, s_power=s_power, alphas=alphas,
                      c_right=c_right, betas=betas)
