"""Spectra attached to the operator: Hodge profile, Poincare series,
root-of-unity product forms and monodromy eigenvalues.

Roots of unity are kept exact as elements of Q/Z: a reduced fraction x in
[0, 1) stands for exp(2*pi*i*x).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .invertible import ExponentMatrix, WeightSystem
from .operators import alpha_beta, dual_data


def _phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@dataclass(frozen=True)
class CyclotomicMultiset:
    """Multiset of elements of Q/Z, i.e. roots of unity with multiplicity."""

    elements: tuple[Fraction, ...]

    def __post_init__(self):
        norm = tuple(sorted(Fraction(x) % 1 for x in self.elements))
        object.__setattr__(self, "elements", norm)

    def counter(self) -> Counter:
        return Counter(self.elements)

    def is_conjugation_closed(self) -> bool:
        c = self.counter()
        return all(c[x] == c[(1 - x) % 1] for x in c)

    def order_counts(self) -> dict[int, int]:
        """Multiplicity per order e (denominator of the reduced fraction)."""
        out: dict[int, int] = {}
        for x in self.elements:
            out[x.denominator] = out.get(x.denominator, 0) + 1
        return out

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> list[dict]:
        return [{"num": x.numerator, "den": x.denominator} for x in self.elements]


@dataclass(frozen=True)
class UnityProductForm:
    """prod(1 - t^nu) / prod(1 - t^eta), both multisets of positive integers."""

    numerator_orders: tuple[int, ...]
    denominator_orders: tuple[int, ...]

    def __post_init__(self):
        nu = Counter(self.numerator_orders)
        eta = Counter(self.denominator_orders)
        common = nu & eta
        nu -= common
        eta -= common
        object.__setattr__(self, "numerator_orders", tuple(sorted(nu.elements())))
        object.__setattr__(self, "denominator_orders", tuple(sorted(eta.elements())))

    def format(self) -> str:
        num = "·".join(str(v) for v in self.numerator_orders) or "1"
        if not self.denominator_orders:
            return num
        den = "·".join(str(v) for v in self.denominator_orders)
        return f"{num}/{den}"

    def roots(self) -> tuple[CyclotomicMultiset, CyclotomicMultiset]:
        """(zeros, poles) after cancelling common roots with multiplicity."""
        zero_bag: Counter = Counter()
        pole_bag: Counter = Counter()
        for m in self.numerator_orders:
            for j in range(m):
                zero_bag[Fraction(j, m)] += 1
        for m in self.denominator_orders:
            for j in range(m):
                pole_bag[Fraction(j, m)] += 1
        common = zero_bag & pole_bag
        zero_bag -= common
        pole_bag -= common
        return (CyclotomicMultiset(tuple(zero_bag.elements())),
                CyclotomicMultiset(tuple(pole_bag.elements())))

    def to_json(self) -> dict:
        return {"numerator_orders": list(self.numerator_orders),
                "denominator_orders": list(self.denominator_orders)}


def parse_unity_product(text: str) -> UnityProductForm:
    """Parse the shorthand `2·3·7·42/1·6·14·21` (also accepts `.` or `*`)."""
    text = text.strip().replace("·", "*").replace(".", "*")
    if "/" in text:
        top, bottom = text.split("/", 1)
    else:
        top, bottom = text, ""
    nu = [int(v) for v in top.split("*") if v.strip()]
    eta = [int(v) for v in bottom.split("*") if v.strip()]
    return UnityProductForm(tuple(nu), tuple(eta))


@dataclass(frozen=True)
class HodgeProfile:
    p_values: tuple[int, ...]
    p_plus: int
    p_minus: int
    h: tuple[int, ...]   # h[j] = |p^{-1}(p_minus + j)|, j = 0..p_plus-p_minus

    @property
    def weight(self) -> int:
        return self.p_plus - self.p_minus


def hodge_profile(alphas, betas, n: int) -> HodgeProfile:
    """Hodge numbers of the solution-space variation from the shift sets."""
    alphas = sorted(Fraction(a) for a in alphas)
    betas = sorted(Fraction(b) for b in betas)
    if len(alphas) != len(betas):
        raise ValueError("alpha and beta multisets must have equal size")
    u = len(alphas)
    p = []
    for k in range(1, u + 1):
        beta_k = betas[k - 1]
        p.append(sum(1 for a in alphas if a < beta_k) - (k - 1))
    p_plus, p_minus = max(p), min(p)
    h = [0] * (p_plus - p_minus + 1)
    for val in p:
        h[val - p_minus] += 1
    return HodgeProfile(tuple(p), p_plus, p_minus, tuple(h))


def poincare_series(W: WeightSystem) -> UnityProductForm:
    """(1 - t^d) / prod(1 - t^{q_i}), unreduced."""
    return UnityProductForm((W.d,), tuple(W.q))


def solve_unity_product(values: CyclotomicMultiset,
                        extra_orders=()) -> UnityProductForm | None:
    """Express a root-of-unity multiset as prod(1-t^m)^{c_m} with c_m integers.

    Each order-e class must be fully and uniformly populated (all phi(e)
    primitive e-th roots with one common multiplicity); otherwise None.
    Candidate orders are the divisors of the lcm of all element orders and
    any extra orders supplied.
    """
    counts = values.counter()
    per_order: dict[int, int] = {}
    for x, mult in counts.items():
        e = x.denominator
        if e in per_order:
            if per_order[e] != mult:
                return None
        else:
            per_order[e] = mult
    for e, mult in per_order.items():
        k = sum(1 for x in counts if x.denominator == e)
        if k != _phi(e):
            return None
    L = 1
    for e in list(per_order) + [int(v) for v in extra_orders]:
        L = L * e // gcd(L, e)
    if L == 0:
        return None
    orders = _divisors(L)
    c: dict[int, int] = {}
    for e in sorted(orders, reverse=True):
        m_e = per_order.get(e, 0)
        c[e] = m_e - sum(c[m] for m in orders if m != e and m % e == 0 and m in c)
    nu, eta = [], []
    for e, ce in c.items():
        if ce > 0:
            nu.extend([e] * ce)
        elif ce < 0:
            eta.extend([e] * (-ce))
    return UnityProductForm(tuple(nu), tuple(eta))


def chi_forms(alphas, betas, d_hat: int, extra_orders=()):
    """(chi_0, chi_infinity): unity-product forms (or exact multisets when
    no integral product exists) with zeros exp(2*pi*i*beta/d_hat) and
    exp(2*pi*i*alpha/d_hat) respectively."""
    chi0_roots = CyclotomicMultiset(tuple(Fraction(b) / d_hat for b in betas))
    chiinf_roots = CyclotomicMultiset(tuple(Fraction(a) / d_hat for a in alphas))
    chi0 = solve_unity_product(chi0_roots, extra_orders=extra_orders)
    chiinf = solve_unity_product(chiinf_roots, extra_orders=extra_orders)
    return (chi0 if chi0 is not None else chi0_roots,
            chiinf if chiinf is not None else chiinf_roots)


def monodromy_eigenvalues(E: ExponentMatrix) -> tuple[CyclotomicMultiset, CyclotomicMultiset]:
    """Eigenvalue multisets around lambda = 0 and lambda = infinity."""
    _, Wt = dual_data(E)
    alphas, betas = alpha_beta(E)
    dh = Wt.d
    at_zero = CyclotomicMultiset(tuple(a / dh for a in alphas))
    at_infinity = CyclotomicMultiset(tuple(Fraction(b, dh) for b in betas))
    return at_zero, at_infinity
