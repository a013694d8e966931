"""Buchberger's algorithm over Q(s) with certificate tracking.

Every basis element carries its representation in terms of the original
generators, so ideal membership comes with an exact lift certificate.
The reduced basis is unique for a given order, hence deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multipoly import (Exponent, MultiPoly, WeightedOrder, exp_div, exp_divides,
                        exp_lcm, exp_mul, weighted_degree)
from .rationals import SRat


@dataclass
class GroebnerBasis:
    generators: list[MultiPoly]          # reduced, monic in Q(s)
    order: WeightedOrder
    original: list[MultiPoly]
    transform: list[list[MultiPoly]]     # generators[i] = sum_j transform[i][j]*original[j]

    def leading_monomials(self) -> list[Exponent]:
        return [g.leading_monomial(self.order) for g in self.generators]


def _reduce_full(p: MultiPoly, reps, basis, order: WeightedOrder, track: bool = True):
    """Full reduction of p modulo basis; returns (remainder, remainder_rep).

    reps is p's representation vector (list of MultiPoly); basis is a list
    of (poly, rep) pairs.  No term of the remainder is divisible by any
    leading monomial of the basis.  With track=False the representation is
    not maintained (rep comes back as None).
    """
    n = p.n
    rem_terms: dict[Exponent, SRat] = {}
    work = dict(p.terms)
    rep = [r for r in reps] if track else None
    lms = [(g.leading_monomial(order), g, grep) for g, grep in basis]
    zero = SRat.zero()
    while work:
        e = order.max(work.keys())
        c = work.pop(e)
        hit = None
        for lm, g, grep in lms:
            if exp_divides(lm, e):
                hit = (lm, g, grep)
                break
        if hit is None:
            rem_terms[e] = c
            continue
        lm, g, grep = hit
        lc = g.terms[lm]
        factor = c / lc
        shift = exp_div(lm, e)
        # work -= factor * x^shift * (g - its leading term); lead cancels exactly
        for e2, c2 in g.terms.items():
            if e2 == lm:
                continue
            tgt = exp_mul(shift, e2)
            acc = work.get(tgt, zero) - factor * c2
            if acc.is_zero():
                work.pop(tgt, None)
            else:
                work[tgt] = acc
        if track:
            for j, t in enumerate(grep):
                if not t.is_zero():
                    rep[j] = rep[j] - t.mul_term(shift, factor)
    return MultiPoly(n, rem_terms), rep


def buchberger(gens: list[MultiPoly], order: WeightedOrder) -> GroebnerBasis:
    """Reduced Groebner basis with transformation certificates."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    n = gens[0].n
    m = len(gens)

    def unit_rep(j):
        return [MultiPoly.monomial(n, (0,) * n) if i == j else MultiPoly.zero(n)
                for i in range(m)]

    basis: list[tuple[MultiPoly, list[MultiPoly]]] = []
    for j, g in enumerate(gens):
        basis.append((g, unit_rep(j)))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lm(i):
        return basis[i][0].leading_monomial(order)

    while pairs:
        i, j = min(pairs, key=lambda ij: order.key(exp_lcm(lm(ij[0]), lm(ij[1]))))
        pairs.discard((i, j))
        lmi, lmj = lm(i), lm(j)
        lcm = exp_lcm(lmi, lmj)
        if lcm == exp_mul(lmi, lmj):
            continue  # coprime leading monomials reduce to zero
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if exp_divides(lm(k), lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        gi, repi = basis[i]
        gj, repj = basis[j]
        ci = gi.terms[lmi]
        cj = gj.terms[lmj]
        si = exp_div(lmi, lcm)
        sj = exp_div(lmj, lcm)
        spoly = gi.mul_term(si, SRat.one() / ci) - gj.mul_term(sj, SRat.one() / cj)
        rem, _ = _reduce_full(spoly, [], basis, order, track=False)
        if not rem.is_zero():
            srep = [ri.mul_term(si, SRat.one() / ci) - rj.mul_term(sj, SRat.one() / cj)
                    for ri, rj in zip(repi, repj)]
            rem, rrep = _reduce_full(spoly, srep, basis, order)
            new_idx = len(basis)
            basis.append((rem, rrep))
            pairs.update((k, new_idx) for k in range(new_idx))

    # discard redundant elements, then inter-reduce for the unique reduced basis
    keep = []
    lms = [g.leading_monomial(order) for g, _ in basis]
    for i, (g, rep) in enumerate(basis):
        if any(j != i and exp_divides(lms[j], lms[i]) and
               (not exp_divides(lms[i], lms[j]) or j < i) for j in range(len(basis))):
            continue
        keep.append((g, rep))

    reduced: list[tuple[MultiPoly, list[MultiPoly]]] = []
    for idx, (g, rep) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        rem, rrep = _reduce_full(g, rep, others, order)
        if rem.is_zero():
            continue
        lc = rem.leading_coeff(order)
        inv = SRat.one() / lc
        reduced.append((rem * inv, [t * inv for t in rrep]))

    # one more tail-reduction sweep so no term is divisible by another lead
    final: list[tuple[MultiPoly, list[MultiPoly]]] = []
    for idx, (g, rep) in enumerate(reduced):
        others = reduced[:idx] + reduced[idx + 1:]
        rem, rrep = _reduce_full(g, rep, others, order)
        if rem.is_zero():
            continue
        lc = rem.leading_coeff(order)
        inv = SRat.one() / lc
        final.append((rem * inv, [t * inv for t in rrep]))

    final.sort(key=lambda pair: order.key(pair[0].leading_monomial(order)))
    return GroebnerBasis(generators=[g for g, _ in final], order=order,
                         original=list(gens), transform=[rep for _, rep in final])


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    basis = [(g, [MultiPoly.zero(p.n)] * len(gb.original)) for g in gb.generators]
    zero_rep = [MultiPoly.zero(p.n)] * len(gb.original)
    rem, _ = _reduce_full(p, zero_rep, basis, gb.order)
    return rem


class Reducer:
    """Memoized monomial-level reduction and lifting modulo a Groebner basis.

    Normal forms and lift certificates are cached per monomial, so repeated
    reductions of structured polynomials stay cheap.
    """

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.order = gb.order
        self.n = gb.generators[0].n if gb.generators else 0
        self._lms = [(g.leading_monomial(gb.order), i)
                     for i, g in enumerate(gb.generators)]
        self._lms.sort(key=lambda t: self.order.key(t[0]), reverse=True)
        self._nf_cache: dict[Exponent, MultiPoly] = {}
        self._q_cache: dict[Exponent, tuple] = {}

    def _find_divisor(self, e: Exponent):
        for lm, i in self._lms:
            if exp_divides(lm, e):
                return lm, i
        return None

    def nf_monomial(self, e: Exponent) -> MultiPoly:
        cached = self._nf_cache.get(e)
        if cached is not None:
            return cached
        hit = self._find_divisor(e)
        if hit is None:
            result = MultiPoly.monomial(self.n, e)
        else:
            lm, i = hit
            g = self.gb.generators[i]
            lc = g.terms[lm]
            shift = exp_div(lm, e)
            acc = MultiPoly.zero(self.n)
            for e2, c2 in g.terms.items():
                if e2 == lm:
                    continue
                acc = acc - self.nf_monomial(exp_mul(shift, e2)) * (c2 / lc)
            result = acc
        self._nf_cache[e] = result
        return result

    def quotients_monomial(self, e: Exponent) -> tuple:
        """Quotients q with x^e = sum q_i * gb_i + nf(x^e)."""
        cached = self._q_cache.get(e)
        if cached is not None:
            return cached
        hit = self._find_divisor(e)
        if hit is None:
            result = tuple(MultiPoly.zero(self.n) for _ in self.gb.generators)
        else:
            lm, i = hit
            g = self.gb.generators[i]
            lc = g.terms[lm]
            shift = exp_div(lm, e)
            inv = SRat.one() / lc
            quots = [MultiPoly.zero(self.n) for _ in self.gb.generators]
            quots[i] = MultiPoly.monomial(self.n, shift, inv)
            for e2, c2 in g.terms.items():
                if e2 == lm:
                    continue
                sub = self.quotients_monomial(exp_mul(shift, e2))
                factor = c2 * inv
                for k in range(len(quots)):
                    if not sub[k].is_zero():
                        quots[k] = quots[k] - sub[k] * factor
            result = tuple(quots)
        self._q_cache[e] = result
        return result

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        acc = MultiPoly.zero(self.n)
        for e, c in p.terms.items():
            acc = acc + self.nf_monomial(e) * c
        return acc

    def lift(self, p: MultiPoly) -> list[MultiPoly]:
        """Cofactors over the ORIGINAL generators; requires p in the ideal."""
        quots = [MultiPoly.zero(self.n) for _ in self.gb.generators]
        rem = MultiPoly.zero(self.n)
        for e, c in p.terms.items():
            rem = rem + self.nf_monomial(e) * c
            sub = self.quotients_monomial(e)
            for k in range(len(quots)):
                if not sub[k].is_zero():
                    quots[k] = quots[k] + sub[k] * c
        if not rem.is_zero():
            raise ValueError("polynomial is not in the ideal")
        cof = [MultiPoly.zero(self.n) for _ in self.gb.original]
        for i, q in enumerate(quots):
            if q.is_zero():
                continue
            for j, t in enumerate(self.gb.transform[i]):
                if not t.is_zero():
                    cof[j] = cof[j] + q * t
        return cof


def lift(p: MultiPoly, gens: list[MultiPoly], order: WeightedOrder,
         gb: GroebnerBasis | None = None) -> list[MultiPoly]:
    """Exact cofactors l with p = sum l_j * gens_j (verified)."""
    if gb is None:
        gb = buchberger(gens, order)
    cof = Reducer(gb).lift(p)
    check = MultiPoly.zero(p.n)
    for c, g in zip(cof, gb.original):
        check = check + c * g
    if check != p:
        raise AssertionError("lift certificate failed to re-expand")
    return cof


def weight_kbase(gb: GroebnerBasis, degree: int, weights) -> list[Exponent]:
    """Standard monomials (no leading monomial divides them) of a weighted degree."""
    lms = gb.leading_monomials()
    n = len(weights)
    out: list[Exponent] = []

    def rec(i: int, remaining: int, partial: list[int]):
        if i == n:
            if remaining == 0:
                e = tuple(partial)
                if not any(exp_divides(lm, e) for lm in lms):
                    out.append(e)
            return
        w = weights[i]
        max_e = remaining // w
        for v in range(max_e + 1):
            partial.append(v)
            rec(i + 1, remaining - v * w, partial)
            partial.pop()

    rec(0, degree, [])
    out.sort(key=gb.order.key)
    return out


def hilbert_slice_dimension(weights, d_total: int, degree: int) -> int:
    """Independent count: coefficient of t^degree in
    prod_i (t^{d_total - w_i} - 1)/(t^{w_i} - 1), the Milnor algebra series
    of a quasihomogeneous polynomial of degree d_total."""
    series = [1]
    for w in weights:
        top = d_total - w
        factor_len = degree + 1
        factor = [0] * factor_len
        for e in range(0, top, w):
            if e < factor_len:
                factor[e] = 1
        new = [0] * factor_len
        for a, ca in enumerate(series):
            if ca:
                for b in range(0, min(factor_len - a, factor_len)):
                    if factor[b]:
                        new[a + b] += ca
        series = new
    return series[degree] if degree < len(series) else 0
