"""Independent symbolic computation of the minimal operator.

This is the verification path: pole-order reduction against a Groebner
basis of the Jacobian ideal over Q(s), followed by an exact linear-algebra
search for the first relation among the delta-derivatives of the
holomorphic form.  Nothing here consults the closed-form construction.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

from .groebner import GroebnerBasis, Reducer, buchberger, weight_kbase
from .invertible import ExponentMatrix, require_calabi_yau, transpose, weights
from .multipoly import Exponent, MultiPoly, WeightedOrder, weighted_degree
from .operators import ExpandedOperator, normalize_expanded
from .rationals import SPoly, SRat, format_srat, spoly_gcd


class OracleScaleError(ValueError):
    """Instance exceeds the configured desk-scale bound."""


class OracleTimeout(RuntimeError):
    """Wall-clock budget exhausted."""


class OracleInconsistency(AssertionError):
    """An internal exactness check failed; results must not be trusted."""


@dataclass
class DeltaMatrix:
    """Unsigned triangle r[m][i]: delta^i(omega) = sum_m r[m][i] * t_m where
    t_m = (-1)^m m! s^{m+1} (prod x)^m Omega/f^{m+1}."""

    size: int
    w: list[list[int]]

    def signed_row(self, i: int) -> list[int]:
        """Coefficients of delta^i(omega) on m! s^{m+1}(prod x)^m Omega/f^{m+1}."""
        return [(-1) ** m * self.w[m][i] for m in range(i + 1)]


def delta_matrix(kn: int) -> DeltaMatrix:
    if kn < 0:
        raise ValueError("size must be nonnegative")
    w = [[0] * (kn + 1) for _ in range(kn + 1)]
    for i in range(kn + 1):
        w[0][i] = 1
        w[i][i] = 1
    for i in range(1, kn + 1):
        for m in range(1, i):
            w[m][i] = (m + 1) * w[m][i - 1] + w[m - 1][i - 1]
    return DeltaMatrix(kn, w)


@dataclass
class LedgerStep:
    kind: str                      # "griffiths" | "basis" | "constant"
    level: int
    cofactors: list[str] | None = None
    coordinates: dict[str, str] | None = None


@dataclass
class ReductionLedger:
    steps_per_power: dict[int, list[LedgerStep]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            str(k): [
                {"kind": st.kind, "level": st.level,
                 **({"cofactors": st.cofactors} if st.cofactors else {}),
                 **({"coordinates": st.coordinates} if st.coordinates else {})}
                for st in steps
            ]
            for k, steps in self.steps_per_power.items()
        }


def griffiths_reduce(cofactors: list[MultiPoly], weights_q, d: int) -> MultiPoly:
    """One pole-order reduction step.

    Given p = sum_j cofactors[j] * df/dx_j at pole level l, returns the
    level-(l-1) polynomial h / (deg(h)/d + 1) where h = sum_j d(cofactors[j])/dx_j.
    """
    n = cofactors[0].n
    h = MultiPoly.zero(n)
    for j, c in enumerate(cofactors, start=1):
        h = h + c.partial_derivative(j)
    if h.is_zero():
        return h
    hdeg = h.weighted_degree(weights_q)
    return h * SRat(1, hdeg // d + 1)


@dataclass
class OracleResult:
    operator: ExpandedOperator
    order: int
    columns: list[tuple[int, Exponent]]
    kbase_sizes: dict[int, int]
    ledger: ReductionLedger | None
    groebner_size: int
    runtime_seconds: float


class _Budget:
    def __init__(self, seconds):
        self.start = time.monotonic()
        self.seconds = seconds

    def check(self):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise OracleTimeout(f"budget of {self.seconds}s exhausted")

    def elapsed(self):
        return time.monotonic() - self.start


def _mono_name(e: Exponent) -> str:
    from .multipoly import format_monomial
    return format_monomial(e, [f"x{i+1}" for i in range(len(e))])


def picard_fuchs_oracle(E: ExponentMatrix, *, max_dhat: int = 24, max_n: int = 4,
                        timeout_seconds: float | None = None,
                        emit_ledger: bool = False,
                        column_order: str = "standard",
                        max_derivative: int | None = None) -> OracleResult:
    """Minimal relation among the delta-derivatives of the holomorphic form.

    Raises OracleScaleError beyond the configured bound, OracleTimeout when
    over budget, and OracleInconsistency if any exactness check fails.
    """
    W = require_calabi_yau(E)
    Wt = weights(transpose(E))
    n = E.n
    if n > max_n:
        raise OracleScaleError(f"n = {n} exceeds the bound {max_n}")
    if Wt.d > max_dhat:
        raise OracleScaleError(f"dual degree {Wt.d} exceeds the bound {max_dhat}")
    budget = _Budget(timeout_seconds)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

    d = W.d
    f = E.family()
    gens = [f.partial_derivative(i) for i in range(1, n + 1)]
    order = WeightedOrder(W.q)
    gb = buchberger(gens, order)
    budget.check()
    reducer = Reducer(gb)

    # basis columns: one per standard monomial per pole level
    kbases: dict[int, list[Exponent]] = {}
    columns: list[tuple[int, Exponent]] = []
    for level in range(1, n):
        kb = weight_kbase(gb, d * (level - 1), W.q)
        if level == 1 and kb != [(0,) * n]:
            raise OracleInconsistency("degree-0 slice is not spanned by 1")
        kbases[level] = kb
        columns.extend((level, e) for e in kb)
    if column_order == "reversed":
        columns = columns[::-1]
    elif column_order != "standard":
        raise ValueError(f"unknown column order {column_order!r}")
    col_index = {col: i for i, col in enumerate(columns)}
    ncols = len(columns)

    ledger = ReductionLedger() if emit_ledger else None

    def reduce_power(k: int) -> list[SRat]:
        """Coordinates of (-1)^k k! s^{k+1} (prod x)^k over the basis columns."""
        budget.check()
        fact = 1
        for j in range(2, k + 1):
            fact *= j
        coeff = SRat.s(k + 1, fact if k % 2 == 0 else -fact)
        p = MultiPoly.monomial(n, (k,) * n, coeff)
        coords = [SRat.zero() for _ in range(ncols)]
        steps: list[LedgerStep] = []
        while True:
            if p.is_zero():
                break
            deg = p.weighted_degree(W.q)
            if not p.is_homogeneous(W.q):
                raise OracleInconsistency("reduction produced an inhomogeneous polynomial")
            if deg == 0:
                const = p.coeff((0,) * n)
                coords[col_index[(1, (0,) * n)]] += const
                steps.append(LedgerStep("constant", 1,
                                        coordinates={"1": format_srat(const)}))
                break
            if deg % d != 0:
                raise OracleInconsistency(f"degree {deg} not a multiple of {d}")
            level = deg // d + 1
            nf = reducer.normal_form(p)
            if not nf.is_zero():
                if level - 1 > n - 1 or level > n:
                    raise OracleInconsistency(
                        f"nonzero normal form at pole level {level} > n")
                coordmap = {}
                for e, c in nf.terms.items():
                    coords[col_index[(level, e)]] += c
                    coordmap[_mono_name(e)] = format_srat(c)
                steps.append(LedgerStep("basis", level, coordinates=coordmap))
                p = p - nf
                if p.is_zero():
                    break
            cof = reducer.lift(p)
            check = MultiPoly.zero(n)
            for c, g in zip(cof, gens):
                check = check + c * g
            if check != p:
                raise OracleInconsistency("lift certificate failed to re-expand")
            if ledger is not None:
                steps.append(LedgerStep(
                    "griffiths", level,
                    cofactors=[c.format() for c in cof]))
            p = griffiths_reduce(cof, W.q, d)
        if ledger is not None:
            ledger.steps_per_power[k] = steps
        return coords

    dm = delta_matrix(ncols + 1)
    rows: list[list[SRat]] = []
    # row 0: omega = s * (the degree-0 basis element)
    row0 = [SRat.zero() for _ in range(ncols)]
    row0[col_index[(1, (0,) * n)]] = SRat.s()
    rows.append(row0)

    # incremental exact elimination to find the first linear dependence
    pivots: list[tuple[int, list[SRat], list[SRat]]] = []
    limit = max_derivative if max_derivative is not None else ncols + 1
    relation: list[SRat] | None = None
    order_found: int | None = None
    for i in range(limit + 1):
        budget.check()
        if i > 0 and len(rows) <= i:
            rows.append(reduce_power(i))
        col = [SRat.zero() for _ in range(ncols)]
        for m in range(i + 1):
            r = dm.w[m][i]
            if r:
                row = rows[m]
                for c_idx in range(ncols):
                    if not row[c_idx].is_zero():
                        col[c_idx] += row[c_idx] * r
        combo = [SRat.zero() for _ in range(i + 1)]
        combo[i] = SRat.one()
        vec = col
        for pidx, pvec, pcombo in pivots:
            if not vec[pidx].is_zero():
                factor = vec[pidx] / pvec[pidx]
                vec = [v - factor * w_ for v, w_ in zip(vec, pvec)]
                for j, pc in enumerate(pcombo):
                    combo[j] = combo[j] - factor * pc
        if all(v.is_zero() for v in vec):
            relation = combo
            order_found = i
            break
        lead = next(j for j, v in enumerate(vec) if not v.is_zero())
        pivots.append((lead, vec, combo))

    if relation is None:
        raise OracleInconsistency(
            f"no relation among the first {limit + 1} derivatives; "
            "nullspace dimension bookkeeping is broken")
    if relation[order_found] != SRat.one():
        raise OracleInconsistency("relation is not monic in the top derivative")

    # clear denominators to polynomial coefficients and normalize
    den_lcm = SPoly.one()
    for c in relation:
        if not c.is_zero():
            g = spoly_gcd(den_lcm, c.den)
            den_lcm = den_lcm * (c.den // g)
    cleared = []
    for c in relation:
        if c.is_zero():
            cleared.append(SPoly.zero())
        else:
            num = c.num * (den_lcm // c.den)
            cleared.append(num)
    opr = normalize_expanded(cleared)
    return OracleResult(operator=opr, order=order_found, columns=columns,
                        kbase_sizes={lv: len(kb) for lv, kb in kbases.items()},
                        ledger=ledger, groebner_size=len(gb.generators),
                        runtime_seconds=budget.elapsed())
