"""Invertible polynomials: parsing, loop/chain structure, weights, duality.

The exponent matrix is stored with one row per monomial, reordered so that
row i is the monomial containing x_i^{k_i} with k_i >= 2 (the diagonal).
Weights then solve E*q = d*(1,..,1), the transposed polynomial has matrix
E^T, and the step vector of the i-th partial derivative is (1,..,1) - row_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal

from .multipoly import MultiPoly, format_monomial


class NotInvertibleError(ValueError):
    """Input fails the structural requirements for an invertible polynomial."""


class ParseError(ValueError):
    """Malformed polynomial text."""


@dataclass(frozen=True)
class ExponentMatrix:
    """n x n exponent matrix, row i = exponents of the monomial owning x_i."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    def k(self, i: int) -> int:
        """Diagonal exponent k_i (1-based)."""
        return self.rows[i - 1][i - 1]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i - 1]

    def transpose(self) -> "ExponentMatrix":
        t = tuple(tuple(self.rows[j][i] for j in range(self.n)) for i in range(self.n))
        return ExponentMatrix(self.n, t)

    def monomials(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.rows]

    def polynomial_text(self) -> str:
        names = [f"x{i + 1}" for i in range(self.n)]
        return "+".join(format_monomial(r, names) for r in self.rows)

    def family(self) -> MultiPoly:
        """f = g + s * x_1...x_n as an exact polynomial over Q(s)."""
        from .rationals import SRat
        terms = {tuple(r): SRat(1) for r in self.rows}
        allones = (1,) * self.n
        terms[allones] = terms.get(allones, SRat(0)) + SRat.s()
        return MultiPoly(self.n, terms)

    def __str__(self):
        return self.polynomial_text()


@dataclass(frozen=True)
class AtomicPart:
    kind: Literal["loop", "chain"]
    variables: tuple[int, ...]   # 1-based, in structural order
    exponents: tuple[int, ...]   # k_i along the variables


@dataclass(frozen=True)
class WeightSystem:
    q: tuple[int, ...]
    d: int

    def __post_init__(self):
        if any(w <= 0 for w in self.q) or self.d <= 0:
            raise ValueError("weights and degree must be positive")


@dataclass(frozen=True)
class StepVectors:
    steps: tuple[tuple[int, ...], ...]


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_polynomial(text: str) -> ExponentMatrix:
    """Parse `x1^5*x2+x2^4*x3+...` into an ExponentMatrix.

    Grammar: poly := term ('+' term)*; term := factor ('*' factor)*;
    factor := 'x'INT ('^'INT)?.  Whitespace is ignored, coefficients are
    rejected (they are all 1 by convention), and the family term s*x1*...*xn
    must not be written explicitly.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseError("empty input")
    raw_terms = stripped.split("+")
    parsed: list[dict[int, int]] = []
    max_var = 0
    for pos, term in enumerate(raw_terms, 1):
        if not term:
            raise ParseError(f"empty term at position {pos}")
        exps: dict[int, int] = {}
        for factor in term.split("*"):
            m = _TOKEN.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in term {pos} "
                                 "(expected x<i> or x<i>^<e>)")
            idx = int(m.group(1))
            e = int(m.group(2)) if m.group(2) is not None else 1
            if idx < 1:
                raise ParseError(f"variable index must be >= 1 in term {pos}")
            if e == 0:
                raise ParseError(f"variable x{idx} with exponent 0 in term {pos}")
            if e < 0:
                raise ParseError(f"negative exponent in term {pos}")
            exps[idx] = exps.get(idx, 0) + e
            max_var = max(max_var, idx)
        parsed.append(exps)

    n = max_var
    if len(parsed) != n:
        raise ParseError(f"{len(parsed)} monomials but {n} variables; "
                         "an invertible polynomial needs exactly one monomial per variable")
    used = set()
    for exps in parsed:
        used.update(exps)
    if used != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - used)
        raise ParseError(f"variables {missing} never appear")

    rows = [tuple(exps.get(j, 0) for j in range(1, n + 1)) for exps in parsed]
    return matrix_from_rows(rows)


def matrix_from_rows(rows: list[tuple[int, ...]]) -> ExponentMatrix:
    """Validate monomial rows and reorder them into diagonal form."""
    n = len(rows)
    owner_of_row: list[int] = []
    for pos, row in enumerate(rows, 1):
        support = [j for j, e in enumerate(row) if e != 0]
        if len(support) > 2:
            raise NotInvertibleError(
                f"monomial {pos} involves {len(support)} variables; at most 2 allowed")
        big = [j for j in support if row[j] >= 2]
        ones = [j for j in support if row[j] == 1]
        if len(big) != 1 or len(ones) > 1:
            raise NotInvertibleError(
                f"monomial {pos} must be x_i^k or x_i^k*x_j with k >= 2")
        owner_of_row.append(big[0])

    if len(set(owner_of_row)) != n:
        raise NotInvertibleError(
            "each variable must own exactly one monomial (some x_i^{k_i} term "
            "is missing or duplicated)")

    ordered = [None] * n
    for row, owner in zip(rows, owner_of_row):
        ordered[owner] = tuple(row)
    E = ExponentMatrix(n, tuple(ordered))
    decompose(E)  # raises NotInvertibleError on bad off-diagonal structure
    return E


def decompose(E: ExponentMatrix) -> list[AtomicPart]:
    """Split into loops and chains, ordered by smallest variable index."""
    n = E.n
    succ: dict[int, int] = {}
    indeg = [0] * (n + 1)
    for i in range(1, n + 1):
        row = E.row(i)
        others = [j + 1 for j, e in enumerate(row) if e != 0 and j + 1 != i]
        if others:
            if row[others[0] - 1] != 1:
                raise NotInvertibleError(
                    f"off-diagonal exponent of monomial {i} must be 1")
            succ[i] = others[0]
            indeg[others[0]] += 1
    if any(d > 1 for d in indeg[1:]):
        j = next(j for j in range(1, n + 1) if indeg[j] > 1)
        raise NotInvertibleError(
            f"variable x{j} is the tail of two monomials; not a loop/chain shape")

    seen = [False] * (n + 1)
    parts: list[AtomicPart] = []

    # chains: start at variables with indeg 0, follow succ to the end
    for start in range(1, n + 1):
        if indeg[start] == 0 and not seen[start]:
            chain = [start]
            seen[start] = True
            cur = start
            while cur in succ:
                cur = succ[cur]
                if seen[cur]:
                    raise NotInvertibleError("chain runs into a loop")
                seen[cur] = True
                chain.append(cur)
            parts.append(AtomicPart("chain", tuple(chain),
                                    tuple(E.k(v) for v in chain)))

    # what remains are loops
    for start in range(1, n + 1):
        if not seen[start]:
            loop = [start]
            seen[start] = True
            cur = succ.get(start)
            while cur is not None and cur != start:
                if seen[cur]:
                    raise NotInvertibleError("malformed loop structure")
                seen[cur] = True
                loop.append(cur)
                cur = succ.get(cur)
            if cur != start or len(loop) < 2:
                raise NotInvertibleError("malformed loop structure")
            parts.append(AtomicPart("loop", tuple(loop),
                                    tuple(E.k(v) for v in loop)))

    parts.sort(key=lambda p: min(p.variables))
    return parts


def weights(E: ExponentMatrix) -> WeightSystem:
    """Reduced weights q and degree d with E*q = d*(1,..,1)."""
    n = E.n
    # solve E*x = (1,..,1) over Q by Gaussian elimination
    A = [[Fraction(e) for e in E.row(i + 1)] + [Fraction(1)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise NotInvertibleError("singular exponent matrix; weights not unique")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                factor = A[r][col]
                A[r] = [v - factor * w for v, w in zip(A[r], A[col])]
    x = [A[i][n] for i in range(n)]
    if any(v <= 0 for v in x):
        raise NotInvertibleError("weight system has a non-positive entry")
    d = 1
    for v in x:
        d = d * v.denominator // gcd(d, v.denominator)
    q = [int(v * d) for v in x]
    g = 0
    for v in q:
        g = gcd(g, v)
    return WeightSystem(tuple(v // g for v in q), d // g)


def transpose(E: ExponentMatrix) -> ExponentMatrix:
    return E.transpose()


def is_calabi_yau(W: WeightSystem) -> bool:
    """Sum of weights equals the degree."""
    return sum(W.q) == W.d


def step_vectors(E: ExponentMatrix) -> StepVectors:
    """Displacements of the partial-derivative arrows on exponent diagrams."""
    n = E.n
    steps = tuple(tuple(1 - e for e in E.row(i)) for i in range(1, n + 1))
    return StepVectors(steps)


def brieskorn_pham(ks) -> ExponentMatrix:
    """Diagonal matrix for x_1^{k_1} + ... + x_n^{k_n}."""
    n = len(ks)
    rows = tuple(tuple(ks[i] if j == i else 0 for j in range(n)) for i in range(n))
    return ExponentMatrix(n, rows)


def require_calabi_yau(E: ExponentMatrix) -> WeightSystem:
    W = weights(E)
    if not is_calabi_yau(W):
        raise ValueError(
            f"Calabi-Yau condition fails: sum(q) = {sum(W.q)} != d = {W.d}")
    return W
