"""Distinguished basis monomials of the middle cohomology and path data.

The degree-d slice of the basis is read off the shift multiset: each
nonzero alpha marks how many times each partial-derivative arrow has been
used before that point of the closed walk, and summing those steps from
(1,..,1) lands on the basis monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .invertible import ExponentMatrix, step_vectors
from .multipoly import Exponent, weighted_degree
from .operators import alpha_beta, dual_data, index_sets


@dataclass(frozen=True)
class BasisCatalog:
    by_level: dict[int, tuple[Exponent, ...]]   # pole level 1..n-1
    degree: int                                 # weighted degree of the family

    def total(self) -> int:
        return sum(len(v) for v in self.by_level.values())

    def middle(self) -> tuple[Exponent, ...]:
        return self.by_level[2] if 2 in self.by_level else ()


@dataclass(frozen=True)
class PositionTable:
    smallest_positions: tuple[tuple[int, ...], ...]   # per variable


class VertexError(ValueError):
    """A computed basis vertex left the positive orthant."""


def path_step_multiset(E: ExponentMatrix) -> dict[int, int]:
    """How often each partial-derivative arrow is used on the closed walk."""
    _, Wt = dual_data(E)
    steps = step_vectors(E).steps
    n = E.n
    total = [0] * n
    for i, qi in enumerate(Wt.q):
        for j in range(n):
            total[j] += qi * steps[i][j]
    if any(t != 0 for t in total):
        raise AssertionError("weighted step sum is not closed")
    return {i + 1: Wt.q[i] for i in range(n)}


def jacobi_positions(E: ExponentMatrix) -> PositionTable:
    """Earliest usable position of each arrow on the closed walk.

    Case split: when q_hat_i * k_i equals the dual degree the positions are
    q - n + 2 for q in Q_i; otherwise floor(q) - n + 2 for fractional q and
    q - n + 1 for integral q.  Values <= 0 are reported as computed.
    """
    S = index_sets(E)
    n = E.n
    dh = S.d_hat
    rows = []
    for i in range(1, n + 1):
        qi = S.dual_weights[i - 1]
        ki = E.k(i)
        positions = []
        if qi * ki == dh:
            for q in S.Q[i - 1]:
                positions.append(int(q) - n + 2)
        else:
            for q in S.Q[i - 1]:
                if q.denominator == 1:
                    positions.append(int(q) - n + 1)
                else:
                    positions.append(int(q.__floor__()) - n + 2)
        rows.append(tuple(positions))
    return PositionTable(tuple(rows))


def vertex_for_alpha(E: ExponentMatrix, alpha: Fraction) -> Exponent:
    """Basis monomial of the degree-d slice attached to a nonzero shift."""
    S = index_sets(E)
    steps = step_vectors(E).steps
    n = E.n
    vertex = [1] * n
    for i in range(n):
        count = sum(1 for q in S.Q[i] if q <= alpha)
        for j in range(n):
            vertex[j] += count * steps[i][j]
    if any(v < 0 for v in vertex):
        raise VertexError(
            f"vertex for shift {alpha} has a negative entry: {tuple(vertex)}")
    return tuple(vertex)


def basis_monomials(E: ExponentMatrix) -> BasisCatalog:
    """The u distinguished monomials, grouped by pole level.

    Level 1 is the holomorphic form (zero exponent), level n-1 the monomial
    (n-2,..,n-2); the degree-d level is (1,..,1) together with one vertex
    per nonzero shift.  Only n = 3 and n = 4 are supported: for n >= 5 the
    intermediate slices would need the full path construction.
    """
    n = E.n
    if n < 3:
        raise ValueError("basis extraction needs at least 3 variables")
    if n > 4:
        raise NotImplementedError(
            "basis extraction for n >= 5 intermediate levels is not available")
    W, _ = dual_data(E)
    alphas, _ = alpha_beta(E)
    middle = [(1,) * n]
    for a in alphas:
        if a != 0:
            middle.append(vertex_for_alpha(E, a))
    for m in middle:
        if weighted_degree(m, W.q) != W.d:
            raise AssertionError(
                f"middle monomial {m} has degree {weighted_degree(m, W.q)} != {W.d}")
    by_level: dict[int, tuple[Exponent, ...]] = {1: ((0,) * n,)}
    if n == 3:
        by_level[2] = tuple(sorted(middle))
    else:
        by_level[2] = tuple(sorted(middle))
        by_level[3] = ((n - 2,) * n,)
    return BasisCatalog(by_level, W.d)
