"""Sparse recovery from power-sequence evaluations.

A diverse polynomial f is rebuilt from 2T values f(alpha^i) plus, per
variable, 2T values at the point whose k-th coordinate carries an extra
factor omega.  The base row yields coefficient/monomial-value pairs via the
minimal recurrence; each shifted row yields the same coefficients paired with
omega^(e_k)-scaled monomial values, so matching on coefficients and taking
bounded discrete logs of the value ratios recovers the exponents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    DiversityViolation,
    InvalidInput,
    LengthMismatch,
    ReEvaluationFailed,
)
from .field import Field, discrete_log_bounded
from .sparse import SparsePoly, eval_at_powers
from .unipoly import berlekamp_massey, find_roots, solve_transposed_vandermonde


@dataclass(frozen=True)
class EvalGrid:
    """Evaluations at the base point and its n omega-shifted companions."""

    alpha: tuple
    omega: object
    T: int
    base_row: tuple
    shifted_rows: tuple

    def __post_init__(self):
        if self.T < 1:
            raise InvalidInput("term bound must be >= 1")
        want = 2 * self.T
        if len(self.base_row) != want or any(len(r) != want for r in self.shifted_rows):
            raise InvalidInput("all rows must have length 2T")


def _row_pairs(field: Field, row, rng: random.Random):
    """(t, monomial values, coefficients) for one evaluation row."""
    lam = berlekamp_massey(field, row)
    t = len(lam) - 1
    if t == 0:
        return 0, [], []
    nodes = find_roots(field, lam, rng)
    coeffs = solve_transposed_vandermonde(field, nodes, list(row[:t]))
    return t, nodes, coeffs


def _index_by_coeff(coeffs):
    table = {}
    for j, c in enumerate(coeffs):
        if c in table:
            raise DiversityViolation("duplicate coefficient in recovered row")
        table[c] = j
    return table


def interpolate(
    field: Field,
    grid: EvalGrid,
    deg_bound: int,
    rng: random.Random | None = None,
) -> SparsePoly:
    """Rebuild the target polynomial; exact on success.

    The assembled polynomial is re-evaluated against the base row, so a
    returned value is never silently wrong: any inconsistency raises one of
    the retryable InterpolationError subclasses.
    """
    rng = rng or random.Random(0)
    n = len(grid.alpha)
    t, nodes, coeffs = _row_pairs(field, grid.base_row, rng)
    if t == 0:
        for row in grid.shifted_rows:
            if any(v != field.zero for v in row):
                raise LengthMismatch("base row is zero but a shifted row is not")
        return SparsePoly.zero(n)

    base_index = _index_by_coeff(coeffs)
    expvecs = [[0] * n for _ in range(t)]
    for k, row in enumerate(grid.shifted_rows):
        tk, nodes_k, coeffs_k = _row_pairs(field, row, rng)
        if tk != t:
            raise LengthMismatch(f"row {k}: recurrence degree {tk} != {t}")
        _index_by_coeff(coeffs_k)  # matching must be unambiguous on both sides
        for ck, mk in zip(coeffs_k, nodes_k):
            j = base_index.get(ck)
            if j is None:
                raise DiversityViolation(f"row {k}: coefficient has no base match")
            ratio = field.mul(mk, field.inv(nodes[j]))
            expvecs[j][k] = discrete_log_bounded(field, grid.omega, ratio, deg_bound)

    result = SparsePoly.from_terms(
        field, n, [(c, tuple(e)) for c, e in zip(coeffs, expvecs)]
    )
    check = eval_at_powers(field, result, grid.alpha, 2 * grid.T)
    if any(a != b for a, b in zip(check, grid.base_row)):
        raise ReEvaluationFailed("assembled polynomial does not reproduce the base row")
    return result
