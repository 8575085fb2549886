"""Best approximate solutions of tropical linear vector equations.

Two problems are handled here. The one-sided equation a x = b has a
closed-form best solution obtained through residuation. The two-sided
equation a x = b y is solved numerically by alternating projections:
the image of the current iterate under one matrix is projected onto
the column span of the other, and the achieved squared distances form
a non-increasing sequence whose minimum is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .linalg import (
    DimensionMismatch,
    SemifieldMismatch,
    TropicalMatrix,
    TropicalVector,
    conjugate,
    dot,
    full,
    mat_vec_mul,
    scale,
    vec_mat_mul,
)
from .semifield import TropicalError

#: Squared error at or below which a system counts as solved exactly.
#: Measured as deviation from the unit in conventional units (so an
#: absolute bound in max-plus and a relative one in max-times).
DELTA_UNIT_TOL = 1e-9

#: Elementwise absolute tolerance for recognizing a repeated iterate.
ITERATE_MATCH_TOL = 1e-9

DEFAULT_MAX_ITER = 1000


class NonRegularInput(TropicalError):
    """A matrix or vector containing the zero reached a solver."""


class Termination(Enum):
    """Why a solve stopped."""

    EXACT_SOLUTION = "exact-solution"
    CYCLE_DETECTED = "cycle-detected"
    ITERATION_CAP = "iteration-cap"
    ONE_SHOT = "one-shot"


@dataclass(frozen=True)
class OneSidedSolution:
    """Result of solving a x = b.

    delta is the squared best error (>= the unit), error its semifield
    square root, and x_star the minimizing vector. When the system is
    consistent (delta at the unit within DELTA_UNIT_TOL), exact is True
    and x_star is the greatest exact solution.
    """

    delta: float
    error: float
    x_star: TropicalVector
    exact: bool


@dataclass(frozen=True)
class TwoSidedSolution:
    """Result of solving a x = b y.

    delta_star is the smallest squared distance seen across all
    iterations, with x_star / y_star the pair that achieved it. The
    full delta sequence is kept for diagnostics; it is non-increasing
    up to floating point noise.
    """

    delta_star: float
    x_star: TropicalVector
    y_star: TropicalVector
    iterations: int
    termination: Termination
    deltas: tuple[float, ...]


def _require_regular(value, label: str) -> None:
    if not value.is_regular:
        raise NonRegularInput(f"{label} must be regular (no zero entries)")


def _matches_previous(vec: TropicalVector, history: list[TropicalVector]) -> bool:
    for old in history:
        if all(abs(p - q) <= ITERATE_MATCH_TOL
               for p, q in zip(vec.elements, old.elements)):
            return True
    return False


def one_sided_solve(a: TropicalMatrix, b: TropicalVector) -> OneSidedSolution:
    """Best approximate solution of the one-sided equation a x = b.

    Residuation gives the greatest vector r with a r <= b, namely
    r = conj(conj(b) a). Its image a r is the nearest point of the
    column span of a lying below b, the squared distance to b is
    delta = conj(a r) b, and scaling r by sqrt(delta) balances the
    one-sided slack into the metric-best solution. No regular x can
    achieve a distance below sqrt(delta).

    Requires a and b regular with matching row counts.
    """
    sf = a.semifield
    if sf is not b.semifield:
        raise SemifieldMismatch(
            f"cannot mix {sf.name} and {b.semifield.name} values")
    if a.rows != len(b):
        raise DimensionMismatch(
            f"matrix has {a.rows} rows, vector has {len(b)} elements")
    _require_regular(a, "the coefficient matrix")
    _require_regular(b, "the right-hand side")

    residuated = conjugate(vec_mat_mul(conjugate(b), a))
    projection = mat_vec_mul(a, residuated)
    delta = dot(conjugate(projection), b)
    error = sf.sqrt(delta)
    exact = sf.is_one(delta, DELTA_UNIT_TOL)
    # For a consistent system the greatest exact solution is returned
    # unscaled; sqrt(delta) is the unit there anyway.
    x_star = residuated if exact else scale(error, residuated)
    return OneSidedSolution(delta=delta, error=error, x_star=x_star, exact=exact)


def two_sided_solve(a: TropicalMatrix,
                    b: TropicalMatrix,
                    x0: Optional[TropicalVector] = None,
                    max_iter: int = DEFAULT_MAX_ITER) -> TwoSidedSolution:
    """Best approximate solution of the two-sided equation a x = b y.

    Starting from x0 (all units by default, which is as good as any
    start since the achieved distances are invariant under common
    scaling of the iterate), the solver alternates one-sided projections
    between the column spans of a and b. Each half step computes the
    squared distance delta from the current image to the other span and
    the coefficient vector of the projection, scaled by sqrt(delta).

    Stopping follows three rules, checked in order after every half
    step: the unit delta (exact solution found), a repeat of an earlier
    iterate on the same side (a cycle, so no further progress), or the
    max_iter cap on the number of computed deltas. The reported triple
    is the best one observed, which for a non-increasing sequence is
    the last one up to floating point noise.
    """
    sf = a.semifield
    if sf is not b.semifield:
        raise SemifieldMismatch(
            f"cannot mix {sf.name} and {b.semifield.name} values")
    if a.rows != b.rows:
        raise DimensionMismatch(
            f"matrices have {a.rows} and {b.rows} rows")
    _require_regular(a, "the left matrix")
    _require_regular(b, "the right matrix")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if x0 is None:
        x0 = full(a.cols, sf.one, sf)
    else:
        if x0.semifield is not sf:
            raise SemifieldMismatch("x0 belongs to a different semifield")
        if len(x0) != a.cols:
            raise DimensionMismatch(
                f"x0 has {len(x0)} elements, left matrix has {a.cols} columns")
        _require_regular(x0, "x0")

    def half_step(image: TropicalVector, target: TropicalMatrix):
        # One-sided projection of the image onto the span of target.
        reached = conjugate(vec_mat_mul(conjugate(image), target))
        projection = mat_vec_mul(target, reached)
        delta = dot(conjugate(projection), image)
        return delta, scale(sf.sqrt(delta), reached)

    seen_x = [x0]
    seen_y: list[TropicalVector] = []
    deltas: list[float] = []
    best_delta: Optional[float] = None
    best_x = best_y = None
    termination = Termination.ITERATION_CAP
    x_current = x0

    while True:
        delta, y_next = half_step(mat_vec_mul(a, x_current), b)
        deltas.append(delta)
        if best_delta is None or delta < best_delta:
            best_delta, best_x, best_y = delta, x_current, y_next
        if sf.is_one(delta, DELTA_UNIT_TOL):
            termination = Termination.EXACT_SOLUTION
            break
        if _matches_previous(y_next, seen_y):
            termination = Termination.CYCLE_DETECTED
            break
        seen_y.append(y_next)
        if len(deltas) >= max_iter:
            termination = Termination.ITERATION_CAP
            break

        delta, x_next = half_step(mat_vec_mul(b, y_next), a)
        deltas.append(delta)
        if delta < best_delta:
            best_delta, best_x, best_y = delta, x_next, y_next
        if sf.is_one(delta, DELTA_UNIT_TOL):
            termination = Termination.EXACT_SOLUTION
            break
        if _matches_previous(x_next, seen_x):
            termination = Termination.CYCLE_DETECTED
            break
        seen_x.append(x_next)
        x_current = x_next
        if len(deltas) >= max_iter:
            termination = Termination.ITERATION_CAP
            break

    return TwoSidedSolution(
        delta_star=best_delta,
        x_star=best_x,
        y_star=best_y,
        iterations=len(deltas),
        termination=termination,
        deltas=tuple(deltas),
    )
