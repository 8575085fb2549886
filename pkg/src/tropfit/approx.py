"""Fitting of tropical polynomial and rational models to sample data.

A polynomial model max_j (coeff_j + p_j * x) in max-plus reading is fit
by stacking the monomial values of the sample abscissas into a design
matrix and solving the resulting one-sided equation; the rational model
numerator/denominator pair leads to a two-sided equation whose right
matrix couples the denominator design with the sample ordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .linalg import (
    TropicalMatrix,
    TropicalVector,
    distance,
    mat_mul,
)
from .semifield import ZERO, Rational, Scalar, Semifield, TropicalError
from .solvers import (
    DEFAULT_MAX_ITER,
    NonRegularInput,
    Termination,
    one_sided_solve,
    two_sided_solve,
)


class ZeroAbscissa(TropicalError):
    """A sample x equal to the semifield zero cannot enter a design matrix."""


class ZeroArgument(TropicalError):
    """Models cannot be evaluated at the semifield zero."""


#: Slack allowed between the solver error of a rational fit and the
#: pointwise error of the recovered model; larger gaps mean a bug.
RATIONAL_ERROR_CHECK_TOL = 1e-9


class DegreeVector:
    """Strictly increasing rational exponents of a polynomial.

    Degrees are stored as exact fractions and sorted ascending on
    construction; duplicates are rejected rather than dropped, so a
    caller mistake cannot silently change the model class. Floats are
    accepted and convert exactly to their binary fraction.
    """

    __slots__ = ("degrees",)

    def __init__(self, degrees: Iterable[Union[Rational, float, str]]):
        normalized = tuple(sorted(Fraction(d) for d in degrees))
        if not normalized:
            raise ValueError("at least one degree is required")
        for left, right in zip(normalized, normalized[1:]):
            if left == right:
                raise ValueError(f"duplicate degree {left}")
        self.degrees = normalized

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.degrees)

    def __getitem__(self, index: int) -> Fraction:
        return self.degrees[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeVector):
            return NotImplemented
        return self.degrees == other.degrees

    def __hash__(self) -> int:
        return hash(self.degrees)

    def __repr__(self) -> str:
        return f"DegreeVector({', '.join(str(d) for d in self.degrees)})"


@dataclass(frozen=True)
class SampleSet:
    """Ordered samples (x_i, y_i) of an unknown function, all nonzero."""

    points: tuple[tuple[Scalar, Scalar], ...]
    semifield: Semifield

    def __post_init__(self):
        if not self.points:
            raise ValueError("at least one sample is required")
        cleaned = []
        for x, y in self.points:
            if x is ZERO:
                raise ZeroAbscissa("sample abscissas must be nonzero")
            if y is ZERO:
                raise NonRegularInput("sample ordinates must be nonzero")
            xv, yv = float(x), float(y)
            if not self.semifield.contains(xv) or not self.semifield.contains(yv):
                raise ValueError(
                    f"({x!r}, {y!r}) is not a pair of {self.semifield.name} scalars")
            cleaned.append((xv, yv))
        object.__setattr__(self, "points", tuple(cleaned))

    @classmethod
    def from_reals(cls, pairs: Iterable[tuple[float, float]],
                   semifield: Semifield) -> "SampleSet":
        """Build a sample set from conventional reals via the embedding."""
        converted = tuple((semifield.from_real(x), semifield.from_real(y))
                          for x, y in pairs)
        return cls(converted, semifield)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def inputs(self) -> tuple[Scalar, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def outputs(self) -> TropicalVector:
        return TropicalVector(tuple(y for _, y in self.points), self.semifield)


@dataclass(frozen=True)
class PolynomialModel:
    """A degree vector with its fitted coefficients."""

    degrees: DegreeVector
    coefficients: TropicalVector

    def __post_init__(self):
        if len(self.degrees) != len(self.coefficients):
            raise ValueError(
                f"{len(self.degrees)} degrees but "
                f"{len(self.coefficients)} coefficients")
        if not self.coefficients.is_regular:
            raise ValueError("polynomial coefficients must be nonzero")

    @property
    def semifield(self) -> Semifield:
        return self.coefficients.semifield


@dataclass(frozen=True)
class RationalModel:
    """Quotient of two polynomial models over the same semifield."""

    numerator: PolynomialModel
    denominator: PolynomialModel

    def __post_init__(self):
        if self.numerator.semifield is not self.denominator.semifield:
            raise ValueError(
                "numerator and denominator use different semifields")

    @property
    def semifield(self) -> Semifield:
        return self.numerator.semifield


@dataclass(frozen=True)
class FitReport:
    """Outcome of a fit: achieved error, model, and solver diagnostics."""

    delta_star: float
    error: float
    model: Union[PolynomialModel, RationalModel]
    iterations: int
    termination: Termination


def build_poly_matrix(samples: SampleSet,
                      degrees: DegreeVector) -> TropicalMatrix:
    """Design matrix with entry (i, j) = x_i to the power degrees[j]."""
    sf = samples.semifield
    rows = []
    for x in samples.inputs:
        if x is ZERO:
            raise ZeroAbscissa("sample abscissas must be nonzero")
        rows.append(tuple(sf.pow(x, p) for p in degrees))
    return TropicalMatrix(tuple(rows), sf)


def fit_polynomial(samples: SampleSet, degrees: DegreeVector) -> FitReport:
    """Best polynomial fit for a fixed degree vector.

    The coefficients solve the one-sided equation (design) theta = y in
    the best approximate sense, so the reported error is the smallest
    achievable pointwise distance for this degree class.
    """
    design = build_poly_matrix(samples, degrees)
    solution = one_sided_solve(design, samples.outputs)
    model = PolynomialModel(degrees, solution.x_star)
    termination = (Termination.EXACT_SOLUTION if solution.exact
                   else Termination.ONE_SHOT)
    return FitReport(delta_star=solution.delta, error=solution.error,
                     model=model, iterations=1, termination=termination)


def fit_rational(samples: SampleSet,
                 num_degrees: DegreeVector,
                 den_degrees: DegreeVector,
                 max_iter: int = DEFAULT_MAX_ITER,
                 x0: Optional[TropicalVector] = None) -> FitReport:
    """Best rational fit for fixed numerator and denominator degrees.

    With design matrices X (numerator) and Z (denominator) and the
    diagonal matrix Y of sample ordinates, the fitting conditions read
    X theta = Y Z sigma, a two-sided equation solved by alternating
    projections. Coefficient pairs are only determined up to a common
    scalar factor, which does not change the fitted function.

    The pointwise error of the recovered model provably equals the
    solver's error; this is re-checked on every fit and a mismatch
    raises ArithmeticError.
    """
    sf = samples.semifield
    num_design = build_poly_matrix(samples, num_degrees)
    den_design = build_poly_matrix(samples, den_degrees)
    scaled_den = mat_mul(
        TropicalMatrix.diagonal(samples.outputs.elements, sf), den_design)
    solution = two_sided_solve(num_design, scaled_den, x0=x0,
                               max_iter=max_iter)
    model = RationalModel(
        PolynomialModel(num_degrees, solution.x_star),
        PolynomialModel(den_degrees, solution.y_star))
    error = sf.sqrt(solution.delta_star)
    _check_rational_error(model, samples, error)
    return FitReport(delta_star=solution.delta_star, error=error, model=model,
                     iterations=solution.iterations,
                     termination=solution.termination)


def _check_rational_error(model: RationalModel, samples: SampleSet,
                          error: float) -> None:
    predicted = TropicalVector(
        tuple(eval_rational(model, x) for x in samples.inputs),
        samples.semifield)
    d = distance(predicted, samples.outputs)
    if d.is_infinite or abs(d.value - error) > RATIONAL_ERROR_CHECK_TOL:
        raise ArithmeticError(
            "pointwise model error disagrees with the solver error "
            f"({d.value!r} vs {error!r})")


def eval_polynomial(model: PolynomialModel, x: Scalar) -> Scalar:
    """Value of the polynomial at a nonzero point."""
    if x is ZERO:
        raise ZeroArgument("polynomials are evaluated at nonzero points")
    sf = model.semifield
    acc: Scalar = ZERO
    for coeff, degree in zip(model.coefficients, model.degrees):
        acc = sf.add(acc, sf.mul(coeff, sf.pow(x, degree)))
    return acc


def eval_rational(model: RationalModel, x: Scalar) -> Scalar:
    """Value of the rational function at a nonzero point."""
    if x is ZERO:
        raise ZeroArgument("rational functions are evaluated at nonzero points")
    sf = model.semifield
    return sf.mul(eval_polynomial(model.numerator, x),
                  sf.inv(eval_polynomial(model.denominator, x)))
