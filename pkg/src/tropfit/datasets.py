"""Bundled demonstration datasets.

Two reference curves sampled at the 21 points x = 0, 0.1, ..., 2.0:
a convex one ("f") suited to polynomial fitting and a nonconvex one
("g") that needs a rational model. The CSV regenerators keep golden
tests free of opaque fixture files.
"""

from __future__ import annotations

import math

from .approx import SampleSet
from .semifield import MAX_PLUS, Semifield

GRID = tuple(i / 10 for i in range(21))


def convex_curve(x: float) -> float:
    return x * x - 3.0 * x ** (1.0 / 3.0) + 2.5


def nonconvex_curve(x: float) -> float:
    return 3.0 * (x - 1.0) ** 2 * math.sin(x) + 0.25


def convex_samples(semifield: Semifield = MAX_PLUS) -> SampleSet:
    return SampleSet.from_reals(
        [(x, convex_curve(x)) for x in GRID], semifield)


def nonconvex_samples(semifield: Semifield = MAX_PLUS) -> SampleSet:
    return SampleSet.from_reals(
        [(x, nonconvex_curve(x)) for x in GRID], semifield)


_CURVES = {"f": convex_curve, "g": nonconvex_curve}

DATASET_NAMES = tuple(sorted(_CURVES))


def dataset_csv(name: str) -> str:
    """CSV text (header plus 21 rows) for dataset "f" or "g"."""
    try:
        curve = _CURVES[name]
    except KeyError:
        raise ValueError(f"unknown dataset {name!r}; pick one of "
                         f"{', '.join(DATASET_NAMES)}") from None
    lines = ["x,y"]
    lines.extend(f"{x!r},{curve(x)!r}" for x in GRID)
    return "\n".join(lines) + "\n"
