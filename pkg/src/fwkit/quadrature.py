"""Adaptive integration over triangles.

A fixed symmetric 7-point rule (degree 5) is applied per triangle; the
error is estimated Richardson-style by comparing the parent value against
the sum over the four midpoint-subdivision children, and subdivision
recurses where the estimate exceeds the local budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

_XY = tuple[float, float]

# Degree-5 rule: centroid plus two symmetric orbits of three points.
_SQRT15 = math.sqrt(15.0)
_W0 = 9.0 / 40.0
_WA = (155.0 + _SQRT15) / 1200.0
_WB = (155.0 - _SQRT15) / 1200.0
_SA = (6.0 + _SQRT15) / 21.0
_SB = (6.0 - _SQRT15) / 21.0

# (l1, l2, weight); l3 = 1 - l1 - l2
_RULE = (
    (1.0 / 3.0, 1.0 / 3.0, _W0),
    (1.0 - 2.0 * _SA, _SA, _WA),
    (_SA, 1.0 - 2.0 * _SA, _WA),
    (_SA, _SA, _WA),
    (1.0 - 2.0 * _SB, _SB, _WB),
    (_SB, 1.0 - 2.0 * _SB, _WB),
    (_SB, _SB, _WB),
)

# A degree-5 rule integrates O(h^6); quartering therefore reduces the
# error by ~64, so (fine - coarse)/63 estimates the fine-value error.
_RICHARDSON = 63.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy knobs for adaptive triangle quadrature."""

    target_rel_error: float = 1e-10
    max_subdivisions: int = 20

    def __post_init__(self) -> None:
        if not self.target_rel_error > 0.0:
            raise ValueError(f"target_rel_error must be > 0, got {self.target_rel_error}")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be >= 0")


def rule_value(f: Callable[[float, float], float], a: _XY, b: _XY, c: _XY) -> float:
    """One application of the 7-point rule (uses the unsigned area)."""
    area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    acc = 0.0
    for l1, l2, w in _RULE:
        l3 = 1.0 - l1 - l2
        acc += w * f(l1 * a[0] + l2 * b[0] + l3 * c[0],
                     l1 * a[1] + l2 * b[1] + l3 * c[1])
    return area * acc


def integrate_triangle(f: Callable[[float, float], float], a: _XY, b: _XY, c: _XY,
                       config: QuadratureConfig | None = None) -> float:
    """Adaptive integral of f over the triangle abc."""
    if config is None:
        config = QuadratureConfig()
    coarse = rule_value(f, a, b, c)
    # One mandatory subdivision pins the error scale to a refined estimate.
    fine, children = _split_values(f, a, b, c)
    tol = config.target_rel_error * max(abs(fine), 1e-300)
    if abs(fine - coarse) <= _RICHARDSON * tol or config.max_subdivisions == 0:
        return fine + (fine - coarse) / _RICHARDSON
    total = 0.0
    for (ta, tb, tc), val in children:
        total += _refine(f, ta, tb, tc, val, tol / 4.0, config.max_subdivisions - 1)
    return total


def _split_values(f, a, b, c):
    mab = (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))
    mbc = (0.5 * (b[0] + c[0]), 0.5 * (b[1] + c[1]))
    mca = (0.5 * (c[0] + a[0]), 0.5 * (c[1] + a[1]))
    tris = ((a, mab, mca), (mab, b, mbc), (mca, mbc, c), (mab, mbc, mca))
    children = [(t, rule_value(f, *t)) for t in tris]
    return sum(v for _, v in children), children


def _refine(f, a, b, c, coarse, tol, depth):
    fine, children = _split_values(f, a, b, c)
    if abs(fine - coarse) <= _RICHARDSON * tol or depth == 0:
        return fine + (fine - coarse) / _RICHARDSON
    total = 0.0
    for (ta, tb, tc), val in children:
        total += _refine(f, ta, tb, tc, val, tol / 4.0, depth - 1)
    return total
