"""Picard iteration, the explicit Cauchy majorant, and a multi-start uniqueness probe."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import algebra as alg
from .algebra import DEFAULT_TOL, Tolerance
from .contraction import ContractionSpec, coefficient_norm_condition, orbit
from .errors import NormBoundViolated
from .space import SpaceInstance, as_point

MAX_ITER = 10_000


@dataclass
class FixedPointReport:
    fixed_point: tuple
    iterations: int
    residual: float
    orbit_distances: list
    converged: bool

    def to_dict(self) -> dict:
        return {
            "fixed_point": list(self.fixed_point),
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
            "orbit_distances": list(self.orbit_distances),
        }


@dataclass
class BoundCheckReport:
    n: int
    q: int
    observed: float
    bound: float
    dominated: bool
    Y_values: list
    S0_norm: float = 0.0
    S_norm_sq: float = 0.0

    @property
    def margin(self) -> float:
        return self.bound - self.observed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "observed": self.observed,
            "bound": self.bound,
            "margin": self.margin,
            "dominated": self.dominated,
            "S0_norm": self.S0_norm,
            "S_norm_sq": self.S_norm_sq,
            "Y_values": list(self.Y_values),
        }


@dataclass
class UniquenessReport:
    passed: bool
    fixed_points: list
    spread: float
    reports: list = field(default_factory=list)
    failing_start: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "fixed_points": [list(p) for p in self.fixed_points],
            "spread": self.spread,
            "failing_start": None if self.failing_start is None else list(self.failing_start),
        }


def distance(space: SpaceInstance, x, y) -> float:
    """||F(x, x, y)||."""
    return alg.operator_norm(space.F(x, x, y))


def picard(
    space: SpaceInstance, spec: ContractionSpec, x0, tol: Tolerance = DEFAULT_TOL, max_iter: int = MAX_ITER
) -> FixedPointReport:
    """Iterate x <- T x until ||F(x_n, x_n, x_{n+1})|| <= eps, then certify by the residual ||F(x, x, Tx)||."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    x = orbit(spec, x0, 0)[0]
    distances = []
    for _ in range(max_iter):
        y = spec.T(x)
        d = distance(space, x, y)
        distances.append(d)
        x = y
        if d <= tol.eps:
            break
    residual = distance(space, x, spec.T(x))
    converged = distances[-1] <= tol.eps and residual <= tol.eps
    return FixedPointReport(x, len(distances), residual, distances, converged)


def cauchy_bound_check(
    space: SpaceInstance, spec: ContractionSpec, x0, n: int, q: int, tol: Tolerance = DEFAULT_TOL
) -> BoundCheckReport:
    """Compare ||F(x_n, x_n, x_{n+q})|| with the majorant

        2 ||S0|| [ ||C(x_n, x_n, x_{n+1})|| S^(2n) + Y_{n+q-1} - Y_n ]

    where S0 = F(x_0, x_0, x_1) and
    Y_m = sum_{i=1}^m S^(2i) ||C(x_i, x_i, x_{i+1}) prod_{j=1}^i C(x_{n+q}, x_{n+q}, x_j)||.
    """
    if n < 1 or q < 1:
        raise ValueError("need n >= 1 and q >= 1")
    s2 = coefficient_norm_condition(spec).computed_values["S_norm_sq"]
    if not s2 < 1.0:
        raise NormBoundViolated(f"||S||^2 = {s2} >= 1; the majorant does not apply")
    xs = orbit(spec, x0, n + q + 1)
    s0 = alg.operator_norm(space.F(xs[0], xs[0], xs[1]))
    anchor = xs[n + q]
    y_values = [0.0]
    prod = space.algebra.unit()
    for i in range(1, n + q):
        prod = prod * space.C(anchor, anchor, xs[i])
        term = s2 ** i * alg.operator_norm(space.C(xs[i], xs[i], xs[i + 1]) * prod)
        y_values.append(y_values[-1] + term)
    lead = alg.operator_norm(space.C(xs[n], xs[n], xs[n + 1])) * s2 ** n
    bound = 2.0 * s0 * (lead + (y_values[n + q - 1] - y_values[n]))
    observed = alg.operator_norm(space.F(xs[n], xs[n], xs[n + q]))
    return BoundCheckReport(n, q, observed, bound, observed <= bound + tol.eps, y_values, s0, s2)


def uniqueness_probe(
    space: SpaceInstance, spec: ContractionSpec, starts, tol: Tolerance = DEFAULT_TOL, max_iter: int = MAX_ITER
) -> UniquenessReport:
    """Run Picard from every start; pass when all converge to mutually indistinguishable points."""
    starts = [as_point(s) for s in starts]
    if not starts:
        raise ValueError("at least one start is required")
    reports = [picard(space, spec, s, tol, max_iter) for s in starts]
    points = [r.fixed_point for r in reports]
    spread = 0.0
    for a in points:
        for b in points:
            spread = max(spread, distance(space, a, b))
    failing = next((s for s, r in zip(starts, reports) if not r.converged), None)
    passed = failing is None and spread <= 10.0 * tol.eps
    return UniquenessReport(passed, points, spread, reports, failing)
