"""Self-maps with coefficient elements P, Q, R and checks of the fixed-point hypotheses.

The contractive condition is

    F(Tx, Tx, Ty) <= P* F(x, x, y) P + Q* F(x, x, Tx) Q + R* F(y, y, Ty) R

with ||P||^2 + ||Q||^2 + ||R||^2 < 1; consecutive orbit distances then shrink
by at least ``S^2 = (||P||^2 + ||Q||^2) / (1 - ||R||^2)`` per step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import algebra as alg
from .algebra import AlgebraElement, DEFAULT_TOL, Tolerance
from .errors import DescriptorMismatch, DomainEscape, TailNotConverged
from .space import SpaceInstance, Witness, as_point, draw_tuples

CONTRACTIVE = "contractive"
NORM_BOUND = "norm_bound"
SUPLIM = "suplim"
CONTROL_LIMITS = "control_limits"

TAIL_LENGTH = 5


def scale_map(factor: float) -> Callable:
    def T(x):
        return tuple(factor * c for c in x)

    return T


def identity_map(x):
    return tuple(x)


@dataclass(frozen=True)
class ContractionSpec:
    map: Callable
    P: AlgebraElement
    Q: AlgebraElement
    R: AlgebraElement
    domain: Optional[Callable] = None
    name: str = "custom"

    def __post_init__(self):
        if not (self.P.descriptor == self.Q.descriptor == self.R.descriptor):
            raise DescriptorMismatch("P, Q and R must live in the same algebra")

    def T(self, x) -> tuple:
        y = as_point(self.map(x))
        if self.domain is not None and not self.domain(y):
            raise DomainEscape(f"T{list(x)} = {list(y)} leaves the domain")
        return y


def bind(space: SpaceInstance, map, P, Q, R, n_check: int = 256, seed: int = 0, name="custom") -> ContractionSpec:
    """Build a spec for ``space``, checking descriptors and that T maps sampled points into X."""
    spec = ContractionSpec(map, P, Q, R, domain=space.contains, name=name)
    if P.descriptor != space.algebra:
        raise DescriptorMismatch(f"coefficients live in {P.descriptor}, space in {space.algebra}")
    for (x,) in draw_tuples(space, 1, n_check, seed):
        spec.T(x)
    return spec


@dataclass
class HypothesisReport:
    condition_id: str
    passed: bool
    computed_values: dict
    witnesses: list = field(default_factory=list)
    violations: int = 0

    def to_dict(self) -> dict:
        return {
            "id": self.condition_id,
            "passed": self.passed,
            "violations": self.violations,
            "computed_values": {k: _jsonable(v) for k, v in self.computed_values.items()},
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def contraction_sides(space, spec, x, y):
    Tx, Ty = spec.T(x), spec.T(y)
    P, Q, R = spec.P, spec.Q, spec.R
    lhs = space.F(Tx, Tx, Ty)
    rhs = (
        alg.adjoint(P) * space.F(x, x, y) * P
        + alg.adjoint(Q) * space.F(x, x, Tx) * Q
        + alg.adjoint(R) * space.F(y, y, Ty) * R
    )
    return lhs, rhs


def verify_contraction_inequality(
    space: SpaceInstance, spec: ContractionSpec, n_samples=1000, seed=0, tol: Tolerance = DEFAULT_TOL,
    max_witnesses=25, pairs=None,
) -> HypothesisReport:
    """Check the contractive inequality on sampled pairs (or on ``pairs`` if given)."""
    if pairs is None:
        pairs = draw_tuples(space, 2, n_samples, seed)
    witnesses = []
    violations = 0
    min_margin = math.inf
    max_gap = 0.0
    for x, y in pairs:
        lhs, rhs = contraction_sides(space, spec, x, y)
        margin = alg.order_margin(lhs, rhs, tol)
        min_margin = min(min_margin, margin)
        max_gap = max(max_gap, alg.operator_norm(rhs - lhs))
        if margin < -tol.eps:
            violations += 1
            if len(witnesses) < max_witnesses:
                relation = "reversed" if alg.leq(rhs, lhs, tol) else "incomparable"
                witnesses.append(Witness((x, y), lhs, rhs, -margin, relation))
    values = {
        "samples_checked": len(pairs),
        "violations": violations,
        "min_margin": min_margin,
        "max_equality_gap": max_gap,
    }
    return HypothesisReport(CONTRACTIVE, not witnesses, values, witnesses, violations)


def coefficient_norm_condition(spec: ContractionSpec) -> HypothesisReport:
    p2 = alg.operator_norm(spec.P) ** 2
    q2 = alg.operator_norm(spec.Q) ** 2
    r2 = alg.operator_norm(spec.R) ** 2
    total = p2 + q2 + r2
    s2 = (p2 + q2) / (1.0 - r2) if r2 < 1.0 else math.inf
    values = {"P_norm_sq": p2, "Q_norm_sq": q2, "R_norm_sq": r2, "sum": total, "S_norm_sq": s2}
    return HypothesisReport(NORM_BOUND, total < 1.0, values)


def contraction_ratio(spec: ContractionSpec) -> float:
    return coefficient_norm_condition(spec).computed_values["S_norm_sq"]


def suplim_threshold(spec: ContractionSpec) -> float:
    """(1 - ||R||^2) / (||P||^2 + ||Q||^2), +inf when P = Q = 0."""
    v = coefficient_norm_condition(spec).computed_values
    denom = v["P_norm_sq"] + v["Q_norm_sq"]
    if denom == 0.0:
        return math.inf
    return (1.0 - v["R_norm_sq"]) / denom


def orbit(spec: ContractionSpec, x0, n: int) -> list:
    """[x0, T x0, ..., T^n x0]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = as_point(x0)
    if spec.domain is not None and not spec.domain(x):
        raise DomainEscape(f"start point {list(x)} is outside the domain")
    out = [x]
    for _ in range(n):
        x = spec.T(x)
        out.append(x)
    return out


def _tail_stable(values, eps) -> bool:
    tail = values[-TAIL_LENGTH:]
    return max(tail) - min(tail) <= eps * (1.0 + abs(tail[-1]))


def verify_suplim(
    space: SpaceInstance, spec: ContractionSpec, x0, m_max: int = 64, i_max: int = 64, tol: Tolerance = DEFAULT_TOL
) -> HypothesisReport:
    """Estimate sup_m lim_i ||C(x_{i+1}, x_{i+1}, x_{i+2}) C(x_{i+1}, x_{i+1}, x_m)|| along the orbit of x0.

    The limit over i is read off at ``i_max`` once the last five terms agree
    to ``eps``; the sup runs over m = 1..m_max.
    """
    if m_max < 1 or i_max < 2:
        raise ValueError("need m_max >= 1 and i_max >= 2")
    threshold = suplim_threshold(spec)
    base = {"threshold": threshold, "m_max": m_max, "i_max": i_max}
    if math.isinf(threshold):
        return HypothesisReport(SUPLIM, True, {**base, "suplim_estimate": None, "vacuous": True})
    xs = orbit(spec, x0, max(i_max + 2, m_max))
    lead = [space.C(xs[i + 1], xs[i + 1], xs[i + 2]) for i in range(i_max + 1)]
    best, best_m = -math.inf, None
    for m in range(1, m_max + 1):
        a = [alg.operator_norm(lead[i] * space.C(xs[i + 1], xs[i + 1], xs[m])) for i in range(i_max + 1)]
        if not _tail_stable(a, tol.eps):
            raise TailNotConverged(f"a_i({m}) not stable over i = {i_max - TAIL_LENGTH + 1}..{i_max}")
        if a[-1] > best:
            best, best_m = a[-1], m
    values = {**base, "suplim_estimate": best, "argmax_m": best_m, "vacuous": False}
    return HypothesisReport(SUPLIM, best < threshold, values)


def verify_control_limits(
    space: SpaceInstance, spec: ContractionSpec, x, x0, n_max: int = 64, tol: Tolerance = DEFAULT_TOL
) -> HypothesisReport:
    """Check that ||C(x, x, x_n)|| and ||C(x_n, x_n, x)|| settle to finite limits."""
    if n_max < 10:
        raise ValueError("n_max must be >= 10")
    x = as_point(x)
    xs = orbit(spec, x0, n_max)
    b = [alg.operator_norm(space.C(x, x, xn)) for xn in xs]
    c = [alg.operator_norm(space.C(xn, xn, x)) for xn in xs]
    bounded = all(math.isfinite(v) for v in b + c)
    stable_b = _tail_stable(b, tol.eps)
    stable_c = _tail_stable(c, tol.eps)
    values = {
        "limit_left": b[-1],
        "limit_right": c[-1],
        "tail_oscillation_left": max(b[-TAIL_LENGTH:]) - min(b[-TAIL_LENGTH:]),
        "tail_oscillation_right": max(c[-TAIL_LENGTH:]) - min(c[-TAIL_LENGTH:]),
        "sup_left": max(b),
        "sup_right": max(c),
        "n_max": n_max,
    }
    return HypothesisReport(CONTROL_LIMITS, bounded and stable_b and stable_c, values)


def corollary_threshold(spec: ContractionSpec) -> float:
    """1 / ||P||^2, the Banach-contraction form of the sup-lim threshold."""
    p2 = alg.operator_norm(spec.P) ** 2
    return math.inf if p2 == 0.0 else 1.0 / p2
