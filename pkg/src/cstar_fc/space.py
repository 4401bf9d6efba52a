"""Algebra-valued controlled F_c-metric type spaces and their axiom checkers.

A space bundles a sampler for the ground set X, the three-point metric
``F(x, y, z)`` and the control ``C(x, y, z)``, both valued in one concrete
algebra. Each checker draws tuples of points, evaluates one axiom and
collects the tuples where it fails as :class:`Witness` records.

Tuples are drawn as: the space's probe tuples of matching arity first, then
blocks of random tuples where block ``b`` comes from a generator seeded with
``(seed, arity, b)``. A larger ``n_samples`` therefore only appends tuples.

Scalar-valued metrics are the one-dimensional componentwise case and need
no separate representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import algebra as alg
from .algebra import AlgebraDescriptor, AlgebraElement, Tolerance, DEFAULT_TOL
from .errors import DescriptorMismatch, EmptySample

Point = tuple
Evaluator = Callable[[Point, Point, Point], AlgebraElement]

BLOCK_SIZE = 256
MAX_WITNESSES = 25

IDENTITY = "identity"
ORDER = "order"
CONTROLLED_TRIANGLE = "controlled_triangle"
SYMMETRY = "symmetry"
CONTROL_ADMISSIBLE = "control_admissible"
ZERO_IMPLIES_EQUAL = "zero_implies_equal"
EXTENDED = "extended"

AXIOM_IDS = (IDENTITY, ORDER, CONTROLLED_TRIANGLE, SYMMETRY, CONTROL_ADMISSIBLE, ZERO_IMPLIES_EQUAL)


def as_point(value) -> Point:
    """Coerce a scalar or sequence into a point (a tuple of floats)."""
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.ndim != 1 or not np.isfinite(arr).all():
        raise ValueError(f"not a finite point: {value!r}")
    return tuple(arr.tolist())


@dataclass(frozen=True)
class SpaceInstance:
    algebra: AlgebraDescriptor
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    metric: Evaluator
    control: Evaluator
    point_eq_tol: float = 1e-12
    contains: Optional[Callable[[Point], bool]] = None
    probes: tuple = ()
    name: str = "custom"
    metadata: dict = field(default_factory=dict)

    def F(self, x: Point, y: Point, z: Point) -> AlgebraElement:
        out = self.metric(x, y, z)
        if out.descriptor is not self.algebra and out.descriptor != self.algebra:
            raise DescriptorMismatch(f"metric returned {out.descriptor}, space declares {self.algebra}")
        return out

    def C(self, x: Point, y: Point, z: Point) -> AlgebraElement:
        out = self.control(x, y, z)
        if out.descriptor is not self.algebra and out.descriptor != self.algebra:
            raise DescriptorMismatch(f"control returned {out.descriptor}, space declares {self.algebra}")
        return out

    def in_domain(self, p: Point) -> bool:
        return True if self.contains is None else bool(self.contains(p))

    def same_point(self, p: Point, q: Point) -> bool:
        return max(abs(a - b) for a, b in zip(p, q)) <= self.point_eq_tol


@dataclass(frozen=True)
class Witness:
    """A tuple of points at which a checked relation fails.

    ``margin`` is the size of the violation and exceeds the tolerance for
    every recorded witness. ``relation`` says whether ``rhs - lhs`` was
    negative ("reversed") or indefinite ("incomparable") for order failures.
    """

    points: tuple
    lhs: Optional[AlgebraElement]
    rhs: Optional[AlgebraElement]
    margin: float
    relation: Optional[str] = None
    detail: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "lhs": None if self.lhs is None else self.lhs.tolist(),
            "rhs": None if self.rhs is None else self.rhs.tolist(),
            "margin": self.margin,
            "relation": self.relation,
            "detail": self.detail,
        }


@dataclass
class AxiomReport:
    axiom_id: str
    samples_checked: int
    passed: bool
    witnesses: list
    violations: int = 0
    computed_values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.axiom_id,
            "passed": self.passed,
            "samples_checked": self.samples_checked,
            "violations": self.violations,
            "computed_values": dict(self.computed_values),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def draw_tuples(space: SpaceInstance, arity: int, n_samples: int, seed: int) -> list:
    """Probe tuples of this arity followed by ``n_samples`` random tuples."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    out = [tuple(as_point(p) for p in probe) for probe in space.probes if len(probe) == arity]
    drawn = 0
    block = 0
    while drawn < n_samples:
        rng = np.random.default_rng([seed, arity, block])
        pts = np.asarray(space.sampler(rng, BLOCK_SIZE * arity), dtype=float)
        if pts.size == 0:
            raise EmptySample(f"sampler of space {space.name!r} produced no points")
        pts = pts.reshape(BLOCK_SIZE * arity, -1)
        take = min(BLOCK_SIZE, n_samples - drawn)
        rows = pts[: take * arity].tolist()
        out.extend(tuple(tuple(r) for r in rows[k * arity:(k + 1) * arity]) for k in range(take))
        drawn += take
        block += 1
    return out


def _order_witness(points, lhs, rhs, tol, detail=None, classify=True) -> Optional[Witness]:
    margin = alg.order_margin(lhs, rhs, tol)
    if margin >= -tol.eps:
        return None
    relation = None
    if classify:
        relation = "reversed" if alg.leq(rhs, lhs, tol) else "incomparable"
    return Witness(points, lhs, rhs, -margin, relation, detail)


def _separation(space: SpaceInstance, points) -> float:
    return max(
        max(abs(a - b) for a, b in zip(p, q)) for i, p in enumerate(points) for q in points[i + 1:]
    )


# -- per-tuple evaluators; each returns a Witness or None ---------------------

def eval_identity(space, points, tol, generators=None, classify=True):
    x, y, z = points
    sep = _separation(space, points)
    if sep <= space.point_eq_tol:
        return None
    a, b, c, d = space.F(x, x, x), space.F(y, y, y), space.F(z, z, z), space.F(x, y, z)
    # the largest entry bounds the operator norm from below, so it can reject early
    if any(np.abs(v.entries - d.entries).max() > tol.eps for v in (a, b, c)):
        return None
    if all(alg.operator_norm(v - d) <= tol.eps for v in (a, b, c)):
        return Witness(points, d, a, sep, detail="F(x,x,x)=F(y,y,y)=F(z,z,z)=F(x,y,z) for unequal points")
    return None


def eval_order(space, points, tol, generators=None, classify=True):
    x, y, z = points
    zero = space.algebra.zero()
    a = space.F(x, x, x)
    b = space.F(x, x, y)
    c = space.F(x, y, z)
    for lhs, rhs, link in ((zero, a, "0<=F(x,x,x)"), (a, b, "F(x,x,x)<=F(x,x,y)"), (b, c, "F(x,x,y)<=F(x,y,z)")):
        w = _order_witness(points, lhs, rhs, tol, link, classify)
        if w is not None:
            return w
    return None


def triangle_sides(space, points):
    x, y, z, a = points
    lhs = space.F(x, y, z)
    rhs = (
        space.C(x, x, a) * space.F(x, x, a)
        + space.C(y, y, a) * space.F(y, y, a)
        + space.C(z, z, a) * space.F(z, z, a)
        - space.F(a, a, a)
    )
    return lhs, rhs


def eval_triangle(space, points, tol, generators=None, classify=True):
    lhs, rhs = triangle_sides(space, points)
    return _order_witness(points, lhs, rhs, tol, classify=classify)


def extended_sides(space, points):
    x, y, z, a = points
    lhs = space.F(x, y, z)
    rhs = space.C(x, y, z) * (space.F(x, x, a) + space.F(y, y, a) + space.F(z, z, a)) - space.F(a, a, a)
    return lhs, rhs


def eval_extended(space, points, tol, generators=None, classify=True):
    lhs, rhs = extended_sides(space, points)
    return _order_witness(points, lhs, rhs, tol, classify=classify)


def eval_symmetry(space, points, tol, generators=None, classify=True):
    x, y = points
    lhs, rhs = space.F(x, x, y), space.F(y, y, x)
    gap = alg.operator_norm(lhs - rhs)
    if gap > tol.eps:
        return Witness(points, lhs, rhs, gap)
    return None


def eval_admissible(space, points, tol, generators, classify=True):
    x, y, z = points
    c = space.C(x, y, z)
    if alg.is_admissible_control_value(c, generators, tol):
        return None
    margin = alg.admissibility_margin(c, generators, tol)
    return Witness(points, space.algebra.unit(), c, margin, detail="C(x,y,z) not central or not >= unit")


def eval_zero_implies_equal(space, points, tol, generators=None, classify=True):
    x, y, z = points
    v = space.F(x, y, z)
    if alg.operator_norm(v) > tol.eps:
        return None
    sep = _separation(space, points)
    if sep <= space.point_eq_tol:
        return None
    return Witness(points, v, space.algebra.zero(), sep, detail="F(x,y,z)=0 for unequal points")


EVALUATORS = {
    IDENTITY: (3, eval_identity),
    ORDER: (3, eval_order),
    CONTROLLED_TRIANGLE: (4, eval_triangle),
    SYMMETRY: (2, eval_symmetry),
    CONTROL_ADMISSIBLE: (3, eval_admissible),
    ZERO_IMPLIES_EQUAL: (3, eval_zero_implies_equal),
    EXTENDED: (4, eval_extended),
}


def control_generators(space: SpaceInstance, seed: int, n_random: int = 3) -> list:
    """Basis elements plus a few seeded random elements to test centrality against."""
    rng = np.random.default_rng([seed, 0xC0])
    return alg.basis(space.algebra) + [alg.random_element(space.algebra, rng) for _ in range(n_random)]


def _run(space, axiom_id, n_samples, seed, tol, max_witnesses) -> AxiomReport:
    arity, evaluate = EVALUATORS[axiom_id]
    tuples = draw_tuples(space, arity, n_samples, seed)
    generators = control_generators(space, seed) if axiom_id == CONTROL_ADMISSIBLE else None
    witnesses = []
    violations = 0
    for pts in tuples:
        w = evaluate(space, pts, tol, generators, len(witnesses) < max_witnesses)
        if w is not None:
            violations += 1
            if len(witnesses) < max_witnesses:
                witnesses.append(w)
    values = {"violations": violations, "samples_checked": len(tuples)}
    if witnesses:
        values["max_margin"] = max(w.margin for w in witnesses)
    return AxiomReport(axiom_id, len(tuples), not witnesses, witnesses, violations, values)


def check_axiom_identity(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    """Flag unequal triples whose four self/mixed metric values coincide."""
    return _run(space, IDENTITY, n_samples, seed, tol, max_witnesses)


def check_axiom_order(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    """Check 0 <= F(x,x,x) <= F(x,x,y) <= F(x,y,z); a witness records the first broken link."""
    return _run(space, ORDER, n_samples, seed, tol, max_witnesses)


def check_axiom_controlled_triangle(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    return _run(space, CONTROLLED_TRIANGLE, n_samples, seed, tol, max_witnesses)


def check_symmetry(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    return _run(space, SYMMETRY, n_samples, seed, tol, max_witnesses)


def check_control_admissibility(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    return _run(space, CONTROL_ADMISSIBLE, n_samples, seed, tol, max_witnesses)


def check_zero_implies_equal(space, n_samples=1000, seed=0, tol=DEFAULT_TOL, max_witnesses=MAX_WITNESSES):
    return _run(space, ZERO_IMPLIES_EQUAL, n_samples, seed, tol, max_witnesses)


CHECKS = {
    IDENTITY: check_axiom_identity,
    ORDER: check_axiom_order,
    CONTROLLED_TRIANGLE: check_axiom_controlled_triangle,
    SYMMETRY: check_symmetry,
    CONTROL_ADMISSIBLE: check_control_admissibility,
    ZERO_IMPLIES_EQUAL: check_zero_implies_equal,
}


def check_all(space, n_samples=1000, seed=0, tol=DEFAULT_TOL) -> list:
    return [CHECKS[a](space, n_samples, seed, tol) for a in AXIOM_IDS]


def refute_extended(space, n_samples=1000, seed=0, tol=DEFAULT_TOL) -> Optional[Witness]:
    """First tuple where the single-control (extended) triangle inequality fails, if any."""
    for pts in draw_tuples(space, 4, n_samples, seed):
        w = eval_extended(space, pts, tol)
        if w is not None:
            return w
    return None


def recheck(space: SpaceInstance, axiom_id: str, witness: Witness, tol=DEFAULT_TOL, seed=0) -> Optional[Witness]:
    """Re-evaluate an axiom at a witness's points."""
    _, evaluate = EVALUATORS[axiom_id]
    generators = control_generators(space, seed) if axiom_id == CONTROL_ADMISSIBLE else None
    return evaluate(space, witness.points, tol, generators)


def finite_space(points: Sequence, algebra: AlgebraDescriptor, metric: Evaluator, control: Evaluator, **kw):
    """A space over an explicit finite point set, sampled uniformly."""
    pts = np.array([as_point(p) for p in points], dtype=float)

    def sampler(rng, count):
        return pts[rng.integers(len(pts), size=count)]

    def contains(p):
        return any(max(abs(a - b) for a, b in zip(p, q)) <= 1e-12 for q in pts.tolist())

    return SpaceInstance(algebra, sampler, metric, control, contains=contains, **kw)
