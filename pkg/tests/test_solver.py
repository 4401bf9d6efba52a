import dataclasses

import pytest
from hypothesis import given, strategies as st

from cstar_fc import contraction as ct
from cstar_fc import solver as so
from cstar_fc.algebra import Tolerance, matrix_algebra
from cstar_fc.errors import NormBoundViolated
from cstar_fc.space import finite_space

from oracles import interval_cauchy_bound

M2 = matrix_algebra(2)
TOL = Tolerance()


class TestPicard:
    def test_fixed_point_from_right_end(self, interval_space, interval_spec):
        rep = so.picard(interval_space, interval_spec, 4, TOL)
        assert rep.converged
        assert abs(rep.fixed_point[0]) <= 1e-9
        assert rep.residual <= 1e-9
        # 2 * 4 / 8**k <= 1e-9 first holds at k = 11
        assert rep.iterations == 12
        assert len(rep.orbit_distances) == rep.iterations

    def test_already_fixed(self, interval_space, interval_spec):
        rep = so.picard(interval_space, interval_spec, 0)
        assert rep.iterations == 1
        assert rep.residual == 0.0
        assert rep.converged

    def test_ratio_is_one_eighth(self, interval_space, interval_spec):
        d = so.picard(interval_space, interval_spec, 4).orbit_distances
        for a, b in zip(d, d[1:]):
            assert b / a == pytest.approx(1 / 8, rel=1e-14)

    def test_residual_reevaluated(self, interval_space, interval_spec):
        rep = so.picard(interval_space, interval_spec, 2.5)
        x = rep.fixed_point
        assert so.distance(interval_space, x, interval_spec.T(x)) <= TOL.eps

    def test_non_convergent(self, interval_space, interval_spec):
        spec = dataclasses.replace(interval_spec, map=ct.identity_map)
        rep = so.picard(interval_space, spec, 1.0, max_iter=50)
        assert not rep.converged
        assert rep.iterations == 50

    def test_deterministic(self, interval_space, interval_spec):
        assert so.picard(interval_space, interval_spec, 3.3) == so.picard(interval_space, interval_spec, 3.3)


class TestCauchyBound:
    def test_oracle_value(self, interval_space, interval_spec):
        bound, observed = interval_cauchy_bound(4, 2, 3)
        assert float(bound) == pytest.approx(1.3271217322080702, abs=1e-15)
        rep = so.cauchy_bound_check(interval_space, interval_spec, 4, 2, 3)
        assert rep.bound == pytest.approx(float(bound), abs=1e-12)
        assert rep.observed == pytest.approx(float(observed), abs=1e-15)
        assert rep.dominated

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("q", range(1, 7))
    def test_matches_exact_oracle(self, interval_space, interval_spec, n, q):
        bound, observed = interval_cauchy_bound(4, n, q)
        rep = so.cauchy_bound_check(interval_space, interval_spec, 4, n, q)
        assert rep.bound == pytest.approx(float(bound), rel=1e-12)
        assert rep.observed == pytest.approx(float(observed), rel=1e-12)

    @given(st.floats(0, 4), st.integers(1, 8))
    def test_single_step(self, interval_space, interval_spec, x0, n):
        rep = so.cauchy_bound_check(interval_space, interval_spec, x0, n, 1)
        assert rep.observed == so.distance(interval_space, *ct.orbit(interval_spec, x0, n + 1)[n:n + 2])
        assert rep.dominated

    def test_singleton_zero(self):
        space = finite_space([1.0], M2, lambda x, y, z: M2.zero(), lambda x, y, z: M2.unit())
        spec = ct.ContractionSpec(ct.identity_map, M2.zero(), M2.zero(), M2.zero(), domain=space.contains)
        rep = so.cauchy_bound_check(space, spec, 1.0, 1, 1)
        assert rep.observed == 0.0 and rep.bound == 0.0 and rep.dominated

    def test_rejects_non_contraction(self, interval_space, interval_spec):
        spec = dataclasses.replace(interval_spec, P=M2.unit())
        with pytest.raises(NormBoundViolated):
            so.cauchy_bound_check(interval_space, spec, 4, 1, 1)


class TestUniqueness:
    def test_spread_over_starts(self, interval_space, interval_spec):
        rep = so.uniqueness_probe(interval_space, interval_spec, [0, 1, 2.5, 4])
        assert rep.passed
        assert rep.spread <= 1e-8
        assert all(abs(p[0]) <= 1e-9 for p in rep.fixed_points)

    def test_single_start(self, interval_space, interval_spec):
        assert so.uniqueness_probe(interval_space, interval_spec, [3]).passed

    def test_identity_map_violates_hypotheses(self, interval_space, interval_spec):
        spec = dataclasses.replace(interval_spec, map=ct.identity_map, P=M2.unit())
        rep = so.uniqueness_probe(interval_space, spec, [1, 2.5], max_iter=20)
        assert not rep.passed
        assert rep.failing_start == (1.0,)
        assert rep.fixed_points == [(1.0,), (2.5,)]

    def test_requires_starts(self, interval_space, interval_spec):
        with pytest.raises(ValueError):
            so.uniqueness_probe(interval_space, interval_spec, [])


@given(st.floats(0, 4), st.floats(0.05, 4))
def test_geometric_decay(x0, step):
    from cstar_fc.families import ExampleConfig, build_example_interval

    space, spec = build_example_interval(ExampleConfig("interval_m2", grid_step=step))
    s2 = ct.contraction_ratio(spec)
    rep = so.picard(space, spec, x0)
    xs = ct.orbit(spec, x0, rep.iterations)
    assert ct.verify_contraction_inequality(space, spec, pairs=list(zip(xs, xs[1:]))).passed
    d = rep.orbit_distances
    for a, b in zip(d, d[1:]):
        assert b <= s2 * a + 1e-10
