"""Print the worked values for the two bundled example spaces.

    python scripts/reproduce_examples.py [--samples N] [--seed S]
"""
import argparse
import time

from cstar_fc import algebra as alg
from cstar_fc import contraction as ct
from cstar_fc import solver as so
from cstar_fc import space as sp
from cstar_fc.families import INTERVAL_M2, NATURALS_R2, ExampleConfig, build_example_interval, build_example_naturals


def naturals_section(n_samples, seed):
    space = build_example_naturals(ExampleConfig(NATURALS_R2))
    pts = ((1.0,), (2.0,), (3.0,), (0.0,))
    lhs, rhs = sp.extended_sides(space, pts)
    print("naturals_r2")
    print(f"  F(1,2,3) = {lhs.tolist()}")
    print(f"  extended rhs at a=0 = {rhs.tolist()}")
    w = sp.refute_extended(space, n_samples, seed)
    print(f"  refute_extended -> {None if w is None else w.points}")
    for rep in sp.check_all(space, n_samples, seed):
        first = rep.witnesses[0].points if rep.witnesses else "-"
        print(f"  {rep.axiom_id:<20} passed={rep.passed!s:<5} violations={rep.violations:<6} first={first}")


def interval_section(n_samples, seed):
    space, spec = build_example_interval(ExampleConfig(INTERVAL_M2))
    print("interval_m2")
    print(f"  ||P|| = {alg.operator_norm(spec.P)!r}")
    norm = ct.coefficient_norm_condition(spec).computed_values
    print(f"  ||P||^2+||Q||^2+||R||^2 = {norm['sum']!r}, ||S||^2 = {norm['S_norm_sq']!r}")
    sup = ct.verify_suplim(space, spec, 4).computed_values
    print(f"  suplim from x0=4: {sup['suplim_estimate']!r} (threshold {sup['threshold']!r})")
    lim = ct.verify_control_limits(space, spec, 0, 4).computed_values
    print(f"  control limits at x=0: {lim['limit_left']!r}, {lim['limit_right']!r}")
    for x0 in (0, 1, 2.5, 4):
        fp = so.picard(space, spec, x0)
        print(f"  picard x0={x0}: x*={fp.fixed_point[0]:.3e} iterations={fp.iterations} residual={fp.residual:.3e}")
    for rep in sp.check_all(space, n_samples, seed):
        first = rep.witnesses[0].points if rep.witnesses else "-"
        print(f"  {rep.axiom_id:<20} passed={rep.passed!s:<5} violations={rep.violations:<6} first={first}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    t0 = time.perf_counter()
    naturals_section(args.samples, args.seed)
    interval_section(args.samples, args.seed)
    print(f"done in {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
