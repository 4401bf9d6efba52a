"""Tabulate observed orbit distances against the Cauchy majorant on interval_m2.

    python scripts/bound_table.py [--x0 4] [--n 6] [--q 6] [--factor 0.125]
"""
import argparse

from cstar_fc import contraction as ct
from cstar_fc import solver as so
from cstar_fc.families import INTERVAL_M2, ExampleConfig, build_example_interval


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--x0", type=float, default=4.0)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--q", type=int, default=6)
    parser.add_argument("--factor", type=float, default=0.125, help="scale factor of the self-map")
    args = parser.parse_args()

    space, spec = build_example_interval(ExampleConfig(INTERVAL_M2))
    spec = ct.ContractionSpec(ct.scale_map(args.factor), spec.P, spec.Q, spec.R, domain=space.contains)
    print(f"map scale({args.factor}), ||S||^2 = {ct.contraction_ratio(spec)!r}, x0 = {args.x0}")
    print(f"{'n':>3} {'q':>3} {'observed':>24} {'bound':>24} {'margin':>12}")
    worst = None
    for n in range(1, args.n + 1):
        for q in range(1, args.q + 1):
            rep = so.cauchy_bound_check(space, spec, args.x0, n, q)
            worst = rep.margin if worst is None else min(worst, rep.margin)
            flag = "" if rep.dominated else "  VIOLATED"
            print(f"{n:>3} {q:>3} {rep.observed:>24.17g} {rep.bound:>24.17g} {rep.margin:>12.4g}{flag}")
    print(f"min margin {worst:.6g}")


if __name__ == "__main__":
    main()
