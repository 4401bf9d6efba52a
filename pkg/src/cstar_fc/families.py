"""Built-in spaces: the R^2-valued space on the naturals and the M_2(R)-valued space on [0, 4]."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import componentwise_algebra, matrix_algebra
from .contraction import ContractionSpec, scale_map
from .errors import ConfigError, ConfigMismatch
from .space import SpaceInstance

NATURALS_R2 = "naturals_r2"
INTERVAL_M2 = "interval_m2"

INTERVAL_LO, INTERVAL_HI = 0.0, 4.0


@dataclass(frozen=True)
class ExampleConfig:
    family: str
    n_cap: int = 50
    grid_step: float = 0.25

    def __post_init__(self):
        if self.family not in (NATURALS_R2, INTERVAL_M2):
            raise ConfigMismatch(f"unknown family {self.family!r}")
        if self.n_cap < 3:
            raise ValueError(f"n_cap must be >= 3, got {self.n_cap}")
        if not 0 < self.grid_step <= 4:
            raise ValueError(f"grid_step must lie in (0, 4], got {self.grid_step}")


def build_example_naturals(config: ExampleConfig = ExampleConfig(NATURALS_R2)) -> SpaceInstance:
    """The space on {0, 1, 2, ...} (capped at ``n_cap`` for sampling) valued in R^2.

    F(x, y, z) = ((|x+z|^2 + |y+z|^2) / 2) in both components and
    C(x, y, z) = |x + y - z + 1| in both components.
    """
    if config.family != NATURALS_R2:
        raise ConfigMismatch(f"expected family {NATURALS_R2!r}, got {config.family!r}")
    a2 = componentwise_algebra(2)
    cap = config.n_cap

    def sampler(rng, count):
        return rng.integers(0, cap + 1, size=(count, 1)).astype(float)

    def metric(x, y, z):
        return a2.scalar(0.5 * (abs(x[0] + z[0]) ** 2 + abs(y[0] + z[0]) ** 2))

    def control(x, y, z):
        return a2.scalar(abs(x[0] + y[0] - z[0] + 1.0))

    def contains(p):
        return p[0] >= 0 and float(p[0]).is_integer()

    return SpaceInstance(
        a2,
        sampler,
        metric,
        control,
        contains=contains,
        # tuples checked before random ones: the control vanishes at (0,0,1),
        # (1,2,3,0) separates controlled from extended, and (0,0,0,1) is the
        # first quadruple in lexicographic order where the triangle fails
        probes=(
            ((0.0,), (0.0,), (1.0,)),
            ((1.0,), (2.0,), (3.0,), (0.0,)),
            ((0.0,), (0.0,), (0.0,), (1.0,)),
        ),
        name=NATURALS_R2,
        metadata={"n_cap": cap, "truncated": True},
    )


def interval_grid(step: float) -> np.ndarray:
    n = int(math.floor(INTERVAL_HI / step + 1e-9))
    grid = np.arange(n + 1) * step
    if grid[-1] < INTERVAL_HI - 1e-12:
        grid = np.append(grid, INTERVAL_HI)
    return grid


def build_example_interval(config: ExampleConfig = ExampleConfig(INTERVAL_M2)):
    """The space on [0, 4] valued in 2x2 real matrices, with T x = x / 8.

    F(x, y, z) = (max(x, z) + max(y, z)) I and C(x, y, z) = (2 + max(x, y, z)) I.
    Returns ``(space, spec)`` with P = I / (2 sqrt 2) and Q = R = 0.
    """
    if config.family != INTERVAL_M2:
        raise ConfigMismatch(f"expected family {INTERVAL_M2!r}, got {config.family!r}")
    m2 = matrix_algebra(2)
    grid = interval_grid(config.grid_step)

    def sampler(rng, count):
        on_grid = rng.random(count) < 0.5
        idx = rng.integers(len(grid), size=count)
        unif = rng.uniform(INTERVAL_LO, INTERVAL_HI, size=count)
        return np.where(on_grid, grid[idx], unif).reshape(count, 1)

    def metric(x, y, z):
        return m2.scalar(max(x[0], z[0]) + max(y[0], z[0]))

    def control(x, y, z):
        return m2.scalar(2.0 + max(x[0], y[0], z[0]))

    def contains(p):
        return INTERVAL_LO <= p[0] <= INTERVAL_HI

    space = SpaceInstance(
        m2,
        sampler,
        metric,
        control,
        contains=contains,
        name=INTERVAL_M2,
        metadata={"grid_step": config.grid_step, "grid_size": len(grid), "default_x0": [INTERVAL_HI]},
    )
    p = 1.0 / (2.0 * math.sqrt(2.0))
    spec = ContractionSpec(
        scale_map(1.0 / 8.0), m2.diag([p, p]), m2.zero(), m2.zero(), domain=contains, name="scale(0.125)"
    )
    return space, spec


def build_family(name: str, params: dict | None = None):
    """Resolve a family name from the registry into ``(space, default_spec_or_None)``."""
    params = dict(params or {})
    if name not in FAMILIES:
        raise ConfigError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    allowed = {"n_cap", "grid_step"}
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(f"unknown family_params {sorted(unknown)}")
    try:
        config = ExampleConfig(name, **params)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"family_params: {exc}") from exc
    return FAMILIES[name](config)


def _naturals(config):
    return build_example_naturals(config), None


FAMILIES = {
    NATURALS_R2: _naturals,
    INTERVAL_M2: build_example_interval,
}
