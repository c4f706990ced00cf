"""Adaptive bandwidth/delay selection under availability caps.

Each user takes ``min(cap, level)`` where ``level`` is either its own optimum
(continuous strategy) or the optimum of the distance ring it falls in
(n-step strategy, rings of width R/n, level solved by default at the ring's
outer edge).
Bandwidth allocations are evaluated at unit delay, delay allocations at unit
bandwidth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deployment import Deployment, DeploymentConfig
from .model import SystemParams, channel_gain, energy_vs_bandwidth, energy_vs_delay
from .optimizer import Kind, SolverConfig, _check_kind, optimal


@dataclass(frozen=True)
class AvailabilityCaps:
    available_bandwidth: float | None = None  # W_a, Hz per bit/s
    acceptable_delay: float | None = None  # t_a, s per bit

    def cap(self, kind: Kind) -> float:
        value = self.available_bandwidth if kind == "bandwidth" else self.acceptable_delay
        if value is None or not value > 0:
            name = "available_bandwidth" if kind == "bandwidth" else "acceptable_delay"
            raise ValueError(f"{name} must be set and positive")
        return float(value)


@dataclass(frozen=True)
class StepStrategy:
    """Quantized (or continuous, ``n_steps=None``) optimal levels by distance ring."""

    kind: str
    n_steps: int | None
    cell_radius: float
    levels: tuple[float, ...] = ()

    def __post_init__(self):
        _check_kind(self.kind)
        if self.n_steps is None:
            if self.levels:
                raise ValueError("a continuous strategy carries no levels")
        else:
            if self.n_steps < 1:
                raise ValueError("n_steps must be >= 1")
            if len(self.levels) != self.n_steps:
                raise ValueError("levels must have exactly n_steps entries")

    @property
    def continuous(self) -> bool:
        return self.n_steps is None

    @property
    def ring_width(self) -> float:
        return 0.0 if self.n_steps is None else self.cell_radius / self.n_steps

    @classmethod
    def make_continuous(cls, kind: Kind, cell_radius: float) -> "StepStrategy":
        return cls(kind=kind, n_steps=None, cell_radius=cell_radius)


@dataclass(frozen=True, eq=False)
class Allocation:
    """Per-user choice, energy per bit (J/bit) and whether the cap was binding."""

    kind: str
    chosen: np.ndarray
    energy: np.ndarray
    capped: np.ndarray

    def __len__(self):
        return len(self.energy)


def representative_distances(n: int, cfg: DeploymentConfig, representative: str = "outer"):
    """Distance at which each ring's level is solved.

    ``"outer"`` uses ``R*i/n``, ``"midpoint"`` ``R*(i-0.5)/n`` and ``"inner"``
    ``R*(i-1)/n``; the inner rule is floored at ``min_user_distance``.
    """
    R = cfg.cell_radius
    i = np.arange(1, n + 1)
    if representative == "outer":
        return R * i / n
    if representative == "midpoint":
        return R * (i - 0.5) / n
    if representative == "inner":
        return np.maximum(R * (i - 1) / n, cfg.min_user_distance)
    raise ValueError(f"unknown representative rule {representative!r}")


def step_levels(
    kind: Kind,
    n: int,
    cfg: DeploymentConfig,
    params: SystemParams,
    solver: SolverConfig | None = None,
    representative: str = "outer",
) -> StepStrategy:
    """One optimal bandwidth or delay per distance ring ``i = 1..n``.

    With the default outer-edge rule every user in a ring receives a level at
    least as large as its own optimum, so ``n = 1`` gives everyone the
    cell-edge optimum.
    """
    _check_kind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    levels = tuple(
        optimal(kind, channel_gain(float(d), params), params, solver).value
        for d in representative_distances(n, cfg, representative)
    )
    return StepStrategy(kind=kind, n_steps=n, cell_radius=cfg.cell_radius, levels=levels)


def assign_step(d, n: int, R: float):
    """Ring index ``i`` (1-based), the smallest integer with ``d <= R*i/n``."""
    d_arr = np.asarray(d, dtype=float)
    if np.any(~(d_arr > 0)):
        raise ValueError("distance must be positive")
    if np.any(d_arr > R):
        raise ValueError(f"distance exceeds cell radius {R!r}")
    i = np.ceil(d_arr * n / R).astype(np.int64)
    i = np.clip(i, 1, n)
    # guard the boundaries against rounding in d*n/R
    i = np.where((i > 1) & (d_arr <= R * (i - 1) / n), i - 1, i)
    i = np.where((i < n) & (d_arr > R * i / n), i + 1, i)
    return int(i) if i.ndim == 0 else i


def user_levels(
    dep: Deployment, strat: StepStrategy, params: SystemParams, solver: SolverConfig | None = None
) -> np.ndarray:
    """Level each user would take with no cap."""
    d = dep.distance
    if strat.continuous:
        gains = channel_gain(d, params)
        return np.array([optimal(strat.kind, float(g), params, solver).value for g in gains])
    rings = assign_step(d, strat.n_steps, strat.cell_radius)
    return np.asarray(strat.levels)[rings - 1]


def allocate(kind: Kind, levels, cap: float, gains, params: SystemParams) -> Allocation:
    """Apply the min(cap, level) rule and evaluate each user's energy."""
    _check_kind(kind)
    levels = np.asarray(levels, dtype=float)
    chosen = np.minimum(cap, levels)
    curve = energy_vs_bandwidth if kind == "bandwidth" else energy_vs_delay
    energy = np.asarray(curve(chosen, gains, params), dtype=float).reshape(levels.shape)
    return Allocation(kind=kind, chosen=chosen, energy=energy, capped=cap < levels)


def _adaptive(kind, dep, caps, strat, params, solver):
    if strat.kind != kind:
        raise ValueError(f"strategy is for {strat.kind}, not {kind}")
    cap = caps.cap(kind)
    levels = user_levels(dep, strat, params, solver)
    return allocate(kind, levels, cap, channel_gain(dep.distance, params), params)


def adaptive_bandwidth(
    dep: Deployment,
    caps: AvailabilityCaps,
    strat: StepStrategy,
    params: SystemParams,
    solver: SolverConfig | None = None,
) -> Allocation:
    """Per-user bandwidth ``min(W_a, level)``, energy evaluated at unit delay."""
    return _adaptive("bandwidth", dep, caps, strat, params, solver)


def adaptive_delay(
    dep: Deployment,
    caps: AvailabilityCaps,
    strat: StepStrategy,
    params: SystemParams,
    solver: SolverConfig | None = None,
) -> Allocation:
    """Per-user delay ``min(t_a, level)``, energy evaluated at unit bandwidth."""
    return _adaptive("delay", dep, caps, strat, params, solver)


def mean_energy(alloc: Allocation) -> float:
    """Mean energy per bit over users; ``math.fsum`` makes it order independent."""
    if len(alloc) == 0:
        raise ValueError("allocation has no users")
    return math.fsum(alloc.energy.tolist()) / len(alloc)
