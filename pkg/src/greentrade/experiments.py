"""Numerical experiments: the unit-delay/unit-bandwidth tables, the joint
energy surface, per-distance curves and availability sweeps over a deployment.

Every experiment returns a :class:`ResultTable` carrying enough metadata to
re-run it, and can be written as CSV.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .deployment import GENERATOR_ID, Deployment
from .model import (
    ResourcePoint,
    SystemParams,
    channel_gain,
    energy_grid,
    total_energy_per_bit,
    transmit_energy_grid,
)
from .optimizer import Kind, SolverConfig, _check_kind
from .strategy import StepStrategy, allocate, mean_energy, step_levels, user_levels

# Gain implied by the tabulated unit-delay/unit-bandwidth energies: N0/g = 2e-7.
TABLE_GAIN = 4.0e-14
TABLE_VALUES = tuple(round(0.1 * k, 1) for k in range(1, 11))

SURFACE_WINDOWS = {
    "full": (0.1, 1.0),
    "zoom-low": (0.3, 0.5),
    "zoom-high": (0.5, 1.0),
}
CURVE_DISTANCES = (600.0, 800.0, 1000.0)
DEFAULT_STEPS = (2, 3, 4, 5, 10, 1000)


def params_hash(params: SystemParams) -> str:
    blob = json.dumps(dataclasses.asdict(params), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class ResultTable:
    columns: list[str]
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise ValueError("rows must be a 2-D array with one entry per column")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self, stream) -> None:
        """``#``-prefixed metadata lines, a header row, then 17-significant-digit cells."""
        for key in sorted(self.metadata):
            stream.write(f"# {key}={_meta_str(self.metadata[key])}\n")
        stream.write(",".join(self.columns) + "\n")
        for row in self.rows:
            stream.write(",".join(f"{v:.16e}" for v in row) + "\n")


def _meta_str(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _base_metadata(params: SystemParams, experiment: str) -> dict:
    return {
        "experiment": experiment,
        "params": dataclasses.asdict(params),
        "params_hash": params_hash(params),
    }


def table1(params: SystemParams, g: float = TABLE_GAIN) -> ResultTable:
    """Energy per bit at ``x = 0.1 .. 1.0`` along both axes.

    Columns: ``x``, ``energy_bandwidth_t1`` (W = x, t = 1) and
    ``energy_delay_w1`` (W = 1, t = x).
    """
    if not g > 0:
        raise ValueError("gain must be positive")
    rows = []
    for x in TABLE_VALUES:
        e_w = total_energy_per_bit(ResourcePoint(x, 1.0), g, params).e_total
        e_t = total_energy_per_bit(ResourcePoint(1.0, x), g, params).e_total
        rows.append((x, e_w, e_t))
    meta = _base_metadata(params, "table1")
    meta["gain"] = repr(g)
    return ResultTable(["x", "energy_bandwidth_t1", "energy_delay_w1"], rows, meta)


def energy_surface(
    params: SystemParams,
    g: float,
    bandwidths: Sequence[float] | None = None,
    delays: Sequence[float] | None = None,
    window: str | None = None,
    points: int = 21,
) -> ResultTable:
    """Total energy per bit over a (W, t) grid, one row per grid point.

    Give explicit ``bandwidths``/``delays`` or a named ``window`` from
    :data:`SURFACE_WINDOWS` sampled with ``points`` values per axis.
    """
    if window is not None:
        lo, hi = SURFACE_WINDOWS[window]
        axis = np.linspace(lo, hi, points)
        bandwidths = axis if bandwidths is None else bandwidths
        delays = axis if delays is None else delays
    if bandwidths is None or delays is None:
        raise ValueError("give bandwidths and delays, or a window")
    W = np.asarray(bandwidths, dtype=float)
    t = np.asarray(delays, dtype=float)
    if W.size == 0 or t.size == 0:
        raise ValueError("empty surface range")
    WW, TT = np.meshgrid(W, t, indexing="ij")
    E = energy_grid(WW, TT, g, params)
    rows = np.column_stack([WW.ravel(), TT.ravel(), E.ravel()])
    meta = _base_metadata(params, "surface")
    meta.update(gain=repr(g), window=window or "custom")
    return ResultTable(["bandwidth", "delay", "energy"], rows, meta)


def surface_argmin(table: ResultTable) -> tuple[float, float, float]:
    """(W, t, energy) of the smallest cell of an :func:`energy_surface` table."""
    i = int(np.argmin(table.column("energy")))
    W, t, e = table.rows[i]
    return float(W), float(t), float(e)


def distance_curves(
    params: SystemParams,
    axis: str,
    values: Sequence[float],
    distances: Sequence[float] = CURVE_DISTANCES,
) -> ResultTable:
    """Transmit-only (``tp_d*``) and total (``op_d*``) energy curves per distance.

    ``axis`` is ``"W"`` (bandwidth, t = 1) or ``"t"`` (delay, W = 1).
    """
    if axis not in ("W", "t"):
        raise ValueError("axis must be 'W' or 't'")
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("empty curve range")
    W, t = (x, 1.0) if axis == "W" else (1.0, x)
    columns = ["x"]
    data = [x]
    for d in distances:
        g = channel_gain(d, params)
        tag = f"d{d:g}"
        tp = np.broadcast_to(transmit_energy_grid(W, t, g, params.noise_psd), x.shape)
        op = energy_grid(W, t, g, params)
        columns += [f"tp_{tag}", f"op_{tag}"]
        data += [tp, op]
    meta = _base_metadata(params, f"curves-{axis}")
    meta["distances_m"] = list(distances)
    return ResultTable(columns, np.column_stack(data), meta)


@dataclass(frozen=True)
class SweepSpec:
    """Cap values and the step counts to compare (``None`` = continuous)."""

    caps: tuple[float, ...]
    steps: tuple[int | None, ...] = DEFAULT_STEPS + (None,)
    representative: str = "outer"

    def __post_init__(self):
        if len(self.caps) == 0:
            raise ValueError("sweep needs at least one cap value")
        if any(not c > 0 for c in self.caps):
            raise ValueError("cap values must be positive")
        if len(self.steps) == 0:
            raise ValueError("sweep needs at least one strategy")

    @classmethod
    def logspace(cls, lo: float = 1e-2, hi: float = 1e1, count: int = 200, **kwargs):
        if not 0 < lo < hi or count < 2:
            raise ValueError("need 0 < lo < hi and count >= 2")
        return cls(caps=tuple(np.geomspace(lo, hi, count).tolist()), **kwargs)


def _step_label(n):
    return "continuous" if n is None else f"n{n}"


def availability_sweep(
    kind: Kind,
    dep: Deployment,
    spec: SweepSpec,
    params: SystemParams,
    solver: SolverConfig | None = None,
) -> ResultTable:
    """Mean energy per bit versus the bandwidth (or delay) cap, one column per strategy."""
    _check_kind(kind)
    gains = channel_gain(dep.distance, params)
    columns = ["cap"]
    data = [np.asarray(spec.caps)]
    for n in spec.steps:
        if n is None:
            strat = StepStrategy.make_continuous(kind, dep.config.cell_radius)
        else:
            strat = step_levels(kind, n, dep.config, params, solver, spec.representative)
        levels = user_levels(dep, strat, params, solver)
        col = [mean_energy(allocate(kind, levels, cap, gains, params)) for cap in spec.caps]
        columns.append(_step_label(n))
        data.append(np.asarray(col))
    meta = _base_metadata(params, f"sweep-{kind}")
    c = dep.config
    meta.update(
        seed=c.rng_seed,
        generator=GENERATOR_ID,
        deployment=dataclasses.asdict(c),
        steps=[_step_label(n) for n in spec.steps],
        representative=spec.representative,
        solver=dataclasses.asdict(solver or SolverConfig()),
        fixed="t=1" if kind == "bandwidth" else "W=1",
    )
    return ResultTable(columns, np.column_stack(data), meta)
