"""Hexagonal multi-cell deployment with seeded user placement.

Cells are pointy-top hexagons of circumradius ``R`` laid out on a lattice
whose neighbouring centres are ``sqrt(3)*R`` apart, numbered in spiral order:
the centre cell, then rings of 6, 12, 18, ... cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

GENERATOR_ID = "numpy.random.PCG64"
MAX_RESAMPLES = 10**6

# axial (q, r) unit steps, counter-clockwise from +x
_AXIAL_DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


@dataclass(frozen=True)
class DeploymentConfig:
    cell_count: int = 57
    cell_radius: float = 1000.0  # m
    user_count: int = 500
    min_user_distance: float = 10.0  # m
    rng_seed: int = 0

    def __post_init__(self):
        if self.cell_count < 1:
            raise ValueError("cell_count must be >= 1")
        if self.user_count < 1:
            raise ValueError("user_count must be >= 1")
        if not 0 < self.min_user_distance < self.cell_radius:
            raise ValueError("need 0 < min_user_distance < cell_radius")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class Deployment:
    """Cell centres and users; each user is served by the BS of its own cell.

    Attributes
    ----------
    cells : ndarray, shape (cell_count, 2)
        Cell centres in metres, spiral order.
    user_cell : ndarray of int, shape (user_count,)
    user_xy : ndarray, shape (user_count, 2)
        Absolute user positions in metres.
    distance : ndarray, shape (user_count,)
        BS-user distances, derived from the positions.
    """

    config: DeploymentConfig
    cells: np.ndarray
    user_cell: np.ndarray
    user_xy: np.ndarray
    distance: np.ndarray = field(init=False)

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=float).reshape(-1, 2)
        user_cell = np.asarray(self.user_cell, dtype=np.int64).reshape(-1)
        user_xy = np.asarray(self.user_xy, dtype=float).reshape(-1, 2)
        if len(user_cell) == 0:
            raise ValueError("a deployment needs at least one user")
        if len(user_cell) != len(user_xy):
            raise ValueError("user_cell and user_xy lengths differ")
        if user_cell.min() < 0 or user_cell.max() >= len(cells):
            raise ValueError("user_cell index out of range")
        offsets = user_xy - cells[user_cell]
        distance = np.hypot(offsets[:, 0], offsets[:, 1])
        for name, arr in (("cells", cells), ("user_cell", user_cell),
                          ("user_xy", user_xy), ("distance", distance)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def user_count(self) -> int:
        return len(self.user_cell)

    def __eq__(self, other):
        if not isinstance(other, Deployment):
            return NotImplemented
        return (
            self.config == other.config
            and np.array_equal(self.cells, other.cells)
            and np.array_equal(self.user_cell, other.user_cell)
            and np.array_equal(self.user_xy, other.user_xy)
        )

    __hash__ = None


def ring_sizes(cell_count: int) -> list[int]:
    """Number of cells taken from each ring (0, 1, 2, ...) for ``cell_count`` cells."""
    sizes = []
    remaining = cell_count
    k = 0
    while remaining > 0:
        full = 1 if k == 0 else 6 * k
        sizes.append(min(full, remaining))
        remaining -= sizes[-1]
        k += 1
    return sizes


def spiral_axial(cell_count: int) -> list[tuple[int, int]]:
    """Axial lattice coordinates of the first ``cell_count`` cells in spiral order."""
    coords = [(0, 0)]
    k = 1
    while len(coords) < cell_count:
        # start of ring k: k steps along direction 4, then walk the six sides
        q, r = k * _AXIAL_DIRECTIONS[4][0], k * _AXIAL_DIRECTIONS[4][1]
        for dq, dr in _AXIAL_DIRECTIONS:
            for _ in range(k):
                coords.append((q, r))
                q, r = q + dq, r + dr
        k += 1
    return coords[:cell_count]


def generate_hex_grid(cell_count: int, cell_radius: float) -> np.ndarray:
    """Planar cell centres (m), shape ``(cell_count, 2)``."""
    if cell_count < 1:
        raise ValueError("cell_count must be >= 1")
    axial = np.array(spiral_axial(cell_count), dtype=float)
    q, r = axial[:, 0], axial[:, 1]
    spacing = math.sqrt(3.0) * cell_radius
    x = spacing * (q + 0.5 * r)
    y = 1.5 * cell_radius * r
    return np.column_stack([x, y])


def in_hexagon(dx, dy, cell_radius: float, slack: float = 0.0):
    """True where the offset ``(dx, dy)`` lies in a pointy-top hexagon of circumradius R.

    ``slack`` widens the hexagon by a relative amount, for testing points
    that sit on the boundary up to rounding.
    """
    apothem = 0.5 * math.sqrt(3.0) * cell_radius * (1.0 + slack)
    s = 0.5 * math.sqrt(3.0)
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    return (
        (np.abs(dx) <= apothem)
        & (np.abs(0.5 * dx + s * dy) <= apothem)
        & (np.abs(-0.5 * dx + s * dy) <= apothem)
    )


def place_users(cfg: DeploymentConfig) -> Deployment:
    """Drop ``cfg.user_count`` users uniformly over randomly chosen cells.

    Each user picks a cell uniformly, then a position uniform over that
    cell's hexagon by rejection from the bounding box, redrawn until it is at
    least ``min_user_distance`` from the BS. Draws come from a single PCG64
    stream seeded with ``cfg.rng_seed``.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.rng_seed))
    cells = generate_hex_grid(cfg.cell_count, cfg.cell_radius)
    R = cfg.cell_radius
    half_w = 0.5 * math.sqrt(3.0) * R

    user_cell = np.empty(cfg.user_count, dtype=np.int64)
    user_xy = np.empty((cfg.user_count, 2))
    for i in range(cfg.user_count):
        c = int(rng.integers(cfg.cell_count))
        cx, cy = cells[c]
        for _ in range(MAX_RESAMPLES):
            x = cx + rng.uniform(-half_w, half_w)
            y = cy + rng.uniform(-R, R)
            # test the offset exactly as Deployment will recompute it
            dx, dy = x - cx, y - cy
            d = math.hypot(dx, dy)
            if cfg.min_user_distance <= d <= R and in_hexagon(dx, dy, R):
                break
        else:
            raise RuntimeError(f"user {i}: no valid position after {MAX_RESAMPLES} draws")
        user_cell[i] = c
        user_xy[i] = x, y
    return Deployment(cfg, cells, user_cell, user_xy)


def distances(dep: Deployment) -> np.ndarray:
    """BS-user distances (m) in user index order."""
    return dep.distance.copy()


def write_deployment_csv(dep: Deployment, stream) -> None:
    """Write ``user_id,cell_id,x_m,y_m,distance_m`` rows with a ``#`` metadata line."""
    c = dep.config
    stream.write(
        f"# seed={c.rng_seed} generator={GENERATOR_ID} cell_count={c.cell_count} "
        f"cell_radius_m={c.cell_radius!r} user_count={c.user_count} "
        f"min_user_distance_m={c.min_user_distance!r}\n"
    )
    stream.write("user_id,cell_id,x_m,y_m,distance_m\n")
    for i in range(dep.user_count):
        x, y = dep.user_xy[i]
        stream.write(
            f"{i},{dep.user_cell[i]},{x:.16e},{y:.16e},{dep.distance[i]:.16e}\n"
        )
