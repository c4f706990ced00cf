"""Optimal bandwidth and delay per bit.

Setting the derivative of the unit-delay (resp. unit-bandwidth) energy curve
to zero gives

    2**(1/x) * (1 - ln2/x) = 1 - g*P/N0

with ``P = P_cir`` for the bandwidth and ``P = P_cir + P_sb`` for the delay.
The left-hand side increases strictly from -inf to 1 on x > 0, so the root is
unique whenever ``P > 0`` and is found here by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import SystemParams, energy_vs_bandwidth, energy_vs_delay

Kind = Literal["bandwidth", "delay"]

_LN2 = math.log(2.0)
_EXP_LIMIT = 709.0


class UnboundedOptimumError(ValueError):
    """The energy curve is monotone decreasing, so no finite optimum exists."""


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    relative_tolerance: float = 1e-12
    max_iterations: int = 200
    bracket_growth_factor: float = 2.0

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise ValueError("relative_tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.bracket_growth_factor > 1:
            raise ValueError("bracket_growth_factor must be > 1")


@dataclass(frozen=True)
class OptimalPoint:
    """Solution of the stationarity condition.

    ``value`` is W_o or t_o; ``residual`` is the relative stationarity
    residual there (see :func:`stationarity_residual`).
    """

    kind: str
    value: float
    energy_at_optimum: float
    residual: float
    iterations: int


def _check_kind(kind):
    if kind not in ("bandwidth", "delay"):
        raise ValueError(f"kind must be 'bandwidth' or 'delay', got {kind!r}")


def _load_power(kind: Kind, params: SystemParams) -> float:
    if kind == "bandwidth":
        return params.circuit_power_per_hz
    return params.circuit_power_per_hz + params.static_power


def stationarity_rhs(kind: Kind, g: float, params: SystemParams) -> float:
    """Right-hand side ``(N0 - g*P)/N0`` of the optimality condition."""
    _check_kind(kind)
    return 1.0 - g * _load_power(kind, params) / params.noise_psd


def stationarity_lhs(x: float) -> float:
    """``2**(1/x) * (1 - ln2/x)``; returns -inf where 2**(1/x) overflows."""
    if not x > 0:
        raise ValueError("x must be positive")
    a = _LN2 / x
    if a > _EXP_LIMIT:
        return -math.inf
    return math.exp(a) * (1.0 - a)


def stationarity_residual(
    kind: Kind, x: float, g: float, params: SystemParams, relative: bool = False
) -> float:
    """LHS(x) - RHS for the bandwidth or delay optimality condition.

    Negative below the optimum, positive above it. With ``relative=True`` the
    difference is divided by ``1 + g*P/N0``, the magnitude of the terms near
    the root, so it can be compared against a relative tolerance.
    """
    _check_kind(kind)
    if not g > 0:
        raise ValueError("gain must be positive")
    if not x > 0:
        raise ValueError("x must be positive")
    a = _LN2 / x
    if a > _EXP_LIMIT:
        return -math.inf
    load = g * _load_power(kind, params) / params.noise_psd
    # expm1(a) - a*e**a == LHS - 1, kept separate from the g*P/N0 term
    r = (math.expm1(a) - a * math.exp(a)) + load
    return r / (1.0 + load) if relative else r


def _bisect(f, lo: float, hi: float, flo: float, fhi: float, tol: float, max_iter: int):
    # f(lo) < 0 < f(hi); stop once the bracket is narrower than tol relative
    # to x and |f| <= tol, or when lo and hi are adjacent floats
    best_x, best_f = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    it = 0
    while it < max_iter and (hi - lo > tol * hi or abs(best_f) > tol):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        it += 1
        fm = f(mid)
        if abs(fm) <= abs(best_f):
            best_x, best_f = mid, fm
        if fm < 0:
            lo = mid
        elif fm > 0:
            hi = mid
        else:
            break
    return best_x, best_f, it


def _solve(kind: Kind, g: float, params: SystemParams, cfg: SolverConfig) -> OptimalPoint:
    if not g > 0:
        raise ValueError("gain must be positive")
    power = _load_power(kind, params)
    if power <= 0:
        raise UnboundedOptimumError(
            f"optimal {kind} is unbounded: energy decreases monotonically when load power is zero"
        )
    load = g * power / params.noise_psd
    if not math.isfinite(load) or load == 0.0:
        raise UnboundedOptimumError(f"optimal {kind} is not representable (g*P/N0 = {load!r})")

    def f(x):
        return stationarity_residual(kind, x, g, params, relative=True)

    # geometric bracket expansion from [1e-6, 1]
    lo, hi = 1e-6, 1.0
    flo, fhi = f(lo), f(hi)
    grow = cfg.bracket_growth_factor
    steps = 0
    while fhi <= 0:
        if fhi == 0:
            return _point(kind, hi, g, params, fhi, steps)
        lo, flo = hi, fhi
        hi *= grow
        if not math.isfinite(hi):
            raise UnboundedOptimumError(f"no finite bracket for optimal {kind}")
        fhi = f(hi)
        steps += 1
    while flo >= 0:
        if flo == 0:
            return _point(kind, lo, g, params, flo, steps)
        hi, fhi = lo, flo
        lo /= grow
        if lo == 0.0:
            raise SolverError(f"no finite bracket for optimal {kind}")
        flo = f(lo)
        steps += 1

    tol = cfg.relative_tolerance
    x, fx, it = _bisect(f, lo, hi, flo, fhi, tol, cfg.max_iterations)
    if abs(fx) > tol:
        raise SolverError(
            f"optimal {kind} did not converge: |residual| = {abs(fx):.3g} > {tol:.3g}"
        )
    return _point(kind, x, g, params, fx, steps + it)


def _point(kind, x, g, params, residual, iterations):
    curve = energy_vs_bandwidth if kind == "bandwidth" else energy_vs_delay
    return OptimalPoint(
        kind=kind,
        value=float(x),
        energy_at_optimum=float(curve(x, g, params)),
        residual=float(residual),
        iterations=int(iterations),
    )


def optimal_bandwidth(g: float, params: SystemParams, cfg: SolverConfig | None = None) -> OptimalPoint:
    """Bandwidth per bit minimising energy per bit at unit delay.

    Raises
    ------
    UnboundedOptimumError
        If ``circuit_power_per_hz`` is zero.
    """
    return _solve("bandwidth", g, params, cfg or SolverConfig())


def optimal_delay(g: float, params: SystemParams, cfg: SolverConfig | None = None) -> OptimalPoint:
    """Delay per bit minimising energy per bit at unit bandwidth.

    Raises
    ------
    UnboundedOptimumError
        If ``circuit_power_per_hz + static_power`` is zero.
    """
    return _solve("delay", g, params, cfg or SolverConfig())


def optimal(kind: Kind, g: float, params: SystemParams, cfg: SolverConfig | None = None) -> OptimalPoint:
    _check_kind(kind)
    return _solve(kind, g, params, cfg or SolverConfig())


def grid_min_oracle(kind: Kind, g: float, params: SystemParams, lo: float, hi: float, step: float):
    """Brute-force minimum of the unit-delay or unit-bandwidth energy curve.

    Evaluates the curve on ``lo, lo+step, ...`` up to ``hi`` (inclusive, with
    a small slack for rounding) and returns ``(argmin, min_energy)``.
    """
    _check_kind(kind)
    if not (lo > 0 and step > 0 and hi >= lo):
        raise ValueError("grid requires 0 < lo <= hi and step > 0")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    if count < 1:
        raise ValueError("empty grid")
    xs = lo + step * np.arange(count)
    curve = energy_vs_bandwidth if kind == "bandwidth" else energy_vs_delay
    energies = curve(xs, g, params)
    i = int(np.argmin(energies))
    return float(xs[i]), float(energies[i])
