"""
Optimal bandwidth and delay
===========================

Solve for the bandwidth (at unit delay) and the delay (at unit bandwidth)
that minimise energy per bit, then compare with a brute-force grid search.
"""

import numpy as np

from greentrade import (
    SystemParams,
    channel_gain,
    grid_min_oracle,
    optimal_bandwidth,
    optimal_delay,
    stationarity_residual,
)
from greentrade.experiments import energy_surface, surface_argmin

params = SystemParams()

for d in (100.0, 300.0, 600.0, 1000.0):
    g = channel_gain(d, params)
    w = optimal_bandwidth(g, params)
    t = optimal_delay(g, params)
    print(f"d={d:6.0f} m  W_o={w.value:.5f} ({w.iterations} it)  t_o={t.value:.5f}  "
          f"E(W_o)={w.energy_at_optimum:.3e}  E(t_o)={t.energy_at_optimum:.3e}")

# Far users need more bandwidth and more time per bit; the static power
# makes the delay optimum shorter than the bandwidth one.

g = channel_gain(1000.0, params)
w = optimal_bandwidth(g, params).value
arg, emin = grid_min_oracle("bandwidth", g, params, 0.01, 2.0, 1e-4)
print(f"\nsolver {w:.6f} vs grid {arg:.4f}; residual {stationarity_residual('bandwidth', w, g, params):.1e}")

# Turning off circuit power removes the trade-off: more bandwidth is always better.
try:
    optimal_bandwidth(g, SystemParams(circuit_power_per_hz=0.0))
except ValueError as exc:
    print(f"{type(exc).__name__}: {exc}")

# Joint grid over both resources. With both free, the minimum moves to the
# widest band on the grid: more bandwidth lets the delay shrink, and the
# static power is only paid for that shorter time.
surf = energy_surface(params, g, window="full", points=10)
W_best, t_best, e_best = surface_argmin(surf)
print(f"\njoint grid minimum at W={W_best:.1f}, t={t_best:.1f}: {e_best:.4e} J/bit")
E = surf.column("energy").reshape(10, 10)
print("rows W=0.1..1.0, columns t=0.1..1.0 (x1e-6 J/bit)")
print(np.array2string(E * 1e6, precision=2, max_line_width=120))
