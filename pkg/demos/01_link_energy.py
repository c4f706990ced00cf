"""
Energy per bit on a single link
===============================

How the energy needed to deliver one bit depends on the bandwidth and the
delay we are willing to spend on it.
"""

import numpy as np

from greentrade import ResourcePoint, SystemParams, channel_gain, total_energy_per_bit
from greentrade.model import energy_vs_bandwidth, energy_vs_delay

params = SystemParams()

# channel gain falls off as d**-3 with these defaults
for d in (100.0, 600.0, 1000.0):
    print(f"g({d:6.0f} m) = {channel_gain(d, params):.4e}")

# A single operating point: 0.4 Hz per bit/s, 1 s per bit, 1 km away.
g = channel_gain(1000.0, params)
e = total_energy_per_bit(ResourcePoint(bandwidth=0.4, delay=1.0), g, params)
print(f"\ntransmit {e.e_transmit:.4e} + circuit {e.e_circuit:.4e} = {e.e_total:.4e} J/bit")

# Widening the band lowers the transmit part but the circuit part grows
# linearly, so the curve has a single minimum somewhere in between.
W = np.linspace(0.1, 1.0, 10)
t = np.linspace(0.1, 1.0, 10)
print("\n   x    E(W=x, t=1)   E(W=1, t=x)")
for x, ew, et in zip(W, energy_vs_bandwidth(W, g, params), energy_vs_delay(t, g, params)):
    print(f"{x:4.1f}   {ew:.4e}    {et:.4e}")

# Very small W*t makes 2**(1/(W*t)) overflow; the model refuses rather than
# returning inf.
try:
    total_energy_per_bit(ResourcePoint(1e-4, 1.0), g, params)
except ArithmeticError as exc:
    print(f"\n{type(exc).__name__}: {exc}")
