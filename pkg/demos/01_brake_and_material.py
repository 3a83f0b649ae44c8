# %% [markdown]
# # Electrostatic brake and elastomer
#
# The brake layer is a parallel-plate clutch. Its friction force grows with
# the square of the voltage, so the dielectric gap sets how much load one
# layer can carry at the 2 kV supply limit.

# %%
import numpy as np

from mashgrip import BrakeParams, braking_force, required_gap_for_force
from mashgrip.brake import GRAVITY, filter_trace
from mashgrip.harness.characterize import characterize, rise_time

brake = BrakeParams()
print(f"default gap: {brake.gap * 1e6:.4f} um")
for u in (500, 1000, 1500, 2000):
    print(f"  U = {u:4d} V  ->  F = {braking_force(brake, u):.4f} N")

# %% [markdown]
# The default gap is the one that lets a single layer lift 200 g at 2 kV.
# Halving the target load lets the gap grow by a factor of sqrt(2).

# %%
for grams in (200, 100, 50):
    d = required_gap_for_force(brake, 2000.0, grams / 1000 * GRAVITY)
    print(f"{grams:3d} g  needs d <= {d * 1e6:7.2f} um")

# %% [markdown]
# Engagement lags the command with a 80 ms time constant. The 10 to 90 %
# rise therefore takes tau * ln 9.

# %%
trace = characterize("brake_response", {"seed": 1})
rt = rise_time(trace.column("time_s"), trace.column("engagement"))
print(f"rise time {rt * 1e3:.1f} ms (tau ln 9 = {0.08 * np.log(9) * 1e3:.1f} ms)")

noisy = trace.column("measured_force_N")
smooth = trace.column("filtered_force_N")
print(f"raw step-to-step jitter {np.std(np.diff(noisy)):.4f} N, filtered {np.std(np.diff(smooth)):.4f} N")
print(f"largest filtered step {np.max(np.abs(np.diff(filter_trace(noisy)))):.3f} N")

# %% [markdown]
# ## Yeoh elastomer
#
# Stress along the uniaxial path, checked against a numerical derivative of
# the energy.

# %%
from mashgrip import YeohCoefficients, uniaxial_stress, yeoh_energy

c = YeohCoefficients()
lam = np.linspace(0.8, 2.0, 7)
h = 1e-6


def w(x):
    return yeoh_energy(c, x**2 + 2 / x)


fd = lam * (w(lam + h) - w(lam - h)) / (2 * h)
for l, s, f in zip(lam, uniaxial_stress(c, lam), fd):
    print(f"lambda {l:.1f}: sigma {s:9.4f} MPa   numeric {f:9.4f}")
