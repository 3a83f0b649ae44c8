# %% [markdown]
# # Calibrating the model
#
# Only two aperture points are known: the 85.3 mm resting span and 256 mm
# with the outer brakes engaged at 30 kPa. That is enough to fix the brake
# lever arm.

# %%
from mashgrip import GripperConfig, ActuatorGeometry, pair_aperture
from mashgrip.harness.calibrate import CalibrationProblem, calibrate, predict

res = calibrate(CalibrationProblem("layer_gap", ((0.0, 85.3), (30.0, 256.0))))
w = res.parameters["layer_gap"]
print(f"layer gap {w:.4f} mm, SSE {res.sse:.2e}, {res.iterations} evaluations")

g = ActuatorGeometry(layer_gap=w)
cfg = GripperConfig(pair_a=(g, g), pair_b=(g, g))
for p in (0, 10, 20, 30):
    print(f"  {p:3d} kPa  aperture {pair_aperture(cfg, 'a', p, 'outward'):7.2f} mm")

# %% [markdown]
# ## Round trip on synthetic data
#
# Generate data from known parameters, add a little noise, and fit again.

# %%
import numpy as np

rng = np.random.default_rng(0)
t = np.arange(0.0, 0.5, 0.005)
clean = predict("brake_tau", {"tau": 0.08}, [(ti, 0.0) for ti in t])
for sigma in (0.0, 0.005, 0.02):
    y = clean + sigma * rng.standard_normal(len(t))
    fit = calibrate(CalibrationProblem("brake_tau", tuple(zip(t, y))))
    print(f"noise {sigma:5.3f}: tau = {fit.parameters['tau'] * 1e3:.2f} ms")

# %% [markdown]
# The same problems can be written as JSON and run from the shell:
#
#     mashgrip calibrate demos/data/aperture_problem.json
