"""Elastomer laws: Yeoh strain energy and the pressure-to-length extension law."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, RangeError, ValidationError

REST_LENGTH = 104.0  # mm, uninflated SPA
FULL_PRESSURE = 100.0  # kPa
FULL_LENGTH = 200.55  # mm at FULL_PRESSURE, brakes off


@dataclass(frozen=True)
class YeohCoefficients:
    """Yeoh coefficients for Ninjaflex (C10, C20, C30)."""

    c10: float = 2.61
    c20: float = -0.561
    c30: float = 0.0972
    unit: str = "MPa"

    def __post_init__(self):
        if not self.c10 > 0:
            raise DomainError(f"c10 must be > 0 (got {self.c10})")


def yeoh_energy(c: YeohCoefficients, i1):
    """Strain energy density W = sum C_i0 (I1 - 3)^i, in ``c.unit``."""
    i1 = np.asarray(i1, dtype=float)
    if np.any(i1 < 3.0):
        raise DomainError("first invariant must be >= 3")
    x = i1 - 3.0
    w = x * (c.c10 + x * (c.c20 + x * c.c30))
    return float(w) if w.ndim == 0 else w


def uniaxial_invariant(stretch):
    stretch = np.asarray(stretch, dtype=float)
    return stretch**2 + 2.0 / stretch


def uniaxial_stress(c: YeohCoefficients, stretch):
    """Cauchy stress for incompressible uniaxial tension/compression.

    sigma = 2 (lambda^2 - 1/lambda) dW/dI1, with I1 = lambda^2 + 2/lambda.
    """
    lam = np.asarray(stretch, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("stretch ratio must be > 0")
    x = uniaxial_invariant(lam) - 3.0
    dw_di1 = c.c10 + 2.0 * c.c20 * x + 3.0 * c.c30 * x**2
    sigma = 2.0 * (lam**2 - 1.0 / lam) * dw_di1
    return float(sigma) if sigma.ndim == 0 else sigma


@dataclass(frozen=True)
class ExtensionLaw:
    """Free-extension length of the SPA as a function of pressure.

    ``anchors`` are (pressure kPa, length mm) pairs. ``interpolation`` is
    ``"linear"``, ``"monotone-cubic"`` or ``None`` (cubic when there are
    three or more anchors).
    """

    anchors: tuple = ((0.0, REST_LENGTH), (FULL_PRESSURE, FULL_LENGTH))
    interpolation: str | None = None

    def __post_init__(self):
        anchors = tuple((float(p), float(l)) for p, l in self.anchors)
        object.__setattr__(self, "anchors", anchors)
        problems = []
        if len(anchors) < 2:
            problems.append("extension law needs at least two anchors")
        else:
            p = np.array([a[0] for a in anchors])
            ln = np.array([a[1] for a in anchors])
            if p[0] != 0.0:
                problems.append("first anchor must be at pressure 0")
            if np.any(np.diff(p) <= 0):
                problems.append("anchor pressures must be strictly increasing")
            if np.any(np.diff(ln) <= 0):
                problems.append("anchor lengths must be strictly increasing")
        if self.interpolation not in (None, "linear", "monotone-cubic"):
            problems.append(f"unknown interpolation {self.interpolation!r}")
        if problems:
            raise ValidationError(problems)

    @property
    def method(self):
        if self.interpolation is not None:
            return self.interpolation
        return "monotone-cubic" if len(self.anchors) >= 3 else "linear"

    @property
    def pressures(self):
        return np.array([a[0] for a in self.anchors])

    @property
    def lengths(self):
        return np.array([a[1] for a in self.anchors])

    @property
    def rest_length(self):
        return self.anchors[0][1]

    @property
    def max_pressure(self):
        return self.anchors[-1][0]


def extension_length(law: ExtensionLaw, pressure):
    """Length (mm) of the unbraked SPA at ``pressure`` kPa.

    Raises ``RangeError`` outside the anchored pressure range.
    """
    p = np.asarray(pressure, dtype=float)
    if np.any(p < 0) or np.any(p > law.max_pressure) or np.any(~np.isfinite(p)):
        raise RangeError(f"pressure {pressure} kPa outside [0, {law.max_pressure}] kPa")
    if law.method == "linear" or len(law.anchors) == 2:
        out = np.interp(p, law.pressures, law.lengths)
    else:
        out = PchipInterpolator(law.pressures, law.lengths)(p)
    return float(out) if out.ndim == 0 else out


def load_extension_law_csv(path, interpolation=None) -> ExtensionLaw:
    """Read anchors from a two-column CSV (pressure_kPa, length_mm) with a header row."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValidationError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    try:
        float(header[0])
    except (ValueError, IndexError):
        pass
    else:
        raise ValidationError(f"{path}: header row required")
    anchors = []
    for lineno, row in enumerate(body, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            anchors.append((float(row[0]), float(row[1])))
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: non-numeric value") from None
    return ExtensionLaw(tuple(anchors), interpolation)
