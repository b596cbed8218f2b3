"""Jerlov water types and their inherent optical properties.

Absorption and scattering coefficients (units 1/m) for the ten Jerlov
water classes, tabulated at 650 nm (red), 525 nm (green) and 450 nm
(blue). Oceanic types run I (clearest) through III (most turbid);
coastal types run 1C (clearest) through 9C (most turbid).
"""

from __future__ import annotations

import enum

import numpy as np

# Channel order used everywhere in this package: R, G, B mapped to
# wavelengths 650, 525 and 450 nm respectively.
WAVELENGTHS_NM = (650, 525, 450)


class WaterType(enum.Enum):
    """The ten Jerlov water classes."""

    I = "I"
    IA = "IA"
    IB = "IB"
    II = "II"
    III = "III"
    C1 = "1C"
    C3 = "3C"
    C5 = "5C"
    C7 = "7C"
    C9 = "9C"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, tag: str) -> "WaterType":
        """Look up a water type by its tag, e.g. "III" or "1C"."""
        tag = tag.strip().upper()
        for member in cls:
            if member.value == tag:
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown water type {tag!r}; expected one of {valid}")


# (absorption, scattering) per type, each as (r, g, b) in 1/m.
# Values are tabulated measurements for the ten Jerlov classes and are
# kept verbatim, including the irregular 5C red absorption (1.78) and
# the non-monotonic IB scattering row.
_IOP_TABLE: dict[WaterType, tuple[tuple[float, float, float], tuple[float, float, float]]] = {
    WaterType.I: ((0.334, 0.046, 0.018), (0.0009, 0.0021, 0.0038)),
    WaterType.IA: ((0.334, 0.047, 0.022), (0.0023, 0.0040, 0.0063)),
    WaterType.IB: ((0.334, 0.047, 0.024), (0.393, 0.078, 0.062)),
    WaterType.II: ((0.334, 0.047, 0.024), (0.27, 0.387, 0.504)),
    WaterType.III: ((0.336, 0.051, 0.039), (0.74, 1.06, 1.38)),
    WaterType.C1: ((0.344, 0.068, 0.105), (0.274, 0.395, 0.514)),
    WaterType.C3: ((0.346, 0.078, 0.154), (0.8, 1.15, 1.5)),
    WaterType.C5: ((1.78, 0.127, 0.297), (2.87, 1.44, 1.87)),
    WaterType.C7: ((0.403, 0.233, 0.542), (1.77, 2.54, 3.3)),
    WaterType.C9: ((0.456, 0.43, 0.943), (2.35, 3.38, 4.39)),
}


def iop_lookup(water_type: WaterType) -> tuple[np.ndarray, np.ndarray]:
    """Return (absorption, scattering) RGB triples for a water type.

    Both arrays have shape (3,) ordered (r, g, b) with units 1/m.
    """
    alpha, beta = _IOP_TABLE[WaterType(water_type)]
    return np.array(alpha, dtype=np.float64), np.array(beta, dtype=np.float64)


def iop_table_rows() -> list[tuple[str, float, float, float, float, float, float]]:
    """All ten types as (tag, alpha_r, alpha_g, alpha_b, beta_r, beta_g, beta_b)."""
    rows = []
    for wt in WaterType:
        alpha, beta = _IOP_TABLE[wt]
        rows.append((wt.value, *alpha, *beta))
    return rows
