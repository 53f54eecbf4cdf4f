"""Unit conversions for reporting.

The model works in Gaussian natural units with e = c = 1; every internal
energy is a pure number times e^2/length.  Conversion to SI/particle-physics
units happens only at the reporting boundary, through the constants below.
"""

from __future__ import annotations

C_M_PER_S = 299792458.0
HBARC_GEV_M = 1.973269804e-16      # hbar c
HBARC_MEV_FM = 197.3269804
ALPHA_EM = 7.2973525693e-3
E2_MEV_FM = ALPHA_EM * HBARC_MEV_FM   # Gaussian e^2 = alpha_em * hbar c


def omega_per_second(omega_model: float, unit_length_m: float) -> float:
    """Angular frequency in 1/s from a model value in units c/[length-unit]."""
    return omega_model * C_M_PER_S / unit_length_m


def photon_energy_gev(omega_model: float, unit_length_m: float) -> float:
    """hbar * omega in GeV for a model frequency in units c/[length-unit]."""
    return HBARC_GEV_M * omega_model / unit_length_m


def energy_mev(coeff_e2_per_unit: float, unit_length_m: float) -> float:
    """Energy in MeV from a model value in units e^2/[length-unit]."""
    unit_fm = unit_length_m * 1e15
    return coeff_e2_per_unit * E2_MEV_FM / unit_fm
