"""Classical dual-field quark model.

Numerical library and CLI for a classical electromagnetic particle model:
fractional charges from a null-field condition, confining potentials derived
from a short-range weak potential, multi-quark energy minima, metastable
(unstable) solutions, small-oscillation frequencies, and the q-pair
symmetry of hadron composition.
"""

from .numerics import Tolerance, DEFAULT_TOL
from .charges import (
    ChargeProblem,
    enumerate_fractional_charges,
    external_charge_total,
    external_current_total,
    null_residual,
    solve_coulomb_charge,
)
from .potentials import (
    SINGLE_QUARK,
    THREE_QUARK,
    TWO_QUARK,
    CallableShape,
    ConfiningCoefficients,
    GridSpec,
    ModelParams,
    RationalShape,
    astar,
    closed_form_coefficients,
    decompose_regions,
    external_current_density,
    phi_k,
    phi_p,
    psi,
    psi_prime,
    psi_double_prime,
    sample_curves,
    verify_asymptotics,
)
from .energy import (
    TABLE1_ROWS,
    EnergyProfile,
    UnstableParams,
    UnstableRow,
    analyze_unstable,
    coulomb_energy,
    divergence_threshold,
    find_energy_minimum,
    free_particle_mass,
    solve_N_for_extremum,
    solve_single_quark_n,
    total_energy,
    unstable_energy,
)
from .dynamics import (
    OscillatorResult,
    energy_scale_report,
    shm_frequency,
    shm_single_quark_closed_form,
)
from .symmetry import (
    QPAIRS,
    Composition,
    QPair,
    QuarkLabel,
    enumerate_compositions,
    is_q_neutral,
    proton_configurations,
)

__version__ = "0.1.0"
