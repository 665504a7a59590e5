"""Effective-mass Klein-Gordon equation with a Yukawa potential.

Bound-state spectra and wave functions, scattering phase shifts, and a
Numerov shooting oracle for checking them.
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError, KGError
from .model import (
    Coupling,
    CoulombParams,
    PhysicalParams,
    QuantumNumbers,
    TrustRegionWarning,
    approx_potential,
    coulomb_limit_map,
    mass_function,
    yukawa_potential,
)
from .bound import (
    BoundSolution,
    Branch,
    big_l,
    bound_wavefunction,
    coulomb_energy,
    energy_closed_form,
    energy_root_found,
    lambda_exponents,
    normalization_constant,
    quantization_residual,
)
from .scatter import ScatterSolution, a_param, phase_shift, scatter_exponents, scatter_wavefunction
from .oracle import Mode, RadialGrid, RadialSolution, extract_phase, numerov_integrate, shoot_eigenvalue

__all__ = [
    "KGError", "DomainError", "ConvergenceError",
    "Coupling", "CoulombParams", "PhysicalParams", "QuantumNumbers", "TrustRegionWarning",
    "approx_potential", "coulomb_limit_map", "mass_function", "yukawa_potential",
    "BoundSolution", "Branch", "big_l", "bound_wavefunction", "coulomb_energy",
    "energy_closed_form", "energy_root_found", "lambda_exponents", "normalization_constant",
    "quantization_residual",
    "ScatterSolution", "a_param", "phase_shift", "scatter_exponents", "scatter_wavefunction",
    "Mode", "RadialGrid", "RadialSolution", "extract_phase", "numerov_integrate", "shoot_eigenvalue",
]
