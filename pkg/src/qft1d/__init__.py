"""1+1D non-interacting field dynamics with background electrostatic steps.

Evolves strictly localized (compact-support) Dirac and Klein-Gordon wave
packets, builds the standard particle / anti-particle / charge densities
from numerically computed evolution amplitudes, and assembles the
charge-blind density that keeps compact support inside the light cone.
"""

__version__ = "0.1.0"

from .densities import (NumberReport, number_report, rho_antiparticle,
                        rho_blind, rho_charge, rho_cross, rho_particle,
                        wavepacket_only_density)
from .errors import ConfigurationError, ContractViolationError, GuardBandError
from .lattice import (DensityField, Grid, SpinorField, UnitSystem, make_grid,
                      pseudo_inner)
from .modes import (FieldKind, Mode, ModeBasis, Potential, dirac_mode, energy,
                    kg_mode, make_basis, tanh_step)
from .propagation import (EvolutionMatrix, build_evolution_matrix, evolve_field,
                          free_evolution_matrix)
from .wavepackets import (PacketSpec, PacketSpectrum, build_packet, centroid,
                          decompose, evolve_first_quantized,
                          first_quantized_density, reconstruct, spectral_norm,
                          vacuum_spectrum)

__all__ = [
    "ConfigurationError", "ContractViolationError", "GuardBandError",
    "UnitSystem", "Grid", "SpinorField", "DensityField", "make_grid",
    "pseudo_inner", "FieldKind", "Mode", "ModeBasis", "Potential",
    "energy", "dirac_mode", "kg_mode", "make_basis", "tanh_step",
    "PacketSpec", "PacketSpectrum", "build_packet", "decompose",
    "reconstruct", "spectral_norm", "vacuum_spectrum",
    "evolve_first_quantized", "first_quantized_density", "centroid",
    "EvolutionMatrix", "evolve_field", "build_evolution_matrix",
    "free_evolution_matrix", "rho_particle", "rho_antiparticle",
    "rho_charge", "rho_cross", "rho_blind", "wavepacket_only_density",
    "NumberReport", "number_report",
]
