"""polarix: design and simulation toolkit for an atom-in-waveguide
single-photon polarization converter.

Evaluates the exact scattering amplitudes of a driven three-level emitter
coupled to the two degenerate TE modes of a mirror-terminated rectangular
waveguide, solves the inverse problem of picking control parameters for an
arbitrary polarization conversion, and reproduces the fidelity and
dissipation studies as deterministic CSV/JSON data files.

Units: rates and detunings in Gamma_0, lengths in the waveguide width a,
wavenumbers in pi/a.
"""

from .analysis import (SweepAxis, SweepResult, SweepSpec, dissipation_sweep,
                       drive_curves, evaluate_sweep, fidelity_map,
                       poincare_circle, poincare_trajectory)
from .control import (ControlSolution, canonical_components, realize_drive,
                      rotation_angle, solve_controls)
from .errors import (DegenerateConfigurationError, EvanescentModeError,
                     IllConditionedConversionError, InfeasibleDriveError,
                     PhysicsError, PolarixError)
from .polarization import (EllipseAngles, JonesState, StokesVector,
                           dissipation_probability, ellipse_angles, fidelity,
                           linear_state, named_state, parse_state,
                           stokes_from_jones)
from .presets import CONVERSIONS, POINCARE_PRESETS, SWEEP_PRESETS, build_preset
from .scattering import (DriveConfig, FullScattering, ScatteringMatrix,
                         alpha_of_drive, drive_for_alpha, full_scattering,
                         ideal_scattering_matrix, scatter, stokes_of_output)
from .serialize import SCHEMA_VERSION, write_csv, write_json
from .waveguide import (CrossSectionMap, EmitterConfig, GeometryConfig,
                        bz_wavelength, coupling_amplitudes, cross_section_map,
                        emission_rates, kz, mode_profile, mode_wavenumbers)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # polarization
    "JonesState", "StokesVector", "EllipseAngles", "named_state", "linear_state",
    "parse_state", "stokes_from_jones", "ellipse_angles", "fidelity",
    "dissipation_probability",
    # waveguide
    "GeometryConfig", "EmitterConfig", "CrossSectionMap", "kz", "mode_wavenumbers",
    "bz_wavelength", "mode_profile", "coupling_amplitudes", "emission_rates",
    "cross_section_map",
    # scattering
    "DriveConfig", "ScatteringMatrix", "FullScattering", "alpha_of_drive",
    "drive_for_alpha", "ideal_scattering_matrix", "full_scattering", "scatter",
    "stokes_of_output",
    # control
    "ControlSolution", "solve_controls", "realize_drive", "rotation_angle",
    "canonical_components",
    # analysis
    "SweepAxis", "SweepSpec", "SweepResult", "evaluate_sweep", "fidelity_map",
    "dissipation_sweep", "poincare_trajectory", "poincare_circle", "drive_curves",
    # presets and serialization
    "CONVERSIONS", "SWEEP_PRESETS", "POINCARE_PRESETS", "build_preset",
    "SCHEMA_VERSION", "write_csv", "write_json",
    # errors
    "PolarixError", "PhysicsError", "EvanescentModeError", "InfeasibleDriveError",
    "DegenerateConfigurationError", "IllConditionedConversionError",
]
