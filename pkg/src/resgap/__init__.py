"""resgap: scattering resonances of balls, resonance-gap bounds, and
energy-identity verification.

Core entry points:

* :mod:`resgap.bessel_poly` -- exact resonance polynomials p_k / theta_k.
* :mod:`resgap.rootfinder` -- deterministic all-roots solver with residual,
  Vieta, and reflection-symmetry certificates.
* :mod:`resgap.sphere_spectrum` -- poles of the ball in odd dimensions with
  multiplicities and minimal widths.
* :mod:`resgap.bounds` -- Morawetz / Ralston / Fernandez-Lavine gap bounds.
* :mod:`resgap.identities` -- outgoing resonant states and numerical
  certificates for the energy identities behind the gap bounds.
* :mod:`resgap.hadamard` -- first variation of the lowest resonance under
  normal boundary deformations.
* :mod:`resgap.cli` -- the ``resgap`` command.
"""

from .bessel_poly import (ComplexPoly, EquivalenceReport, ReverseBesselPoly,
                          eval_poly, p_poly, p_theta_equivalence, theta_poly)
from .bounds import (BoundCurve, BoundRow, bounds_table, fl_asymptote, fl_beta,
                     fl_nontrivial, fl_threshold, morawetz_gap, ralston_gap)
from .hadamard import (NormalVariation, VariationMatrix, definiteness_report,
                       eigenvalues, radial_norm_check, resonance_shift,
                       variation_matrix)
from .identities import (IdentityReport, RadialState, SpacetimeField,
                         build_resonant_state, delv3_check, mor2_check,
                         protter_residual, theorem1_chain_check)
from .rootfinder import RootSet, reflect_symmetry_check, roots
from .sphere_spectrum import (Resonance, SpectrumSlice, figure1_data,
                              min_width, multiplicity, resonances_for_ell)

__version__ = "0.1.0"

__all__ = [
    "ComplexPoly", "EquivalenceReport", "ReverseBesselPoly", "eval_poly",
    "p_poly", "p_theta_equivalence", "theta_poly",
    "BoundCurve", "BoundRow", "bounds_table", "fl_asymptote", "fl_beta",
    "fl_nontrivial", "fl_threshold", "morawetz_gap", "ralston_gap",
    "NormalVariation", "VariationMatrix", "definiteness_report", "eigenvalues",
    "radial_norm_check", "resonance_shift", "variation_matrix",
    "IdentityReport", "RadialState", "SpacetimeField", "build_resonant_state",
    "delv3_check", "mor2_check", "protter_residual", "theorem1_chain_check",
    "RootSet", "reflect_symmetry_check", "roots",
    "Resonance", "SpectrumSlice", "figure1_data", "min_width", "multiplicity",
    "resonances_for_ell",
    "__version__",
]
