"""condspec: condition spectra and pseudospectra of dense complex matrices.

Fix a matrix A and a level 0 < eps < 1.  The eps-condition spectrum is the
set of z where z*I - A is singular or has condition number at least 1/eps;
the eps-pseudospectrum is where the resolvent norm reaches 1/eps.  The
package computes both over complex-plane grids, extracts boundary
contours, constructs rank-one perturbation witnesses certifying
membership, and verifies a family of localization / growth / equivariance
theorems as executable checks.  Everything is measured in the spectral
(2-)norm.
"""

from .errors import (
    CondspecError,
    ConvergenceError,
    GridResolutionError,
    GridTooSmallError,
    NotAMemberError,
    ParseError,
    PreconditionError,
)
from .numkernel import (
    ComplexMatrix,
    EigenDecomposition,
    SVDResult,
    as_matrix,
    condition_number,
    eigen_decomposition,
    eigenvalues,
    power_norms,
    smallest_singular_value,
    spectral_norm,
    svd,
)
from .report import TheoremReport
from .spectra import (
    ContourLevel,
    ContourSet,
    Epsilon,
    GridSpec,
    SpectralField,
    bounding_region,
    component_count,
    compute_field,
    condition_number_at,
    condition_spectral_radius,
    distance_to_condition_spectrum,
    extract_contours,
    in_condition_spectrum,
    in_pseudospectrum,
)
from .theorems import (
    Disk,
    NumericalRangeBoundary,
    TransientConfig,
    check_t1,
    check_t2,
    check_t3,
    check_t4,
    check_t5,
    check_t6,
    check_t7,
    check_t8,
    check_t9,
    check_t10,
    gerschgorin_condition_disks,
    numerical_range_boundary,
    run_suite,
)
from .witness import (
    Witness,
    check_equivalence,
    membership_from_perturbation,
    witness_perturbation,
    witness_vector,
)
from .matrixio import MatrixSource, generate, parse_matrix

__version__ = "0.1.0"
