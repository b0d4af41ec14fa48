"""Harmonic analysis on finite abelian groups.

Transforms and convolution on the group algebra, spectral measures of
unitary representations, quotient spaces of positive-type functions, and
generalized-eigenvector decompositions — every construction exact up to
floating point and verified by residuals.
"""

from ._version import __version__
from .algebra import (
    DualFunction,
    GroupFunction,
    PositivityReport,
    character_function,
    convolve,
    delta,
    fourier,
    hermitian_form,
    inverse_fourier,
    involution,
    is_positive_type,
)
from .errors import (
    AbelianSpectraError,
    DegenerateComponentError,
    FileFormatError,
    GroupMismatchError,
    InconsistencyError,
    InvalidGroupError,
    NotCyclicError,
    NotSelfAdjointError,
    NumericalDegeneracyError,
    PositiveTypeError,
    RepresentationValidationError,
    ShapeMismatchError,
    SupportError,
)
from .gns import GNSSpace, gns_algebra_action, gns_construct, reconstruct_phi
from .groups import (
    DEFAULT_SIZE_CAP,
    Character,
    Element,
    Group,
    make_group,
)
from .representations import (
    CyclicComponent,
    DiagonalModel,
    Ket,
    KetSystem,
    ProjectionValuedMeasure,
    UnitaryRep,
    apply_algebra,
    cyclic_decomposition,
    diagonalization_residual,
    diagonalize,
    dirac_kets,
    functional_calculus,
    make_representation,
    reconstruction_residual,
    regular_representation,
    spectral_measure,
    trivial_representation,
)
from .rigging import (
    GeneralizedEigenvector,
    IntertwinerResult,
    SpectralDecomposition,
    build_decomposition,
    eigen_residual,
    intertwiner,
    phi_from_cyclic,
    reconstruct_operator,
)

__all__ = [
    "__version__",
    "AbelianSpectraError",
    "Character",
    "CyclicComponent",
    "DEFAULT_SIZE_CAP",
    "DegenerateComponentError",
    "DiagonalModel",
    "DualFunction",
    "Element",
    "FileFormatError",
    "GNSSpace",
    "GeneralizedEigenvector",
    "Group",
    "GroupFunction",
    "GroupMismatchError",
    "InconsistencyError",
    "IntertwinerResult",
    "InvalidGroupError",
    "Ket",
    "KetSystem",
    "NotCyclicError",
    "NotSelfAdjointError",
    "NumericalDegeneracyError",
    "PositiveTypeError",
    "PositivityReport",
    "ProjectionValuedMeasure",
    "RepresentationValidationError",
    "ShapeMismatchError",
    "SpectralDecomposition",
    "SupportError",
    "UnitaryRep",
    "apply_algebra",
    "build_decomposition",
    "character_function",
    "convolve",
    "cyclic_decomposition",
    "delta",
    "diagonalization_residual",
    "diagonalize",
    "dirac_kets",
    "eigen_residual",
    "fourier",
    "functional_calculus",
    "gns_algebra_action",
    "gns_construct",
    "hermitian_form",
    "intertwiner",
    "inverse_fourier",
    "involution",
    "is_positive_type",
    "make_group",
    "make_representation",
    "phi_from_cyclic",
    "reconstruct_operator",
    "reconstruct_phi",
    "reconstruction_residual",
    "regular_representation",
    "spectral_measure",
    "trivial_representation",
]
