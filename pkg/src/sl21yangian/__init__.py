"""Exact-arithmetic toolkit for four-dimensional sl(2|1) Yangian representations.

Builds the representations, their coproducts and antipodes, derives and
checks the R-matrices, evaluates the dressing factor and classifies poles
in the physical strip.
"""
from .algebra import (
    DEFAULT_ST,
    GradedMatrix,
    Scalar,
    SupertransposeConvention,
    E,
    as_scalar,
    bracket,
    graded_flip,
    graded_kron,
    identity,
    nullspace,
    partial_supertranspose,
    supertranspose,
)
from .representations import (
    ANTIPODE,
    CONJUGATE,
    DIRECT,
    INVERSE_ANTIPODE,
    RepParams,
    XpmParams,
    YangianRep,
    antiparticle,
    build_rep,
    check_conjugation,
    from_xpm,
    verify_drinfeld,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_ST", "GradedMatrix", "Scalar", "SupertransposeConvention", "E", "as_scalar",
    "bracket", "graded_flip", "graded_kron", "identity", "nullspace",
    "partial_supertranspose", "supertranspose", "ANTIPODE", "CONJUGATE", "DIRECT",
    "INVERSE_ANTIPODE", "RepParams", "XpmParams", "YangianRep", "antiparticle", "build_rep",
    "check_conjugation", "from_xpm", "verify_drinfeld", "__version__",
]
