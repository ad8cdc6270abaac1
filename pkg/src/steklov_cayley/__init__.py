"""Steklov eigenvalues of finite graphs with boundary inside Cayley graphs of polynomial growth."""

__version__ = "0.1.0"

from .cayley import (  # noqa: E402
    GroupDescriptor,
    GrowthEstimate,
    ResourceLimitError,
    ball,
    covering_count,
    free_abelian,
    growth_function,
    heisenberg,
    inverse,
    multiply,
    word_distance,
)
from .graph_boundary import (  # noqa: E402
    GraphWithBoundary,
    InducedSubsetSpec,
    example_family_G,
    from_json,
    induce,
    to_json,
    validate,
    vertex_boundary,
)
from .steklov import (  # noqa: E402
    SteklovSpectrum,
    dtn_matrix,
    harmonic_extension,
    laplacian_apply,
    minmax_oracle,
    normal_derivative,
    rayleigh,
    spectrum,
)
from .bounds import (  # noqa: E402
    BoundCertificate,
    ConstantChain,
    certify_sigma1,
    constant_chain,
    corollary_bounds,
    isoperimetric_ratio,
    theorem1_bound,
)

__all__ = [
    "GroupDescriptor", "GrowthEstimate", "ResourceLimitError", "ball", "covering_count",
    "free_abelian", "growth_function", "heisenberg", "inverse", "multiply", "word_distance",
    "GraphWithBoundary", "InducedSubsetSpec", "example_family_G", "from_json", "induce",
    "to_json", "validate", "vertex_boundary",
    "SteklovSpectrum", "dtn_matrix", "harmonic_extension", "laplacian_apply", "minmax_oracle",
    "normal_derivative", "rayleigh", "spectrum",
    "BoundCertificate", "ConstantChain", "certify_sigma1", "constant_chain", "corollary_bounds",
    "isoperimetric_ratio", "theorem1_bound",
]
