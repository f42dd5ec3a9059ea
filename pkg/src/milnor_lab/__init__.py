"""Exact combinatorial topology of Milnor fibres of non-reduced plane curves.

The equisingularity datum (multiplicities, branch deltas, intersection
multiplicities) determines the fibre up to homotopy; everything here is
integer-exact and cross-validated by independent computation routes.
"""

from ._version import __version__
from .datum import (
    Branch,
    CorpusBounds,
    EquisingularDatum,
    QuasiHomBranchSpec,
    canonical_key,
    datum_to_json,
    enumerate_corpus,
    from_monomial,
    from_power,
    from_quasihomogeneous,
    make_datum,
    parse_datum,
    serialize_datum,
    validate,
)
from .errors import (
    CurveSpecError,
    InternalInconsistencyError,
    MilnorLabError,
    ValidationError,
)
from .fibre import (
    ComponentMonodromy,
    FibreGraph,
    FibreSummary,
    build_fibre_graph,
    component_monodromy,
    divide_by_gcd,
    euler_characteristic_closed,
    fibre_summary,
)
from .intlinalg import (
    CokernelPresentation,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    determinant,
    smith_normal_form,
)
from .invariants import (
    BetaReport,
    Boundary2Report,
    ReducedDatumError,
    TransversalData,
    UpperBoundVerdict,
    VerticalMonodromy,
    XrVerdict,
    beta,
    boundary2_components,
    check_upper_bound,
    classify_xr,
    mu_reduced,
    transversal_data,
    vertical_shift,
)
from .network import LocalFibre, NetworkNode, build_network, double_point_count, local_fibre
from .report import build_analysis, report_to_json
from .sweep import DEFAULT_PROPERTIES, SweepResult, Violation, run_sweep

__all__ = [
    "__version__",
    "Branch",
    "CorpusBounds",
    "EquisingularDatum",
    "QuasiHomBranchSpec",
    "canonical_key",
    "datum_to_json",
    "enumerate_corpus",
    "from_monomial",
    "from_power",
    "from_quasihomogeneous",
    "make_datum",
    "parse_datum",
    "serialize_datum",
    "validate",
    "CurveSpecError",
    "InternalInconsistencyError",
    "MilnorLabError",
    "ValidationError",
    "ComponentMonodromy",
    "FibreGraph",
    "FibreSummary",
    "build_fibre_graph",
    "component_monodromy",
    "divide_by_gcd",
    "euler_characteristic_closed",
    "fibre_summary",
    "CokernelPresentation",
    "IntMatrix",
    "SmithDecomposition",
    "cokernel",
    "determinant",
    "smith_normal_form",
    "BetaReport",
    "Boundary2Report",
    "ReducedDatumError",
    "TransversalData",
    "UpperBoundVerdict",
    "VerticalMonodromy",
    "XrVerdict",
    "beta",
    "boundary2_components",
    "check_upper_bound",
    "classify_xr",
    "mu_reduced",
    "transversal_data",
    "vertical_shift",
    "LocalFibre",
    "NetworkNode",
    "build_network",
    "double_point_count",
    "local_fibre",
    "build_analysis",
    "report_to_json",
    "DEFAULT_PROPERTIES",
    "SweepResult",
    "Violation",
    "run_sweep",
]
