"""Finite association schemes: intersection numbers, saturation, Desarguesian
configurations and faithful-map extension."""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    ClassifierProfile,
    SaturationGraph,
    classify,
    common_neighbors,
    is_saturated,
    saturation_bound_holds,
    saturation_graph,
)
from .constructors import (  # noqa: E402
    PermutationGroupSpec,
    affine_scheme,
    cyclotomic_scheme,
    group_scheme,
    orbital_scheme,
)
from .core import (  # noqa: E402
    IntersectionTensor,
    Scheme,
    ThinStructure,
    complex_product,
    indistinguishing_number,
    intersection_tensor,
    localized_relation,
    thin_structure,
    validate,
    valency,
)
from .desargues import (  # noqa: E402
    DesarguesCertificate,
    InitialConfiguration,
    check_loop_condition,
    find_perspective_center,
    initial_configurations,
    is_desarguesian,
    is_linked,
    verify_linked_composition,
)
from .iso import (  # noqa: E402
    AlgebraicIso,
    PartialFaithfulMap,
    automorphism_group,
    construct_extension,
    enumerate_algebraic_autos,
    extend_backtracking,
    extension_candidates,
    is_schurian,
    separability_report,
    validate_algebraic_iso,
)
from .io import parse_scheme, write_scheme  # noqa: E402
