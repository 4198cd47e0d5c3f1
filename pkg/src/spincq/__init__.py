"""Exact checks of Spin^c quantization commuting with reduction on small examples."""

from .catalog import ExampleBundle, ExampleDescriptor, build
from .characters import (
    CharacterK,
    ConeTerm,
    FormalCharacter,
    coefficient,
    holomorphic_induct,
    mult_at,
    restrict_to_torus,
    window,
)
from .errors import (
    InfiniteSupport,
    MissingAncestorData,
    NonGenericPolarization,
    NotAdmissible,
    OnWall,
    PreconditionViolated,
    RouteMismatch,
    UnhandledComponentGeometry,
    UnknownDescriptor,
)
from .fixedpoint_index import FixedPoint, FixedPointModel, global_index, local_term, witten_decomposition
from .lie_core import (
    Box,
    LeviClass,
    RootDatum,
    Singular,
    Weight,
    normalized_trace,
    rho,
    stabilizer_levi,
    weyl_normalize,
)
from .orbits import (
    CoadjointOrbit,
    NonLevi,
    OrbitQuantization,
    ancestors_of,
    d_value,
    is_admissible,
    magical_check,
    qspin_orbit,
    rho_of,
    shift,
    vanishing_criterion,
)
from .reduction import (
    FiberPoint,
    MomentImage,
    QRReport,
    ReducedFiberModel,
    dh_density,
    kirwan_image,
    multiplicity_via_ancestors,
    qspin_point,
    reduced_profile,
    verify_qr_abelian,
    verify_qr_nonabelian,
)

__version__ = "0.1.0"

__all__ = [
    "ExampleBundle",
    "ExampleDescriptor",
    "build",
    "CharacterK",
    "ConeTerm",
    "FormalCharacter",
    "coefficient",
    "holomorphic_induct",
    "mult_at",
    "restrict_to_torus",
    "window",
    "InfiniteSupport",
    "MissingAncestorData",
    "NonGenericPolarization",
    "NotAdmissible",
    "OnWall",
    "PreconditionViolated",
    "RouteMismatch",
    "UnhandledComponentGeometry",
    "UnknownDescriptor",
    "FixedPoint",
    "FixedPointModel",
    "global_index",
    "local_term",
    "witten_decomposition",
    "Box",
    "LeviClass",
    "RootDatum",
    "Singular",
    "Weight",
    "normalized_trace",
    "rho",
    "stabilizer_levi",
    "weyl_normalize",
    "CoadjointOrbit",
    "NonLevi",
    "OrbitQuantization",
    "ancestors_of",
    "d_value",
    "is_admissible",
    "magical_check",
    "qspin_orbit",
    "rho_of",
    "shift",
    "vanishing_criterion",
    "FiberPoint",
    "MomentImage",
    "QRReport",
    "ReducedFiberModel",
    "dh_density",
    "kirwan_image",
    "multiplicity_via_ancestors",
    "qspin_point",
    "reduced_profile",
    "verify_qr_abelian",
    "verify_qr_nonabelian",
]
