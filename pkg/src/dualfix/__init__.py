"""Fix-point lattices of finite distributive lattice endomorphisms, computed
on the order dual: quotient the dual map's graph and read fix-points off as
order ideals of the quotient."""

from .errors import (
    AntisymmetryViolation,
    DuplicateElement,
    InvalidInput,
    MaxStepsExceeded,
    NoMinimum,
    NotALattice,
    NotAnIdealOfC,
    NotDistributive,
    NotHom,
    NotMonotone,
    QuotientNotAntisymmetric,
    SizeBoundExceeded,
    UnknownElement,
)
from .poset import (
    MonotoneMap,
    OrderIdeal,
    Poset,
    build_poset,
    enumerate_ideals,
    is_monotone,
    is_order_ideal,
    iter_ideal_masks,
    principal_ideal,
)
from .lattice import (
    FiniteLattice,
    LatticeHom,
    birkhoff_eta,
    explicit_lattice_bound,
    ideal_lattice,
    is_homomorphism,
    join_irreducibles,
    lattice_from_order,
)
from .duality import dual_map, hom_from_dual, lift_hom
from .fixpoint import (
    CycleReport,
    FixpointLattice,
    QuotientPoset,
    algorithm1,
    bruteforce_fixpoints,
    coequalizer_general,
    fixpoints_via_duality,
    hom_quotient,
    kleene_iterate,
    phi_components,
)

__all__ = [
    "AntisymmetryViolation",
    "CycleReport",
    "DuplicateElement",
    "FiniteLattice",
    "FixpointLattice",
    "InvalidInput",
    "LatticeHom",
    "MaxStepsExceeded",
    "MonotoneMap",
    "NoMinimum",
    "NotALattice",
    "NotAnIdealOfC",
    "NotDistributive",
    "NotHom",
    "NotMonotone",
    "OrderIdeal",
    "Poset",
    "QuotientNotAntisymmetric",
    "QuotientPoset",
    "SizeBoundExceeded",
    "UnknownElement",
    "algorithm1",
    "birkhoff_eta",
    "bruteforce_fixpoints",
    "build_poset",
    "coequalizer_general",
    "dual_map",
    "enumerate_ideals",
    "explicit_lattice_bound",
    "fixpoints_via_duality",
    "hom_from_dual",
    "hom_quotient",
    "ideal_lattice",
    "is_homomorphism",
    "is_monotone",
    "is_order_ideal",
    "iter_ideal_masks",
    "join_irreducibles",
    "kleene_iterate",
    "lattice_from_order",
    "lift_hom",
    "phi_components",
    "principal_ideal",
]

__version__ = "0.1.0"
