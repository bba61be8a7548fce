"""Combinatorial invariants of complexity-one torus actions.

Exact integer linear algebra, weight systems with their Cramer
coefficients, sponge complexes, characteristic data, quasitoric reductions
and the cellular equivalence comparator.
"""

from .chardata import (
    Ambient,
    CharacteristicData,
    Chart,
    EulerCycle,
    OrbitType,
    assemble_euler_cycle,
    cocycle_check,
    compatibility_check,
    data_from_charts,
    local_euler_from_weights,
    local_model_data,
    orbit_types,
    solve_euler_signs,
    validate_mu,
)
from .classify import (
    ComparisonResult,
    EquivalenceWitness,
    Fingerprint,
    canonical_invariants,
    compare,
    verify_witness,
)
from .lattice import (
    IntMatrix,
    IntVector,
    SmithDecomposition,
    determinant,
    hermite_normal_form,
    integer_kernel,
    inverse_unimodular,
    is_unimodular_extension,
    kernel_complement,
    primitive,
    smith_normal_form,
    solve_exact,
    vec,
)
from .quasitoric import (
    CellManifold,
    CharacteristicFunction,
    SimplePolytope,
    SubtorusChoice,
    cell_manifold_data,
    coloring_pullback,
    find_strict_subtorus,
    induced_mu,
    polytope_sponge,
    reduce,
    validate_star,
    vertex_weights,
)
from .sponge import (
    Cell,
    FaceStar,
    HomologyResult,
    LocalModel,
    SpongeComplex,
    ValidationReport,
    face_star,
    filtration,
    homology,
    local_model,
    local_model_sponge,
    signed_incidence,
    validate_sponge,
    weighted_cycle_check,
)
from .weights import (
    CramerCoefficients,
    StabilizerStructure,
    WeightSystem,
    cramer_coefficients,
    hopf_type,
    induced_weights,
    is_general_position,
    is_strictly_appropriate,
    stabilizer_structure,
)

__version__ = "0.1.0"
