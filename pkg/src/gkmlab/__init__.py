"""gkm-lab: exact-arithmetic toolkit for GKM graphs of torus actions.

Everything the labelled graph of a GKM action encodes, computed exactly:
axiom validation, isomorphism, Guillemin-Zara connections, equivariant
cohomology ranks and Betti numbers, localized characteristic numbers, the
orbit-type stratification poset, and momentum-graph realizations with
their x-rays.
"""

from .lattice import (TorusSubgroup, smith_normal_form, kernel_of_weights,
                      vanishes_on, intersect, identity_component,
                      subgroup_contains, canonical_weight)
from .graph import (GKMGraph, SignedStructure, Edge, ValidationReport,
                    validate, catalog, CATALOG_NAMES,
                    isomorphic_strict, isomorphic_up_to_lattice_aut, GraphIso)
from .connection import (Connection, enumerate_unsigned_connections,
                         exists_signed_structure_with_connection,
                         check_connection)
from .cohomology import (EquivariantClass, is_class, graded_rank,
                         betti_numbers, multiply, divisible_by_linear)
from .localization import (CharClassExpr, integrate, pontryagin_number,
                           orientation_from_signs)
from .strata import (StratPoset, StratElement, fixed_subgraph, orbit_poset,
                     poset_isomorphic_with_labels)
from .moment import (MomentumRealization, InfeasibilityCertificate,
                     LinearConstraint, XRay, realize, realize_any_signs,
                     xray, xray_equal)
from .parsing import parse_graph, serialize_graph, parse_expr, serialize_expr
from .errors import (GKMLabError, GraphFormatError, ExprSyntaxError,
                     NotGKMConsistentError, NonconstantSumError)

__version__ = "0.1.0"
