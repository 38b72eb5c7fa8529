"""Exact computations on blow-ups of the projective plane at points of a cubic.

The package decides whether every nef divisor on such a surface is
semiample by restricting the orthogonal complement of the anticanonical
class to the cubic and testing the images for torsion.  Supporting
modules cover the Picard lattice, elliptic-curve arithmetic over Q and
F_p, block construction on negative-definite curve configurations, and
singular members of pencils of plane curves.
"""

from ratsurf.errors import (
    CapabilityError,
    ConfigurationError,
    DegeneratePencilError,
    DimensionError,
    NonIsolatedSingularitiesError,
    NotNefError,
    RatsurfError,
    UnsupportedModelError,
)
from ratsurf.piclattice import (
    DivisorClass,
    LatticeBasis,
    anticanonical_class,
    arithmetic_genus,
    canonical_class,
    enumerate_negative_classes,
    euler_characteristic,
    intersect,
    is_negative_definite,
    perp_basis,
)
from ratsurf.ellcurve import (
    INFINITY,
    PrimeField,
    Rationals,
    WeierstrassCurve,
    add,
    is_torsion,
    negate,
    on_curve,
    order_of,
    scalar_mul,
)
from ratsurf.restriction import (
    AbstractConfiguration,
    ConcreteBlowup,
    RestrictedClass,
    gamma_generators,
    is_torsion_class,
    restrict,
)
from ratsurf.semiample import (
    BlockSolution,
    Verdict,
    classify_surface,
    find_block,
    is_nef_against,
    is_semiample,
)
from ratsurf.pencil import (
    HomogeneousForm,
    NodeType,
    is_reduced_on_random_lines,
    node_test,
    rational_singular_points,
    resultant,
    singular_parameters,
)

__version__ = "0.1.0"
