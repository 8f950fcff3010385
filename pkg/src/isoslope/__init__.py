"""isoslope: exact invariants of isocrystals over unramified p-adic fields.

Layers, bottom up:

- padic / polys: fixed-precision exact arithmetic in unramified
  extensions of Q_p, Newton polygons, slope factorization;
- linalg: sigma-semilinear matrices and a canonical subspace lattice;
- isocrystal: Newton numbers, slopes, simple-factor types, twists,
  effectivity, isoclinic decomposition, subobject enumeration;
- filtered: Hodge numbers and polygons, induced filtrations, the
  weak-admissibility decision, Harder-Narasimhan filtrations;
- hn: the generic Harder-Narasimhan engine and its axiom checker;
- bc: the symbolic dimension/height calculus and admissibility ledger;
- cli / documents / render: the command-line surface.
"""

from .bc import (
    AdditivityReport,
    BCAtom,
    Edh,
    Etale,
    Ext1Class,
    Invariants,
    Ledger,
    LedgerStep,
    SlopeLayer,
    SymbolicBC,
    SymbolicHNAdapter,
    Torsion,
    admissibility_ledger,
    bc_of_isocrystal,
    check_additivity,
    ext1_class,
    invariants_of_E,
    invariants_of_M,
    slope_filtration,
)
from .errors import (
    DocumentError,
    EnumerationUnavailableError,
    IsoslopeError,
    NonEffectiveError,
    PrecisionError,
)
from .filtered import (
    AdmissibilityVerdict,
    FilteredHNAdapter,
    FilteredIsocrystal,
    FilteredObject,
    hn_filtration,
    hodge_number,
    hodge_polygon,
    induced,
    is_weakly_admissible,
    newton_number_of,
    quotient_data,
)
from .hn import (
    AxiomReport,
    HNAdapter,
    HNFiltration,
    HNStep,
    check_axioms,
    fil_alpha,
    is_costable,
    is_semistable,
    is_stable,
    max_destabilizing,
    slope,
)
from .hn import hn_filtration as generic_hn_filtration
from .isocrystal import (
    DMType,
    Isocrystal,
    direct_sum,
    dm_type,
    exact_enumeration_available,
    is_effective,
    isoclinic_decomposition,
    newton_number,
    restrict,
    simple,
    slopes,
    sub_isocrystals,
    twist,
)
from .linalg import (
    Matrix,
    SigmaLinearMap,
    Subspace,
    base_change,
    char_poly,
    compose_power,
    det_valuation,
    image,
    intersect,
    is_phi_stable,
    kernel,
    orbit_closure,
    poly_at_matrix,
    subspace_sum,
)
from .padic import (
    LowerBound,
    PadicScalar,
    UnramifiedField,
    exact_valuation,
    field_create,
    frobenius,
    valuation,
)
from .polys import (
    INFINITE_SLOPE,
    NewtonPolygon,
    Poly,
    newton_polygon,
    poly_invmod,
    slope_factorization as poly_slope_factorization,
)

__version__ = "0.1.0"
