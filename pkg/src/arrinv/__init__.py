"""arrinv: exact invariants of line arrangements and reduced plane curves.

The package computes, over the rationals and without any floating point,
the graded invariants attached to the ideal of partial derivatives of a
reduced plane curve (quotient-algebra Hilbert function, total Tjurina
number, syzygy degrees, freeness classification, regularity, saturation),
the combinatorics of line arrangements (intersection lattices, canonical
forms, named families), and the local geometry of lattice strata in the
parameter space of arrangements.
"""

__version__ = "1.0.0"

from .errors import (
    ArrangementError,
    InvariantViolationError,
    NonIsolatedSingularitiesError,
    UnrealizableError,
)
from .graded import (
    HomogeneousPolynomial,
    LinearForm,
    dim_graded_piece,
    monomial_basis,
    multiplication_matrix,
    partials,
    product,
)
from .lattice import (
    Arrangement,
    Lattice,
    NamedLattice,
    abstract_lattice,
    canonical_form,
    classify_mdr2,
    intersection_lattice,
    is_isomorphic,
    max_multiplicity,
    realize,
    tau_of_lattice,
)
from .milnor import (
    EngineConfig,
    HilbertTable,
    InvariantReport,
    classify,
    hilbert_table,
    mdr,
    mdr_e,
    quick_profile,
    saturation_profile,
    smooth_milnor_dims,
    tjurina,
)
from .ratlin import Rational, RationalMatrix, kernel_basis, rank, rank_fast
from .strata import (
    CensusReport,
    IncidenceSystem,
    census,
    codim_bound,
    incidence_equations,
    local_stratum_dim,
    orbit_dim,
    tau_min,
    terao_hypotheses,
)
