"""lcklab: exact-arithmetic verification, cohomology, classification and
search for locally conformally Kahler structures on rational Lie algebras."""

from .catalog import CatalogKey, CatalogEntry, Expectation, build, default_keys, expected_properties, make_key, parse_key
from .classify import (
    ClassLabel,
    DoubleRootQuery,
    GridSpec,
    SearchResult,
    classify4,
    double_root_test,
    lattice_verdict,
    lck_search,
    nilradical4,
    standard_complex_candidates,
)
from .cochain import (
    Cochain,
    ce_d,
    closed_one_forms,
    contract,
    eval_cochain,
    solve_potential,
    twisted_cohomology_dim,
    twisted_d,
    wedge,
)
from .hermitian import (
    CheckItem,
    ComplexStructure,
    LckReport,
    LckStructure,
    ReebData,
    check_lck,
    is_integrable,
    is_killing,
    is_vaisman,
    koszul_nabla,
    lee_field,
    lee_form_from_omega,
    lie_derivative_j,
    metric_from,
    nijenhuis,
    reeb_data,
)
from .lie import (
    LieAlgebra,
    ad_matrix,
    bracket,
    center,
    change_basis,
    derived_series,
    derived_subalgebra,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    jacobi_violations,
    killing_form,
    lower_central_series,
    subalgebra,
)
from .linalg import (
    Matrix,
    Subspace,
    det,
    is_positive_definite,
    kernel_basis,
    rank,
    solve,
)

__version__ = "0.1.0"
