"""Changemaker-lattice realizations of lens space surgeries."""

from .berge import (
    ALL_TYPES,
    BergeEntry,
    berge_entries,
    berge_entries_for_p,
    canonical_k_orbit,
    orbit_types,
)
from .changemaker import (
    StandardBasis,
    enumerate_changemakers,
    intersection_graph_report,
    is_changemaker,
    standard_basis,
)
from .contfrac import (
    HJString,
    dual_pair,
    hj_eval,
    hj_expand,
    hj_string,
    reverse_orbit,
    riemenschneider_dual,
)
from .embed import (
    Embedding,
    Linear,
    NotLinear,
    SumOfTwo,
    abutment_report,
    find_embeddings,
    recognize_linear,
)
from .errors import (
    DomainError,
    EnumerationCapExceeded,
    NodeBudgetExceeded,
    OracleBoundExceeded,
)
from .lattice import linear_iso, linear_lattice, q_orbit_rep
from .verify import (
    FixtureReport,
    GenusRecord,
    RealizationRecord,
    cross_check_directions,
    fixtures_check,
    genus_problems,
    q_orbit_list,
    realization_summary,
    verify_genus_bound,
    verify_realization,
)

__all__ = [name for name in dir() if not name.startswith("_")]
