"""Chen ranks, holonomy Lie algebras and Alexander-type invariants, computed exactly."""

from .closedforms import (
    free_chen_rank,
    invert_lcs_product,
    one_relator_series,
    pure_braid_series,
    witt_rank,
)
from .gradedalg import ChenTable, DegreeReport, chen_table, degree_report, linearized_B_dims
from .holonomy import (
    LinkingGraph,
    MatroidLines,
    QuadraticPresentation,
    cup_rank,
    from_arrangement,
    from_group,
    from_link,
    rank2_flats,
)
from .liecore import LyndonBasis, derived_quotient_ranks, oracle_infinitesimal_alexander
from .linkcheck import connected_mod_p, is_z_generic, murasugi_report, strongly_connected
from .words import GroupPresentation, Word, epsilon_matrix, fox_derivative, parse_word

__version__ = "0.1.0"
