"""Local cohomology tables of graded modules of dimension at most two over k[x,y].

Tables are stored by their Δ-image, decomposed greedily into tables of the
extremal modules ``k(a)``, ``k[x](a)``, ``R(a)`` and ``m^t(a)``, and tested
against the facet inequalities of the cone they span.
"""

from .errors import (
    HypothesesViolated,
    InvalidLabel,
    NegativeEntry,
    NotInCone,
    NotPrimary,
    NotStarShaped,
    TableError,
    TailInconsistent,
    WouldGoNegative,
)
from .extremal import (
    Decomposition,
    ExtremalLabel,
    K,
    Kind,
    Kx,
    MonomialIdealSpec,
    MPow,
    R,
    combine,
    extremal_table,
    hilbert_column_cyclic,
    monomial_ideal_table,
)
from .facets import (
    E,
    Gamma,
    MPoint,
    Mu,
    Phi,
    Pi,
    Tau,
    Violation,
    delta_lambda_of,
    eval_functional,
    extremality_rank,
    facet_decompose,
    functional_list,
    generator_point,
    incidence,
    label_of,
    membership,
)
from .greedy import decompose, recombine
from .hilbert import (
    AdmissibleWitness,
    decompose_finite_length,
    max_admissible,
    star_condition,
    subtract_admissible,
    truncation,
)
from .table import (
    DeltaTable,
    GradedMap,
    RawWindow,
    Tail,
    add,
    delta,
    from_raw,
    render_window,
    scale,
    shift,
    sub_checked,
    table_value,
)
