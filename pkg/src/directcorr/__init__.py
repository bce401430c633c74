"""Total- and direct-correlation measures for three-variable categorical data.

The joint distribution p(x, y, z) is the universal input.  The measure
family splits in two: removal-based measures compare the joint with a
reconstruction that has the direct X-Y link severed (CMI, PMI, ICMI and
their root-JS regularized analogues), while do-calculus measures compare
the intervened distributions p(y | do(x)) across values of x (ACE, NACE,
RACE, do-based mutual information).  Achievable upper bounds, sparse-cell
strategies, toy models, benchmark datasets and bootstrap confidence
intervals round out the toolkit; the ``directcorr`` CLI fronts all of it.
"""

from .bounds import (
    BOUND_MEASURES,
    BoundReport,
    CouplingIterator,
    achievable_bound,
    achievable_bounds,
    enumerate_couplings,
    rmi_max_uniform,
)
from .datasets import (
    DatasetSchema,
    adult_education_bin,
    builtin_berkeley,
    builtin_titanic,
    load_csv,
    load_schema,
    to_joint,
)
from .docalc import (
    DoConditional,
    DoJoint,
    ace,
    ace_kl,
    do_conditional,
    do_joint,
    mi_do,
    nace,
    race,
    rmi_do,
)
from .errors import DirectCorrError
from .models import (
    DecisionParams,
    SimpleParams,
    decision_model_joint,
    fig5_corpus,
    simple_model_joint,
)
from .prob import (
    Alphabet,
    CondTable,
    Dist1,
    Joint2,
    Joint3,
    conditional,
    entropy,
    from_counts,
    js_divergence,
    kl_divergence,
    marginal,
    sqrt_js,
    total_variation,
)
from .registry import MEASURES, TABLE_MEASURES, evaluate
from .removal import (
    RemovalReport,
    cmi,
    cmi_js,
    icmi_oneway,
    pmi,
    rcmi,
    reconstruct_q_cmi,
    reconstruct_q_pmi,
    removal_report,
    ricmi,
    rpmi,
)
from .resampling import CiReport, ObservationTable, bootstrap_ci, bootstrap_cis
from .sparse import DEFAULT_STRATEGY, SparseStrategy
from .totalcorr import (
    NumericEncoding,
    mutual_information,
    normalized_mi,
    partial_correlation,
    pcc,
    regularized_mi,
)

__version__ = "0.1.0"
