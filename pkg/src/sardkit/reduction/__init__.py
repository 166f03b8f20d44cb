from .planar import (
    PlanarField, SingularityReport, jacobian_classify, class_from_invariants, is_elementary,
    focus2d, saddle, CLASSES,
)
from .blowup import (
    BlowUpChart, blow_up_point, divisor_singular_points, chart_overlap_residual, chart_map,
    ResolutionNode, ResolutionTree, resolve, NotSingular, DEFAULT_MAX_DEPTH,
)
from .divergence import (
    divergence_membership, final_singularity_check, Witness, NumericBound, Fail,
    FinalSingularityReport, Finding, MAX_MEMBERSHIP_DEGREE, grid_bound,
)
from .hp import (
    hp_metric_compare, HPComparison, PreconditionError, generalized_eigs_2x2, comparison_set,
    ComparisonSet,
)
from .roots import rational_roots
