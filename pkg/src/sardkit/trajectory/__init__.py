from .integrate import (
    integrate, Trajectory, Event, EventHit, Euclidean, HPMetric, IntegrationError, TOL_RANGE,
)
from .sections import (
    Section, Hyperplane, Crossing, section_crossings, poincare_map, poincare_returns, NoReturn,
)
from .monodromic import (
    monodromic_length_experiment, MonodromicResult, power_fit, comparison_constant,
    transition, transition_monotonicity_check, TransitionReport, TransitionSample,
)
from .lift import (
    abnormal_lift, Lift, LiftError, stokes_action, StokesResult, endpoint_map, endpoint_rank,
    EndpointRank, MAX_CONTROL_PIECES,
)
from .reach import reachable_set, ReachTree, ReachVertex, ReachEdge, Junction, eigen_directions
from .io import write_trajectory_csv, write_polyline_csv, reach_tree_json
