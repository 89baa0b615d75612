"""votewalk: four-state binary-consensus gossip with random-walk analysis.

A simulator and exact-analysis toolkit for the two-bit gossip voting
protocol in which strong opinions random-walk a network, annihilate in
opposite pairs, and drag weak opinions to the surviving majority sign.
The package pairs the event-level simulator with the walk-level theory:
transition matrices, hitting times, effective resistances, meeting-time
chains, and worst-case bound certificates, each checkable against the
other numerically.
"""

from .analysis import (
    BoundReport,
    WeightedView,
    bound_report,
    commute_identity_check,
    cyclic_tour_check,
    edge_weights,
    effective_resistance,
    hidden_vertices,
    hitting_matrix,
    is_hidden,
    potential_phi,
    resistance_matrix,
)
from .chains import (
    JointDistribution,
    MeetingEstimate,
    TokenPair,
    TransitionMatrix,
    estimate_meeting_time,
    exact_meeting_times,
    joint_outcomes,
    joint_step,
    transition_matrix,
    validate_joint_distribution,
)
from .engine import (
    DEFAULT_MAX_TICKS,
    RunResult,
    TraceRow,
    run,
    run_traced,
    step,
    write_trace_csv,
)
from .graphs import (
    Graph,
    erdos_renyi_connected,
    erdos_renyi_with_attempts,
    from_edge_list,
    is_connected,
    make_topology,
    to_edge_list,
)
from .protocol import (
    Opinion,
    OpinionCounts,
    NetworkState,
    apply_update,
    init_state,
    is_converged,
    margin,
    tally,
)
from .experiments import (
    MeetingHittingReport,
    ScalingReport,
    SweepConfig,
    SweepSummary,
    meeting_vs_hitting,
    reference_curve,
    scaling_ratio,
    sweep_convergence,
    write_sweep_csv,
)
from .seeding import mix64

__version__ = "0.1.0"
