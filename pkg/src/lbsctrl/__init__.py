"""Logic-based switching gain control: plants, supervisor, engine, baselines."""

from .baselines import (
    BASELINE_CASES,
    GainLaw,
    bounded_tv_gain_deriv,
    dynamic_gain_deriv,
    make_case_law,
    make_lbs_law,
    static_gain,
    unbounded_tv_gain,
)
from .controller import control_law, observer_deriv, reconstruct, scaled_view, to_scaled
from .engine import (
    ComparisonReport,
    RunMetrics,
    SimConfig,
    SwitchEvent,
    TrajectoryRecord,
    compare_runs,
    compute_metrics,
    rk4_step,
    run_scenario,
)
from .linalg import (
    HurwitzCoeffs,
    LyapunovCertificate,
    build_closed_loop_matrices,
    expm,
    routh_hurwitz,
    solve_lyapunov,
    sym_eig_extremes,
)
from .plant import (
    DisturbanceBoundWitness,
    EnvelopeReport,
    GrowthEnvelope,
    Plant,
    circuit_control_from_input,
    circuit_input_from_control,
    circuit_to_feedforward,
    disturbance_witness,
    envelope_check,
    make_chain_plant,
    make_example1_plant,
    make_example2_plant,
)
from .speedreg import phi, phi_deriv, phi_lower_bound_check
from .supervisor import (
    SEQUENCE_FORMULAS,
    SupervisorState,
    SwitchingSequences,
    apply_switch,
    chi,
    gain_update,
    make_initial_state,
    make_phi_derived,
    make_phi_one,
    make_sequence,
    omega,
    should_switch,
    theta_bar_integrand,
)

__version__ = "0.1.0"

__all__ = [
    "BASELINE_CASES",
    "ComparisonReport",
    "DisturbanceBoundWitness",
    "EnvelopeReport",
    "GainLaw",
    "GrowthEnvelope",
    "HurwitzCoeffs",
    "LyapunovCertificate",
    "Plant",
    "RunMetrics",
    "SEQUENCE_FORMULAS",
    "SimConfig",
    "SupervisorState",
    "SwitchEvent",
    "SwitchingSequences",
    "TrajectoryRecord",
    "apply_switch",
    "bounded_tv_gain_deriv",
    "build_closed_loop_matrices",
    "chi",
    "dynamic_gain_deriv",
    "circuit_control_from_input",
    "circuit_input_from_control",
    "circuit_to_feedforward",
    "compare_runs",
    "compute_metrics",
    "control_law",
    "disturbance_witness",
    "envelope_check",
    "expm",
    "gain_update",
    "make_case_law",
    "make_chain_plant",
    "make_example1_plant",
    "make_example2_plant",
    "make_initial_state",
    "make_lbs_law",
    "make_phi_derived",
    "make_phi_one",
    "make_sequence",
    "observer_deriv",
    "omega",
    "phi",
    "phi_deriv",
    "phi_lower_bound_check",
    "reconstruct",
    "rk4_step",
    "routh_hurwitz",
    "run_scenario",
    "scaled_view",
    "should_switch",
    "solve_lyapunov",
    "static_gain",
    "sym_eig_extremes",
    "theta_bar_integrand",
    "to_scaled",
    "unbounded_tv_gain",
    "__version__",
]
