"""Exact and Monte Carlo analysis of the repeated Sleeping Beauty experiment.

The repetition of the experiment induces a three-state ergodic Markov chain
on (Heads-Monday, Tails-Monday, Tuesday). This package verifies, exactly with
rational arithmetic and empirically with seeded Monte Carlo, that the
per-experiment Heads frequency is 1/2 while the per-awakening Heads frequency
is the stationary mass 1/3.
"""

from .markov_core import (
    Chain,
    ConvergenceRow,
    DimensionMismatch,
    DistributionVector,
    DuplicateState,
    EmptyStateSpace,
    ErgodicityReport,
    MarkovError,
    MissingInitialDistribution,
    NonStochasticRow,
    NotErgodic,
    NotIrreducible,
    StateSpace,
    TransitionMatrix,
    convergence_report,
    ergodicity_report,
    expectation,
    is_aperiodic,
    is_ergodic,
    is_irreducible,
    matrix_power,
    n_step_distribution,
    new_chain,
    period,
    stationary_distribution,
    total_variation_distance,
)
from .rationals import as_exact, format_rational, parse_rational
from .sbp_model import (
    Awakening,
    EmptyInput,
    MalformedObservation,
    Observation,
    Toss,
    UndeterminedSymbol,
    decode_observations,
    encode_coins,
    exact_distribution,
    project_labels,
    sbp_chain,
    validate_labeled_sequence,
)
from .simulation import (
    GENERATOR_NAME,
    Checkpoint,
    LLNTrace,
    SimulationConfig,
    SimulationRecord,
    StateCounts,
    forced_run,
    halfer_statistic,
    indicator,
    lln_trace,
    record_from_json,
    record_to_csv,
    record_to_json,
    run_simulation,
    state_frequencies,
    thirder_statistic,
)

__version__ = "0.1.0"
