"""True-count dispersion, Kelly long-run analytics, and seeded Monte Carlo.

Exact rational machinery for the distribution of the true count under card
removal, closed-form and simulated seat-position dispersion, and Kelly
growth-rate statistics with a noisy advantage.
"""
from .counting import (
    CountSystem,
    WeightComposition,
    builtin_systems,
    composition,
    deplete,
    format_composition,
    fresh_shoe,
    get_system,
    make_count_system,
    parse_composition,
    parse_system_file,
    sigma0,
    true_count,
)
from .errors import (
    BadRangeError,
    ConfigError,
    ConvergenceError,
    EmptyClassError,
    EmptyDeckError,
    InfeasiblePrefixError,
    InvalidMultiplicityError,
    ParseError,
    ShoeExhaustedError,
    TrueCountError,
    UnbalancedSystemError,
    UnknownSystemError,
)
from .exact import (
    SigmaResult,
    TrueCountDistribution,
    expected_tc,
    sigma1_approx,
    sigma1_exact,
    sigma_n_approx,
    sigma_n_exact,
    tc_distribution,
)
from .kelly import (
    FuzzyAdvantage,
    GrowthStats,
    advantage_variance,
    growth_stats_binomial,
    growth_var_fuzzy,
    kelly_fraction,
    long_run,
    verify_kelly_optimality,
)
from .seats import DEFAULT_EXTRA_LAW, SeatCardModel, n_cards_between, sigma_ratio
from .sim import (
    FixedAdvantageModel,
    SimulationReport,
    TwoPointAdvantageModel,
    predicted_increment_std,
    simulate_bankroll,
    simulate_seat_sigma,
    simulate_tc_increment,
    trial_rng,
)
from .verify import verify_all, verify_kelly, verify_lemmas, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "BadRangeError",
    "ConfigError",
    "ConvergenceError",
    "CountSystem",
    "DEFAULT_EXTRA_LAW",
    "EmptyClassError",
    "EmptyDeckError",
    "FixedAdvantageModel",
    "FuzzyAdvantage",
    "GrowthStats",
    "InfeasiblePrefixError",
    "InvalidMultiplicityError",
    "ParseError",
    "SeatCardModel",
    "ShoeExhaustedError",
    "SigmaResult",
    "SimulationReport",
    "TrueCountDistribution",
    "TrueCountError",
    "TwoPointAdvantageModel",
    "UnbalancedSystemError",
    "UnknownSystemError",
    "WeightComposition",
    "advantage_variance",
    "builtin_systems",
    "composition",
    "deplete",
    "expected_tc",
    "format_composition",
    "fresh_shoe",
    "get_system",
    "growth_stats_binomial",
    "growth_var_fuzzy",
    "kelly_fraction",
    "long_run",
    "make_count_system",
    "n_cards_between",
    "parse_composition",
    "parse_system_file",
    "predicted_increment_std",
    "sigma0",
    "sigma1_approx",
    "sigma1_exact",
    "sigma_n_approx",
    "sigma_n_exact",
    "sigma_ratio",
    "simulate_bankroll",
    "simulate_seat_sigma",
    "simulate_tc_increment",
    "tc_distribution",
    "trial_rng",
    "true_count",
    "verify_all",
    "verify_kelly",
    "verify_kelly_optimality",
    "verify_lemmas",
    "verify_theorem",
]
