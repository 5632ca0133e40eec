"""Low-distortion matching of a small pattern metric into a doubling metric."""

from ._core import (
    CliqueInstance,
    FiniteMetric,
    Graph,
    GuardExceeded,
    InputError,
    achieved_rho,
    brute_k_clique,
    brute_min_distortion,
    brute_rho_matchings,
    candidate_lengths,
    decide_distortion,
    distortion,
    gen_clique_instance,
    gen_min_distortion_instance,
    min_distortion,
    r_net,
    solve_distortion,
    validate_metric,
    verify_matching,
)

__all__ = [
    "CliqueInstance",
    "FiniteMetric",
    "Graph",
    "GuardExceeded",
    "InputError",
    "achieved_rho",
    "brute_k_clique",
    "brute_min_distortion",
    "brute_rho_matchings",
    "candidate_lengths",
    "decide_distortion",
    "distortion",
    "gen_clique_instance",
    "gen_min_distortion_instance",
    "min_distortion",
    "r_net",
    "solve_distortion",
    "validate_metric",
    "verify_matching",
]
