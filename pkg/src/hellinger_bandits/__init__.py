"""Stochastic multi-armed bandits built on the squared Hellinger distance.

The package bundles the Hellinger-UCB index policy with KL-UCB and UCB1
baselines for Bernoulli and Poisson rewards, a reproducible simulation
harness with pseudo-regret aggregation, calculators for the theoretical
pull-count and regret bounds, and a low-latency batch top-k ranker for
cold-start content.
"""

from .bandit_core import BanditRound, fresh_round, select_arm, update
from .bounds import (
    BoundConstants,
    best_epsilon,
    expected_pulls_bound,
    expected_pulls_bound_terms,
    regret_lower_bound,
    regret_upper_bound,
)
from .coldstart_ranker import (
    ContentStats,
    LatencyStats,
    latency_bench,
    rank_top_k,
    read_content_stats,
    synthetic_traffic_compare,
)
from .reward_models import RewardFamily, hellinger_sq, kl_div, sample, sample_rewards, tvd
from .simulator import (
    BanditInstance,
    EpisodeResult,
    ExperimentResult,
    pseudo_regret,
    run_episode,
    run_experiment,
)
from .ucb_indices import (
    ArmState,
    IndexRule,
    PolicyConfig,
    hellinger_index_bernoulli,
    hellinger_index_generic,
    hellinger_index_poisson,
    hellinger_radius,
    index,
    kl_ucb_index,
    ucb1_index,
)

__version__ = "0.1.0"

__all__ = [
    "ArmState",
    "BanditInstance",
    "BanditRound",
    "BoundConstants",
    "ContentStats",
    "EpisodeResult",
    "ExperimentResult",
    "IndexRule",
    "LatencyStats",
    "PolicyConfig",
    "RewardFamily",
    "best_epsilon",
    "expected_pulls_bound",
    "expected_pulls_bound_terms",
    "fresh_round",
    "hellinger_index_bernoulli",
    "hellinger_index_generic",
    "hellinger_index_poisson",
    "hellinger_radius",
    "hellinger_sq",
    "index",
    "kl_div",
    "kl_ucb_index",
    "latency_bench",
    "pseudo_regret",
    "rank_top_k",
    "read_content_stats",
    "regret_lower_bound",
    "regret_upper_bound",
    "run_episode",
    "run_experiment",
    "sample",
    "sample_rewards",
    "select_arm",
    "synthetic_traffic_compare",
    "tvd",
    "ucb1_index",
    "update",
]
