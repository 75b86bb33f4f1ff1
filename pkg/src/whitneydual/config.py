"""Resource limits with environment-variable overrides.

Environment variables (all optional, integer-valued):
    WHITNEYDUAL_MAX_N_BUILD   cap on n for poset construction (default 6)
    WHITNEYDUAL_MAX_N_SWEEP   cap on n for full labeling-axiom sweeps (default 5)
    WHITNEYDUAL_ISO_BUDGET    node budget for exact isomorphism search
    WHITNEYDUAL_CHAIN_CACHE   max cached interval chain enumerations
"""

from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


@dataclass(frozen=True)
class Limits:
    """Runtime budgets; construct once and pass down, or use DEFAULT_LIMITS."""

    max_n_build: int = 6
    max_n_sweep: int = 5
    iso_node_budget: int = 2_000_000
    chain_cache_entries: int = 100_000

    @classmethod
    def from_env(cls) -> "Limits":
        return cls(
            max_n_build=_env_int("WHITNEYDUAL_MAX_N_BUILD", cls.max_n_build),
            max_n_sweep=_env_int("WHITNEYDUAL_MAX_N_SWEEP", cls.max_n_sweep),
            iso_node_budget=_env_int("WHITNEYDUAL_ISO_BUDGET", cls.iso_node_budget),
            chain_cache_entries=_env_int("WHITNEYDUAL_CHAIN_CACHE", cls.chain_cache_entries),
        )


DEFAULT_LIMITS = Limits.from_env()
