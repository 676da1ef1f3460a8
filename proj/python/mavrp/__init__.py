"""Multi-agent vehicle routing environments."""

from ._mavrp import (
    PROBLEMS,
    Env,
    Instance,
    MavrpError,
    evaluate,
    gap,
    oracle,
    policy_names,
    rollout,
)

__all__ = [
    "PROBLEMS",
    "Env",
    "Instance",
    "MavrpError",
    "evaluate",
    "gap",
    "oracle",
    "policy_names",
    "rollout",
]
