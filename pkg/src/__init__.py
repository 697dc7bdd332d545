"""
rtt-planner - latency-optimal storage planning for geo-distributed networks
"""

__version__ = "1.0.0"
__author__ = "rtt-planner contributors"
__description__ = "RTT-aware storage planning: latency bounds, optimal uncoded placements and XOR codes"

from .config import PlannerConfig
from .errors import PlannerError
from .network import Network, avg_latency_lower_bound, lambda_profile, validate_network
from .planner import PlanDocument, plan

__all__ = [
    "Network",
    "PlanDocument",
    "PlannerConfig",
    "PlannerError",
    "avg_latency_lower_bound",
    "lambda_profile",
    "plan",
    "validate_network",
]
