"""Agent evaluation: parsing, grading, gateways, runs, and aggregation."""

from spatialbench.evalharness.aggregate import aggregate, emit_report
from spatialbench.evalharness.baselines import baseline_frequency, baseline_random
from spatialbench.evalharness.gateway import (
    AgentGateway,
    GarbageGateway,
    HttpGateway,
    ModelResponse,
    OracleGateway,
    RandomGateway,
    make_mock_gateway,
)
from spatialbench.evalharness.grading import grade
from spatialbench.evalharness.parsing import UNPARSEABLE, parse_answer
from spatialbench.evalharness.runner import EvalRecord, run_eval

__all__ = [
    "AgentGateway",
    "EvalRecord",
    "GarbageGateway",
    "HttpGateway",
    "ModelResponse",
    "OracleGateway",
    "RandomGateway",
    "UNPARSEABLE",
    "aggregate",
    "baseline_frequency",
    "baseline_random",
    "emit_report",
    "grade",
    "make_mock_gateway",
    "parse_answer",
    "run_eval",
]
