"""LangGraph workflow of the evaluation protocol."""

from freq_brain.workflow.orchestrator import ProtocolOrchestrator, ProtocolResult, StatusCallback, get_orchestrator
from freq_brain.workflow.state import ProtocolState

__all__ = ["ProtocolOrchestrator", "ProtocolResult", "StatusCallback", "get_orchestrator", "ProtocolState"]
