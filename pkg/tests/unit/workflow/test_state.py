"""Tests for LangGraph state definitions."""

import operator

from freq_brain.workflow import ProtocolState


class TestProtocolState:
    """Tests for ProtocolState TypedDict."""

    def test_protocol_state_has_required_keys(self) -> None:
        """Test every stage's keys are declared."""
        required_keys = ["dataset", "config", "seeds", "fractions", "domains", "readout", "views", "vault", "plans", "runs", "folds"]
        annotations = ProtocolState.__annotations__
        for key in required_keys:
            assert key in annotations, f"Missing key: {key}"

    def test_folds_channel_appends(self) -> None:
        """Test fold metrics are merged with an additive reducer."""
        assert ProtocolState.__annotations__["folds"].__metadata__ == (operator.add,)
