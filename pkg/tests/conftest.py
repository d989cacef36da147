import hypothesis
import pytest

from fa2layout.graph import from_edges

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture
def pair_graph():
    return from_edges([("A", "B", 1.0)])
