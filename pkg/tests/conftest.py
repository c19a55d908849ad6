import os

import hypothesis
import pytest

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("ci", max_examples=200)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def engine():
    """A lexicon engine over the bundled data files, shared per session."""
    from turklex.engine import LexiconEngine

    return LexiconEngine.from_bundled_data()
