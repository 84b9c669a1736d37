import os

import pytest
from hypothesis import HealthCheck, settings

from boundary_manifold.corpus import corpus as _corpus

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=150, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = _corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def corpus_params():
    return [pytest.param(a, id=name) for name, a in CORPUS.items()]
