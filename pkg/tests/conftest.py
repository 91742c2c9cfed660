import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table_reports():
    """Full weight reports of the five table codes, computed once per session."""
    from z4expand import catalog
    from z4expand.analyze import weight_report

    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = weight_report(catalog.get(name).matrix)
        return cache[name]

    return get
