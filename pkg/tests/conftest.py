import os

import pytest

from castlens.cli import RunConfig, run_extraction
from castlens.report import score_entries

FIXTURE_CORPUS = os.path.join(os.path.dirname(__file__), "fixtures", "corpus")


@pytest.fixture(scope="session")
def corpus_root():
    return FIXTURE_CORPUS


@pytest.fixture(scope="session")
def extracted(corpus_root):
    """All cast records from the bundled mini corpus, extraction only."""
    entries, summary = run_extraction(RunConfig(root=corpus_root))
    return entries, summary


@pytest.fixture(scope="session")
def scored(extracted):
    entries, _ = extracted
    return score_entries(entries, model="uniform")


@pytest.fixture(scope="session")
def by_id(scored):
    return {e.record_id: e for e in scored}
