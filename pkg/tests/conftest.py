########################################################################
#
# File:   conftest.py
# Date:   2026-03-14
#
# Contents:
#   Shared fixtures of the AIDA test suite.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import io
import os

import pytest

import aida
from aida import data
from aida.hierarchy import LabelTree
from aida.trace import Tracer
from aida.train.aida_config import AidaConfig

########################################################################
# Hooks
########################################################################

def pytest_collection_modifyitems(config, items):

    if os.environ.get("AIDA_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set AIDA_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)

########################################################################
# Fixtures
########################################################################

@pytest.fixture(autouse=True)
def home_directory(tmp_path, monkeypatch):
    """Keep '~/.aidarc' of the user out of every test."""

    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    return home


@pytest.fixture
def tracer():
    """A 'Tracer' writing to memory."""

    return Tracer(io.StringIO())


@pytest.fixture
def generator():

    return aida.make_random(1234)


@pytest.fixture
def sibling_tree():
    """Three parents: 'A' with one shared and one non-shared leaf, 'B'
    with no shared leaf, and 'C' with two shared leaves."""

    return LabelTree(["a1", "a2", "b1", "b2", "c1", "c2"],
                     ["A", "B", "C"],
                     [0, 0, 1, 1, 2, 2],
                     [1, 0, 0, 0, 1, 1],
                     counts=[5, 100, 7, 9, 5, 1000])


@pytest.fixture
def small_spec():
    """Two parents of two leaves, one of them shared, in four
    dimensions."""

    return data.SyntheticSpec(parents=2, children=2, shared_children=1,
                              source_count=40, target_count=24,
                              target_eval_count=24, dimension=4)


@pytest.fixture
def small_pair(small_spec, tracer):

    return data.generate_synthetic_splits(small_spec, tracer)


@pytest.fixture
def small_config():
    """A configuration small enough to train in well under a second."""

    return AidaConfig(batch_size=8, iterations=4, feature_dim=6,
                      hidden_dim=0, classifier_hidden=0,
                      discriminator_hidden=8, eval_interval=0,
                      learning_rate=0.05)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
