########################################################################
#
# File:   test_acceptance.py
# Date:   2026-03-24
#
# Contents:
#   End-to-end trend checks on the desk-scale synthetic task.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import numpy
import pytest

from aida import data
from aida.experiment import run
from aida.experiment.result import Result
from aida.experiment.run import DataSource
from aida.train import trainer
from aida.train.aida_config import AidaConfig

########################################################################
# Constants
########################################################################

SEEDS = [0, 1, 2, 3, 4]

SPARSE_CAP = 15.0
"""Every shared class keeps this many source examples; the non-shared
siblings keep all 500."""

########################################################################
# Functions
########################################################################

def desk_config(**overrides):
    """Return a configuration that trains the desk task in a few
    seconds per run."""

    arguments = dict(batch_size=32, iterations=1000, feature_dim=32,
                     hidden_dim=32, classifier_hidden=0,
                     discriminator_hidden=64, eval_interval=0,
                     learning_rate=0.01)
    arguments.update(overrides)
    return AidaConfig(**arguments)


def desk_source():
    """The default synthetic task: twelve leaves under four parents,
    one shared leaf per parent."""

    return DataSource(spec=data.SyntheticSpec(target_count=200,
                                              target_eval_count=200))


def metric_by_mode(results, name):
    """Return a map from mode to the list of 'name' values over seeds,
    in seed order."""

    values = {}
    for result in sorted(results, key=lambda r: r.GetParameters()["seed"]):
        assert result.GetOutcome() == Result.PASS, result.GetCause()
        mode = result.GetParameters()["mode"]
        values.setdefault(mode, []).append(result.GetMetrics()[name])
    return values


@pytest.fixture(scope="module")
def comparison(tmp_path_factory):
    """The three-mode comparison over every seed."""

    directory = tmp_path_factory.mktemp("compare")
    grid = [(run.CAP, [SPARSE_CAP]),
            ("mode", ["aida", "cdan", "source-only"])]
    return run.run_matrix(desk_config(), grid, SEEDS, desk_source(),
                          str(directory), concurrency=4)

########################################################################
# Tests
########################################################################

@pytest.mark.slow
class TestTrends:

    def test_macro_f1_margins(self, comparison):

        f1 = metric_by_mode(comparison, "macro_f1")
        aida_mean = numpy.mean(f1["aida"])
        assert aida_mean - numpy.mean(f1["cdan"]) >= 0.05
        assert aida_mean - numpy.mean(f1["source-only"]) >= 0.10


    @pytest.mark.parametrize("name", ["a_distance", "adaptability_error"])
    def test_discrepancy_direction(self, comparison, name):

        values = metric_by_mode(comparison, name)
        wins = sum([a <= c for a, c in zip(values["aida"], values["cdan"])])
        assert wins >= 4



@pytest.mark.slow
class TestSensitivity:

    def test_every_cell_beats_source_only(self, tmp_path):

        source = desk_source()
        grid = [(run.CAP, [SPARSE_CAP])] + list(run.SENSITIVITY_GRID)
        results = run.run_matrix(desk_config(), grid, [0], source,
                                 str(tmp_path / "sweep"), concurrency=4,
                                 probes=False)
        baseline, = run.run_matrix(desk_config(mode="source-only"),
                                   [(run.CAP, [SPARSE_CAP])], [0], source,
                                   str(tmp_path / "baseline"),
                                   probes=False)
        floor = baseline.GetMetrics()["macro_f1"]
        for result in results:
            assert result.GetOutcome() == Result.PASS
            assert result.GetMetrics()["macro_f1"] >= floor, result.GetId()



@pytest.mark.slow
class TestConvergence:

    def test_source_only_fits_separable_source(self, tracer):

        spec = data.SyntheticSpec(parents=2, children=2, shared_children=1,
                                  source_count=100, target_count=20,
                                  target_eval_count=20, dimension=4,
                                  parent_spread=8.0, child_offset=6.0,
                                  class_spread=0.5)
        pair = data.generate_synthetic_splits(spec, tracer)
        config = desk_config(mode="source-only", iterations=500,
                             batch_size=16, feature_dim=8, hidden_dim=8,
                             discriminator_hidden=8)
        state = trainer.train(config, pair, tracer)
        indices = [i for i, e in enumerate(pair.source)
                   if pair.tree.IsShared(e.label)]
        predictions = state.model.Predict(pair.source.GetPayloads(indices))
        accuracy = numpy.mean(predictions
                              == pair.source.GetLabels(indices))
        assert accuracy > 0.99

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
