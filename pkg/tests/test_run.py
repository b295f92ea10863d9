########################################################################
#
# File:   test_run.py
# Date:   2026-03-21
#
# Contents:
#   Tests of experiment matrices.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import csv
import json
import os

import pytest

import aida
from aida import data
from aida.experiment import run
from aida.experiment.execution_engine import ExecutionEngine
from aida.experiment.result import Result
from aida.experiment.result_stream import ResultStream
from aida.experiment.run import DataSource

########################################################################
# Classes
########################################################################

class Descriptor:
    """A run that passes at once, or raises 'failure'."""

    def __init__(self, id, failure=None):

        self.id = id
        self.parameters = {"name": id}
        self.failure = failure


    def Run(self, tracer=None):

        if self.failure is not None:
            raise self.failure
        return Result(self.id, parameters=self.parameters)



class RecordingStream(ResultStream):
    """Remembers everything it is given; raises on the result of
    'refuse'."""

    def __init__(self, refuse=None):

        ResultStream.__init__(self)
        self.refuse = refuse
        self.annotations = {}
        self.ids = []
        self.summarized = False


    def WriteAnnotation(self, key, value):

        self.annotations[key] = value


    def WriteResult(self, result):

        if result.GetId() == self.refuse:
            raise KeyboardInterrupt
        self.ids.append(result.GetId())


    def Summarize(self):

        self.summarized = True

########################################################################
# Functions
########################################################################

def read_table(path):

    with open(path, "r", encoding="utf-8") as file:
        return list(csv.DictReader(file))


def make_result(id, outcome, parameters, summary):
    """Return a 'Result' whose report summary is 'summary'."""

    class Report:

        def GetSummary(self):

            return summary

    result = Result(id, outcome, parameters)
    if summary is not None:
        result.report = Report()
    return result

########################################################################
# Tests
########################################################################

class TestGridValues:

    def test_cap(self):

        assert run.parse_grid_values("cap", "5, 50,inf") \
               == [5.0, 50.0, float("inf")]


    def test_variant(self):

        assert run.parse_grid_values("variant", "full,no-hpn") \
               == ["full", "no-hpn"]
        with pytest.raises(aida.UserError):
            run.parse_grid_values("variant", "full,no-such-variant")


    def test_configuration_field(self):

        assert run.parse_grid_values("lambda_2", "0.1,0.2") == [0.1, 0.2]
        assert run.parse_grid_values("mode", "aida,dann") == ["aida", "dann"]


    def test_unknown_parameter(self):

        with pytest.raises(aida.UserError):
            run.parse_grid_values("lambda_9", "1")


    @pytest.mark.parametrize("name,text", [("cap", "few"),
                                           ("lambda_2", "-1"),
                                           ("batch_size", "many")])
    def test_bad_value(self, name, text):

        with pytest.raises(aida.UserError):
            run.parse_grid_values(name, text)



class TestDescriptors:

    def test_product(self, small_config, small_spec):

        source = DataSource(spec=small_spec)
        grid = [("lambda_2", [0.1, 0.2]), ("cap", [5.0])]
        descriptors = run.make_descriptors(small_config, grid, [0, 3],
                                           source)
        assert [d.id for d in descriptors] \
               == ["lambda_2=0.1,cap=5.0/seed=0",
                   "lambda_2=0.1,cap=5.0/seed=3",
                   "lambda_2=0.2,cap=5.0/seed=0",
                   "lambda_2=0.2,cap=5.0/seed=3"]
        last = descriptors[-1]
        assert last.config.lambda_2 == 0.2
        assert last.config.seed == 3
        assert last.cap == 5.0
        assert last.parameters == {"lambda_2": 0.2, "cap": 5.0,
                                   "cell": "lambda_2=0.2,cap=5.0",
                                   "seed": 3}
        assert last.checkpoint_directory is None


    def test_variant(self, small_config, small_spec):

        source = DataSource(spec=small_spec)
        grid = [("variant", ["no-rewards", "no-hpn"])]
        first, second = run.make_descriptors(small_config, grid, [0], source)
        assert first.config.uniform_rewards
        assert first.config.mode == "aida"
        assert second.config.mode == "cdan"
        assert not second.config.uniform_rewards


    def test_checkpoint_directories(self, small_config, small_spec,
                                    tmp_path):

        config = small_config.Copy(checkpoint_interval=2)
        descriptor, = run.make_descriptors(config, [("lambda_3", [0.5])],
                                           [1], DataSource(spec=small_spec),
                                           str(tmp_path))
        assert descriptor.checkpoint_directory \
               == os.path.join(str(tmp_path), "checkpoints", "lambda_3-0.5",
                               "seed-1")


    @pytest.mark.parametrize("grid,seeds", [([], [0]),
                                            ([("lambda_2", [])], [0]),
                                            ([("lambda_2", [0.1])], [])])
    def test_empty(self, small_config, small_spec, grid, seeds):

        with pytest.raises(aida.UserError):
            run.make_descriptors(small_config, grid, seeds,
                                 DataSource(spec=small_spec))



class TestDataSource:

    def test_pairs_are_cached(self, small_spec, tracer):

        source = DataSource(spec=small_spec)
        pair = source.GetPair(0, tracer=tracer)
        assert source.GetPair(0, tracer=tracer) is pair
        assert source.GetPair(1, tracer=tracer) is not pair


    def test_cap(self, small_spec, tracer):

        source = DataSource(spec=small_spec)
        full = source.GetPair(0, tracer=tracer)
        capped = source.GetPair(0, 3.0, tracer)
        counts = capped.tree.counts
        for leaf in full.tree.GetSharedIndices():
            assert counts[leaf] == 3
        assert len(capped.source) < len(full.source)


    def test_directory(self, small_pair, tmp_path, tracer):

        data.write_domains(small_pair, str(tmp_path), {})
        source = DataSource(directory=str(tmp_path))
        first = source.GetPair(0, tracer=tracer)
        second = source.GetPair(7, tracer=tracer)
        assert len(first.source) == len(second.source)
        assert first.tree.GetIdentifier() == second.tree.GetIdentifier()



class TestMatrix:

    def test_single_run(self, small_config, small_spec, tmp_path, tracer):

        results = run.run_matrix(small_config, [("lambda_2", [0.4])], [0],
                                 DataSource(spec=small_spec), str(tmp_path),
                                 probes=False, tracer=tracer)
        result, = results
        assert result.GetOutcome() == Result.PASS
        assert result[Result.FINGERPRINT] \
               == small_config.Copy(lambda_2=0.4, seed=0).GetFingerprint()
        reports = os.listdir(str(tmp_path / "reports"))
        assert len(reports) == 1
        with open(str(tmp_path / "reports" / reports[0])) as file:
            document = json.load(file)
        assert document["outcome"] == "PASS"
        assert document["parameters"]["seed"] == 0
        assert document["report"]["macro_f1"] is not None
        rows = read_table(str(tmp_path / "aggregate.csv"))
        assert [row["run"] for row in rows] == ["lambda_2=0.4/seed=0"]
        assert rows[0]["a_distance"] == ""


    def test_reruns_are_identical(self, small_config, small_spec, tmp_path,
                                  tracer):

        grid = [("lambda_3", [0.0, 0.9])]
        contents = []
        for name, concurrency in [("one", 1), ("two", 1), ("three", 2)]:
            directory = tmp_path / name
            run.run_matrix(small_config, grid, [0, 1],
                           DataSource(spec=small_spec), str(directory),
                           concurrency=concurrency, probes=False,
                           tracer=tracer)
            contents.append((directory / "aggregate.csv").read_bytes())
        assert contents[0] == contents[1]
        assert contents[0] == contents[2]


    def test_failing_cell(self, small_config, small_spec, tmp_path, tracer):

        grid = [("encoder", ["vector-mlp", "sequence-recurrent"])]
        results = run.run_matrix(small_config, grid, [0],
                                 DataSource(spec=small_spec), str(tmp_path),
                                 probes=False, tracer=tracer)
        outcomes = dict([(r.GetParameters()["encoder"], r.GetOutcome())
                         for r in results])
        assert outcomes == {"vector-mlp": Result.PASS,
                            "sequence-recurrent": Result.ERROR}
        failed = [r for r in results if r.GetOutcome() == Result.ERROR][0]
        assert Result.EXCEPTION in failed
        assert len(read_table(str(tmp_path / "aggregate.csv"))) == 2



class TestSummaries:

    def test_cells(self):

        results = [
            make_result("a/seed=0", Result.PASS, {"cell": "a"},
                        {"macro_f1": 0.5, "a_distance": None}),
            make_result("a/seed=1", Result.PASS, {"cell": "a"},
                        {"macro_f1": 0.7, "a_distance": None}),
            make_result("b/seed=0", Result.ERROR, {"cell": "b"}, None),
            ]
        rows = run.summarize_cells(results, ["cell"],
                                   ("macro_f1", "a_distance"))
        assert [row["cell"] for row in rows] == ["a", "b"]
        assert rows[0]["runs"] == 2
        assert rows[0]["macro_f1_mean"] == pytest.approx(0.6)
        assert rows[0]["macro_f1_std"] == pytest.approx(0.1)
        assert rows[0]["a_distance_mean"] is None
        assert rows[1]["runs"] == 0
        assert rows[1]["macro_f1_mean"] is None


    def test_write_rows(self, tmp_path):

        path = str(tmp_path / "table.csv")
        run.write_rows([{"cell": "a", "value": 0.25, "missing": None}], path)
        assert read_table(path) == [{"cell": "a", "value": "0.25",
                                     "missing": ""}]
        run.write_rows([], path)
        assert os.path.getsize(path) == 0



class TestEngine:

    @pytest.mark.parametrize("concurrency", [1, 3])
    def test_results(self, tracer, concurrency):

        stream = RecordingStream()
        engine = ExecutionEngine([Descriptor(i) for i in "bac"], [stream],
                                 concurrency, tracer, {"aida.seed": "0"})
        results = engine.Run()
        assert [r.GetId() for r in results] == ["a", "b", "c"]
        assert sorted(stream.ids) == ["a", "b", "c"]
        assert stream.annotations == {"aida.seed": "0"}
        assert stream.summarized


    def test_worker_exception(self, tracer):

        engine = ExecutionEngine([Descriptor("a"),
                                  Descriptor("b", ValueError("boom"))],
                                 concurrency=2, tracer=tracer)
        first, second = engine.Run()
        assert first.GetOutcome() == Result.PASS
        assert second.GetOutcome() == Result.ERROR
        assert second.GetParameters() == {"name": "b"}
        assert "ValueError: boom" in second[Result.EXCEPTION]


    def test_interrupted(self, tracer):

        stream = RecordingStream(refuse="b")
        engine = ExecutionEngine([Descriptor(i) for i in "abc"], [stream],
                                 tracer=tracer)
        with pytest.raises(KeyboardInterrupt):
            engine.Run()
        assert stream.ids == ["a"]
        assert stream.annotations == {"aida.run.aborted": "true"}
        assert stream.summarized

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
