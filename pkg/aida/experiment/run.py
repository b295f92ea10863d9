########################################################################
#
# File:   run.py
# Date:   2026-03-12
#
# Contents:
#   Training runs and experiment matrices.
#
# For license terms see the file COPYING.
#
########################################################################

"""Training runs and experiment matrices.

A matrix is the product of a grid of parameter values, repeated for
each seed.  A grid parameter is either an 'AidaConfig' field, 'cap'
(the size limit of the shared source classes), or 'variant' (one of the
'ABLATIONS').  Every run is named '<cell>/seed=<seed>', the cell being
the comma-separated 'name=value' pairs of its grid point."""

########################################################################
# Imports
########################################################################

import collections
import csv
import itertools
import os
import threading

import numpy

import aida
from aida import data
from aida.experiment import metrics
from aida.experiment.classes.csv_result_stream import CSVResultStream, \
     format_value
from aida.experiment.classes.json_result_stream import JSONResultStream
from aida.experiment.execution_engine import ExecutionEngine
from aida.experiment.result import Result
from aida.extension import get_class_arguments_as_dictionary
from aida.optimizer import TrainingDivergence
from aida.trace import get_tracer
from aida.train import trainer
from aida.train.aida_config import AidaConfig

########################################################################
# Constants
########################################################################

CAP = "cap"
VARIANT = "variant"

ABLATIONS = collections.OrderedDict([
    ("full", {}),
    ("no-rewards", {"uniform_rewards": True}),
    ("no-hierarchy", {"lambda_3": 0.0}),
    ("no-adversarial", {"lambda_adv": 0.0}),
    ("no-hpn", {"mode": "cdan"}),
    ])
"""The configuration overrides of each ablation variant."""

COMPARE_MODES = ["aida", "cdan", "dann", "source-only"]

SENSITIVITY_GRID = [
    ("lambda_2", [0.2, 0.4, 0.6, 0.8, 1.0, 2.0]),
    ("lambda_3", [0.1, 0.3, 0.5, 0.7, 0.9, 1.0]),
    ]

SUMMARY_METRICS = ("macro_f1", "accuracy_target", "a_distance",
                   "adaptability_error")

AGGREGATE_NAME = "aggregate.csv"
REPORTS_NAME = "reports"

########################################################################
# Classes
########################################################################

class DataSource:
    """Supplies the 'DomainPair' of each run.

    Either 'directory' names a directory written by 'write_domains',
    and every seed sees the same datasets, or 'spec' is a
    'SyntheticSpec' generated afresh with each run's seed.  A 'cap'
    then subsamples the shared source classes with the same seed.
    Pairs are built once and shared read-only between runs."""

    def __init__(self, directory=None, spec=None, threshold=None):

        assert (directory is None) != (spec is None)
        self.directory = directory
        self.spec = spec
        self.threshold = threshold
        self.__pairs = {}
        self.__lock = threading.RLock()


    def GetPair(self, seed, cap=None, tracer=None):

        key = (seed, cap)
        with self.__lock:
            if key not in self.__pairs:
                self.__pairs[key] = self.__MakePair(seed, cap, tracer)
            return self.__pairs[key]


    def __MakePair(self, seed, cap, tracer):

        if cap is not None:
            return self.GetPair(seed, None, tracer).Subsample(cap, seed,
                                                              tracer)
        if self.directory is not None:
            if self.threshold is None:
                return data.load_domains(self.directory)
            return data.load_domains(self.directory, self.threshold)
        return data.generate_synthetic_splits(self.spec.Copy(seed=seed),
                                              tracer)



class RunDescriptor:
    """One training run of a matrix.

    'id' -- The run name.

    'config' -- The 'AidaConfig' of the run.

    'source' -- The 'DataSource'.

    'parameters' -- The grid values of the run, its seed and its cell
    name, as reported in results.

    'cap' -- The shared class cap, or 'None'.

    'checkpoint_directory' -- Where the run writes its checkpoints, or
    'None'.

    'probes' -- Whether the probe metrics are computed."""

    def __init__(self, id, config, source, parameters, cap=None,
                 checkpoint_directory=None, probes=True):

        self.id = id
        self.config = config
        self.source = source
        self.parameters = parameters
        self.cap = cap
        self.checkpoint_directory = checkpoint_directory
        self.probes = probes


    def Run(self, tracer=None):
        """Train and evaluate.

        returns -- A 'Result'.  A diverged run fails; any other
        exception makes the run an error.  Neither stops the caller."""

        tracer = tracer or get_tracer()
        config = self.config
        result = Result(self.id, parameters=self.parameters)
        result[Result.FINGERPRINT] = config.GetFingerprint()
        try:
            pair = self.source.GetPair(config.seed, self.cap, tracer)
            if self.checkpoint_directory is not None \
               and not os.path.isdir(self.checkpoint_directory):
                os.makedirs(self.checkpoint_directory)
            state = trainer.train(config, pair, tracer,
                                  self.checkpoint_directory)
            report = metrics.evaluate(state.model, pair,
                                      config.GetFingerprint(), config.seed,
                                      self.probes, tracer)
            report.history = state.history
            report.curve = state.curve
            result.report = report
        except TrainingDivergence as exception:
            result.Fail(str(exception))
            if exception.checkpoint:
                result[Result.CHECKPOINT] = exception.checkpoint
        except Exception:
            result.NoteException()
        return result

########################################################################
# Functions
########################################################################

def format_cell(names, values):
    """Return the cell name of a grid point."""

    return ",".join(["%s=%s" % (name, format_value(value))
                     for name, value in zip(names, values)])


def parse_grid_values(name, text):
    """Return the values of the grid parameter 'name' from the
    comma-separated 'text'.

    raises -- 'UserError' if 'name' is not a grid parameter or a value
    does not parse."""

    values = aida.parse_string_list(text)
    if name == CAP:
        try:
            return [float(v) for v in values]
        except ValueError:
            raise aida.UserError(aida.error("invalid grid value", name=name,
                                            value=text))
    if name == VARIANT:
        for value in values:
            if value not in ABLATIONS:
                raise aida.UserError(aida.error("invalid grid value",
                                                name=name, value=value))
        return values
    fields = get_class_arguments_as_dictionary(AidaConfig)
    if name not in fields:
        raise aida.UserError(aida.error("unknown grid parameter", name=name))
    return [fields[name].ParseTextValue(v) for v in values]


def make_descriptors(config, grid, seeds, source, output_directory=None,
                     probes=True):
    """Return the 'RunDescriptor' of every cell and seed of 'grid'.

    'grid' -- A sequence of '(name, values)' pairs.

    'seeds' -- The seeds each cell is run with.

    raises -- 'UserError' if the grid or the seeds are empty."""

    grid = list(grid)
    if not grid or not all([values for name, values in grid]) or not seeds:
        raise aida.UserError(aida.error("empty grid"))
    names = [name for name, values in grid]
    descriptors = []
    for point in itertools.product(*[values for name, values in grid]):
        cell = format_cell(names, point)
        cell_config, cap = config, None
        for name, value in zip(names, point):
            if name == CAP:
                cap = value
            elif name == VARIANT:
                cell_config = cell_config.Copy(**ABLATIONS[value])
            else:
                cell_config = cell_config.Copy(**{name: value})
        for seed in seeds:
            id = "%s/seed=%d" % (cell, seed)
            parameters = dict(zip(names, point))
            parameters.update({"cell": cell, "seed": seed})
            checkpoints = None
            if output_directory is not None \
               and cell_config.checkpoint_interval > 0:
                checkpoints = os.path.join(output_directory, "checkpoints",
                                           cell.replace("=", "-"),
                                           "seed-%d" % seed)
            descriptors.append(RunDescriptor(id,
                                             cell_config.Copy(seed=seed),
                                             source, parameters, cap,
                                             checkpoints, probes))
    return descriptors


def run_matrix(config, grid, seeds, source, output_directory,
               streams=(), concurrency=1, probes=True, tracer=None):
    """Run every cell of 'grid' for every seed.

    'output_directory' -- Receives one JSON report per run under
    'reports/' and the aggregate table 'aggregate.csv'.

    'streams' -- Further 'ResultStream's.

    returns -- The 'Result's, sorted by run id.  A failed run is
    recorded and the matrix continues."""

    descriptors = make_descriptors(config, grid, seeds, source,
                                   output_directory, probes)
    if not os.path.isdir(output_directory):
        os.makedirs(output_directory)
    streams = [JSONResultStream(directory=os.path.join(output_directory,
                                                       REPORTS_NAME)),
               CSVResultStream(filename=os.path.join(output_directory,
                                                     AGGREGATE_NAME))] \
              + list(streams)
    engine = ExecutionEngine(descriptors, streams, concurrency, tracer,
                             {"aida.version": aida.version,
                              "aida.runs": str(len(descriptors))})
    return engine.Run()


def summarize_cells(results, parameters, metric_names=SUMMARY_METRICS):
    """Return one row per distinct value of 'parameters'.

    Each row holds the parameter values, the number of passing runs,
    and the mean and standard deviation over those runs of each of
    'metric_names'.  Rows follow the order of first appearance."""

    groups = collections.OrderedDict()
    for result in results:
        key = tuple([result.GetParameters().get(p) for p in parameters])
        groups.setdefault(key, [])
        if result.GetOutcome() == Result.PASS:
            groups[key].append(result.GetMetrics())
    rows = []
    for key, runs in groups.items():
        row = collections.OrderedDict(zip(parameters, key))
        row["runs"] = len(runs)
        for name in metric_names:
            values = [m[name] for m in runs if m.get(name) is not None]
            if values:
                row[name + "_mean"] = float(numpy.mean(values))
                row[name + "_std"] = float(numpy.std(values))
            else:
                row[name + "_mean"] = row[name + "_std"] = None
        rows.append(row)
    return rows


def write_rows(rows, path):
    """Write 'rows', a list of ordered maps with equal keys, as CSV."""

    with open(path, "w", encoding="utf-8", newline="") as file:
        if not rows:
            return
        writer = csv.DictWriter(file, fieldnames=list(rows[0].keys()),
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(dict([(k, format_value(v))
                                  for k, v in row.items()]))


def write_curve(curve, path):
    """Write the convergence rows of a 'TrainState' as CSV."""

    write_rows([collections.OrderedDict([(c, row[c])
                                         for c in trainer.CURVE_COLUMNS])
                for row in curve], path)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
