########################################################################
#
# File:   metrics.py
# Date:   2026-03-10
#
# Contents:
#   Classification metrics, probe classifiers, A-distance and
#   adaptability error.
#
# For license terms see the file COPYING.
#
########################################################################

"""Evaluation of a trained model.

'accuracy' and 'macro_f1' compare predicted and true labels.  The two
discrepancy measures train a small probe network on frozen features:
'a_distance' separates the domains and turns the held-out probe error
'e' into '2 (1 - 2 e)'; 'adaptability_error' fits one classifier to
the labeled source and target sets together and reports the sum of its
errors on each.  Every probe uses the same architecture, step count and seed
derivation, so numbers for different models are comparable."""

########################################################################
# Imports
########################################################################

import numpy

import aida
from aida import layers
from aida import optimizer
from aida import tensor
from aida.tensor import DimensionError, PreconditionError
from aida.trace import get_tracer

########################################################################
# Constants
########################################################################

PROBE_HIDDEN = 64
"""The hidden width of a probe network."""

PROBE_STEPS = 500
"""The number of full-batch updates a probe is trained for."""

PROBE_LEARNING_RATE = 0.1

PROBE_MOMENTUM = 0.9

MINIMUM_DOMAIN_EXAMPLES = 20
"""'a_distance' needs at least this many examples per domain."""

MAXIMUM_PROBE_EXAMPLES = 500
"""'evaluate' subsamples each probe input set to at most this many
examples."""

STANDARD_DEVIATION_FLOOR = 1e-12

########################################################################
# Classes
########################################################################

class EvaluationError(PreconditionError):
    """A metric cannot be computed from its inputs."""

    kind = "evaluation"



class Probe:
    """A small classifier trained on frozen features.

    With a positive 'hidden' width the probe is 'input -> hidden -> tanh
    -> classes'.  With 'hidden' zero it has no access to the input at
    all and learns only the class prior."""

    def __init__(self, input_dim, class_count, hidden=PROBE_HIDDEN, seed=0,
                 name="probe"):

        self.input_dim = input_dim
        self.class_count = class_count
        self.hidden = hidden
        generator = aida.make_random(seed, "probe", name)
        if hidden > 0:
            self.layers = [layers.Linear(name + ".0", input_dim, hidden,
                                         generator),
                           layers.Linear(name + ".1", hidden, class_count,
                                         generator)]
            self.bias = None
        else:
            self.layers = []
            self.bias = tensor.Parameter(numpy.zeros(class_count),
                                         name + ".bias")
        self.__mean = numpy.zeros(input_dim)
        self.__scale = numpy.ones(input_dim)


    def GetParameters(self):

        if self.bias is not None:
            return [self.bias]
        parameters = []
        for layer in self.layers:
            parameters.extend(layer.GetParameters())
        return parameters


    def Forward(self, x):
        """Return the [n x classes] probabilities of the standardized
        rows of 'x'."""

        x = (numpy.asarray(x, dtype=numpy.float64) - self.__mean) \
            / self.__scale
        if self.bias is not None:
            logits = tensor.add(tensor.Tensor(numpy.zeros((len(x),
                                                           self.class_count))),
                                self.bias)
        else:
            logits = self.layers[1].Forward(
                tensor.tanh(self.layers[0].Forward(tensor.Tensor(x))))
        return tensor.softmax(logits)


    def Fit(self, x, y, steps=PROBE_STEPS,
            learning_rate=PROBE_LEARNING_RATE, momentum=PROBE_MOMENTUM):
        """Train on the rows of 'x' with integer labels 'y'.

        Inputs are standardized with the mean and standard deviation of
        'x'; constant columns are left unscaled."""

        x = numpy.asarray(x, dtype=numpy.float64)
        self.__mean = x.mean(axis=0)
        scale = x.std(axis=0)
        self.__scale = numpy.where(scale < STANDARD_DEVIATION_FLOOR, 1.0,
                                   scale)
        sgd = optimizer.SGD(self.GetParameters(), learning_rate, momentum)
        for step in range(steps):
            tensor.backward(tensor.cross_entropy(self.Forward(x), y))
            sgd.Step(step)
        return self


    def Predict(self, x):

        if len(x) == 0:
            return numpy.zeros(0, dtype=numpy.int64)
        return numpy.argmax(self.Forward(x).values, axis=1)



class MetricsReport:
    """The evaluation of one run.

    'accuracy' -- A map from split name to accuracy.

    'per_class_f1' -- A map from leaf name to the F1 on the target
    evaluation set, for the classes that occur there.

    'macro_f1' -- The mean of 'per_class_f1', or 'None'.

    'a_distance', 'adaptability_error' -- Probe measures, or 'None' if
    they could not be computed.

    'history', 'curve' -- The per-iteration rows of training.

    'fingerprint', 'seed' -- Identify the configuration of the run."""

    def __init__(self, fingerprint, seed):

        self.fingerprint = fingerprint
        self.seed = seed
        self.accuracy = {}
        self.per_class_f1 = {}
        self.macro_f1 = None
        self.a_distance = None
        self.adaptability_error = None
        self.history = []
        self.curve = []


    def AsDictionary(self):
        """Return the JSON-compatible form of the report."""

        return {"fingerprint": self.fingerprint,
                "seed": self.seed,
                "accuracy": dict(self.accuracy),
                "per_class_f1": dict(self.per_class_f1),
                "macro_f1": self.macro_f1,
                "a_distance": self.a_distance,
                "adaptability_error": self.adaptability_error,
                "history": list(self.history),
                "curve": list(self.curve)}


    def GetSummary(self):
        """Return the scalar metrics as a flat map."""

        summary = {"macro_f1": self.macro_f1,
                   "a_distance": self.a_distance,
                   "adaptability_error": self.adaptability_error}
        for split, value in self.accuracy.items():
            summary["accuracy_" + split] = value
        return summary

########################################################################
# Functions
########################################################################

def _check_pair(predictions, labels, operation):

    predictions = numpy.atleast_1d(numpy.asarray(predictions,
                                                 dtype=numpy.int64))
    labels = numpy.atleast_1d(numpy.asarray(labels, dtype=numpy.int64))
    if predictions.shape != labels.shape:
        raise DimensionError(aida.error("shape mismatch",
                                        operation=operation,
                                        left=predictions.shape,
                                        right=labels.shape))
    return (predictions, labels)


def accuracy(predictions, labels):
    """Return the fraction of 'predictions' equal to 'labels'.

    raises -- 'EvaluationError' if there are none."""

    predictions, labels = _check_pair(predictions, labels, "accuracy")
    if labels.size == 0:
        raise EvaluationError(aida.error("empty batch", operation="accuracy"))
    return float(numpy.mean(predictions == labels))


def confusion_matrix(predictions, labels, class_count):
    """Return the [K x K] count matrix; rows are true labels."""

    predictions, labels = _check_pair(predictions, labels, "confusion")
    for values in (predictions, labels):
        if values.size and (values.min() < 0 or values.max() >= class_count):
            raise PreconditionError(aida.error("label out of range",
                                               classes=class_count))
    matrix = numpy.zeros((class_count, class_count), dtype=numpy.int64)
    numpy.add.at(matrix, (labels, predictions), 1)
    return matrix


def per_class_f1(predictions, labels, class_count):
    """Return the F1 of every class, with '0/0' taken as zero."""

    matrix = confusion_matrix(predictions, labels, class_count)
    true_positives = numpy.diag(matrix).astype(numpy.float64)
    denominators = matrix.sum(axis=0) + matrix.sum(axis=1)
    return numpy.where(denominators > 0,
                       2.0 * true_positives / numpy.maximum(denominators, 1),
                       0.0)


def macro_f1(predictions, labels, class_count):
    """Return the unweighted mean F1 over the classes present in
    'labels', or zero if there are none."""

    f1 = per_class_f1(predictions, labels, class_count)
    present = numpy.unique(numpy.asarray(labels, dtype=numpy.int64))
    if present.size == 0:
        return 0.0
    return float(numpy.mean(f1[present]))


def _halves(count, generator):
    """Split a permutation of 'count' indices into two halves."""

    order = generator.permutation(count)
    return (order[:count // 2], order[count // 2:])


def a_distance(source_features, target_features, seed=0, steps=PROBE_STEPS,
               hidden=PROBE_HIDDEN, tracer=None):
    """Return the A-distance between two feature sets.

    A probe learns to tell the domains apart on one half of each set
    and is scored on the other half.  Both sets are split with the
    same permutation, so identical sets yield identical halves.

    returns -- '2 (1 - 2 e)' clamped to [0, 2], 'e' being the held-out
    probe error.  Features with no variance at all give zero and a
    warning.

    raises -- 'EvaluationError' if either set has fewer than
    'MINIMUM_DOMAIN_EXAMPLES' rows."""

    source = numpy.asarray(source_features, dtype=numpy.float64)
    target = numpy.asarray(target_features, dtype=numpy.float64)
    if len(source) < MINIMUM_DOMAIN_EXAMPLES \
       or len(target) < MINIMUM_DOMAIN_EXAMPLES:
        raise EvaluationError(aida.error("too few domain examples",
                                         minimum=MINIMUM_DOMAIN_EXAMPLES,
                                         source=len(source),
                                         target=len(target)))
    features = numpy.concatenate([source, target])
    if numpy.all(features.std(axis=0) < STANDARD_DEVIATION_FLOOR):
        (tracer or get_tracer()).Warn("zero variance features")
        return 0.0
    source_train, source_test = _halves(
        len(source), aida.make_random(seed, "a-distance"))
    target_train, target_test = _halves(
        len(target), aida.make_random(seed, "a-distance"))
    x_train = numpy.concatenate([source[source_train], target[target_train]])
    y_train = numpy.concatenate([numpy.ones(len(source_train)),
                                 numpy.zeros(len(target_train))])
    x_test = numpy.concatenate([source[source_test], target[target_test]])
    y_test = numpy.concatenate([numpy.ones(len(source_test)),
                                numpy.zeros(len(target_test))])
    probe = Probe(features.shape[1], 2, hidden, seed, "domain-probe")
    probe.Fit(x_train, y_train.astype(numpy.int64), steps)
    error = 1.0 - accuracy(probe.Predict(x_test), y_test)
    (tracer or get_tracer()).Write("Domain probe error %.4f." % error,
                                   "metrics")
    return float(numpy.clip(2.0 * (1.0 - 2.0 * error), 0.0, 2.0))


def adaptability_error(source_features, source_labels, target_features,
                       target_labels, class_count, seed=0,
                       steps=PROBE_STEPS, hidden=PROBE_HIDDEN, tracer=None):
    """Return the summed source and target error of one probe trained
    on both labeled sets.

    Unlabeled target rows (label -1) are ignored.  The result lies in
    [0, 2].

    raises -- 'EvaluationError' if no target row is labeled or the
    source set is empty."""

    source = numpy.asarray(source_features, dtype=numpy.float64)
    source_labels = numpy.asarray(source_labels, dtype=numpy.int64)
    target = numpy.asarray(target_features, dtype=numpy.float64)
    target_labels = numpy.asarray(target_labels, dtype=numpy.int64)
    labeled = target_labels >= 0
    if not numpy.any(labeled) or len(source) == 0:
        raise EvaluationError(aida.error("no labeled target data"))
    target, target_labels = target[labeled], target_labels[labeled]
    probe = Probe(source.shape[1], class_count, hidden, seed,
                  "joint-probe")
    probe.Fit(numpy.concatenate([source, target]),
              numpy.concatenate([source_labels, target_labels]), steps)
    source_error = 1.0 - accuracy(probe.Predict(source), source_labels)
    target_error = 1.0 - accuracy(probe.Predict(target), target_labels)
    (tracer or get_tracer()).Write("Joint probe errors %.4f + %.4f."
                                   % (source_error, target_error),
                                   "metrics")
    return source_error + target_error


def _limit(count, seed, name):
    """Return at most 'MAXIMUM_PROBE_EXAMPLES' of 'count' indices."""

    if count <= MAXIMUM_PROBE_EXAMPLES:
        return numpy.arange(count)
    generator = aida.make_random(seed, "limit", name)
    return numpy.sort(generator.choice(count, MAXIMUM_PROBE_EXAMPLES,
                                       replace=False))


def evaluate(model, pair, fingerprint, seed, probes=True, tracer=None):
    """Return the 'MetricsReport' of 'model' on the datasets 'pair'.

    'probes' -- If false, the A-distance and adaptability error are
    left out.

    Target predictions are restricted to the shared classes.  A probe
    measure whose inputs are too small is reported as 'None'."""

    tracer = tracer or get_tracer()
    tree = pair.tree
    report = MetricsReport(fingerprint, seed)
    source_labels = pair.source.GetLabels()
    if len(pair.source):
        report.accuracy["source"] = accuracy(
            model.Predict(pair.source.GetPayloads(), shared=False),
            source_labels)
    evaluation = pair.target_eval
    if evaluation is not None and len(evaluation):
        labels = evaluation.GetLabels()
        predictions = model.Predict(evaluation.GetPayloads(), shared=True)
        report.accuracy["target"] = accuracy(predictions, labels)
        f1 = per_class_f1(predictions, labels, tree.K)
        for k in numpy.unique(labels):
            report.per_class_f1[tree.leaves[k]] = float(f1[k])
        report.macro_f1 = macro_f1(predictions, labels, tree.K)
    if not probes:
        return report

    shared = pair.source.Filter(lambda e: tree.IsShared(e.label))
    shared_indices = _limit(len(shared), seed, "shared")
    shared_features = model.GetFeatures(shared.GetPayloads(shared_indices))
    target_indices = _limit(len(pair.target), seed, "target")
    target_features = model.GetFeatures(
        pair.target.GetPayloads(target_indices))
    try:
        report.a_distance = a_distance(shared_features, target_features,
                                       seed, tracer=tracer)
    except EvaluationError as exception:
        tracer.Write(str(exception), "metrics")
    if evaluation is not None and len(evaluation):
        eval_indices = _limit(len(evaluation), seed, "target-eval")
        try:
            report.adaptability_error = adaptability_error(
                shared_features, shared.GetLabels(shared_indices),
                model.GetFeatures(evaluation.GetPayloads(eval_indices)),
                evaluation.GetLabels(eval_indices), tree.K, seed,
                tracer=tracer)
        except EvaluationError as exception:
            tracer.Write(str(exception), "metrics")
    return report

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
