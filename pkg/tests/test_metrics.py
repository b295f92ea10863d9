########################################################################
#
# File:   test_metrics.py
# Date:   2026-03-19
#
# Contents:
#   Tests of accuracy, macro-F1 and the probe-based measures.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import numpy
import pytest

from aida import tensor
from aida.experiment import metrics
from aida.experiment.metrics import EvaluationError, Probe
from aida.train import trainer

########################################################################
# Functions
########################################################################

def brute_force_macro_f1(predictions, labels, class_count):
    """Count true and false positives and negatives one pair at a
    time."""

    scores = []
    for k in range(class_count):
        if k not in labels:
            continue
        tp = fp = fn = 0
        for p, y in zip(predictions, labels):
            if p == k and y == k:
                tp += 1
            elif p == k:
                fp += 1
            elif y == k:
                fn += 1
        scores.append(2.0 * tp / (2 * tp + fp + fn))
    return sum(scores) / len(scores)


def two_clusters(generator, count, offset=8.0):
    """Return features and labels of two well separated classes."""

    labels = numpy.arange(count) % 2
    centers = numpy.array([[offset, 0.0, 0.0], [-offset, 0.0, 0.0]])
    features = centers[labels] + generator.normal(size=(count, 3))
    return features, labels

########################################################################
# Tests
########################################################################

class TestAccuracy:

    def test_fraction(self):

        assert metrics.accuracy([0, 1, 1], [0, 1, 0]) == pytest.approx(2 / 3)
        assert metrics.accuracy([2], [2]) == 1.0


    def test_empty(self):

        with pytest.raises(EvaluationError):
            metrics.accuracy([], [])


    def test_shape_mismatch(self):

        with pytest.raises(tensor.DimensionError):
            metrics.accuracy([0, 1], [0])


    def test_confusion_matrix(self):

        matrix = metrics.confusion_matrix([0, 1, 1, 2], [0, 1, 2, 2], 3)
        assert matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 1, 1]]
        with pytest.raises(tensor.PreconditionError):
            metrics.confusion_matrix([3], [0], 3)



class TestMacroF1:

    def test_one_class_predicted(self):

        score = metrics.macro_f1([0, 0, 0, 0], [0, 0, 1, 1], 2)
        assert score == pytest.approx(1.0 / 3.0, abs=1e-15)


    def test_perfect(self):

        assert metrics.macro_f1([1, 2, 1], [1, 2, 1], 4) == 1.0


    def test_absent_classes_are_ignored(self):

        f1 = metrics.per_class_f1([0, 0, 2], [0, 0, 0], 3)
        assert f1.tolist() == pytest.approx([0.8, 0.0, 0.0])
        assert metrics.macro_f1([0, 0, 2], [0, 0, 0], 3) \
               == pytest.approx(0.8)


    def test_brute_force(self, generator):

        for trial in range(1000):
            k = int(generator.integers(2, 6))
            n = int(generator.integers(1, 30))
            predictions = generator.integers(0, k, size=n).tolist()
            labels = generator.integers(0, k, size=n).tolist()
            assert metrics.macro_f1(predictions, labels, k) \
                   == pytest.approx(brute_force_macro_f1(predictions,
                                                         labels, k),
                                    abs=1e-12)


    def test_relabeling(self, generator):

        predictions = generator.integers(0, 5, size=50)
        labels = generator.integers(0, 5, size=50)
        permutation = generator.permutation(5)
        assert metrics.macro_f1(permutation[predictions],
                                permutation[labels], 5) \
               == pytest.approx(metrics.macro_f1(predictions, labels, 5),
                                abs=1e-12)



class TestProbe:

    def test_prior_only(self):

        probe = Probe(2, 2, hidden=0).Fit(numpy.ones((4, 2)), [0, 0, 0, 1],
                                          steps=100)
        assert probe.Predict(numpy.zeros((3, 2))).tolist() == [0, 0, 0]


    def test_separable(self, generator):

        x, y = two_clusters(generator, 40)
        probe = Probe(3, 2, seed=1).Fit(x, y, steps=100)
        assert metrics.accuracy(probe.Predict(x), y) == 1.0
        assert probe.Predict(numpy.zeros((0, 3))).shape == (0,)



class TestDistance:

    def test_identical_sets(self, generator, tracer):

        x = generator.normal(size=(40, 3))
        assert metrics.a_distance(x, x.copy(), steps=50,
                                  tracer=tracer) == 0.0


    @pytest.mark.parametrize("count", [100, 257])
    def test_identical_sets_default_steps(self, generator, tracer, count):

        x = generator.normal(size=(count, 8)) * [1, 2, 3, 4, 5, 6, 7, 8]
        assert metrics.a_distance(x, x.copy(), tracer=tracer) < 0.2


    def test_separated_sets(self, generator, tracer):

        source = generator.normal(size=(60, 3)) + 10.0
        target = generator.normal(size=(60, 3)) - 10.0
        distance = metrics.a_distance(source, target, steps=100,
                                      tracer=tracer)
        assert distance > 1.8
        assert distance <= 2.0


    def test_too_few_examples(self, generator):

        with pytest.raises(EvaluationError):
            metrics.a_distance(generator.normal(size=(19, 3)),
                               generator.normal(size=(40, 3)))


    def test_zero_variance(self, tracer):

        features = numpy.zeros((30, 3))
        assert metrics.a_distance(features, features, tracer=tracer) == 0.0
        assert tracer.GetWarnings() == ["zero variance features"]


    def test_determinism(self, generator, tracer):

        source = generator.normal(size=(40, 3))
        target = generator.normal(size=(40, 3)) + 0.5
        first = metrics.a_distance(source, target, 3, steps=50,
                                   tracer=tracer)
        second = metrics.a_distance(source, target, 3, steps=50,
                                    tracer=tracer)
        assert first == second



class TestAdaptability:

    def test_aligned_domains(self, generator, tracer):

        source, source_labels = two_clusters(generator, 60)
        target, target_labels = two_clusters(generator, 40)
        error = metrics.adaptability_error(source, source_labels, target,
                                           target_labels, 2, steps=100,
                                           tracer=tracer)
        assert error < 0.1


    def test_collapsed_target(self, generator, tracer):

        source, source_labels = two_clusters(generator, 60)
        target = numpy.zeros((40, 3))
        target_labels = numpy.arange(40) % 2
        error = metrics.adaptability_error(source, source_labels, target,
                                           target_labels, 2, steps=100,
                                           tracer=tracer)
        assert error >= 0.5
        assert error <= 2.0


    def test_probe_capacity(self, generator, tracer):

        source, source_labels = two_clusters(generator, 60)
        target, target_labels = two_clusters(generator, 40)
        arguments = (source, source_labels, target, target_labels, 2)
        blind = metrics.adaptability_error(*arguments, steps=100, hidden=0,
                                           tracer=tracer)
        seeing = metrics.adaptability_error(*arguments, steps=100,
                                            tracer=tracer)
        assert blind >= seeing


    def test_unlabeled_rows_are_ignored(self, generator, tracer):

        source, source_labels = two_clusters(generator, 60)
        target, target_labels = two_clusters(generator, 40)
        target_labels[:20] = -1
        error = metrics.adaptability_error(source, source_labels, target,
                                           target_labels, 2, steps=100,
                                           tracer=tracer)
        assert 0.0 <= error < 0.1


    def test_no_labeled_target(self, generator):

        source, source_labels = two_clusters(generator, 20)
        with pytest.raises(EvaluationError):
            metrics.adaptability_error(source, source_labels,
                                       numpy.zeros((5, 3)),
                                       numpy.full(5, -1), 2)



class TestEvaluate:

    def test_report(self, small_config, small_pair, tracer):

        state = trainer.train(small_config, small_pair, tracer)
        report = metrics.evaluate(state.model, small_pair, "abc", 0,
                                  tracer=tracer)
        assert set(report.per_class_f1) == set(["p0c0", "p1c0"])
        assert 0.0 <= report.macro_f1 <= 1.0
        assert 0.0 <= report.a_distance <= 2.0
        assert 0.0 <= report.adaptability_error <= 2.0
        summary = report.GetSummary()
        assert set(summary) == set(["macro_f1", "a_distance",
                                    "adaptability_error", "accuracy_source",
                                    "accuracy_target"])
        document = report.AsDictionary()
        assert document["fingerprint"] == "abc"
        assert document["seed"] == 0


    def test_without_probes(self, small_config, small_pair, tracer):

        state = trainer.train(small_config.Copy(iterations=1), small_pair,
                              tracer)
        report = metrics.evaluate(state.model, small_pair, "abc", 0,
                                  probes=False, tracer=tracer)
        assert report.a_distance is None
        assert report.adaptability_error is None
        assert report.macro_f1 is not None

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
