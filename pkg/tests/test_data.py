########################################################################
#
# File:   test_data.py
# Date:   2026-03-16
#
# Contents:
#   Tests of synthetic generation, subsampling and the JSONL format.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import json
import math

import numpy
import pytest

import aida
from aida import data
from aida import layers
from aida.data import DataError, Dataset, Example, SyntheticSpec, \
     Vocabulary

########################################################################
# Functions
########################################################################

def write_lines(path, records):
    """Write 'records' to 'path', one per line.  Strings are written as
    they are; anything else as JSON."""

    with open(str(path), "w") as file:
        for record in records:
            if not isinstance(record, str):
                record = json.dumps(record)
            file.write(record + "\n")
    return str(path)


def large_class_source():
    """Return a source set with 1000 examples of the shared class and
    1000 of its non-shared sibling, and its tree."""

    spec = SyntheticSpec(parents=1, children=2, shared_children=1,
                         source_count=1000, target_count=0,
                         target_eval_count=0, dimension=2)
    pair = data.generate_synthetic_splits(spec)
    return pair.source, pair.tree

########################################################################
# Tests
########################################################################

class TestGeneration:

    def test_counts(self, small_pair):

        assert len(small_pair.source) == 4 * 40
        assert len(small_pair.target) == 2 * 24
        assert len(small_pair.target_eval) == 2 * 24
        assert small_pair.tree.counts == (40, 40, 40, 40)


    def test_tree(self, small_pair):

        tree = small_pair.tree
        assert tree.leaves == ("p0c0", "p0c1", "p1c0", "p1c1")
        assert tree.GetSharedIndices() == [0, 2]
        assert tree.parents == (0, 0, 1, 1)


    def test_target_holds_shared_classes_only(self, small_pair):

        assert numpy.all(small_pair.target.GetLabels() == -1)
        labels = small_pair.target_eval.GetLabels()
        assert set(labels.tolist()) == set([0, 2])
        assert all([e.domain == data.TARGET for e in small_pair.target])


    def test_determinism(self, small_spec, tracer):

        first = data.generate_synthetic_splits(small_spec, tracer)
        second = data.generate_synthetic_splits(small_spec, tracer)
        assert numpy.array_equal(first.source.GetPayloads(),
                                 second.source.GetPayloads())
        assert numpy.array_equal(first.target.GetPayloads(),
                                 second.target.GetPayloads())


    def test_classes_draw_independently(self, small_spec, tracer):

        reduced = small_spec.Copy(source_counts=[40, 10, 40, 40])
        first = data.generate_synthetic_splits(small_spec, tracer)
        second = data.generate_synthetic_splits(reduced, tracer)
        assert len(second.source) == 130
        assert second.tree.counts == (40, 10, 40, 40)
        indices = first.source.GetIndicesByClass()
        others = second.source.GetIndicesByClass()
        for k in (0, 2, 3):
            assert numpy.array_equal(first.source.GetPayloads(indices[k]),
                                     second.source.GetPayloads(others[k]))


    def test_class_means(self):

        spec = SyntheticSpec(parents=1, children=1, shared_children=1,
                             source_count=10000, target_count=0,
                             target_eval_count=0, dimension=2)
        pair = data.generate_synthetic_splits(spec)
        tolerance = 3.0 * spec.class_spread / math.sqrt(10000)
        for k, indices in pair.source.GetIndicesByClass().items():
            mean = pair.source.GetPayloads(indices).mean(axis=0)
            assert numpy.all(numpy.abs(mean - pair.centers[k]) < tolerance)


    def test_default_task_needs_the_siblings(self, tracer):

        pair = data.generate_synthetic_splits(SyntheticSpec(), tracer)
        pair = pair.Subsample(15, tracer=tracer)
        tree = pair.tree
        shared = tree.GetSharedIndices()
        by_class = pair.source.GetIndicesByClass()
        leaf_means = numpy.array([pair.source.GetPayloads(by_class[k])
                                  .mean(axis=0) for k in shared])
        parent_means = []
        for k in shared:
            indices = [i for c in tree.GetChildren(tree.GetParent(k))
                       for i in by_class[c]]
            parent_means.append(pair.source.GetPayloads(indices)
                                .mean(axis=0))
        x = pair.target_eval.GetPayloads()
        labels = pair.target_eval.GetLabels()

        def nearest_mean_accuracy(means):
            distances = ((x[:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
            predictions = numpy.array(shared)[distances.argmin(axis=1)]
            return numpy.mean(predictions == labels)

        sparse = nearest_mean_accuracy(leaf_means)
        siblings = nearest_mean_accuracy(numpy.array(parent_means))
        # Fifteen examples per shared leaf leave the task unsolved.
        assert sparse < 0.92
        assert siblings > 0.9
        assert siblings - sparse >= 0.08


    def test_triple(self, small_spec, tracer):

        source, target, tree = data.generate_synthetic(small_spec, tracer)
        assert len(source) == 160
        assert len(target) == 48
        assert tree.counts == (40, 40, 40, 40)


    def test_tokens(self, tracer):

        spec = SyntheticSpec(parents=2, children=2, shared_children=1,
                             source_count=10, target_count=5,
                             target_eval_count=5, payload=data.TOKENS)
        pair = data.generate_synthetic_splits(spec, tracer)
        assert pair.source.IsSequence()
        assert pair.vocabulary is pair.source.vocabulary
        for example in pair.source:
            assert 1 <= len(example.payload) <= spec.sentence_length
            assert layers.UNKNOWN_INDEX not in example.payload
        # Target-only words are unknown to the source vocabulary.
        unknown = [i for e in pair.target for i in e.payload
                   if i == layers.UNKNOWN_INDEX]
        assert unknown



class TestSyntheticSpec:

    @pytest.mark.parametrize(("arguments", "field"), [
        (dict(shared_children=0), "shared_children"),
        (dict(children=2, shared_children=3), "shared_children"),
        (dict(parents=4, dimension=3), "dimension"),
        (dict(source_counts=[5, 5]), "source_counts"),
        (dict(source_count=0), "source_count"),
        (dict(class_word_rate=0.8, parent_word_rate=0.3),
         "class_word_rate"),
        (dict(remap_fraction=1.5), "remap_fraction"),
        ])
    def test_invalid(self, arguments, field):

        with pytest.raises(DataError) as info:
            SyntheticSpec(**arguments)
        assert info.value.field == field


    def test_shared_leaf_without_examples(self):

        counts = [0, 5, 5, 5, 5, 5]
        with pytest.raises(DataError) as info:
            SyntheticSpec(parents=2, children=3, source_counts=counts)
        assert info.value.field == "source_counts"


    def test_field_range(self):

        with pytest.raises(aida.UserError):
            SyntheticSpec(parents=0)


    def test_unknown_argument(self):

        with pytest.raises(aida.UserError):
            SyntheticSpec(classes=3)



class TestSubsample:

    def test_cap(self):

        source, tree = large_class_source()
        capped = data.subsample_imbalanced(source, tree, 50, seed=1)
        assert capped.GetClassCounts(2).tolist() == [50, 1000]


    def test_infinite_cap(self):

        source, tree = large_class_source()
        capped = data.subsample_imbalanced(source, tree, math.inf)
        assert numpy.array_equal(capped.GetPayloads(), source.GetPayloads())
        assert len(data.subsample_imbalanced(source, tree, None)) == 2000


    def test_determinism(self):

        source, tree = large_class_source()
        first = data.subsample_imbalanced(source, tree, 20, seed=3)
        second = data.subsample_imbalanced(source, tree, 20, seed=3)
        other = data.subsample_imbalanced(source, tree, 20, seed=4)
        assert numpy.array_equal(first.GetPayloads(), second.GetPayloads())
        assert not numpy.array_equal(first.GetPayloads(),
                                     other.GetPayloads())


    def test_order_is_preserved(self):

        source, tree = large_class_source()
        capped = data.subsample_imbalanced(source, tree, 10, seed=2)
        positions = [source.examples.index(e) for e in capped]
        assert positions == sorted(positions)


    def test_cap_exceeds_class(self, tracer):

        source, tree = large_class_source()
        capped = data.subsample_imbalanced(source, tree, 5000,
                                           tracer=tracer)
        assert len(capped) == 2000
        assert tracer.GetWarnings() == ["cap exceeds class"]


    def test_caps_by_name(self, small_pair):

        capped = small_pair.Subsample({"p1c0": 5}, seed=0)
        assert capped.source.GetClassCounts(4).tolist() == [40, 40, 5, 40]
        assert capped.tree.counts == (40, 40, 5, 40)
        assert capped.target is small_pair.target


    def test_caps_in_class_order(self, small_pair):

        caps = data.normalize_caps(small_pair.tree, [3, math.inf])
        assert caps == {0: 3}


    @pytest.mark.parametrize("caps", [0, [5], {"p0c0": 0.5}])
    def test_invalid_caps(self, small_pair, caps):

        with pytest.raises(DataError):
            data.normalize_caps(small_pair.tree, caps)



class TestSplit:

    def test_partition(self, small_pair):

        shared, source = data.split_shared_nonshared(small_pair.source,
                                                     small_pair.tree)
        assert source is small_pair.source
        assert len(shared) == 80
        assert all([small_pair.tree.IsShared(e.label) for e in shared])
        non_shared = source.Filter(
            lambda e: not small_pair.tree.IsShared(e.label))
        assert len(shared) + len(non_shared) == len(source)


    def test_empty_shared_subset(self, small_pair, tracer):

        non_shared = small_pair.source.Filter(
            lambda e: not small_pair.tree.IsShared(e.label))
        shared, source = data.split_shared_nonshared(non_shared,
                                                     small_pair.tree,
                                                     tracer)
        assert len(shared) == 0
        assert tracer.GetWarnings() == ["empty shared subset"]



class TestVocabulary:

    def test_build(self):

        vocabulary = Vocabulary.Build([["b", "a", "b"], ["c", "a", "b"]],
                                      threshold=1)
        assert vocabulary.tokens == ["<unk>", "b", "a", "c"]
        assert vocabulary.Encode(["a", "zzz"]) == (2, 0)
        assert vocabulary.Decode([1, 0]) == ["b", "<unk>"]


    def test_threshold(self):

        vocabulary = Vocabulary.Build([["b", "a", "b"], ["c", "a", "b"]],
                                      threshold=3)
        assert len(vocabulary) == 2
        assert vocabulary.Lookup("a") == 0



class TestJsonl:

    def test_vectors(self, small_pair, tmp_path):

        path = write_lines(tmp_path / "d.jsonl", [
            {"domain": "source", "label": "p0c1", "features": [1, 2.5]},
            "",
            {"domain": "target", "features": [0, 0]},
            ])
        dataset = data.load_jsonl(path, small_pair.tree)
        assert len(dataset) == 2
        assert dataset.GetLabels().tolist() == [1, -1]
        assert dataset.GetPayloads().tolist() == [[1.0, 2.5], [0.0, 0.0]]
        assert not dataset.IsSequence()


    def test_text(self, small_pair, tmp_path):

        path = write_lines(tmp_path / "d.jsonl", [
            {"domain": "source", "label": "p0c0", "text": "a b a"},
            {"domain": "target", "text": "a c"},
            ])
        dataset = data.load_jsonl(path, small_pair.tree, threshold=2)
        assert dataset.vocabulary.tokens == ["<unk>", "a"]
        assert [e.payload for e in dataset] == [(1, 0, 1), (1, 0)]


    def test_empty_file(self, small_pair, tmp_path):

        path = write_lines(tmp_path / "d.jsonl", [])
        assert len(data.load_jsonl(path, small_pair.tree)) == 0


    @pytest.mark.parametrize("bad", [
        "{not json",
        {"domain": "source", "label": "zz", "features": [1, 2]},
        {"domain": "target", "text": "a b"},
        {"domain": "source", "label": "p0c0", "features": [1, 2, 3]},
        {"domain": "source", "features": [1, 2]},
        {"domain": "elsewhere", "features": [1, 2]},
        {"domain": "target", "features": []},
        {"domain": "target"},
        '{"domain": "source", "label": "p0c0", "features": [NaN, 1.0]}',
        '{"domain": "target", "features": [1.0, -Infinity]}',
        '{"domain": "target", "features": [1e400, 0]}',
        ])
    def test_bad_line(self, small_pair, tmp_path, bad):

        path = write_lines(tmp_path / "d.jsonl", [
            {"domain": "source", "label": "p0c0", "features": [1, 2]},
            bad,
            ])
        with pytest.raises(DataError) as info:
            data.load_jsonl(path, small_pair.tree)
        assert info.value.line == 2


    def test_undecodable_line(self, small_pair, tmp_path):

        path = tmp_path / "d.jsonl"
        path.write_bytes(b'{"domain": "target", "features": [1, 2]}\n'
                         b'\xff\xfe\n')
        with pytest.raises(DataError) as info:
            data.load_jsonl(str(path), small_pair.tree)
        assert info.value.line == 2


    def test_missing_file(self, small_pair, tmp_path):

        with pytest.raises(DataError):
            data.load_jsonl(str(tmp_path / "absent.jsonl"), small_pair.tree)



class TestDomains:

    def test_vectors(self, small_pair, tmp_path):

        directory = str(tmp_path / "domains")
        data.write_domains(small_pair, directory, {"seed": 0})
        pair = data.load_domains(directory)
        assert pair.tree.GetIdentifier() == small_pair.tree.GetIdentifier()
        assert pair.tree.counts == small_pair.tree.counts
        assert numpy.array_equal(pair.source.GetPayloads(),
                                 small_pair.source.GetPayloads())
        assert numpy.array_equal(pair.target_eval.GetLabels(),
                                 small_pair.target_eval.GetLabels())
        with open(str(tmp_path / "domains" / "manifest.json")) as file:
            assert json.load(file) == {"seed": 0}


    def test_tokens(self, tmp_path, tracer):

        spec = SyntheticSpec(parents=2, children=2, shared_children=1,
                             source_count=10, target_count=5,
                             target_eval_count=5, payload=data.TOKENS)
        original = data.generate_synthetic_splits(spec, tracer)
        directory = str(tmp_path / "domains")
        data.write_domains(original, directory, {})
        pair = data.load_domains(directory, threshold=1)
        assert pair.vocabulary.tokens == original.vocabulary.tokens
        for before, after in ((original.source, pair.source),
                              (original.target, pair.target)):
            assert [e.payload for e in before] == [e.payload for e in after]


    def test_wrong_domain(self, small_pair, tmp_path):

        directory = str(tmp_path / "domains")
        swapped = data.DomainPair(small_pair.target_eval, small_pair.target,
                                  None, small_pair.tree)
        data.write_domains(swapped, directory, {})
        with pytest.raises(DataError):
            data.load_domains(directory)


    def test_dataset_helpers(self):

        dataset = Dataset([Example(numpy.zeros(2), 1, data.SOURCE),
                           Example(numpy.ones(2), 0, data.SOURCE),
                           Example(numpy.ones(2), 1, data.SOURCE)])
        assert dataset.GetClassCounts(3).tolist() == [1, 2, 0]
        assert dataset.GetIndicesByClass() == {1: [0, 2], 0: [1]}
        assert len(dataset.Subset([2])) == 1

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
