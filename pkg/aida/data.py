########################################################################
#
# File:   data.py
# Date:   2026-03-07
#
# Contents:
#   Examples, datasets, the synthetic domain-pair generator,
#   imbalance subsampling and the JSONL dataset format.
#
# For license terms see the file COPYING.
#
########################################################################

"""Datasets.

An 'Example' carries a payload (a feature vector, or a sequence of
token indices), an optional leaf label and a domain.  Source examples
are always labeled.  Target examples used for training are unlabeled;
labeled target examples appear only in held-out evaluation splits.

The JSONL dataset format has one JSON object per line:

  {"domain": "source", "label": "theft", "text": "the man took ..."}
  {"domain": "target", "features": [0.25, -1.5, 3.0]}

'label' names a leaf of the hierarchy and may be omitted for target
lines.  Each line has either 'features' or 'text'; all lines of one
file must agree.  Text is split on whitespace and mapped through a
vocabulary built from the source lines."""

########################################################################
# Imports
########################################################################

import collections
import json
import math
import os

import numpy

import aida
from aida import hierarchy
from aida import layers
from aida import trace
from aida.extension import Extension
from aida.fields import EnumerationField, FloatField, IntegerField, \
     SetField

########################################################################
# Constants
########################################################################

SOURCE = "source"
TARGET = "target"
DOMAINS = (SOURCE, TARGET)

VECTORS = "vectors"
TOKENS = "tokens"

DEFAULT_THRESHOLD = 25
"""The default minimum source frequency of a vocabulary token."""

########################################################################
# Classes
########################################################################

class DataError(aida.UserError):
    """A dataset or a dataset specification is invalid.

    'line' -- The 1-based line number of the offending JSONL line, or
    'None'.

    'field' -- The name of the offending 'SyntheticSpec' field, or
    'None'."""

    kind = "data"

    def __init__(self, message, line=None, field=None):

        aida.UserError.__init__(self, message)
        self.line = line
        self.field = field



class Example(object):
    """One domain-tagged instance."""

    __slots__ = ("payload", "label", "domain")

    def __init__(self, payload, label, domain):
        """Construct a new 'Example'.

        'payload' -- A float 'numpy' vector, or a tuple of token
        indices.

        'label' -- The leaf index, or 'None'.

        'domain' -- 'SOURCE' or 'TARGET'."""

        self.payload = payload
        self.label = label
        self.domain = domain


    def IsSequence(self):

        return isinstance(self.payload, tuple)



class Vocabulary(object):
    """A token to index map.  Index 'layers.UNKNOWN_INDEX' is reserved
    for tokens not in the map."""

    UNKNOWN = "<unk>"

    def __init__(self, tokens=()):

        self.tokens = [self.UNKNOWN] + [t for t in tokens
                                        if t != self.UNKNOWN]
        self.index = dict([(t, i) for i, t in enumerate(self.tokens)])


    def __len__(self):

        return len(self.tokens)


    def Lookup(self, token):

        return self.index.get(token, layers.UNKNOWN_INDEX)


    def Encode(self, tokens):

        return tuple([self.Lookup(t) for t in tokens])


    def Decode(self, indices):

        return [self.tokens[i] for i in indices]


    @classmethod
    def Build(cls, token_lists, threshold=DEFAULT_THRESHOLD):
        """Return the vocabulary of tokens occurring at least
        'threshold' times in 'token_lists'.

        Tokens are ordered by decreasing count, then alphabetically."""

        counts = collections.Counter()
        for tokens in token_lists:
            counts.update(tokens)
        kept = [t for t, n in counts.items() if n >= threshold]
        kept.sort(key=lambda t: (-counts[t], t))
        return cls(kept)



class Dataset(object):
    """An ordered collection of 'Example's.

    'vocabulary' -- The 'Vocabulary' token payloads were encoded with,
    or 'None' for feature vectors."""

    def __init__(self, examples=(), vocabulary=None):

        self.examples = list(examples)
        self.vocabulary = vocabulary


    def __len__(self):

        return len(self.examples)


    def __iter__(self):

        return iter(self.examples)


    def __getitem__(self, i):

        return self.examples[i]


    def IsSequence(self):
        """Return true if the payloads are token sequences."""

        return bool(self.examples) and self.examples[0].IsSequence()


    def GetLabels(self, indices=None):
        """Return the labels as an integer array; -1 marks unlabeled."""

        examples = self.__Select(indices)
        return numpy.array([e.label is None and -1 or e.label
                            for e in examples], dtype=numpy.int64)


    def GetPayloads(self, indices=None):
        """Return the payloads of 'indices' (all by default).

        returns -- A [n x dim] array for feature vectors, or a list of
        token tuples."""

        examples = self.__Select(indices)
        if self.IsSequence():
            return [e.payload for e in examples]
        if not examples:
            return numpy.zeros((0, 0))
        return numpy.stack([e.payload for e in examples])


    def GetClassCounts(self, class_count):
        """Return the number of examples of each of 'class_count'
        classes."""

        labels = self.GetLabels()
        return numpy.bincount(labels[labels >= 0], minlength=class_count)


    def GetIndicesByClass(self):
        """Return a map from label to the ascending example indices."""

        by_class = collections.OrderedDict()
        for i, example in enumerate(self.examples):
            by_class.setdefault(example.label, []).append(i)
        return by_class


    def Subset(self, indices):

        return Dataset([self.examples[i] for i in indices], self.vocabulary)


    def Filter(self, predicate):

        return Dataset([e for e in self.examples if predicate(e)],
                       self.vocabulary)


    def __Select(self, indices):

        if indices is None:
            return self.examples
        return [self.examples[i] for i in indices]



class DomainPair(object):
    """The datasets of one experiment.

    'source' -- The labeled source set over all classes.

    'target' -- The unlabeled target training set.

    'target_eval' -- The labeled held-out target set, or 'None'.

    'tree' -- The 'LabelTree', with counts taken from 'source'.

    'vocabulary' -- The 'Vocabulary' of token payloads, or 'None'.

    'centers' -- For generated vector data, the [K x dim] source class
    centers; otherwise 'None'."""

    def __init__(self, source, target, target_eval, tree, vocabulary=None,
                 centers=None):

        self.source = source
        self.target = target
        self.target_eval = target_eval
        self.tree = tree.WithCounts(source.GetClassCounts(tree.K))
        self.vocabulary = vocabulary
        self.centers = centers


    def Subsample(self, caps, seed=0, tracer=None):
        """Return a copy whose source set is capped by 'caps'.

        See 'subsample_imbalanced'."""

        source = subsample_imbalanced(self.source, self.tree, caps, seed,
                                      tracer)
        return DomainPair(source, self.target, self.target_eval, self.tree,
                          self.vocabulary, self.centers)



class SyntheticSpec(Extension):
    """The description of a generated partial domain pair.

    Each of 'parents' parents has 'children' leaves; the first
    'shared_children' leaves of every parent are shared.  Parent
    centers are orthogonal, at distance 'parent_spread' from the
    origin; each leaf center lies 'child_offset' from its parent's
    center in a random direction.  Target examples of shared classes
    are drawn around the same centers and then rotated by
    'shift_rotation' radians in a random plane and translated by
    'shift_translation' along a random direction.

    The defaults describe the desk-scale task: twelve leaves in 256
    dimensions whose parents are close enough that a few dozen shared
    examples cannot pin down the class centers against the noise, while
    the full non-shared siblings can pin down their parents."""

    kind = "synthetic"

    arguments = [
        IntegerField("parents", 4, minimum=1,
                     description="The number of parent classes."),
        IntegerField("children", 3, minimum=1,
                     description="The number of leaves of each parent."),
        IntegerField("shared_children", 1, minimum=0,
                     description="The number of shared leaves of each "
                     "parent."),
        IntegerField("source_count", 500, minimum=0,
                     description="The number of source examples of each "
                     "leaf."),
        SetField(IntegerField("source_counts", minimum=0),
                 description="Per-leaf source counts overriding "
                 "'source_count', in leaf order."),
        IntegerField("target_count", 100, minimum=0,
                     description="The number of unlabeled target training "
                     "examples of each shared leaf."),
        IntegerField("target_eval_count", 100, minimum=0,
                     description="The number of labeled held-out target "
                     "examples of each shared leaf."),
        EnumerationField("payload", VECTORS, [VECTORS, TOKENS],
                         description="Whether examples are feature vectors "
                         "or token sequences."),
        IntegerField("dimension", 256, minimum=1,
                     description="The width of generated feature vectors."),
        FloatField("parent_spread", 3.0, minimum=0.0,
                   description="The distance of parent centers from the "
                   "origin."),
        FloatField("child_offset", 1.0, minimum=0.0,
                   description="The distance of leaf centers from their "
                   "parent center."),
        FloatField("class_spread", 1.0, minimum=0.0,
                   description="The standard deviation of examples around "
                   "their leaf center."),
        FloatField("shift_translation", 2.0, minimum=0.0,
                   description="The length of the target translation."),
        FloatField("shift_rotation", 0.5,
                   description="The target rotation angle, in radians."),
        IntegerField("words_per_class", 8, minimum=1,
                     description="The number of keywords of each leaf and "
                     "of each parent, in token mode."),
        IntegerField("common_words", 40, minimum=1,
                     description="The number of words shared by every "
                     "class, in token mode."),
        IntegerField("sentence_length", 12, minimum=1,
                     description="The maximum number of tokens of a "
                     "generated sentence."),
        FloatField("class_word_rate", 0.4, minimum=0.0,
                   description="The probability that a token is a leaf "
                   "keyword."),
        FloatField("parent_word_rate", 0.3, minimum=0.0,
                   description="The probability that a token is a parent "
                   "keyword."),
        FloatField("remap_fraction", 0.3, minimum=0.0,
                   description="The fraction of leaf keywords replaced by "
                   "target-only words in the target domain."),
        IntegerField("vocabulary_threshold", 1, minimum=1,
                     description="The minimum source frequency of a "
                     "vocabulary token, in token mode."),
        IntegerField("seed", 0, minimum=0,
                     description="The generator seed."),
        ]


    def __init__(self, **arguments):

        Extension.__init__(self, **arguments)
        self.Validate()


    def Validate(self):
        """Check the constraints between fields.

        raises -- 'DataError' naming the offending field."""

        def invalid(field, reason):
            raise DataError(aida.error("invalid synthetic spec",
                                       field=field, reason=reason),
                            field=field)

        if self.shared_children < 1 or self.shared_children > self.children:
            invalid("shared_children",
                    "must be between 1 and 'children'")
        if self.payload == VECTORS and self.dimension < self.parents:
            invalid("dimension", "must be at least 'parents'")
        if self.source_counts:
            if len(self.source_counts) != self.GetLeafCount():
                invalid("source_counts",
                        "must have one entry per leaf")
            for j in range(self.parents):
                for c in range(self.shared_children):
                    if self.source_counts[j * self.children + c] == 0:
                        invalid("source_counts",
                                "shared leaves need source examples")
        elif self.source_count == 0:
            invalid("source_count", "shared leaves need source examples")
        if self.class_word_rate + self.parent_word_rate > 1.0:
            invalid("class_word_rate",
                    "the keyword rates may not exceed one together")
        if self.remap_fraction > 1.0:
            invalid("remap_fraction", "must be at most one")


    def GetLeafCount(self):

        return self.parents * self.children


    def GetSourceCounts(self):

        if self.source_counts:
            return list(self.source_counts)
        return [self.source_count] * self.GetLeafCount()


    def MakeTree(self):
        """Return the 'LabelTree' of this spec.

        Leaf 'c' of parent 'j' is named 'p<j>c<c>' and has class index
        'j * children + c'."""

        leaves, parents, shared = [], [], []
        for j in range(self.parents):
            for c in range(self.children):
                leaves.append("p%dc%d" % (j, c))
                parents.append(j)
                shared.append(c < self.shared_children and 1 or 0)
        return hierarchy.LabelTree(leaves,
                                   ["p%d" % j for j in range(self.parents)],
                                   parents, shared)

########################################################################
# Functions
########################################################################

def _rotation(generator, dimension, angle):
    """Return a rotation by 'angle' in a random plane."""

    basis, _ = numpy.linalg.qr(generator.normal(size=(dimension, 2)))
    a, b = basis[:, 0], basis[:, 1]
    return (numpy.eye(dimension)
            + (math.cos(angle) - 1.0) * (numpy.outer(a, a) + numpy.outer(b, b))
            + math.sin(angle) * (numpy.outer(b, a) - numpy.outer(a, b)))


def _unit(generator, dimension):

    direction = generator.normal(size=dimension)
    return direction / numpy.linalg.norm(direction)


def _generate_vectors(spec, tree, tracer):

    geometry = aida.make_random(spec.seed, "geometry")
    dimension = spec.dimension
    axes, _ = numpy.linalg.qr(geometry.normal(size=(dimension, spec.parents)))
    centers = numpy.empty((tree.K, dimension))
    for k in range(tree.K):
        parent_center = spec.parent_spread * axes[:, tree.GetParent(k)]
        centers[k] = parent_center \
                     + spec.child_offset * _unit(geometry, dimension)
    if dimension >= 2:
        rotation = _rotation(geometry, dimension, spec.shift_rotation)
    else:
        rotation = numpy.eye(dimension)
    translation = spec.shift_translation * _unit(geometry, dimension)

    def draw(split, k, count, shifted):
        generator = aida.make_random(spec.seed, split, k)
        x = centers[k] + spec.class_spread * generator.normal(
            size=(count, dimension))
        if shifted:
            x = x @ rotation.T + translation
        return x

    source, target, target_eval = [], [], []
    counts = spec.GetSourceCounts()
    for k in range(tree.K):
        for x in draw(SOURCE, k, counts[k], False):
            source.append(Example(x, k, SOURCE))
        if not tree.IsShared(k):
            continue
        for x in draw(TARGET, k, spec.target_count, True):
            target.append(Example(x, None, TARGET))
        for x in draw("target_eval", k, spec.target_eval_count, True):
            target_eval.append(Example(x, k, TARGET))
    tracer.Write("Generated %d source, %d target and %d held-out vectors."
                 % (len(source), len(target), len(target_eval)), "data")
    return DomainPair(Dataset(source), Dataset(target),
                      Dataset(target_eval), tree, None, centers)


def _generate_tokens(spec, tree, tracer):

    words = spec.words_per_class
    common = ["w%d" % i for i in range(spec.common_words)]
    parent_words = [["p%dw%d" % (j, i) for i in range(words)]
                    for j in range(spec.parents)]
    class_words = [["c%dw%d" % (k, i) for i in range(words)]
                   for k in range(tree.K)]
    # Target-only synonyms replace part of each leaf's keywords.
    remapped = int(round(spec.remap_fraction * words))
    target_words = [["t%dw%d" % (k, i) for i in range(remapped)]
                    + class_words[k][remapped:] for k in range(tree.K)]

    def draw(split, k, count, keywords):
        generator = aida.make_random(spec.seed, split, k)
        sentences = []
        for n in range(count):
            length = int(generator.integers(max(1, spec.sentence_length // 2),
                                            spec.sentence_length + 1))
            tokens = []
            for u in generator.random(length):
                if u < spec.class_word_rate:
                    pool = keywords[k]
                elif u < spec.class_word_rate + spec.parent_word_rate:
                    pool = parent_words[tree.GetParent(k)]
                else:
                    pool = common
                tokens.append(pool[int(generator.integers(len(pool)))])
            sentences.append(tokens)
        return sentences

    counts = spec.GetSourceCounts()
    source_text = [(k, draw(SOURCE, k, counts[k], class_words))
                   for k in range(tree.K)]
    vocabulary = Vocabulary.Build([s for (k, sentences) in source_text
                                   for s in sentences],
                                  spec.vocabulary_threshold)
    source = [Example(vocabulary.Encode(s), k, SOURCE)
              for (k, sentences) in source_text for s in sentences]
    target, target_eval = [], []
    for k in tree.GetSharedIndices():
        for s in draw(TARGET, k, spec.target_count, target_words):
            target.append(Example(vocabulary.Encode(s), None, TARGET))
        for s in draw("target_eval", k, spec.target_eval_count,
                      target_words):
            target_eval.append(Example(vocabulary.Encode(s), k, TARGET))
    tracer.Write("Generated %d source, %d target and %d held-out sentences "
                 "over %d tokens." % (len(source), len(target),
                                      len(target_eval), len(vocabulary)),
                 "data")
    return DomainPair(Dataset(source, vocabulary), Dataset(target, vocabulary),
                      Dataset(target_eval, vocabulary), tree, vocabulary)


def generate_synthetic_splits(spec, tracer=None):
    """Generate the domain pair described by 'spec'.

    'spec' -- A 'SyntheticSpec'.

    returns -- A 'DomainPair' including the labeled held-out target
    split.  The result depends only on 'spec'; each class draws from
    its own random stream, so changing the count of one class leaves
    the examples of the others unchanged."""

    if tracer is None:
        tracer = trace.get_tracer()
    tree = spec.MakeTree()
    if spec.payload == TOKENS:
        return _generate_tokens(spec, tree, tracer)
    return _generate_vectors(spec, tree, tracer)


def generate_synthetic(spec, tracer=None):
    """Generate the domain pair described by 'spec'.

    returns -- A triple '(source, target, tree)': the labeled source
    set, the unlabeled target training set and the 'LabelTree' with
    source counts."""

    pair = generate_synthetic_splits(spec, tracer)
    return (pair.source, pair.target, pair.tree)


def normalize_caps(tree, caps):
    """Return a map from shared leaf index to cap.

    'caps' -- 'None' or infinity (no cap), one number for every shared
    leaf, a sequence with one number per shared leaf in class order, or
    a map from leaf index or name to number.

    raises -- 'DataError' if a cap is smaller than one."""

    shared = tree.GetSharedIndices()
    if caps is None:
        return {}
    if isinstance(caps, dict):
        result = {}
        for key, cap in caps.items():
            if isinstance(key, str):
                key = tree.GetLeafIndex(key)
            result[key] = cap
    elif isinstance(caps, (int, float)):
        result = dict([(k, caps) for k in shared])
    else:
        caps = list(caps)
        if len(caps) != len(shared):
            raise DataError(aida.error("cap count mismatch",
                                       caps=len(caps), shared=len(shared)))
        result = dict(zip(shared, caps))
    for k, cap in result.items():
        if not cap >= 1:
            raise DataError(aida.error("invalid cap", cap=cap,
                                       leaf=tree.leaves[k]))
    return dict([(k, cap) for k, cap in result.items()
                 if not math.isinf(cap)])


def subsample_imbalanced(source, tree, caps, seed=0, tracer=None):
    """Cap the number of examples of each shared class.

    'source' -- The source 'Dataset'.

    'caps' -- See 'normalize_caps'.

    'seed' -- The selection seed.  Each class is sampled from its own
    stream, without replacement.

    returns -- A new 'Dataset' preserving the order of the kept
    examples.  Non-shared classes are untouched; a class no larger
    than its cap is kept whole."""

    caps = normalize_caps(tree, caps)
    keep = numpy.ones(len(source), dtype=bool)
    for label, indices in source.GetIndicesByClass().items():
        if label not in caps:
            continue
        cap = int(caps[label])
        if cap > len(indices):
            if tracer is not None:
                tracer.Warn("cap exceeds class", cap=cap,
                            leaf=tree.leaves[label], size=len(indices))
            continue
        generator = aida.make_random(seed, "subsample", int(label))
        chosen = set(generator.choice(len(indices), size=cap, replace=False))
        for position, index in enumerate(indices):
            keep[index] = position in chosen
    return source.Subset(numpy.flatnonzero(keep))


def split_shared_nonshared(source, tree, tracer=None):
    """Return the shared view and the full view of 'source'.

    returns -- A pair '(shared, source)': the examples whose label is a
    shared class, in order, and 'source' itself.  If the shared view is
    empty, a warning is emitted through 'tracer'."""

    shared = source.Filter(lambda e: e.label is not None
                           and tree.IsShared(e.label))
    if len(shared) == 0 and tracer is not None:
        tracer.Warn("empty shared subset")
    return (shared, source)


def _read_lines(path):
    """Return the lines of 'path' decoded as UTF-8.

    raises -- 'DataError' if the file cannot be read, or carrying the
    line number of the first line that is not UTF-8."""

    try:
        with open(path, "rb") as file:
            raw = file.readlines()
    except OSError as exception:
        raise DataError(aida.error("could not read file", path=path,
                                   reason=str(exception)))
    lines = []
    for number, line in enumerate(raw, 1):
        try:
            lines.append(line.decode("utf-8"))
        except UnicodeDecodeError as exception:
            raise DataError(aida.error("invalid dataset line", path=path,
                                       line=number, reason=str(exception)),
                            line=number)
    return lines


def _parse_line(path, number, line, tree):
    """Return '(domain, label, kind, payload)' for one JSONL line."""

    def invalid(reason):
        raise DataError(aida.error("invalid dataset line", path=path,
                                   line=number, reason=reason),
                        line=number)

    try:
        record = json.loads(line)
    except ValueError as exception:
        invalid(str(exception))
    if not isinstance(record, dict):
        invalid("not a JSON object")
    domain = record.get("domain")
    if domain not in DOMAINS:
        invalid("'domain' must be \"source\" or \"target\"")
    label = record.get("label")
    if label is not None:
        if not isinstance(label, str):
            invalid("'label' must be a string")
        try:
            label = tree.GetLeafIndex(label)
        except ValueError:
            raise DataError(aida.error("unknown label", path=path,
                                       line=number, label=label),
                            line=number)
    elif domain == SOURCE:
        invalid("source lines need a 'label'")
    if "features" in record:
        features = record["features"]
        if not isinstance(features, list) or not features \
           or not all([isinstance(v, (int, float))
                       and not isinstance(v, bool) for v in features]):
            invalid("'features' must be a nonempty list of numbers")
        try:
            values = numpy.array(features, dtype=numpy.float64)
        except OverflowError:
            values = numpy.array([numpy.inf])
        if not numpy.all(numpy.isfinite(values)):
            invalid("'features' must be finite")
        return (domain, label, VECTORS, values)
    if "text" in record:
        if not isinstance(record["text"], str):
            invalid("'text' must be a string")
        tokens = record["text"].split()
        if not tokens:
            invalid("'text' is empty")
        return (domain, label, TOKENS, tokens)
    invalid("a line needs 'features' or 'text'")


def load_jsonl(path, tree, vocabulary=None, threshold=DEFAULT_THRESHOLD):
    """Read a JSONL dataset.

    'tree' -- The 'LabelTree' labels are resolved against.

    'vocabulary' -- The 'Vocabulary' to encode text with.  If 'None',
    one is built from the source lines of this file, keeping tokens
    that occur at least 'threshold' times.

    returns -- A 'Dataset'.  Blank lines are skipped; an empty file
    yields an empty dataset.

    raises -- 'DataError' carrying the line number of the first bad
    line."""

    records = []
    kind = width = None
    for number, line in enumerate(_read_lines(path), 1):
        if not line.strip():
            continue
        record = _parse_line(path, number, line, tree)
        if kind is None:
            kind = record[2]
            if kind == VECTORS:
                width = record[3].size
        elif record[2] != kind:
            raise DataError(aida.error("mixed payloads", path=path,
                                       line=number), line=number)
        if kind == VECTORS and record[3].size != width:
            raise DataError(aida.error("feature width", path=path,
                                       line=number, expected=width,
                                       width=record[3].size), line=number)
        records.append(record)

    if kind != TOKENS:
        return Dataset([Example(payload, label, domain)
                        for (domain, label, kind, payload) in records])
    if vocabulary is None:
        vocabulary = Vocabulary.Build([r[3] for r in records
                                       if r[0] == SOURCE], threshold)
    return Dataset([Example(vocabulary.Encode(payload), label, domain)
                    for (domain, label, kind, payload) in records],
                   vocabulary)


def write_jsonl(dataset, path, tree):
    """Write 'dataset' to 'path' in the JSONL format.

    Token payloads are decoded through 'dataset.vocabulary'; unknown
    indices are written as 'Vocabulary.UNKNOWN'."""

    with open(path, "w", encoding="utf-8") as file:
        for example in dataset:
            record = {"domain": example.domain}
            if example.label is not None:
                record["label"] = tree.leaves[example.label]
            if example.IsSequence():
                record["text"] = " ".join(
                    dataset.vocabulary.Decode(example.payload))
            else:
                record["features"] = [float(v) for v in example.payload]
            file.write(json.dumps(record) + "\n")


def write_domains(pair, directory, manifest):
    """Write 'pair' into 'directory'.

    The files written are 'source.jsonl', 'target.jsonl',
    'target_eval.jsonl', 'hierarchy.json' and 'manifest.json'; the
    latter holds the dictionary 'manifest'."""

    os.makedirs(directory, exist_ok=True)
    write_jsonl(pair.source, os.path.join(directory, "source.jsonl"),
                pair.tree)
    write_jsonl(pair.target, os.path.join(directory, "target.jsonl"),
                pair.tree)
    if pair.target_eval is not None:
        write_jsonl(pair.target_eval,
                    os.path.join(directory, "target_eval.jsonl"), pair.tree)
    hierarchy.write_hierarchy(pair.tree,
                              os.path.join(directory, "hierarchy.json"))
    with open(os.path.join(directory, "manifest.json"), "w") as file:
        json.dump(manifest, file, indent=2, sort_keys=True)
        file.write("\n")


def load_domains(directory, threshold=DEFAULT_THRESHOLD):
    """Read a domain pair written by 'write_domains' (or by hand).

    The vocabulary is built from 'source.jsonl' and reused for the
    target files.  'target_eval.jsonl' is optional.

    returns -- A 'DomainPair'."""

    tree = hierarchy.load_hierarchy(os.path.join(directory,
                                                 "hierarchy.json"))
    source = load_jsonl(os.path.join(directory, "source.jsonl"), tree,
                        threshold=threshold)
    target = load_jsonl(os.path.join(directory, "target.jsonl"), tree,
                        source.vocabulary, threshold)
    path = os.path.join(directory, "target_eval.jsonl")
    target_eval = None
    if os.path.exists(path):
        target_eval = load_jsonl(path, tree, source.vocabulary, threshold)
    for dataset, domain in ((source, SOURCE), (target, TARGET)):
        for example in dataset:
            if example.domain != domain:
                raise DataError(aida.error("wrong domain", path=directory,
                                           domain=example.domain,
                                           expected=domain))
    return DomainPair(source, target, target_eval, tree, source.vocabulary)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
