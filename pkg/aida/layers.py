########################################################################
#
# File:   layers.py
# Date:   2026-03-05
#
# Contents:
#   Feature encoders, classifier head, mask filter and domain
#   discriminator.
#
# For license terms see the file COPYING.
#
########################################################################

"""The network stack.

A feature encoder maps an example payload to a feature vector of width
'd'.  The classifier head scores all 'K' leaf classes; its final layer
holds one row per class, and those rows are the class vectors the
hierarchy penalty pulls toward their parents.  The mask filter hides
the non-shared classes from the shared prediction, and the domain
discriminator sees the flattened outer product of the features with the
shared prediction.

All layers take a 'numpy.random.Generator' at construction and draw
their initial weights from it; nothing here touches global random
state."""

########################################################################
# Imports
########################################################################

import math

import numpy

import aida
from aida import tensor
from aida.tensor import PreconditionError, DimensionError

########################################################################
# Constants
########################################################################

VECTOR_MLP = "vector-mlp"
SEQUENCE_RECURRENT = "sequence-recurrent"
ENCODER_VARIANTS = (VECTOR_MLP, SEQUENCE_RECURRENT)

LSTM = "lstm"
GRU = "gru"

UNKNOWN_INDEX = 0
"""The token index reserved for out-of-vocabulary tokens."""

########################################################################
# Functions
########################################################################

def glorot_uniform(generator, fan_out, fan_in):
    """Return a [fan_out x fan_in] matrix drawn uniformly from
    '+-sqrt(6 / (fan_in + fan_out))'."""

    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return generator.uniform(-limit, limit, size=(fan_out, fan_in))

########################################################################
# Classes
########################################################################

class EncoderSpec(object):
    """The shape of a feature encoder.

    'variant' -- 'VECTOR_MLP' or 'SEQUENCE_RECURRENT'.

    'input_dim' -- For 'VECTOR_MLP', the width of the input vectors.

    'vocabulary_size' -- For 'SEQUENCE_RECURRENT', the number of token
    indices, 'UNKNOWN_INDEX' included.

    'embedding_dim' -- The width of the token embeddings.

    'hidden_dim' -- For 'SEQUENCE_RECURRENT', the state width of each
    direction.  For 'VECTOR_MLP', the width of the hidden layer, or
    zero for a single linear layer.

    'output_dim' -- For 'VECTOR_MLP', the feature width.  Ignored for
    'SEQUENCE_RECURRENT', whose feature width follows from
    'hidden_dim' and 'bidirectional'.

    'cell' -- 'LSTM' or 'GRU'.

    'bidirectional' -- True to run a second cell over the reversed
    sequence and concatenate the states.

    'max_length' -- Longer sequences are truncated."""

    def __init__(self, variant, input_dim=0, vocabulary_size=0,
                 embedding_dim=300, hidden_dim=128, output_dim=256,
                 cell=LSTM, bidirectional=True, max_length=300):

        self.variant = variant
        self.input_dim = int(input_dim)
        self.vocabulary_size = int(vocabulary_size)
        self.embedding_dim = int(embedding_dim)
        self.hidden_dim = int(hidden_dim)
        self.output_dim = int(output_dim)
        self.cell = cell
        self.bidirectional = bool(bidirectional)
        self.max_length = int(max_length)
        self.Validate()


    def Validate(self):
        """Check the spec.

        raises -- 'UserError' if a dimension is out of range."""

        def invalid(field, value):
            raise aida.UserError(aida.error("invalid encoder spec",
                                            field=field, value=value))

        if self.variant not in ENCODER_VARIANTS:
            invalid("variant", self.variant)
        if self.variant == VECTOR_MLP:
            if self.input_dim <= 0:
                invalid("input_dim", self.input_dim)
            if self.output_dim <= 0:
                invalid("output_dim", self.output_dim)
            if self.hidden_dim < 0:
                invalid("hidden_dim", self.hidden_dim)
        else:
            if self.vocabulary_size <= UNKNOWN_INDEX + 1:
                invalid("vocabulary_size", self.vocabulary_size)
            if self.embedding_dim <= 0:
                invalid("embedding_dim", self.embedding_dim)
            if self.hidden_dim <= 0:
                invalid("hidden_dim", self.hidden_dim)
            if self.cell not in (LSTM, GRU):
                invalid("cell", self.cell)
            if self.max_length <= 0:
                invalid("max_length", self.max_length)


    def GetFeatureWidth(self):
        """Return the width 'd' of the encoder's output."""

        if self.variant == VECTOR_MLP:
            return self.output_dim
        return self.hidden_dim * (self.bidirectional and 2 or 1)


    def AsDictionary(self):

        return dict(self.__dict__)


    @classmethod
    def FromDictionary(cls, dictionary):

        return cls(**dictionary)


    def __eq__(self, other):

        return isinstance(other, EncoderSpec) \
               and self.AsDictionary() == other.AsDictionary()



class Linear:
    """A fully connected layer computing 'x W^T + b'."""

    def __init__(self, name, input_dim, output_dim, generator):

        self.weight = tensor.Parameter(glorot_uniform(generator, output_dim,
                                                      input_dim),
                                       name + ".weight")
        self.bias = tensor.Parameter(numpy.zeros(output_dim), name + ".bias")


    def Forward(self, x):

        return tensor.add(tensor.matmul(x, tensor.transpose(self.weight)),
                          self.bias)


    def GetParameters(self):

        return [self.weight, self.bias]



class VectorEncoder:
    """A feed-forward encoder for fixed-width feature vectors.

    With a hidden layer the encoder computes 'W2 tanh(W1 x + b1) + b2';
    without one, 'W x + b'."""

    def __init__(self, spec, generator, name="encoder"):

        self.spec = spec
        if spec.hidden_dim:
            self.layers = [Linear(name + ".0", spec.input_dim,
                                  spec.hidden_dim, generator),
                           Linear(name + ".1", spec.hidden_dim,
                                  spec.output_dim, generator)]
        else:
            self.layers = [Linear(name + ".0", spec.input_dim,
                                  spec.output_dim, generator)]


    def Forward(self, payloads):
        """Encode a batch.

        'payloads' -- An array [B x input_dim].

        returns -- A 'Tensor' [B x d]."""

        x = numpy.asarray(payloads, dtype=numpy.float64)
        if x.ndim != 2 or x.shape[1] != self.spec.input_dim:
            raise DimensionError(aida.error("input width",
                                            expected=self.spec.input_dim,
                                            shape=x.shape))
        if x.shape[0] == 0:
            raise PreconditionError(aida.error("empty batch",
                                               operation="encode"))
        h = tensor.Tensor(x)
        for i, layer in enumerate(self.layers):
            if i > 0:
                h = tensor.tanh(h)
            h = layer.Forward(h)
        return h


    def GetParameters(self):

        parameters = []
        for layer in self.layers:
            parameters.extend(layer.GetParameters())
        return parameters



class LSTMCell:
    """A single-layer LSTM cell."""

    gates = 4

    def __init__(self, name, input_dim, hidden_dim, generator):

        self.hidden_dim = hidden_dim
        self.input_weight = tensor.Parameter(
            glorot_uniform(generator, 4 * hidden_dim, input_dim),
            name + ".input_weight")
        self.state_weight = tensor.Parameter(
            glorot_uniform(generator, 4 * hidden_dim, hidden_dim),
            name + ".state_weight")
        bias = numpy.zeros(4 * hidden_dim)
        # Forget gate starts open.
        bias[hidden_dim:2 * hidden_dim] = 1.0
        self.bias = tensor.Parameter(bias, name + ".bias")


    def Run(self, inputs):
        """Run the cell over 'inputs' [T x e].

        returns -- A list of T state 'Tensor's, each [1 x hidden]."""

        n = self.hidden_dim
        projected = tensor.add(tensor.matmul(inputs,
                                             tensor.transpose(
                                                 self.input_weight)),
                               self.bias)
        recurrent = tensor.transpose(self.state_weight)
        h = tensor.Tensor(numpy.zeros((1, n)))
        c = tensor.Tensor(numpy.zeros((1, n)))
        states = []
        for t in range(inputs.shape[0]):
            z = tensor.add(tensor.slice_rows(projected, t, t + 1),
                           tensor.matmul(h, recurrent))
            i = tensor.sigmoid(tensor.slice_columns(z, 0, n))
            f = tensor.sigmoid(tensor.slice_columns(z, n, 2 * n))
            g = tensor.tanh(tensor.slice_columns(z, 2 * n, 3 * n))
            o = tensor.sigmoid(tensor.slice_columns(z, 3 * n, 4 * n))
            c = tensor.add(tensor.mul(f, c), tensor.mul(i, g))
            h = tensor.mul(o, tensor.tanh(c))
            states.append(h)
        return states


    def GetParameters(self):

        return [self.input_weight, self.state_weight, self.bias]



class GRUCell:
    """A single-layer gated recurrent unit."""

    def __init__(self, name, input_dim, hidden_dim, generator):

        self.hidden_dim = hidden_dim
        self.input_weight = tensor.Parameter(
            glorot_uniform(generator, 3 * hidden_dim, input_dim),
            name + ".input_weight")
        self.state_weight = tensor.Parameter(
            glorot_uniform(generator, 3 * hidden_dim, hidden_dim),
            name + ".state_weight")
        self.bias = tensor.Parameter(numpy.zeros(3 * hidden_dim),
                                     name + ".bias")


    def Run(self, inputs):
        """Run the cell over 'inputs' [T x e].

        returns -- A list of T state 'Tensor's, each [1 x hidden]."""

        n = self.hidden_dim
        projected = tensor.add(tensor.matmul(inputs,
                                             tensor.transpose(
                                                 self.input_weight)),
                               self.bias)
        recurrent = tensor.transpose(self.state_weight)
        update_reset = tensor.slice_columns(recurrent, 0, 2 * n)
        candidate = tensor.slice_columns(recurrent, 2 * n, 3 * n)
        h = tensor.Tensor(numpy.zeros((1, n)))
        states = []
        for t in range(inputs.shape[0]):
            x = tensor.slice_rows(projected, t, t + 1)
            gates = tensor.sigmoid(
                tensor.add(tensor.slice_columns(x, 0, 2 * n),
                           tensor.matmul(h, update_reset)))
            z = tensor.slice_columns(gates, 0, n)
            r = tensor.slice_columns(gates, n, 2 * n)
            c = tensor.tanh(
                tensor.add(tensor.slice_columns(x, 2 * n, 3 * n),
                           tensor.matmul(tensor.mul(r, h), candidate)))
            h = tensor.add(tensor.mul(tensor.sub(1.0, z), c),
                           tensor.mul(z, h))
            states.append(h)
        return states


    def GetParameters(self):

        return [self.input_weight, self.state_weight, self.bias]



class SequenceEncoder:
    """A recurrent encoder for token-index sequences.

    Each token is embedded, the cell runs forward (and, if
    bidirectional, backward) over the sequence, the two states of each
    step are concatenated, and the result is max-pooled over time.
    Sequences are encoded one at a time, so no padding enters the
    pooling."""

    def __init__(self, spec, generator, name="encoder"):

        self.spec = spec
        self.embedding = tensor.Parameter(
            generator.uniform(-0.1, 0.1,
                              size=(spec.vocabulary_size,
                                    spec.embedding_dim)),
            name + ".embedding")
        cell_class = spec.cell == GRU and GRUCell or LSTMCell
        self.cells = [cell_class(name + ".forward", spec.embedding_dim,
                                 spec.hidden_dim, generator)]
        if spec.bidirectional:
            self.cells.append(cell_class(name + ".backward",
                                         spec.embedding_dim,
                                         spec.hidden_dim, generator))


    def GetIndices(self, tokens):
        """Return 'tokens' truncated and with unknown indices replaced.

        raises -- 'PreconditionError' if 'tokens' is empty."""

        indices = numpy.asarray(tokens, dtype=numpy.int64)
        indices = indices[:self.spec.max_length]
        if indices.size == 0:
            raise PreconditionError(aida.error("empty sequence"))
        unknown = (indices < 0) | (indices >= self.spec.vocabulary_size)
        return numpy.where(unknown, UNKNOWN_INDEX, indices)


    def EncodeSequence(self, tokens):
        """Encode one sequence.

        returns -- A 'Tensor' [d]."""

        indices = self.GetIndices(tokens)
        x = tensor.embed(self.embedding, indices)
        states = tensor.concat(self.cells[0].Run(x), axis=0)
        if len(self.cells) > 1:
            reversed_x = tensor.embed(self.embedding, indices[::-1])
            backward_states = self.cells[1].Run(reversed_x)
            backward_states.reverse()
            states = tensor.concat([states,
                                    tensor.concat(backward_states, axis=0)],
                                   axis=1)
        return tensor.max_over_time(states)


    def Forward(self, payloads):
        """Encode a batch of sequences.

        'payloads' -- A sequence of B token-index sequences.

        returns -- A 'Tensor' [B x d]."""

        if len(payloads) == 0:
            raise PreconditionError(aida.error("empty batch",
                                               operation="encode"))
        width = self.spec.GetFeatureWidth()
        rows = [tensor.reshape(self.EncodeSequence(tokens), (1, width))
                for tokens in payloads]
        return tensor.concat(rows, axis=0)


    def GetParameters(self):

        parameters = [self.embedding]
        for cell in self.cells:
            parameters.extend(cell.GetParameters())
        return parameters



class ClassifierHead:
    """Scores every leaf class.

    'hidden' -- A 'Linear' layer d -> hidden with a tanh, or 'None'.

    'output' -- The final 'Linear' layer; row k of its weight is the
    class vector of leaf k."""

    def __init__(self, feature_dim, hidden_dim, class_count, generator,
                 name="classifier"):

        if hidden_dim:
            self.hidden = Linear(name + ".hidden", feature_dim, hidden_dim,
                                 generator)
            width = hidden_dim
        else:
            self.hidden = None
            width = feature_dim
        self.output = Linear(name + ".output", width, class_count, generator)
        self.class_count = class_count


    def Forward(self, f):

        if self.hidden is not None:
            f = tensor.tanh(self.hidden.Forward(f))
        return self.output.Forward(f)


    def GetClassVectors(self):
        """Return the [K x D] 'Parameter' of per-class vectors."""

        return self.output.weight


    def GetParameters(self):

        parameters = []
        if self.hidden is not None:
            parameters.extend(self.hidden.GetParameters())
        parameters.extend(self.output.GetParameters())
        return parameters



class SharedMask:
    """The 0/1 indicator of the classes shared by both domains."""

    def __init__(self, values):

        values = numpy.asarray(values)
        if values.ndim != 1 or not numpy.all((values == 0) | (values == 1)):
            raise aida.UserError(aida.error("invalid mask",
                                            values=list(values)))
        if not numpy.any(values == 1):
            raise PreconditionError(aida.error("empty mask"))
        self.values = values.astype(numpy.float64)


    def __len__(self):

        return len(self.values)


    def GetSharedIndices(self):
        """Return the indices of the shared classes, ascending."""

        return numpy.flatnonzero(self.values == 1)


    def GetSharedCount(self):

        return int((self.values == 1).sum())


    def IsShared(self, k):

        return self.values[k] == 1



class DomainDiscriminator:
    """A three-layer network classifying conditioned features by domain.

    The output is a 2-way probability; index 1 means source."""

    SOURCE = 1
    TARGET = 0

    def __init__(self, input_dim, hidden_dim, generator,
                 activation="relu", name="discriminator"):

        self.input_dim = input_dim
        self.layers = [Linear(name + ".0", input_dim, hidden_dim, generator),
                       Linear(name + ".1", hidden_dim, hidden_dim, generator),
                       Linear(name + ".2", hidden_dim, 2, generator)]
        self.activation = activation == "tanh" and tensor.tanh or tensor.relu


    def Forward(self, conditioned):
        """Return the [B x 2] domain probabilities of 'conditioned'."""

        h = tensor.as_tensor(conditioned)
        if h.values.ndim == 1:
            h = tensor.reshape(h, (1, h.shape[0]))
        if h.shape[-1] != self.input_dim:
            raise DimensionError(aida.error("input width",
                                            expected=self.input_dim,
                                            shape=h.shape))
        for i, layer in enumerate(self.layers):
            if i > 0:
                h = self.activation(h)
            h = layer.Forward(h)
        return tensor.softmax(h)


    def GetParameters(self):

        parameters = []
        for layer in self.layers:
            parameters.extend(layer.GetParameters())
        return parameters

########################################################################
# Functions
########################################################################

def make_encoder(spec, generator):
    """Return the encoder described by 'spec'."""

    if spec.variant == VECTOR_MLP:
        return VectorEncoder(spec, generator)
    return SequenceEncoder(spec, generator)


def encode(encoder, payloads):
    """Return the [B x d] features of 'payloads'."""

    return encoder.Forward(payloads)


def classify_all(head, f):
    """Return the [B x K] logits of all classes."""

    return head.Forward(f)


def mask_filter(z, mask):
    """Replace the logits of non-shared classes by 'MASK_SENTINEL'.

    'mask' -- A 'SharedMask' or a 0/1 array.

    raises -- 'PreconditionError' if the mask has no ones."""

    if not isinstance(mask, SharedMask):
        mask = SharedMask(mask)
    z = tensor.as_tensor(z)
    if z.shape[-1] != len(mask):
        raise DimensionError(aida.error("shape mismatch",
                                        operation="mask_filter",
                                        left=z.shape,
                                        right=mask.values.shape))
    return tensor.mask_fill(z, mask.values == 1)


def shared_predict(head, f, mask):
    """Return the shared prediction: the softmax of the masked logits."""

    return tensor.softmax(mask_filter(classify_all(head, f), mask))


def condition(f, g, mask):
    """Return the outer product of 'f' with the shared entries of 'g'.

    'f' -- Features [B x d] (or [d]).

    'g' -- A shared prediction [B x K] (or [K]).

    returns -- A 'Tensor' [B x d*K'] (or [d*K'])."""

    if not isinstance(mask, SharedMask):
        mask = SharedMask(mask)
    return tensor.outer_flatten(f, tensor.take_columns(
        g, mask.GetSharedIndices()))


def discriminate(discriminator, conditioned):
    """Return the probability that each conditioned row came from the
    source domain, as a 'Tensor' [B]."""

    probabilities = discriminator.Forward(conditioned)
    return tensor.reshape(tensor.take_columns(probabilities,
                                              [DomainDiscriminator.SOURCE]),
                          (probabilities.shape[0],))

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
