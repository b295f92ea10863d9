########################################################################
#
# File:   tensor.py
# Date:   2026-03-04
#
# Contents:
#   Dense float64 tensors with reverse-mode differentiation.
#
# For license terms see the file COPYING.
#
########################################################################

"""Dense tensors and the operations that build the computation tape.

A 'Tensor' wraps a float64 'numpy' array.  Tensors produced by the
operations in this module from at least one differentiable input carry
a 'TapeNode' recording the operation, its inputs and its backward rule.
'Parameter's are the differentiable leaves; each owns its value, its
gradient accumulator and its momentum buffer.  Tensors built directly
from arrays are constants and never receive gradients.

Every node receives a creation index from a counter that only grows,
so processing nodes in decreasing index order is a valid reverse
topological order.  'backward' walks the tape iteratively; no Python
recursion is involved, so very deep tapes (long recurrent chains) are
fine.

Every operation checks its output.  An operation producing a NaN or an
infinity raises 'NonFiniteError' rather than propagating the value."""

########################################################################
# Imports
########################################################################

import itertools
import threading

import numpy

import aida

########################################################################
# Constants
########################################################################

MASK_SENTINEL = -1e9
"""The logit assigned to masked-out classes.

It is finite, so it never trips the non-finite check, yet
'exp(MASK_SENTINEL - m)' underflows to exactly zero for any logit 'm'
of ordinary size."""

PROBABILITY_FLOOR = 1e-30
"""The smallest probability 'cross_entropy' takes the logarithm of."""

########################################################################
# Exceptions
########################################################################

class DimensionError(aida.AidaException):
    """Operand shapes are incompatible."""

    kind = "dimension"



class DegenerateInputError(aida.AidaException):
    """A softmax row consists entirely of masked entries."""

    kind = "degenerate-input"



class PreconditionError(aida.AidaException):
    """An operation was applied to arguments outside its domain."""

    kind = "precondition"



class NonFiniteError(aida.AidaException):
    """An operation produced a NaN or an infinity."""

    kind = "non-finite"

    def __init__(self, operation):

        aida.AidaException.__init__(self, aida.error("non finite value",
                                                     operation=operation))
        self.operation = operation

########################################################################
# Classes
########################################################################

class Diagnostics:
    """Numerical event counters for the current thread.

    'clamped_probabilities' counts the probabilities 'cross_entropy'
    raised to 'PROBABILITY_FLOOR' since the last 'Reset'."""

    def __init__(self):

        self.Reset()


    def Reset(self):

        self.clamped_probabilities = 0



class TapeNode(object):
    """A recorded operation.

    'kind' -- The operation, one of the constants below.

    'inputs' -- The input 'Tensor's.

    'rule' -- A callable taking the gradient of the output and
    returning one gradient (or 'None') per input.

    'index' -- The creation index.

    'owner' -- For leaf nodes only, the 'Parameter' that accumulates
    the gradient."""

    LEAF = "leaf"
    MATMUL = "matmul"
    TRANSPOSE = "transpose"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SCALE = "scale"
    TANH = "tanh"
    SIGMOID = "sigmoid"
    RELU = "relu"
    EXP = "exp"
    LOG = "log"
    SQUARE = "square"
    SUM = "sum"
    MEAN = "mean"
    SOFTMAX = "softmax"
    CROSS_ENTROPY = "cross_entropy"
    OUTER_FLATTEN = "outer_flatten"
    MAX_OVER_TIME = "max_over_time"
    GRAD_REVERSE = "grad_reverse"
    MASK_FILL = "mask_fill"
    TAKE_COLUMNS = "take_columns"
    SLICE = "slice"
    CONCAT = "concat"
    RESHAPE = "reshape"
    EMBED = "embed"

    __slots__ = ("kind", "inputs", "rule", "index", "owner")

    def __init__(self, kind, inputs, rule, owner=None):

        self.kind = kind
        self.inputs = inputs
        self.rule = rule
        self.index = next(_node_counter)
        self.owner = owner



class Tensor(object):
    """A dense float64 array, optionally attached to the tape."""

    def __init__(self, values, node=None):
        """Construct a new 'Tensor'.

        'values' -- An array-like of numbers.

        'node' -- The 'TapeNode' that produced this tensor, or 'None'
        for a constant."""

        self.values = numpy.array(values, dtype=numpy.float64)
        self.node = node


    @property
    def shape(self):

        return self.values.shape


    def IsConstant(self):
        """Return true if no gradient flows into this tensor."""

        return self.node is None


    def Item(self):
        """Return the single element of this tensor as a 'float'."""

        if self.values.size != 1:
            raise DimensionError(aida.error("not a scalar",
                                            shape=self.values.shape))
        return float(self.values.reshape(()))


    def __repr__(self):

        return "Tensor(%r)" % (self.values,)



class Parameter(Tensor):
    """A trainable leaf.

    'name' -- The name under which the parameter is checkpointed.

    'grad' -- The gradient accumulator, the shape of 'values'.

    'momentum' -- The optimizer's momentum buffer, the shape of
    'values'."""

    def __init__(self, values, name=""):

        Tensor.__init__(self, values)
        self.name = name
        self.grad = numpy.zeros_like(self.values)
        self.momentum = numpy.zeros_like(self.values)
        self.node = TapeNode(TapeNode.LEAF, (), None, self)


    def ZeroGrad(self):

        self.grad[...] = 0.0


    def __repr__(self):

        return "Parameter(%s, %r)" % (self.name, self.values)

########################################################################
# Variables
########################################################################

_node_counter = itertools.count()

_thread_state = threading.local()

########################################################################
# Functions
########################################################################

def get_diagnostics():
    """Return the 'Diagnostics' of the calling thread."""

    diagnostics = getattr(_thread_state, "diagnostics", None)
    if diagnostics is None:
        diagnostics = _thread_state.diagnostics = Diagnostics()
    return diagnostics


def as_tensor(value):
    """Return 'value' as a 'Tensor', wrapping arrays as constants."""

    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def constant(tensor):
    """Return a constant holding a copy of the values of 'tensor'."""

    return Tensor(as_tensor(tensor).values)


def record(kind, values, inputs, rule):
    """Create the output of an operation and attach it to the tape.

    'kind' -- The operation name, used in error messages.

    'values' -- The computed output array.

    'inputs' -- The sequence of input 'Tensor's.

    'rule' -- The backward rule; see 'TapeNode'.

    returns -- A new 'Tensor'.  It is a constant if every input is.

    raises -- 'NonFiniteError' if 'values' holds a NaN or an
    infinity."""

    values = numpy.asarray(values, dtype=numpy.float64)
    if not numpy.all(numpy.isfinite(values)):
        raise NonFiniteError(kind)
    output = Tensor(values)
    inputs = tuple(inputs)
    if any([t.node is not None for t in inputs]):
        output.node = TapeNode(kind, inputs, rule)
    return output


def backward(output, gradient=None):
    """Accumulate the gradient of 'output' into every reachable
    'Parameter'.

    'output' -- The 'Tensor' to differentiate.

    'gradient' -- The gradient with respect to 'output'.  If 'None',
    'output' must hold a single element and the gradient is one.

    Gradients are added to 'Parameter.grad'; the caller zeroes them
    between steps.  A parameter used twice receives both
    contributions."""

    if output.node is None:
        return
    if gradient is None:
        if output.values.size != 1:
            raise DimensionError(aida.error("not a scalar",
                                            shape=output.values.shape))
        gradient = numpy.ones_like(output.values)

    nodes = {}
    stack = [output.node]
    while stack:
        node = stack.pop()
        if id(node) in nodes:
            continue
        nodes[id(node)] = node
        for input in node.inputs:
            if input.node is not None and id(input.node) not in nodes:
                stack.append(input.node)

    grads = {id(output.node): numpy.asarray(gradient, dtype=numpy.float64)}
    for node in sorted(nodes.values(), key=lambda n: n.index, reverse=True):
        g = grads.pop(id(node), None)
        if g is None:
            continue
        if node.kind == TapeNode.LEAF:
            node.owner.grad += g
            continue
        for input, input_grad in zip(node.inputs, node.rule(g)):
            if input.node is None or input_grad is None:
                continue
            key = id(input.node)
            if key in grads:
                grads[key] = grads[key] + input_grad
            else:
                grads[key] = input_grad


def _unbroadcast(gradient, shape):
    """Sum 'gradient' down to 'shape' after numpy broadcasting."""

    while gradient.ndim > len(shape):
        gradient = gradient.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and gradient.shape[axis] != 1:
            gradient = gradient.sum(axis=axis, keepdims=True)
    return gradient


def _broadcast_shape(kind, a, b):

    try:
        return numpy.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise DimensionError(aida.error("shape mismatch", operation=kind,
                                        left=a.shape, right=b.shape))

### Linear algebra.

def matmul(a, b):
    """Return the matrix product of 'a' [m x k] and 'b' [k x n]."""

    a, b = as_tensor(a), as_tensor(b)
    if a.values.ndim != 2 or b.values.ndim != 2 \
       or a.shape[1] != b.shape[0]:
        raise DimensionError(aida.error("shape mismatch",
                                        operation=TapeNode.MATMUL,
                                        left=a.shape, right=b.shape))
    av, bv = a.values, b.values
    return record(TapeNode.MATMUL, av @ bv, (a, b),
                  lambda g: (g @ bv.T, av.T @ g))


def transpose(a):
    """Return the transpose of the matrix 'a'."""

    a = as_tensor(a)
    if a.values.ndim != 2:
        raise DimensionError(aida.error("not a matrix", shape=a.shape))
    return record(TapeNode.TRANSPOSE, a.values.T, (a,),
                  lambda g: (g.T,))

### Elementwise arithmetic.

def add(a, b):
    """Return 'a + b', broadcasting 'b' over leading axes as numpy
    does."""

    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape(TapeNode.ADD, a, b)
    sa, sb = a.shape, b.shape
    return record(TapeNode.ADD, a.values + b.values, (a, b),
                  lambda g: (_unbroadcast(g, sa), _unbroadcast(g, sb)))


def sub(a, b):
    """Return 'a - b'."""

    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape(TapeNode.SUB, a, b)
    sa, sb = a.shape, b.shape
    return record(TapeNode.SUB, a.values - b.values, (a, b),
                  lambda g: (_unbroadcast(g, sa), _unbroadcast(-g, sb)))


def mul(a, b):
    """Return the elementwise product of 'a' and 'b'."""

    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape(TapeNode.MUL, a, b)
    av, bv = a.values, b.values
    return record(TapeNode.MUL, av * bv, (a, b),
                  lambda g: (_unbroadcast(g * bv, av.shape),
                             _unbroadcast(g * av, bv.shape)))


def scale(a, factor):
    """Return 'a' multiplied by the number 'factor'."""

    a = as_tensor(a)
    factor = float(factor)
    return record(TapeNode.SCALE, a.values * factor, (a,),
                  lambda g: (g * factor,))


def square(a):

    a = as_tensor(a)
    av = a.values
    return record(TapeNode.SQUARE, av * av, (a,),
                  lambda g: (2.0 * av * g,))

### Nonlinearities.

def tanh(a):

    a = as_tensor(a)
    y = numpy.tanh(a.values)
    return record(TapeNode.TANH, y, (a,), lambda g: (g * (1.0 - y * y),))


def sigmoid(a):

    a = as_tensor(a)
    # Split by sign so that 'exp' never overflows.
    x = a.values
    y = numpy.empty_like(x)
    positive = x >= 0
    y[positive] = 1.0 / (1.0 + numpy.exp(-x[positive]))
    e = numpy.exp(x[~positive])
    y[~positive] = e / (1.0 + e)
    return record(TapeNode.SIGMOID, y, (a,), lambda g: (g * y * (1.0 - y),))


def relu(a):

    a = as_tensor(a)
    active = a.values > 0
    return record(TapeNode.RELU, numpy.where(active, a.values, 0.0), (a,),
                  lambda g: (g * active,))


def exp(a):

    a = as_tensor(a)
    with numpy.errstate(over="ignore"):
        y = numpy.exp(a.values)
    return record(TapeNode.EXP, y, (a,), lambda g: (g * y,))


def log(a):

    a = as_tensor(a)
    av = a.values
    with numpy.errstate(divide="ignore", invalid="ignore"):
        y = numpy.log(av)
    return record(TapeNode.LOG, y, (a,), lambda g: (g / av,))

### Reductions.

def sum(a, axis=None):
    """Return the sum of the elements of 'a', over 'axis' if given."""

    a = as_tensor(a)
    shape = a.shape

    def rule(g):
        if axis is not None:
            g = numpy.expand_dims(g, axis)
        return (numpy.broadcast_to(g, shape).copy(),)

    return record(TapeNode.SUM, a.values.sum(axis=axis), (a,), rule)


def mean(a, axis=None):
    """Return the mean of the elements of 'a', over 'axis' if given."""

    a = as_tensor(a)
    if a.values.size == 0:
        raise PreconditionError(aida.error("empty batch",
                                           operation=TapeNode.MEAN))
    shape = a.shape
    count = a.values.size if axis is None else shape[axis]

    def rule(g):
        if axis is not None:
            g = numpy.expand_dims(g, axis)
        return (numpy.broadcast_to(g / count, shape).copy(),)

    return record(TapeNode.MEAN, a.values.mean(axis=axis), (a,), rule)

### Probabilities.

def softmax(z):
    """Return the softmax of 'z' along its last axis.

    The maximum of each row is subtracted first, so no finite input
    overflows.  Entries equal to 'MASK_SENTINEL' receive probability
    zero.

    raises -- 'DegenerateInputError' if every entry of some row is the
    sentinel."""

    z = as_tensor(z)
    zv = z.values
    if zv.ndim == 0 or zv.shape[-1] == 0:
        raise DimensionError(aida.error("not a vector", shape=zv.shape))
    if numpy.any(numpy.all(zv <= MASK_SENTINEL, axis=-1)):
        raise DegenerateInputError(aida.error("degenerate softmax"))
    e = numpy.exp(zv - zv.max(axis=-1, keepdims=True))
    y = e / e.sum(axis=-1, keepdims=True)
    return record(TapeNode.SOFTMAX, y, (z,),
                  lambda g: (y * (g - (g * y).sum(axis=-1, keepdims=True)),))


def negative_log_likelihood(probabilities, labels):
    """Return '-log p[label]' for each row of 'probabilities'.

    'probabilities' -- A 'Tensor' [B x n], or [n] for one example.

    'labels' -- An integer, or a sequence of B integers in '[0, n)'.

    returns -- A 'Tensor' [B], or a scalar for one example.
    Probabilities below 'PROBABILITY_FLOOR' are clamped to it; a
    clamped entry contributes no gradient and is counted in
    'get_diagnostics().clamped_probabilities'."""

    probabilities = as_tensor(probabilities)
    pv = probabilities.values
    single = pv.ndim == 1
    if single:
        pv = pv[numpy.newaxis, :]
    labels = numpy.atleast_1d(numpy.asarray(labels, dtype=numpy.int64))
    if pv.ndim != 2 or labels.shape != (pv.shape[0],):
        raise DimensionError(aida.error("shape mismatch",
                                        operation=TapeNode.CROSS_ENTROPY,
                                        left=probabilities.shape,
                                        right=labels.shape))
    if numpy.any(labels < 0) or numpy.any(labels >= pv.shape[1]):
        raise PreconditionError(aida.error("label out of range",
                                           classes=pv.shape[1]))
    rows = numpy.arange(pv.shape[0])
    picked = pv[rows, labels]
    clamped = picked < PROBABILITY_FLOOR
    if numpy.any(clamped):
        get_diagnostics().clamped_probabilities += int(clamped.sum())
    safe = numpy.where(clamped, PROBABILITY_FLOOR, picked)
    losses = -numpy.log(safe)

    def rule(g):
        g = numpy.atleast_1d(g)
        grad = numpy.zeros_like(pv)
        grad[rows, labels] = numpy.where(clamped, 0.0, -g / safe)
        if single:
            grad = grad[0]
        return (grad,)

    return record(TapeNode.CROSS_ENTROPY, losses[0] if single else losses,
                  (probabilities,), rule)


def cross_entropy(probabilities, labels, weights=None):
    """Return the mean cross-entropy of 'probabilities' against
    'labels'.

    'weights' -- If not 'None', a constant [B] array; the result is the
    mean of the weighted per-example losses.

    returns -- A scalar 'Tensor'."""

    losses = negative_log_likelihood(probabilities, labels)
    if weights is not None:
        losses = mul(losses, constant(weights))
    return mean(losses)

### Structure.

def outer_flatten(f, g):
    """Return the flattened outer product of 'f' and 'g'.

    Entry 'i * len(g) + j' of the result is 'f[i] * g[j]'.  Both
    arguments may instead be batches [B x df] and [B x dg], giving
    [B x df*dg]."""

    f, g = as_tensor(f), as_tensor(g)
    fv, gv = f.values, g.values
    if fv.ndim != gv.ndim or fv.ndim not in (1, 2) \
       or fv.shape[:-1] != gv.shape[:-1]:
        raise DimensionError(aida.error("shape mismatch",
                                        operation=TapeNode.OUTER_FLATTEN,
                                        left=fv.shape, right=gv.shape))
    df, dg = fv.shape[-1], gv.shape[-1]
    outer = fv[..., :, numpy.newaxis] * gv[..., numpy.newaxis, :]

    def rule(grad):
        grad = grad.reshape(fv.shape[:-1] + (df, dg))
        return ((grad * gv[..., numpy.newaxis, :]).sum(axis=-1),
                (grad * fv[..., :, numpy.newaxis]).sum(axis=-2))

    return record(TapeNode.OUTER_FLATTEN,
                  outer.reshape(fv.shape[:-1] + (df * dg,)), (f, g), rule)


def max_over_time(h):
    """Return the per-column maximum of 'h' [T x d].

    The gradient flows only to the maximizing entry; ties go to the
    lowest time index.

    raises -- 'PreconditionError' if 'T' is zero."""

    h = as_tensor(h)
    hv = h.values
    if hv.ndim != 2:
        raise DimensionError(aida.error("not a matrix", shape=hv.shape))
    if hv.shape[0] == 0:
        raise PreconditionError(aida.error("empty sequence"))
    winners = numpy.argmax(hv, axis=0)
    columns = numpy.arange(hv.shape[1])

    def rule(g):
        grad = numpy.zeros_like(hv)
        grad[winners, columns] = g
        return (grad,)

    return record(TapeNode.MAX_OVER_TIME, hv[winners, columns], (h,), rule)


def grad_reverse(x, coefficient):
    """Return a copy of 'x' whose backward rule multiplies the gradient
    by '-coefficient'.

    raises -- 'PreconditionError' if 'coefficient' is negative."""

    x = as_tensor(x)
    coefficient = float(coefficient)
    if not coefficient >= 0:
        raise PreconditionError(aida.error("negative reversal coefficient",
                                           coefficient=coefficient))
    return record(TapeNode.GRAD_REVERSE, x.values.copy(), (x,),
                  lambda g: (-coefficient * g,))


def mask_fill(z, keep, fill=MASK_SENTINEL):
    """Return 'z' with the entries where 'keep' is false replaced by
    'fill'.

    'keep' -- A boolean array broadcastable to the shape of 'z'."""

    z = as_tensor(z)
    keep = numpy.asarray(keep, dtype=bool)
    try:
        keep = numpy.broadcast_to(keep, z.shape)
    except ValueError:
        raise DimensionError(aida.error("shape mismatch",
                                        operation=TapeNode.MASK_FILL,
                                        left=z.shape, right=keep.shape))
    return record(TapeNode.MASK_FILL, numpy.where(keep, z.values, fill),
                  (z,), lambda g: (g * keep,))


def take_columns(x, indices):
    """Return the columns 'indices' of 'x' along its last axis."""

    x = as_tensor(x)
    indices = numpy.asarray(indices, dtype=numpy.int64)
    shape = x.shape

    def rule(g):
        grad = numpy.zeros(shape)
        numpy.add.at(grad, (Ellipsis, indices), g)
        return (grad,)

    return record(TapeNode.TAKE_COLUMNS, x.values[..., indices], (x,), rule)


def slice_rows(x, start, stop):
    """Return rows 'start' up to 'stop' of the matrix 'x'."""

    x = as_tensor(x)
    shape = x.shape

    def rule(g):
        grad = numpy.zeros(shape)
        grad[start:stop] = g
        return (grad,)

    return record(TapeNode.SLICE, x.values[start:stop], (x,), rule)


def slice_columns(x, start, stop):
    """Return columns 'start' up to 'stop' of 'x' along its last
    axis."""

    x = as_tensor(x)
    shape = x.shape

    def rule(g):
        grad = numpy.zeros(shape)
        grad[..., start:stop] = g
        return (grad,)

    return record(TapeNode.SLICE, x.values[..., start:stop], (x,), rule)


def concat(tensors, axis=-1):
    """Concatenate 'tensors' along 'axis'."""

    tensors = [as_tensor(t) for t in tensors]
    try:
        values = numpy.concatenate([t.values for t in tensors], axis=axis)
    except ValueError:
        raise DimensionError(aida.error("shape mismatch",
                                        operation=TapeNode.CONCAT,
                                        left=tensors[0].shape,
                                        right=tensors[-1].shape))
    boundaries = numpy.cumsum([t.shape[axis] for t in tensors])[:-1]
    return record(TapeNode.CONCAT, values, tensors,
                  lambda g: numpy.split(g, boundaries, axis=axis))


def reshape(x, shape):

    x = as_tensor(x)
    original = x.shape
    return record(TapeNode.RESHAPE, x.values.reshape(shape), (x,),
                  lambda g: (g.reshape(original),))


def embed(table, indices):
    """Return the rows 'indices' of the embedding matrix 'table'.

    Repeated indices accumulate their gradients."""

    table = as_tensor(table)
    indices = numpy.asarray(indices, dtype=numpy.int64)
    shape = table.shape

    def rule(g):
        grad = numpy.zeros(shape)
        numpy.add.at(grad, indices, g)
        return (grad,)

    return record(TapeNode.EMBED, table.values[indices], (table,), rule)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
