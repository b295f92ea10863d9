########################################################################
#
# File:   rewards.py
# Date:   2026-03-06
#
# Contents:
#   Sparseness rewards for the all-classes classification loss.
#
# For license terms see the file COPYING.
#
########################################################################

"""Per-example weights for the all-classes classification loss.

The class reward favours examples whose sibling shared classes are
sparse; the example reward favours examples the domain discriminator
finds target-like.  Both are normalized over the batch and multiplied
by a global constant into the final reward, which weights the
per-example cross-entropy as a constant: no gradient flows through
it."""

########################################################################
# Imports
########################################################################

import numpy

import aida
from aida import hierarchy
from aida import layers
from aida import tensor

########################################################################
# Constants
########################################################################

MEDIAN = "median"
"""Scale sparse sizes by the reciprocal of their batch median."""

RAW = "raw"
"""Use the sparse sizes as they are."""

########################################################################
# Classes
########################################################################

class RewardBatch(object):
    """The rewards of one batch.

    'r1' -- The class rewards, summing to one.

    'r2' -- The example rewards, each in [0, 1].

    'r2_normalized' -- The example rewards after the batch softmax.

    'final' -- The final weights.

    'alpha' -- The global constant.

    Each member is a [B] 'numpy' array except 'alpha'."""

    def __init__(self, r1, r2, r2_normalized, final, alpha):

        self.r1 = r1
        self.r2 = r2
        self.r2_normalized = r2_normalized
        self.final = final
        self.alpha = alpha


    def GetStatistics(self):
        """Return the min, mean and max of 'r1', 'r2' and 'final'.

        returns -- A dictionary with keys such as 'reward_r1_min'."""

        statistics = {}
        for name, values in (("r1", self.r1), ("r2", self.r2),
                             ("R", self.final)):
            statistics["reward_%s_min" % name] = float(values.min())
            statistics["reward_%s_mean" % name] = float(values.mean())
            statistics["reward_%s_max" % name] = float(values.max())
        return statistics

########################################################################
# Functions
########################################################################

def resolve_temperature(sizes, temperature=MEDIAN):
    """Return the factor sparse sizes are multiplied by.

    'sizes' -- The sparse sizes of the batch.

    'temperature' -- 'MEDIAN', 'RAW', or a positive number used
    directly.

    With 'MEDIAN', a batch whose finite sizes have median zero, or
    that has no finite sizes, falls back to one."""

    if temperature == RAW:
        return 1.0
    if temperature != MEDIAN:
        return float(temperature)
    finite = sizes[numpy.isfinite(sizes)]
    if finite.size == 0:
        return 1.0
    median = float(numpy.median(finite))
    if median <= 0:
        return 1.0
    return 1.0 / median


def class_reward_batch(tree, labels, temperature=MEDIAN,
                       self_inclusion=True, tracer=None):
    """Return the class rewards of a batch of 'labels'.

    'tree' -- A 'LabelTree' with counts.

    returns -- A constant 'Tensor' [B]: 'exp(-s * tau)' normalized over
    the batch, where 's' is the sparse size of each label.  An infinite
    size contributes zero.  If every size is infinite the rewards are
    uniform and a warning is emitted through 'tracer'."""

    labels = numpy.atleast_1d(numpy.asarray(labels, dtype=numpy.int64))
    if labels.size == 0:
        raise tensor.PreconditionError(aida.error("empty batch",
                                                  operation="class_reward"))
    sizes = numpy.array([hierarchy.sparse_size(tree, int(y), self_inclusion)
                         for y in labels], dtype=numpy.float64)
    finite = numpy.isfinite(sizes)
    if not numpy.any(finite):
        if tracer is not None:
            tracer.Warn("uniform class reward", batch_size=labels.size)
        return tensor.Tensor(numpy.full(labels.size, 1.0 / labels.size))
    tau = resolve_temperature(sizes, temperature)
    # Shift so that the largest numerator is one.
    shifted = numpy.where(finite, sizes - sizes[finite].min(), 0.0)
    numerators = numpy.where(finite, numpy.exp(-shifted * tau), 0.0)
    return tensor.Tensor(numerators / numerators.sum())


def example_reward(discriminator, conditioned):
    """Return one minus the source probability of each conditioned row.

    The discriminator is evaluated on a constant copy of
    'conditioned', so nothing is recorded for differentiation.

    returns -- A constant 'Tensor' [B] with entries in [0, 1]."""

    p_source = layers.discriminate(discriminator,
                                   tensor.constant(conditioned)).values
    return tensor.Tensor(numpy.clip(1.0 - p_source, 0.0, 1.0))


def normalize_example_rewards(r2):
    """Return the softmax of 'r2' over the batch, as a constant."""

    values = tensor.as_tensor(r2).values
    if values.size == 0:
        raise tensor.PreconditionError(aida.error("empty batch",
                                                  operation="normalize"))
    e = numpy.exp(values - values.max())
    return tensor.Tensor(e / e.sum())


def final_reward(r1, r2n, alpha=None):
    """Return 'alpha * r1 * r2n'.

    'alpha' -- A positive number, or 'None' for the square of the batch
    size.

    returns -- A constant 'Tensor' [B]."""

    r1 = tensor.as_tensor(r1).values
    r2n = tensor.as_tensor(r2n).values
    if r1.shape != r2n.shape:
        raise tensor.DimensionError(aida.error("shape mismatch",
                                               operation="final_reward",
                                               left=r1.shape,
                                               right=r2n.shape))
    if alpha is None:
        alpha = float(r1.size * r1.size)
    if not alpha > 0:
        raise tensor.PreconditionError(aida.error("invalid reward alpha",
                                                  alpha=alpha))
    return tensor.Tensor(alpha * r1 * r2n)


def compute_rewards(tree, labels, discriminator, conditioned, alpha=None,
                    temperature=MEDIAN, self_inclusion=True,
                    uniform=False, tracer=None):
    """Return the 'RewardBatch' of one all-source batch.

    'conditioned' -- The conditioned features of the batch as seen by
    'discriminator'.

    'uniform' -- If true, both normalized rewards are replaced by '1/B'
    so that every final weight is 'alpha / B**2'.

    'alpha' -- As for 'final_reward'; zero is treated as 'None'."""

    labels = numpy.atleast_1d(numpy.asarray(labels, dtype=numpy.int64))
    if not alpha:
        alpha = None
    r2 = example_reward(discriminator, conditioned).values
    if uniform:
        r1 = numpy.full(labels.size, 1.0 / labels.size)
        r2n = numpy.full(labels.size, 1.0 / labels.size)
    else:
        r1 = class_reward_batch(tree, labels, temperature, self_inclusion,
                                tracer).values
        r2n = normalize_example_rewards(r2).values
    final = final_reward(r1, r2n, alpha).values
    if alpha is None:
        alpha = float(labels.size * labels.size)
    return RewardBatch(r1, r2, r2n, final, alpha)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
