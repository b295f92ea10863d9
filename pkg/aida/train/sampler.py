########################################################################
#
# File:   sampler.py
# Date:   2026-03-09
#
# Contents:
#   BatchSampler
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import numpy

import aida
from aida.tensor import PreconditionError

########################################################################
# Classes
########################################################################

class BatchSampler:
    """Draws batches of example indices from one 'Dataset'.

    Batches are drawn with replacement, so a set smaller than the batch
    size still yields full batches.  The sampler holds no random state
    of its own; every call takes the generator to draw from."""

    def __init__(self, dataset, batch_size, balanced=False, name="batch"):
        """Construct a new 'BatchSampler'.

        'dataset' -- The 'Dataset' to draw from.

        'batch_size' -- The number of indices per batch.

        'balanced' -- If true, each draw first picks a class uniformly
        among the classes present and then an example of that class.
        Otherwise examples are drawn uniformly.

        'name' -- Used in error messages."""

        self.dataset = dataset
        self.batch_size = batch_size
        self.balanced = balanced
        self.name = name
        if len(dataset) == 0:
            raise PreconditionError(aida.error("empty batch",
                                               operation=name))
        if balanced:
            by_class = dataset.GetIndicesByClass()
            self.__classes = [numpy.array(by_class[label])
                              for label in sorted(by_class)]


    def Sample(self, generator):
        """Return the indices of one batch as an integer array."""

        if not self.balanced:
            return generator.integers(0, len(self.dataset),
                                      size=self.batch_size)
        picks = generator.integers(0, len(self.__classes),
                                   size=self.batch_size)
        indices = numpy.empty(self.batch_size, dtype=numpy.int64)
        for position, c in enumerate(picks):
            members = self.__classes[c]
            indices[position] = members[generator.integers(0, len(members))]
        return indices


    def Draw(self, generator):
        """Return the payloads and labels of one batch."""

        indices = self.Sample(generator)
        return (self.dataset.GetPayloads(indices),
                self.dataset.GetLabels(indices))

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
