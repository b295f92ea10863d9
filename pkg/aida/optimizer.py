########################################################################
#
# File:   optimizer.py
# Date:   2026-03-04
#
# Contents:
#   Stochastic gradient descent with momentum.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import numpy

import aida

########################################################################
# Classes
########################################################################

class TrainingDivergence(aida.AidaException):
    """A gradient or a loss became non-finite.

    'iteration' -- The index of the iteration that diverged.

    'parameter' -- The name of the offending parameter, or 'None'.

    'checkpoint' -- The path of the last checkpoint written before the
    divergence, or 'None'.  The trainer fills this in."""

    kind = "training-divergence"

    def __init__(self, iteration, parameter=None, checkpoint=None):

        aida.AidaException.__init__(self,
                                    aida.error("training divergence",
                                               iteration=iteration,
                                               parameter=parameter or "loss"))
        self.iteration = iteration
        self.parameter = parameter
        self.checkpoint = checkpoint



class SGD:
    """A momentum SGD optimizer over a fixed list of parameters."""

    def __init__(self, parameters, learning_rate, momentum=0.0):

        self.parameters = list(parameters)
        self.learning_rate = learning_rate
        self.momentum = momentum


    def Step(self, iteration=0):

        sgd_step(self.parameters, self.learning_rate, self.momentum,
                 iteration)

########################################################################
# Functions
########################################################################

def sgd_step(parameters, learning_rate, momentum=0.0, iteration=0):
    """Apply one momentum SGD update and zero the gradients.

    'parameters' -- The 'Parameter's to update.  Each one's momentum
    buffer becomes 'momentum * buffer + grad' and its value moves by
    '-learning_rate * buffer'.

    'iteration' -- The iteration index reported on divergence.

    raises -- 'TrainingDivergence' if any gradient is non-finite.  No
    parameter is modified in that case."""

    parameters = list(parameters)
    for parameter in parameters:
        if not numpy.all(numpy.isfinite(parameter.grad)):
            raise TrainingDivergence(iteration, parameter.name)
    for parameter in parameters:
        parameter.momentum *= momentum
        parameter.momentum += parameter.grad
        parameter.values -= learning_rate * parameter.momentum
        parameter.grad[...] = 0.0


def zero_grad(parameters):
    """Zero the gradient accumulator of each of 'parameters'."""

    for parameter in parameters:
        parameter.grad[...] = 0.0

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
