########################################################################
#
# File:   gradcheck.py
# Date:   2026-03-04
#
# Contents:
#   Finite-difference verification of backward rules.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import aida
from aida import tensor

########################################################################
# Variables
########################################################################

RELATIVE_FLOOR = 1e-3
"""The smallest denominator used when computing a relative error."""

########################################################################
# Functions
########################################################################

def finite_difference_check(build, parameters, step=1e-5):
    """Compare analytic gradients with central differences.

    'build' -- A callable taking no arguments that evaluates the
    expression from the current parameter values and returns a
    single-element 'Tensor'.

    'parameters' -- The 'Parameter's to differentiate with respect to.

    'step' -- The perturbation, in '(0, 1e-2]'.

    returns -- The worst relative error over every element of every
    parameter, where the relative error of analytic gradient 'a' and
    numeric gradient 'n' is '|a - n| / max(|a|, |n|, 1e-3)'.

    Parameter values are restored and gradients are zeroed on
    return."""

    if not 0 < step <= 1e-2:
        raise tensor.PreconditionError(aida.error("invalid step",
                                                  step=step))
    parameters = list(parameters)
    for parameter in parameters:
        parameter.ZeroGrad()
    tensor.backward(build())
    analytic = [parameter.grad.copy() for parameter in parameters]
    for parameter in parameters:
        parameter.ZeroGrad()

    worst = 0.0
    for parameter, gradient in zip(parameters, analytic):
        flat = parameter.values.reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + step
            plus = build().Item()
            flat[i] = original - step
            minus = build().Item()
            flat[i] = original
            numeric = (plus - minus) / (2 * step)
            a = gradient.flat[i]
            error = abs(a - numeric) / max(abs(a), abs(numeric),
                                           RELATIVE_FLOOR)
            worst = max(worst, error)
    return worst

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
