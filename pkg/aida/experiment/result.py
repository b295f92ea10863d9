########################################################################
#
# File:   result.py
# Date:   2026-03-11
#
# Contents:
#   The Result class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import sys

import aida

########################################################################
# Classes
########################################################################

class Result:
    """A 'Result' describes the outcome of one training run.

    A 'Result' holds an outcome, a set of annotations, the parameters
    that distinguish the run from the other runs of a matrix, and the
    'MetricsReport' of the run if it finished.  The outcome is one of:

    'Result.PASS' -- Training and evaluation completed.

    'Result.FAIL' -- Training diverged.

    'Result.ERROR' -- Something else went wrong; the exception is
    recorded in the annotations.

    The annotations are a dictionary mapping strings to strings.  A
    'Result' acts as that dictionary: 'result[Result.CAUSE] = "..."'."""

    # Constants for outcomes.

    FAIL = "FAIL"
    ERROR = "ERROR"
    PASS = "PASS"

    # Constants for predefined annotations.

    CAUSE = "aida.cause"
    EXCEPTION = "aida.exception"
    TRACEBACK = "aida.traceback"
    CHECKPOINT = "aida.checkpoint"
    FINGERPRINT = "aida.fingerprint"

    outcomes = [ERROR, FAIL, PASS]
    """The possible outcomes, most interesting first."""

    def __init__(self, id, outcome=PASS, parameters=None, annotations=None):
        """Construct a new 'Result'.

        'id' -- The name of the run, unique within its matrix.

        'outcome' -- One of the 'Result.outcomes'.

        'parameters' -- A map from parameter name to the value this run
        used.

        'annotations' -- The initial annotations."""

        assert outcome in Result.outcomes
        self.__id = id
        self.__outcome = outcome
        self.__parameters = dict(parameters or {})
        self.__annotations = dict(annotations or {})
        self.report = None


    def GetId(self):

        return self.__id


    def GetOutcome(self):

        return self.__outcome


    def GetParameters(self):
        """Return the map of parameters distinguishing this run."""

        return self.__parameters


    def SetOutcome(self, outcome, cause=None, annotations=None):
        """Set the outcome of the run.

        'cause' -- If not 'None', becomes the 'Result.CAUSE'
        annotation.

        'annotations' -- Added to the current annotations."""

        assert outcome in Result.outcomes
        self.__outcome = outcome
        if cause:
            self.SetCause(cause)
        self.Annotate(annotations or {})


    def Annotate(self, annotations):

        self.__annotations.update(annotations)


    def Fail(self, cause=None, annotations=None):

        self.SetOutcome(Result.FAIL, cause, annotations)


    def GetCause(self):

        return self.__annotations.get(Result.CAUSE, "")


    def SetCause(self, cause):

        self[Result.CAUSE] = cause


    def NoteException(self, exc_info=None, cause=None, outcome=ERROR):
        """Note that an exception occurred during the run.

        'exc_info' -- A triple as returned by 'sys.exc_info'; by default
        the exception being handled.

        'cause' -- The 'Result.CAUSE' annotation.  By default, the
        message of an 'AidaException', or a generic message for any
        other exception."""

        if not exc_info:
            exc_info = sys.exc_info()
        if not cause:
            if isinstance(exc_info[1], aida.AidaException):
                cause = str(exc_info[1])
            else:
                cause = "An exception occurred."
        self.SetOutcome(outcome, cause)
        self[Result.EXCEPTION] = aida.format_exception(exc_info)
        self[Result.TRACEBACK] = aida.format_traceback(exc_info)


    def GetMetrics(self):
        """Return the scalar metrics of the run, or an empty map if it
        did not finish."""

        if self.report is None:
            return {}
        return self.report.GetSummary()

    # These methods allow 'Result' to act like a dictionary of
    # annotations.

    def __getitem__(self, key):

        return self.__annotations[key]


    def __setitem__(self, key, value):

        assert isinstance(key, str)
        assert isinstance(value, str)
        self.__annotations[key] = value


    def __contains__(self, key):

        return key in self.__annotations


    def get(self, key, default=None):

        return self.__annotations.get(key, default)


    def keys(self):

        return list(self.__annotations.keys())


    def items(self):

        return list(self.__annotations.items())

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
