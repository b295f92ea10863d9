########################################################################
#
# File:   result_stream.py
# Date:   2026-03-11
#
# Contents:
#   The ResultStream class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

from aida.extension import Extension

########################################################################
# Classes
########################################################################

class ResultStream(Extension):
    """A 'ResultStream' displays or stores run results.

    A 'ResultStream' receives each 'Result' as soon as its run
    finishes, in completion order.  It may also write summary
    information once the matrix is complete.

    'ResultStream' is an abstract class."""

    kind = "result_stream"

    def WriteAnnotation(self, key, value):
        """Output an annotation for the whole matrix.

        The default implementation discards it."""

        pass


    def WriteAllAnnotations(self, annotations):
        """Output every annotation in 'annotations'.

        Should not be overridden by subclasses."""

        for key, value in sorted(annotations.items()):
            self.WriteAnnotation(key, value)


    def WriteResult(self, result):
        """Output the 'Result' of one run.

        Subclasses must override this method."""

        raise NotImplementedError


    def Summarize(self):
        """Output summary information about the results.

        When this method is called every run is complete.  Derived
        classes that override it should call this version before
        returning."""

        pass

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
