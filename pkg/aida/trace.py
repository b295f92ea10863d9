########################################################################
#
# File:   trace.py
# Date:   2026-03-02
#
# Contents:
#   Tracer
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import os
import sys
import threading

import aida

########################################################################
# Classes
########################################################################

class Tracer:
    """A 'Tracer' outputs trace messages and warnings.

    The categories in use are 'train' (iteration summaries), 'data'
    (generation and subsampling notices), 'rewards' (reward
    statistics), 'engine' (experiment scheduling) and 'metrics' (probe
    notices)."""

    prefix = "AIDA_THRESHOLD_"
    """Environment variables named with this prefix set the threshold of
    the lower-cased category that follows it.  An empty value means 1."""

    def __init__(self, file=None):
        """'file' receives the output; 'None' means whatever
        'sys.stderr' is at the time of each write."""

        self.__file = file
        self.__thresholds = {}
        self.__lock = threading.Lock()
        self.__warnings = []

        for key, value in os.environ.items():
            if key.startswith(self.prefix):
                category = key[len(self.prefix):].lower()
                self.SetThreshold(category, int(value or 1))


    def Write(self, message, category, level=0):
        """Write "[category]: message" if 'level' is below the
        threshold of 'category'.

        Messages are full sentences.  Thresholds start at zero, so
        nothing is written until a threshold is raised."""

        if level < self.GetThreshold(category):
            with self.__lock:
                file = self.__GetFile()
                file.write("[%s]: %s\n" % (category, message))
                file.flush()


    def Warn(self, tag, **substitutions):
        """Emit the warning diagnostic 'tag'.

        Warnings are written regardless of thresholds and are also
        remembered, so that callers can report them later.

        returns -- The warning text."""

        with self.__lock:
            text = aida.warning(tag, self.__GetFile(), **substitutions)
            self.__warnings.append(tag)
        return text


    def GetWarnings(self):
        """Return the tags of the warnings emitted so far, in order."""

        with self.__lock:
            return list(self.__warnings)


    def GetThreshold(self, category):
        """Return the threshold of 'category', zero if never set."""

        return self.__thresholds.get(category, 0)


    def SetThreshold(self, category, level):
        """Make messages of 'category' below 'level' visible."""

        self.__thresholds[category] = level


    def __GetFile(self):

        if self.__file is None:
            return sys.stderr
        return self.__file

########################################################################
# Variables
########################################################################

__tracer = None
"""The process-wide 'Tracer'."""

########################################################################
# Functions
########################################################################

def get_tracer():
    """Return the process-wide 'Tracer', creating it on first use."""

    global __tracer
    if __tracer is None:
        __tracer = Tracer()
    return __tracer

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
