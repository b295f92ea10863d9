########################################################################
#
# File:   json_result_stream.py
# Date:   2026-03-11
#
# Contents:
#   The JSONResultStream class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import json
import os
import re

import aida.fields
from aida.experiment.result_stream import ResultStream

########################################################################
# Classes
########################################################################

class JSONResultStream(ResultStream):
    """A 'JSONResultStream' writes one JSON report per run.

    Each report is written to 'directory' under a file name derived
    from the run id, as soon as the run finishes.  The report holds the
    id, outcome, parameters and annotations of the run and, if the run
    finished, its 'MetricsReport'."""

    arguments = [
        aida.fields.TextField(
            "directory", "",
            description="The directory the reports are written to."),
        ]

    def __init__(self, **args):

        super(JSONResultStream, self).__init__(**args)
        if self.directory and not os.path.isdir(self.directory):
            os.makedirs(self.directory)
        self.__annotations = {}
        self.paths = []


    def WriteAnnotation(self, key, value):

        self.__annotations[key] = value


    def WriteResult(self, result):

        document = {"id": result.GetId(),
                    "outcome": result.GetOutcome(),
                    "parameters": result.GetParameters(),
                    "annotations": dict(result.items()),
                    "matrix": dict(self.__annotations),
                    "report": None}
        if result.report is not None:
            document["report"] = result.report.AsDictionary()
        path = os.path.join(self.directory, get_report_name(result.GetId()))
        with open(path, "w", encoding="utf-8") as file:
            json.dump(document, file, indent=2, sort_keys=True)
            file.write("\n")
        self.paths.append(path)

########################################################################
# Functions
########################################################################

def get_report_name(id):
    """Return the file name of the report of the run 'id'."""

    return re.sub(r"[^A-Za-z0-9_.=-]+", "_", id) + ".json"

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
