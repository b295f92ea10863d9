########################################################################
#
# File:   csv_result_stream.py
# Date:   2026-03-11
#
# Contents:
#   The CSVResultStream class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import csv

from aida.experiment.file_result_stream import FileResultStream

########################################################################
# Constants
########################################################################

METRIC_COLUMNS = ("accuracy_source", "accuracy_target", "macro_f1",
                  "a_distance", "adaptability_error")

########################################################################
# Classes
########################################################################

class CSVResultStream(FileResultStream):
    """A 'CSVResultStream' writes the aggregate table of a matrix.

    There is one row per run and one column per parameter and metric.
    Rows are held until 'Summarize' and written sorted by run id, so
    the file does not depend on the order runs finished in."""

    def __init__(self, file=None, **args):

        super(CSVResultStream, self).__init__(file, **args)
        self.__results = []


    def WriteResult(self, result):

        self.__results.append(result)


    def Summarize(self):

        results = sorted(self.__results, key=lambda r: r.GetId())
        parameters = sorted(set([name for r in results
                                 for name in r.GetParameters()]))
        fieldnames = ["run", "outcome"] + parameters + list(METRIC_COLUMNS)
        writer = csv.DictWriter(self.file, fieldnames=fieldnames,
                                extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for result in results:
            row = {"run": result.GetId(), "outcome": result.GetOutcome()}
            for name, value in result.GetParameters().items():
                row[name] = format_value(value)
            for name, value in result.GetMetrics().items():
                row[name] = format_value(value)
            writer.writerow(row)
        super(CSVResultStream, self).Summarize()

########################################################################
# Functions
########################################################################

def format_value(value):
    """Return the cell text of 'value'; floats keep every digit."""

    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
