########################################################################
#
# File:   text_result_stream.py
# Date:   2026-03-11
#
# Contents:
#   The TextResultStream class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import collections

import numpy

import aida.fields
from aida.experiment.file_result_stream import FileResultStream
from aida.experiment.result import Result

########################################################################
# Constants
########################################################################

TABLE_METRICS = ("macro_f1", "accuracy_target", "a_distance",
                 "adaptability_error")

########################################################################
# Classes
########################################################################

class TextResultStream(FileResultStream):
    """A 'TextResultStream' displays results in human readable form.

    Results are listed as runs finish.  At the end come the runs that
    did not pass, a table of each matrix cell's metrics as mean and
    standard deviation over its seeds, and outcome statistics."""

    arguments = [
        aida.fields.EnumerationField(
            "format", "brief", ["brief", "full", "stats"],
            description="""The output format.

            In the "brief" format every run is listed as it finishes,
            with the annotations of runs that did not pass.  The "full"
            format shows the annotations of every run.  The "stats"
            format shows only the closing table and statistics."""),
        ]

    def __init__(self, file=None, **args):

        super(TextResultStream, self).__init__(file, **args)
        self.__first = True
        self.__outcome_counts = dict([(o, 0) for o in Result.outcomes])
        self.__failures = []
        self.__cells = collections.OrderedDict()


    def WriteResult(self, result):

        outcome = result.GetOutcome()
        self.__outcome_counts[outcome] += 1
        if outcome != Result.PASS:
            self.__failures.append(result)
        cell = result.GetParameters().get("cell", result.GetId())
        self.__cells.setdefault(cell, []).append(result)

        if self.format == "stats":
            return
        if self.__first:
            self._DisplayHeading("RUN RESULTS")
            self.__first = False
        self._DisplayResult(result)
        if self.format == "full" or outcome != Result.PASS:
            self._DisplayAnnotations(result)


    def Summarize(self):

        if self.format != "stats":
            self.file.write("\n")
            self._DisplayHeading("RUNS THAT DID NOT PASS")
            failures = sorted(self.__failures, key=lambda r: r.GetId())
            if not failures:
                self.file.write("  None.\n\n")
            for result in failures:
                self._DisplayResult(result)
        self._DisplayTable()
        self._DisplayStatistics()
        super(TextResultStream, self).Summarize()


    def _DisplayResult(self, result):

        self.file.write("  %-46s: %-8s\n"
                        % (result.GetId(), result.GetOutcome()))
        metrics = result.GetMetrics()
        if metrics.get("macro_f1") is not None:
            self.file.write("    macro-F1 %.4f\n" % metrics["macro_f1"])
        for line in result.GetCause().splitlines():
            self.file.write("    " + line + "\n")


    def _DisplayAnnotations(self, result):

        for name in sorted(result.keys()):
            if name == Result.CAUSE:
                continue
            self.file.write("    %s:\n" % name)
            for line in result[name].splitlines():
                self.file.write("      " + line + "\n")
        self.file.write("\n")


    def _DisplayTable(self):
        """Write the mean and standard deviation of each cell's
        metrics."""

        self.file.write("\n")
        self._DisplayHeading("METRICS")
        if not self.__cells:
            self.file.write("  None.\n\n")
            return
        header = "  %-30s" % "cell" \
                 + "".join([" %18s" % m for m in TABLE_METRICS]) + "\n"
        self.file.write(header)
        for cell in sorted(self.__cells):
            line = "  %-30s" % cell
            for metric in TABLE_METRICS:
                values = [r.GetMetrics().get(metric)
                          for r in self.__cells[cell]]
                values = [v for v in values if v is not None]
                if values:
                    line += " %9.4f +- %-5.3f" % (numpy.mean(values),
                                                  numpy.std(values))
                else:
                    line += " %18s" % "-"
            self.file.write(line + "\n")
        self.file.write("\n")


    def _DisplayStatistics(self):

        self._DisplayHeading("STATISTICS")
        total = sum(self.__outcome_counts.values())
        self.file.write("  %6d        runs total\n" % total)
        for outcome in Result.outcomes:
            count = self.__outcome_counts[outcome]
            if count:
                self.file.write("  %6d (%3.0f%%) runs %s\n"
                                % (count, 100.0 * count / total, outcome))
        self.file.write("\n")


    def _DisplayHeading(self, heading):

        self.file.write("--- %s %s\n\n" % (heading, "-" * (73 - len(heading))))

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
