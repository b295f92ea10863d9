########################################################################
#
# File:   file_result_stream.py
# Date:   2026-03-11
#
# Contents:
#   The FileResultStream class.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import sys

import aida.fields
from aida.experiment.result_stream import ResultStream

########################################################################
# Classes
########################################################################

class FileResultStream(ResultStream):
    """A 'FileResultStream' writes its output to one file.

    The file is named by the 'filename' argument, or given directly as
    the 'file' keyword when the stream is built in code.  With neither,
    or with the filename "-", output goes to the standard output."""

    arguments = [
        aida.fields.TextField(
            "filename", "",
            description="""The name of the file.

            If empty or "-", the standard output is used."""),
        ]

    def __init__(self, file=None, **args):

        super(FileResultStream, self).__init__(**args)
        self.__opened = False
        if file is not None:
            self.file = file
        elif self.filename and self.filename != "-":
            self.file = open(self.filename, "w", encoding="utf-8",
                             newline="")
            self.__opened = True
        else:
            self.file = sys.stdout


    def Summarize(self):

        super(FileResultStream, self).Summarize()
        if self.__opened:
            self.file.close()
        else:
            self.file.flush()

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
