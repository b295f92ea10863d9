########################################################################
#
# File:   diagnostic.py
# Date:   2026-03-02
#
# Contents:
#   Error and warning messages.
#
# For license terms see the file COPYING.
#
########################################################################

"""Message catalogs.

A catalog file holds entries of the form

    @ shape mismatch
    The operand shapes %(left)s and %(right)s are incompatible.

The line after the at sign is the tag; the text up to the next entry is
a template filled in with the % operator.  Lines whose first non-blank
character is a hash mark are dropped.  Every error and warning text of
the package is looked up here by tag."""

########################################################################
# Imports
########################################################################

import re
import threading

import aida
from aida import common

########################################################################
# Classes
########################################################################

class DiagnosticSet:
    """The templates read from one or more catalog files, by tag."""

    __comment_regex = re.compile(r"^[ \t]*#.*$", re.MULTILINE)

    __entry_regex = re.compile(r"^@[ \t]*(.*?)[ \t]*\n(.*?)(?=^@|\Z)",
                               re.MULTILINE | re.DOTALL)

    def __init__(self):

        self.__templates = {}


    def ReadFromFile(self, path):
        """Add the entries of the catalog at 'path'.

        An entry repeating an earlier tag replaces it."""

        with open(path, "r") as file:
            contents = self.__comment_regex.sub("", file.read())
        for match in self.__entry_regex.finditer(contents):
            self.__templates[match.group(1)] = match.group(2).strip()


    def Generate(self, tag, severity="error", output=None, **substitutions):
        """Fill in the template for 'tag'.

        'severity' -- The word shown after the program name when the
        message is written, such as "error" or "warning".

        'output' -- A file to which '<program>: <severity>: <text>' is
        written, or 'None'.

        'substitutions' -- Values for the template's named fields.
        'program_name' is always available.

        returns -- The text of the message alone."""

        program_name = common.program_name or "aida"
        text = self.__templates[tag] % dict(substitutions,
                                            program_name=program_name)
        if output is not None:
            output.write("%s: %s: %s\n" % (program_name, severity, text))
        return text

########################################################################
# Variables
########################################################################

__diagnostic_set = None

__lock = threading.Lock()

########################################################################
# Functions
########################################################################

def get_diagnostic_set():
    """Return the shared 'DiagnosticSet', reading both catalogs on the
    first call."""

    global __diagnostic_set
    with __lock:
        if __diagnostic_set is None:
            diagnostics = DiagnosticSet()
            for kind, name in (("diagnostics", "common.txt"),
                               ("messages", "diagnostics.txt")):
                diagnostics.ReadFromFile(
                    aida.get_share_directory(kind, name))
            __diagnostic_set = diagnostics
    return __diagnostic_set


def error(tag, output=None, **substitutions):
    """Return the error text for 'tag', also writing it to 'output'
    when given."""

    return get_diagnostic_set().Generate(tag, "error", output,
                                         **substitutions)


def warning(tag, output=None, **substitutions):
    """Return the warning text for 'tag', also writing it to 'output'
    when given."""

    return get_diagnostic_set().Generate(tag, "warning", output,
                                         **substitutions)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
