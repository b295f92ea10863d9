########################################################################
#
# File:   common.py
# Date:   2026-03-02
#
# Contents:
#   General-purpose classes and functions.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import configparser
import copy as _copy
import hashlib
import os
import os.path
import traceback
import zlib

import numpy

import aida

########################################################################
# Variables
########################################################################

program_name = None
"""The name the program was invoked as, for messages."""

########################################################################
# Exceptions
########################################################################

class AidaException(Exception):
    """Base class of the exceptions this package raises on purpose."""

    def __init__(self, message):
        Exception.__init__(self, message)


    def GetKind(self):
        """Return the short machine-readable kind of this exception.

        The kind appears as the 'kind' member of the JSON error
        document written by the command-line tool."""

        return getattr(self, "kind", self.__class__.__name__)



class UserError(AidaException):
    """An error caused by bad input from the user."""

    kind = "user-error"

########################################################################
# Classes
########################################################################

class RcConfiguration(configparser.ConfigParser):
    """Defaults read from '~/.aidarc', an INI file.

    Only one section is consulted at a time; it is chosen by 'Load'."""

    user_rc_file_name = ".aidarc"


    def __init__(self):
        configparser.ConfigParser.__init__(self)
        home = os.environ.get("HOME")
        if home:
            # A missing file is skipped.
            self.read(os.path.join(home, self.user_rc_file_name))
        self.__section = None


    def Load(self, section):
        """Make 'section' the default section for later lookups."""

        self.__section = section


    def Get(self, option, default, section=None):
        """Return 'option' from 'section', or 'default' if either is
        missing.  'section' defaults to the one given to 'Load'."""

        if section is None:
            section = self.__section
        try:
            return self.get(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            return default


    def GetOptions(self, section=None):
        """Return the option names of 'section', or of the loaded
        section; empty if there is no such section."""

        if section is None:
            section = self.__section
        try:
            return self.options(section)
        except configparser.NoSectionError:
            return []

########################################################################
# Functions
########################################################################

def get_share_directory(*components):
    """Return the path of 'components' under 'share/aida'."""

    return os.path.join(aida.prefix, aida.data_dir, *components)


def format_exception(exc_info):
    """Return 'Type: message' for the 'sys.exc_info()' triple
    'exc_info'."""

    return "%s: %s" % (exc_info[0].__name__, exc_info[1])


def format_traceback(exc_info):
    """Return the stack frames of 'exc_info' as text."""

    return "".join(traceback.format_tb(exc_info[2]))


def copy(object):
    """Return a deep copy of 'object', or 'object' itself when it
    cannot be copied."""

    try:
        return _copy.deepcopy(object)
    except Exception:
        return object


def parse_boolean(value):
    """Return the truth value of 'value', one of 1/0, true/false,
    yes/no or on/off in any case.

    raises -- 'ValueError' for any other text."""

    value = value.strip().lower()
    for truth, words in ((True, ("1", "true", "yes", "on")),
                         (False, ("0", "false", "no", "off"))):
        if value in words:
            return truth
    raise ValueError(value)


def parse_string_list(value, separator=","):
    """Parse a separated list of strings.

    'value' -- A string such as '10,20,50'.

    returns -- A list of the non-empty, stripped items."""

    return [item.strip() for item in value.split(separator)
            if item.strip()]


def parse_assignment(assignment):
    """Parse an 'assignment' of the form 'NAME=VALUE'.

    'assignment' -- A string.  The string should have the form
    'NAME=VALUE', where 'NAME' is a variable name and 'VALUE' is the
    value assigned to it.

    returns -- A pair '(NAME, VALUE)'."""

    if "=" not in assignment:
        raise UserError(aida.error("invalid assignment",
                                   assignment=assignment))
    (name, value) = assignment.split("=", 1)
    name = name.strip()
    if not name:
        raise UserError(aida.error("invalid assignment",
                                   assignment=assignment))
    return (name, value.strip())


def read_assignments(file):
    """Return the 'NAME=VALUE' lines of 'file' as a dictionary.

    Blank lines and lines starting with '#' are skipped.  A later
    assignment to a name replaces an earlier one."""

    lines = [l.strip() for l in file]
    return dict([parse_assignment(l) for l in lines
                 if l and not l.startswith("#")])


def fingerprint(text):
    """Return the SHA-1 hex digest of 'text'."""

    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def make_random(seed, *keys):
    """Return a fresh pseudo-random generator.

    'seed' -- The non-negative integer master seed.

    'keys' -- Additional integers or strings that select an independent
    stream under 'seed'.  Strings are hashed with CRC-32.

    returns -- A 'numpy.random.Generator' driven by 'PCG64'.  Two calls
    with the same arguments produce identical streams; different keys
    produce statistically independent ones."""

    entropy = [int(seed)]
    for key in keys:
        if isinstance(key, str):
            key = zlib.crc32(key.encode("utf-8"))
        entropy.append(int(key))
    return numpy.random.Generator(
        numpy.random.PCG64(numpy.random.SeedSequence(entropy)))


def get_random_state(generator):
    """Return the JSON-compatible state of 'generator'."""

    return generator.bit_generator.state


def set_random_state(generator, state):
    """Restore 'generator' to a state returned by 'get_random_state'."""

    generator.bit_generator.state = state

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
