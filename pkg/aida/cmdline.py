########################################################################
#
# File:   cmdline.py
# Date:   2026-03-03
#
# Contents:
#   Command line parsing.
#
# For license terms see the file COPYING.
#
########################################################################

"""Parsing of 'PROGRAM [OPTION...] COMMAND [COMMAND-OPTION...] ARG...'.

Options are described by 4-tuples

  '(short, long, argument, description)'

where 'short' is a single letter or 'None', 'long' is required,
'argument' names the option's value or is 'None' for a flag, and
'description' is one line of help.  Commands are 5-tuples

  '(name, summary, arguments, description, options)'

whose 'options' are 4-tuples as above.  Parsed options are reported by
their long names, so callers never see '-x' spellings."""

########################################################################
# Imports
########################################################################

import getopt
import textwrap

import aida

########################################################################
# Classes
########################################################################

class CommandError(aida.UserError):
    """The command line could not be parsed."""

    kind = "command-error"



class _OptionTable:
    """The options accepted in one position of the command line."""

    def __init__(self, options):
        """'options' -- A sequence of option 4-tuples.

        raises -- 'ValueError' if an option is malformed or a spelling
        is used twice."""

        self.options = tuple(options)
        self.short_string = ""
        self.long_list = []
        self.spellings = {}
        for short, long, argument, description in self.options:
            if short is not None and len(short) != 1:
                raise ValueError("short option '%s' is not one letter"
                                 % short)
            if not long:
                raise ValueError("option -%s has no long form" % short)
            suffix = argument is not None
            if short is not None:
                self.__AddSpelling("-" + short, long)
                self.short_string += short + (":" if suffix else "")
            self.__AddSpelling("--" + long, long)
            self.long_list.append(long + ("=" if suffix else ""))


    def Parse(self, argv, permute=False):
        """Split 'argv' into options and the remaining arguments.

        'permute' -- If true, options may follow arguments; otherwise
        parsing stops at the first argument.

        returns -- A pair '(options, arguments)'; 'options' lists
        '(long_name, value)' pairs in command line order.

        raises -- 'getopt.GetoptError' on an unknown or malformed
        option."""

        parse = permute and getopt.gnu_getopt or getopt.getopt
        options, arguments = parse(argv, self.short_string, self.long_list)
        return [(self.spellings[o], v) for o, v in options], arguments


    def Describe(self):
        """Return the help lines for these options."""

        lines = []
        for short, long, argument, description in self.options:
            prefix = short and "-%s," % short or "   "
            if argument is not None:
                long = "%s %s" % (long, argument)
            lines.append("  %s --%-24s: %s\n" % (prefix, long, description))
        return "".join(lines)


    def __contains__(self, option):

        return option in self.options


    def __AddSpelling(self, spelling, long):

        if spelling in self.spellings:
            raise ValueError("option %s is given twice" % spelling)
        self.spellings[spelling] = long



class CommandParser:
    """A parser for one program's global options and commands."""

    def __init__(self, name, options, commands, conflicting_options=()):
        """Create a new command parser.

        'name' -- The program name, used in help text.

        'options' -- The global option 4-tuples.

        'commands' -- The command 5-tuples.

        'conflicting_options' -- A sequence of option sets; at most one
        member of each set may appear on a command line.  Members are
        option 4-tuples taken from 'options' or from some command.

        raises -- 'ValueError' if an option is malformed or a conflict
        set names an option nobody accepts."""

        self.__name = name
        self.__global = _OptionTable(options)
        self.__commands = []
        for command in commands:
            self.__commands.append((command, _OptionTable(command[4])))

        tables = [self.__global] + [t for c, t in self.__commands]
        for conflict_set in conflicting_options:
            for option in conflict_set:
                if not [t for t in tables if option in t]:
                    raise ValueError("conflict set names unknown option --%s"
                                     % option[1])
        self.__conflicts = [set([o[1] for o in s])
                            for s in conflicting_options]


    def GetBasicHelp(self):
        """Return the program's usage text."""

        lines = ["Usage: %s [ OPTION... ] COMMAND [ COMMAND-OPTION... ] "
                 "[ ARGUMENT... ]\n\n" % self.__name,
                 "Options:\n",
                 self.__global.Describe(),
                 "\nCommands:\n"]
        for command, table in self.__commands:
            lines.append("  %-30s: %s\n" % (command[0], command[1]))
        lines.append("\nRun '%s COMMAND --help' for the options and "
                     "arguments of COMMAND.\n\n" % self.__name)
        return "".join(lines)


    def GetCommandHelp(self, name):
        """Return the usage text for command 'name'."""

        found = self.__FindCommand(name)
        if found is None:
            return "Command not found"
        command, table = found
        description = textwrap.fill(" ".join(command[3].split()), 72)
        return ("Usage: %s %s [ OPTIONS ] %s\n\nOptions:\n%s\n%s\n"
                % (self.__name, name, command[2], table.Describe(),
                   description))


    def ParseCommandLine(self, argv):
        """Parse a command line.

        'argv' -- The arguments after the program name.

        returns -- A 4-tuple '(options, command, command_options,
        arguments)'.  Both option lists hold '(long_name, value)' pairs;
        the value of a flag is the empty string.  Without a command the
        result is '(options, "", [], [])'.

        raises -- 'CommandError' if the command line is invalid."""

        try:
            options, rest = self.__global.Parse(argv)
        except getopt.GetoptError as exception:
            raise CommandError(str(exception))
        if not rest:
            return options, "", [], []

        found = self.__FindCommand(rest[0])
        if found is None:
            raise CommandError(aida.error("unrecognized command",
                                          command=rest[0]))
        command, table = found
        try:
            command_options, arguments = table.Parse(rest[1:], permute=True)
        except getopt.GetoptError as exception:
            raise CommandError("%s: %s" % (command[0], exception))

        given = []
        for option, value in options + command_options:
            if option not in given:
                given.append(option)
        for conflict in self.__conflicts:
            clash = [o for o in given if o in conflict]
            if len(clash) > 1:
                raise CommandError(aida.error("conflicting options",
                                              option1=clash[0],
                                              option2=clash[1]))

        return options, command[0], command_options, arguments


    def __FindCommand(self, name):

        for command, table in self.__commands:
            if command[0] == name:
                return command, table
        return None

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
