########################################################################
#
# File:   extension.py
# Date:   2026-03-03
#
# Contents:
#   Extension
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import aida
from aida.fields import Field

########################################################################
# Classes
########################################################################

class ExtensionType(type):
    """The metaclass of 'Extension'.

    Generates an '_argument_dictionary' holding all the 'Field' objects
    declared by the class and its bases, then replaces the 'Field'
    objects by their default values for convenient use inside the
    code."""

    def __init__(cls, name, bases, dict):

        super(ExtensionType, cls).__init__(name, bases, dict)
        parameters = {}
        for base in reversed(cls.__mro__[1:]):
            parameters.update(getattr(base, "_argument_dictionary", None)
                              or {})
        for key, field in list(dict.items()):
            if isinstance(field, Field):
                field.SetName(key)
                parameters[key] = field
        for field in dict.get("arguments", []):
            parameters[field.GetName()] = field

        cls._argument_dictionary = parameters
        cls._argument_list = list(parameters.values())
        for key, field in parameters.items():
            setattr(cls, key, field.GetDefaultValue())



class Extension(object, metaclass=ExtensionType):
    """A class derived from 'Extension' is a configurable object.

    Its tunables are declared as 'Field's in the 'arguments' list.  An
    instance holds one validated value per field, as an attribute of
    the same name.

    'Extension' is an abstract class."""

    arguments = []
    """A list of the arguments to the extension class.

    Each element of this list should be an instance of 'Field'.
    Derived classes should not explicitly include the arguments from
    base classes; they are combined automatically."""

    kind = None
    """A string giving kind of extension is implemented by the class."""

    def __init__(self, **args):
        """Construct a new 'Extension'.

        'args': Keyword arguments providing values for Extension
        parameters.  Each value is validated by the corresponding
        field.

        raises -- 'UserError' if an argument does not name a field, or
        if its value does not validate."""

        dictionary = get_class_arguments_as_dictionary(self.__class__)
        for name, value in args.items():
            if name not in dictionary:
                raise aida.UserError(aida.error("unknown extension argument",
                                                class_name=self.GetClassName(),
                                                argument_name=name))
            self.__dict__[name] = dictionary[name].Validate(value)


    def GetClassName(self):
        """Return the name of the extension class."""

        return get_extension_class_name(self.__class__)


    def GetExplicitArguments(self):
        """Return the arguments set explicitly on this instance.

        returns -- A dictionary mapping argument names to their
        values."""

        return dict([(name, self.__dict__[name])
                     for name in get_class_arguments_as_dictionary(
                         self.__class__)
                     if name in self.__dict__])


    def GetArguments(self):
        """Return the value of every argument, defaults included.

        returns -- A dictionary mapping argument names to values."""

        return dict([(field.GetName(), getattr(self, field.GetName()))
                     for field in get_class_arguments(self.__class__)])


    def GetArgumentsAsText(self):
        """Return the canonical text rendering of every argument.

        returns -- A list of 'NAME=VALUE' strings sorted by name."""

        return ["%s=%s" % (field.GetName(),
                           field.FormatValueAsText(getattr(self,
                                                           field.GetName())))
                for field in sorted(get_class_arguments(self.__class__),
                                    key=lambda f: f.GetName())]


    def Copy(self, **overrides):
        """Return a new instance with 'overrides' replacing values."""

        arguments = self.GetExplicitArguments()
        arguments.update(overrides)
        return self.__class__(**arguments)

########################################################################
# Functions
########################################################################

def get_class_arguments(extension_class):
    """Return the arguments associated with 'extension_class'.

    'extension_class' -- A class derived from 'Extension'.

    returns -- A list of 'Field' objects containing all of the
    arguments in the class hierarchy."""

    assert issubclass(extension_class, Extension)
    return extension_class._argument_list


def get_class_arguments_as_dictionary(extension_class):
    """Return the arguments associated with 'extension_class'.

    returns -- A dictionary mapping argument names to 'Field'
    objects."""

    assert issubclass(extension_class, Extension)
    return extension_class._argument_dictionary


def get_class_description(extension_class, brief=0):
    """Return a description of the extension class 'extension_class'.

    'brief' -- If true, return only the first line of the
    description."""

    assert issubclass(extension_class, Extension)
    doc_string = extension_class.__doc__ or ""
    if brief:
        doc_string = doc_string.strip().split("\n", 1)[0]
    return doc_string


def get_extension_class_name(extension_class):
    """Return the name of 'extension_class'.

    returns -- The name of 'extension_class', qualified by the last
    component of its module name."""

    assert issubclass(extension_class, Extension)
    module = extension_class.__module__.split(".")[-1]
    return module + "." + extension_class.__name__


def validate_arguments(extension_class, arguments):
    """Validate the 'arguments' to the 'extension_class'.

    'extension_class' -- A class derived from 'Extension'.

    'arguments' -- A dictionary mapping argument names (strings) to
    values (strings), as read from a configuration file or the command
    line.

    returns -- A dictionary mapping argument names to converted
    values.

    raises -- 'UserError' if a name is unknown or a value does not
    parse."""

    dictionary = get_class_arguments_as_dictionary(extension_class)
    values = {}
    for name, text in arguments.items():
        field = dictionary.get(name)
        if field is None:
            raise aida.UserError(aida.error("unknown extension argument",
                                            class_name=
                                            get_extension_class_name(
                                                extension_class),
                                            argument_name=name))
        values[name] = field.ParseTextValue(text)
    return values

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
