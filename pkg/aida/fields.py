########################################################################
#
# File:   fields.py
# Date:   2026-03-03
#
# Contents:
#   General field types.
#
# For license terms see the file COPYING.
#
########################################################################

"""A field contains an item of data.

A 'Field' declares the name, default value and description of one
tunable of an 'Extension' (see 'aida.extension').  Fields know how to
validate a value, how to parse it from the text given on a command line
or in a configuration file, and how to format it back to text.  The
canonical text rendering is what configuration fingerprints are
computed from."""

########################################################################
# Imports
########################################################################

import math

import aida
from aida import common

########################################################################
# Classes
########################################################################

class Field(object):
    """One named, typed setting with a default and a description."""

    def __init__(self,
                 name = "",
                 default_value = None,
                 title = "",
                 description = ""):
        """'title' defaults to 'name'.  The first sentence of
        'description' is the brief description shown in help."""

        self.__name = name
        self.__title = title or name
        self.__description = description
        self.__default_value = default_value


    def SetName(self, name):
        """Rename the field; an untitled field is retitled too."""

        if self.__name == self.__title:
            self.__title = name
        self.__name = name


    def GetName(self):

        return self.__name


    def GetDefaultValue(self):
        """Return a fresh copy of the default."""

        return common.copy(self.__default_value)


    def GetTitle(self):

        return self.__title


    def GetDescription(self):

        return self.__description


    def GetBriefDescription(self):
        """Return the first sentence of the description."""

        description = " ".join(self.GetDescription().split())
        return description.split(". ", 1)[0].rstrip(".")


    def GetHelp(self):
        """Generate help text about the values of this field."""

        raise NotImplementedError


    def FormatValueAsText(self, value):
        """Return 'value' as text that 'ParseTextValue' maps back to an
        equal value."""

        return str(value)


    def Validate(self, value):
        """Return 'value' in canonical form.

        raises -- 'UserError' naming the field if 'value' is not
        acceptable."""

        return value


    def ParseTextValue(self, value):
        """Return the validated value written as the text 'value'."""

        return self.Validate(value)


    def _Invalid(self, value, reason):
        """Raise the 'UserError' for an invalid 'value'."""

        raise aida.UserError(aida.error("invalid field value",
                                        field=self.GetName(),
                                        value=value,
                                        reason=reason))


    def __repr__(self):

        return "<%s %s>" % (self.__class__.__name__, self.GetName())



class IntegerField(Field):
    """An 'IntegerField' stores an 'int' object."""

    def __init__(self, name="", default_value=0, minimum=None,
                 maximum=None, **properties):
        """'minimum' and 'maximum' bound the value when not 'None'."""

        super(IntegerField, self).__init__(name, default_value, **properties)
        self.__minimum = minimum
        self.__maximum = maximum


    def GetHelp(self):

        return ("This field stores an integer.  The default value of "
                "this field is %d." % self.GetDefaultValue())


    def Validate(self, value):

        if isinstance(value, bool) or not isinstance(value, int):
            self._Invalid(value, "an integer is required")
        if self.__minimum is not None and value < self.__minimum:
            self._Invalid(value, "the minimum is %d" % self.__minimum)
        if self.__maximum is not None and value > self.__maximum:
            self._Invalid(value, "the maximum is %d" % self.__maximum)
        return value


    def ParseTextValue(self, value):

        try:
            number = int(value)
        except ValueError:
            self._Invalid(value, "an integer is required")
        return self.Validate(number)



class FloatField(Field):
    """A 'FloatField' stores a finite 'float'."""

    def __init__(self, name="", default_value=0.0, minimum=None,
                 positive=False, **properties):
        """Construct a new 'FloatField'.

        'minimum' -- If not 'None', the smallest valid value.

        'positive' -- If true, the value must be strictly greater than
        zero."""

        super(FloatField, self).__init__(name, default_value, **properties)
        self.__minimum = minimum
        self.__positive = positive


    def GetHelp(self):

        return ("This field stores a real number.  The default value of "
                "this field is %r." % self.GetDefaultValue())


    def FormatValueAsText(self, value):

        return repr(float(value))


    def Validate(self, value):

        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self._Invalid(value, "a number is required")
        value = float(value)
        if not math.isfinite(value):
            self._Invalid(value, "a finite number is required")
        if self.__minimum is not None and value < self.__minimum:
            self._Invalid(value, "the minimum is %r" % self.__minimum)
        if self.__positive and value <= 0:
            self._Invalid(value, "a positive number is required")
        return value


    def ParseTextValue(self, value):

        try:
            number = float(value)
        except ValueError:
            self._Invalid(value, "a number is required")
        return self.Validate(number)



class TextField(Field):
    """A string setting."""

    def __init__(self, name = "", default_value = "", **properties):

        super(TextField, self).__init__(name, default_value, **properties)


    def GetHelp(self):

        return ("This field stores text.  The default value of this "
                "field is \"%s\"." % self.GetDefaultValue())


    def Validate(self, value):

        if not isinstance(value, str):
            self._Invalid(value, "a string is required")
        return value



class EnumerationField(TextField):
    """A string setting restricted to a fixed list of choices."""

    def __init__(self, name = "", default_value=None, enumerals=[],
                 **properties):
        """A default outside 'enumerals' is replaced by the first
        choice."""

        if enumerals and default_value not in enumerals:
            default_value = enumerals[0]
        super(EnumerationField, self).__init__(name, default_value,
                                               **properties)
        self.__enumerals = list(enumerals)


    def GetItems(self):
        """Return a sequence of enumerals."""

        return self.__enumerals


    def GetHelp(self):

        return ("The value of this field must be one of %s.  The default "
                "value of this field is \"%s\"."
                % (", ".join(['"%s"' % e for e in self.__enumerals]),
                   self.GetDefaultValue()))


    def Validate(self, value):

        value = super(EnumerationField, self).Validate(value)
        if value not in self.__enumerals:
            self._Invalid(value, "expected one of %s"
                          % ", ".join(self.__enumerals))
        return value



class BooleanField(Field):
    """A field containing a boolean value."""

    def __init__(self, name = "", default_value = False, **properties):

        super(BooleanField, self).__init__(name, bool(default_value),
                                           **properties)


    def GetHelp(self):

        return ("This field stores a boolean.  The default value of this "
                "field is %s." % self.FormatValueAsText(self.GetDefaultValue()))


    def FormatValueAsText(self, value):

        return value and "true" or "false"


    def Validate(self, value):

        if isinstance(value, str):
            return self.ParseTextValue(value)
        if not isinstance(value, (bool, int)):
            self._Invalid(value, "a boolean is required")
        return bool(value)


    def ParseTextValue(self, value):

        try:
            return common.parse_boolean(value)
        except ValueError:
            self._Invalid(value, "expected true or false")



class SetField(Field):
    """A list of values of another field.

    In text form the elements are separated by commas, as in
    '10,20,50'."""

    def __init__(self, contained, not_empty_set = False, default_value = None,
                 **properties):
        """Create a set field.

        'contained' -- The field describing each element of the set.

        'not_empty_set' -- If true, this field may not hold the empty
        set."""

        if default_value is None:
            default_value = []
        super(SetField, self).__init__(contained.GetName(), default_value,
                                       **properties)
        self.__contained = contained
        self.__not_empty_set = not_empty_set


    def GetHelp(self):

        return ("A set field.  A set contains zero or more elements, all "
                "of the same type, separated by commas.  "
                + self.__contained.GetHelp())


    def FormatValueAsText(self, value):

        return ",".join([self.__contained.FormatValueAsText(v)
                         for v in value])


    def Validate(self, value):

        if self.__not_empty_set and len(value) == 0:
            self._Invalid(value, "the set may not be empty")
        return [self.__contained.Validate(v) for v in value]


    def ParseTextValue(self, value):

        return self.Validate([self.__contained.ParseTextValue(v)
                              for v in common.parse_string_list(value)])

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
