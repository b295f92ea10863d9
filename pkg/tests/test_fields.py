########################################################################
#
# File:   test_fields.py
# Date:   2026-03-23
#
# Contents:
#   Tests of fields, extensions, diagnostics and tracing.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import io

import numpy
import pytest

import aida
from aida import extension
from aida.extension import Extension
from aida.fields import BooleanField, EnumerationField, FloatField, \
     IntegerField, SetField, TextField
from aida.trace import Tracer

########################################################################
# Classes
########################################################################

class Widget(Extension):
    """A thing with knobs.

    Used to exercise argument handling."""

    kind = "widget"

    arguments = [
        IntegerField("size", 3, minimum=1, maximum=9),
        FloatField("weight", 0.5, minimum=0.0),
        EnumerationField("color", "red", ["red", "blue"]),
        BooleanField("shiny", False),
        SetField(IntegerField("sizes", minimum=0)),
        ]



class LargeWidget(Widget):

    arguments = [
        TextField("label", "large"),
        ]

########################################################################
# Tests
########################################################################

class TestFields:

    def test_integer(self):

        field = IntegerField("n", 2, minimum=0, maximum=4)
        assert field.ParseTextValue(" 3") == 3
        for text in ("-1", "5", "2.5", "two"):
            with pytest.raises(aida.UserError):
                field.ParseTextValue(text)
        with pytest.raises(aida.UserError):
            field.Validate(True)


    def test_float(self):

        field = FloatField("x", 1.0, positive=True)
        assert field.ParseTextValue("1e-3") == 0.001
        assert field.Validate(2) == 2.0
        assert field.FormatValueAsText(0.1) == "0.1"
        for text in ("0", "-2", "inf", "nan", "x"):
            with pytest.raises(aida.UserError):
                field.ParseTextValue(text)


    def test_float_text_is_canonical(self, generator):

        field = FloatField("x")
        for value in generator.normal(size=100):
            text = field.FormatValueAsText(float(value))
            assert field.ParseTextValue(text) == float(value)


    def test_enumeration(self):

        field = EnumerationField("mode", None, ["a", "b"])
        assert field.GetDefaultValue() == "a"
        assert field.ParseTextValue("b") == "b"
        with pytest.raises(aida.UserError):
            field.ParseTextValue("c")
        assert '"a", "b"' in field.GetHelp()


    @pytest.mark.parametrize("text,value", [("1", True), ("Yes", True),
                                            (" on ", True), ("true", True),
                                            ("0", False), ("no", False),
                                            ("OFF", False),
                                            ("false", False)])
    def test_boolean(self, text, value):

        assert BooleanField("b").ParseTextValue(text) is value


    def test_boolean_text(self):

        field = BooleanField("b")
        assert field.FormatValueAsText(True) == "true"
        assert field.Validate("off") is False
        with pytest.raises(aida.UserError):
            field.ParseTextValue("maybe")


    def test_set(self):

        field = SetField(IntegerField("counts", minimum=0),
                         not_empty_set=True)
        assert field.GetName() == "counts"
        assert field.ParseTextValue("10, 20,,50") == [10, 20, 50]
        assert field.FormatValueAsText([1, 2]) == "1,2"
        with pytest.raises(aida.UserError):
            field.ParseTextValue("")
        with pytest.raises(aida.UserError):
            field.ParseTextValue("1,-1")


    def test_error_names_the_field(self):

        with pytest.raises(aida.UserError) as info:
            IntegerField("batch_size", minimum=1).ParseTextValue("0")
        assert "batch_size" in str(info.value)
        assert "minimum" in str(info.value)


    def test_descriptions(self):

        field = TextField("t", description="""First sentence here.  And
        then more.""")
        assert field.GetBriefDescription() == "First sentence here"
        assert field.GetTitle() == "t"



class TestExtension:

    def test_defaults(self):

        widget = Widget()
        assert widget.size == 3
        assert widget.sizes == []
        assert widget.GetExplicitArguments() == {}
        assert widget.GetClassName() == "test_fields.Widget"


    def test_inheritance(self):

        names = [f.GetName()
                 for f in extension.get_class_arguments(LargeWidget)]
        assert names == ["size", "weight", "color", "shiny", "sizes",
                         "label"]
        assert LargeWidget(size=2).label == "large"


    def test_validation(self):

        with pytest.raises(aida.UserError):
            Widget(size=10)
        with pytest.raises(aida.UserError):
            Widget(colour="red")


    def test_text(self):

        widget = Widget(weight=2, shiny=True, sizes=[4, 5])
        assert widget.GetArgumentsAsText() \
               == ["color=red", "shiny=true", "size=3", "sizes=4,5",
                   "weight=2.0"]


    def test_text_round_trip(self):

        widget = Widget(weight=0.1, color="blue", sizes=[7])
        text = dict([aida.parse_assignment(a)
                     for a in widget.GetArgumentsAsText()])
        again = Widget(**extension.validate_arguments(Widget, text))
        assert again.GetArguments() == widget.GetArguments()


    def test_copy(self):

        widget = Widget(size=5)
        copy = widget.Copy(color="blue")
        assert (copy.size, copy.color) == (5, "blue")
        assert widget.color == "red"


    def test_unknown_text_argument(self):

        with pytest.raises(aida.UserError):
            extension.validate_arguments(Widget, {"sheen": "1"})


    def test_description(self):

        assert extension.get_class_description(Widget, brief=1) \
               == "A thing with knobs."



class TestCommon:

    def test_assignments(self):

        assert aida.parse_assignment(" a = b=c ") == ("a", "b=c")
        for text in ("novalue", "=1"):
            with pytest.raises(aida.UserError):
                aida.parse_assignment(text)
        file = io.StringIO("# comment\n\n x=1\ny = 2\nx=3\n")
        assert aida.read_assignments(file) == {"x": "3", "y": "2"}


    def test_string_list(self):

        assert aida.parse_string_list(" a, b ,,c ") == ["a", "b", "c"]
        assert aida.parse_string_list("") == []


    def test_random_streams(self):

        first = aida.make_random(3, "source", 1).normal(size=5)
        again = aida.make_random(3, "source", 1).normal(size=5)
        other = aida.make_random(3, "source", 2).normal(size=5)
        assert numpy.array_equal(first, again)
        assert not numpy.array_equal(first, other)


    def test_random_state(self):

        generator = aida.make_random(0)
        generator.normal(size=3)
        state = aida.get_random_state(generator)
        expected = generator.normal(size=4)
        restored = aida.make_random(99)
        aida.set_random_state(restored, state)
        assert numpy.array_equal(restored.normal(size=4), expected)


    def test_fingerprint(self):

        assert aida.fingerprint("") \
               == "da39a3ee5e6b4b0d3255bfef95601890afd80709"


    def test_rc_file(self, home_directory):

        (home_directory / ".aidarc").write_text("[aida]\nseed = 4\n")
        rc = aida.RcConfiguration()
        rc.Load("aida")
        assert rc.GetOptions() == ["seed"]
        assert rc.Get("seed", None) == "4"
        assert rc.Get("absent", "x") == "x"
        assert rc.GetOptions("missing") == []



class TestDiagnostics:

    def test_substitution(self):

        text = aida.error("invalid assignment", assignment="x")
        assert "x" in text
        assert "%(" not in text


    def test_output(self):

        output = io.StringIO()
        aida.warning("uniform class reward", output, batch_size=3)
        assert ": warning: " in output.getvalue()


    def test_exception_kind(self):

        assert aida.UserError("x").GetKind() == "user-error"



class TestTracer:

    def test_threshold(self):

        output = io.StringIO()
        tracer = Tracer(output)
        tracer.Write("Hidden.", "train")
        tracer.SetThreshold("train", 2)
        tracer.Write("Shown.", "train", 1)
        tracer.Write("Too detailed.", "train", 2)
        assert output.getvalue() == "[train]: Shown.\n"


    def test_environment(self, monkeypatch):

        monkeypatch.setenv("AIDA_THRESHOLD_DATA", "3")
        monkeypatch.setenv("AIDA_THRESHOLD_ENGINE", "")
        tracer = Tracer(io.StringIO())
        assert tracer.GetThreshold("data") == 3
        assert tracer.GetThreshold("engine") == 1
        assert tracer.GetThreshold("train") == 0


    def test_warnings(self, tracer):

        text = tracer.Warn("uniform class reward", batch_size=3)
        assert text
        assert tracer.GetWarnings() == ["uniform class reward"]

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
