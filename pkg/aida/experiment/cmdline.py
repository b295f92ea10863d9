########################################################################
#
# File:   cmdline.py
# Date:   2026-03-12
#
# Contents:
#   The 'aida' command.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import json
import os
import sys

import aida
import aida.cmdline
from aida import data
from aida import model as model_module
from aida.experiment import metrics
from aida.experiment import run
from aida.experiment.classes.text_result_stream import TextResultStream
from aida.experiment.result import Result
from aida.extension import validate_arguments
from aida.trace import get_tracer
from aida.train import trainer
from aida.train.aida_config import AidaConfig, MODES, load_config

########################################################################
# Classes
########################################################################

class AidaTool:
    """An invocation of the 'aida' command."""

    data_prefix = "data."
    """'--set' assignments with this prefix configure the generated
    data instead of training."""

    summary_formats = ("brief", "full", "stats", "none")

    help_option_spec = (
        "h",
        "help",
        None,
        "Display usage summary."
        )

    version_option_spec = (
        None,
        "version",
        None,
        "Display version information."
        )

    trace_option_spec = (
        None,
        "trace",
        "CATEGORY[=LEVEL]",
        "Write trace messages of CATEGORY (train, data, rewards, engine "
        "or metrics) to the standard error."
        )

    config_option_spec = (
        "c",
        "config",
        "FILE",
        "Read NAME=VALUE configuration lines from FILE."
        )

    set_option_spec = (
        None,
        "set",
        "NAME=VALUE",
        "Set a configuration value.  Names starting with 'data.' set a "
        "field of the generated data."
        )

    seed_option_spec = (
        None,
        "seed",
        "SEED",
        "Use SEED for every random stream."
        )

    mode_option_spec = (
        None,
        "mode",
        "MODE",
        "Train in MODE: " + ", ".join(MODES) + "."
        )

    output_option_spec = (
        "o",
        "out",
        "DIR",
        "Write output files to DIR."
        )

    data_option_spec = (
        "d",
        "data",
        "DIR",
        "Read the datasets from DIR instead of generating them."
        )

    caps_option_spec = (
        None,
        "caps",
        "N[,N...]",
        "Limit every shared source class to N examples."
        )

    seeds_option_spec = (
        None,
        "seeds",
        "S[,S...]",
        "Repeat every run with each seed."
        )

    concurrency_option_spec = (
        "j",
        "concurrency",
        "THREADS",
        "Execute runs in parallel on THREADS threads."
        )

    no_probes_option_spec = (
        None,
        "no-probes",
        None,
        "Leave out the A-distance and adaptability error."
        )

    format_option_spec = (
        "f",
        "format",
        "FORMAT",
        "Specify the summary format: " + ", ".join(summary_formats) + "."
        )

    resume_option_spec = (
        None,
        "resume",
        "CHECKPOINT",
        "Continue the run saved in CHECKPOINT."
        )

    modes_option_spec = (
        None,
        "modes",
        "MODE[,MODE...]",
        "Compare these modes (default: all)."
        )

    grid_option_spec = (
        None,
        "grid",
        "NAME=V[,V...]",
        "Add a grid dimension.  Without one the lambda_2 by lambda_3 "
        "sensitivity grid is used."
        )

    variants_option_spec = (
        None,
        "variants",
        "NAME[,NAME...]",
        "Run these ablation variants: " + ", ".join(run.ABLATIONS) + "."
        )

    conflicting_option_specs = (
        (seed_option_spec, seeds_option_spec),
        (resume_option_spec, caps_option_spec),
        )

    global_options_spec = [
        help_option_spec,
        version_option_spec,
        trace_option_spec,
        ]

    training_option_specs = [
        help_option_spec,
        config_option_spec,
        set_option_spec,
        mode_option_spec,
        data_option_spec,
        output_option_spec,
        format_option_spec,
        no_probes_option_spec,
        ]

    matrix_option_specs = training_option_specs + [
        seeds_option_spec,
        caps_option_spec,
        concurrency_option_spec,
        ]

    commands_spec = [
        ("generate",
         "Generate a synthetic partial domain pair.",
         "",
         """Generate labeled source data, unlabeled target data, a labeled
held-out target set and the label hierarchy, and write them with a
manifest to the output directory.  Use '--set data.NAME=VALUE' to change
the generated data.""",
         (help_option_spec, set_option_spec, seed_option_spec,
          output_option_spec)
         ),

        ("train",
         "Train one model.",
         "",
         """Train one model and evaluate it.  The output directory
receives the final checkpoint, the report, the per-iteration history and
the convergence curve.""",
         tuple(training_option_specs + [seed_option_spec, caps_option_spec,
                                        resume_option_spec])
         ),

        ("evaluate",
         "Evaluate a checkpoint.",
         "CHECKPOINT",
         """Compute the metrics of the model in CHECKPOINT on the
datasets.""",
         tuple(training_option_specs + [seed_option_spec, caps_option_spec])
         ),

        ("compare",
         "Compare training modes.",
         "",
         """Run every mode for every seed, and for every cap if '--caps'
is given.  The output directory receives one report per run, the
aggregate table, and 'compare.csv' with the mean and standard deviation
of each mode's metrics.""",
         tuple(matrix_option_specs + [modes_option_spec])
         ),

        ("sweep",
         "Run a parameter grid.",
         "",
         """Run every cell of the grid for every seed.  The output
directory receives one report per run, the aggregate table, and
'sensitivity.csv' with the mean metrics of each cell.""",
         tuple(matrix_option_specs + [grid_option_spec])
         ),

        ("ablate",
         "Run ablation variants.",
         "",
         """Run the full method and the variants with one component
removed.  The output directory receives one report per run, the
aggregate table, and 'ablation.csv'.""",
         tuple(matrix_option_specs + [variants_option_spec])
         ),
        ]

    def __init__(self, argument_list, stdout=None):
        """Construct a new 'AidaTool'.

        'argument_list' -- The command line, without the program name.

        raises -- 'CommandError' if the command line is invalid."""

        self._stdout = stdout or sys.stdout
        self.__parser = aida.cmdline.CommandParser(
            "aida",
            self.global_options_spec,
            self.commands_spec,
            self.conflicting_option_specs)
        (self.__global_options,
         self.__command,
         self.__command_options,
         self.__arguments) = self.__parser.ParseCommandLine(argument_list)
        self.__tracer = get_tracer()


    def HasGlobalOption(self, option):

        return option in [o for o, v in self.__global_options]


    def GetGlobalOption(self, option, default=None):

        for opt, opt_arg in self.__global_options:
            if opt == option:
                return opt_arg
        return default


    def HasCommandOption(self, option):

        return option in [o for o, v in self.__command_options]


    def GetCommandOption(self, option, default=None):
        """Return the last value given for command 'option', or
        'default'."""

        values = self.GetCommandOptions(option)
        if values:
            return values[-1]
        return default


    def GetCommandOptions(self, option):
        """Return every value given for command 'option', in order."""

        return [v for o, v in self.__command_options if o == option]


    def Execute(self):
        """Execute the command.

        returns -- 0 on success, 1 if some run of a matrix did not
        pass."""

        if self.HasGlobalOption("version"):
            self._stdout.write("aida %s\n" % aida.version)
            return 0
        if self.HasGlobalOption("help") or self.__command == "":
            self._stdout.write(self.__parser.GetBasicHelp())
            return 0
        if self.HasCommandOption("help"):
            self._stdout.write(self.__parser.GetCommandHelp(self.__command))
            return 0
        for value in self.GetGlobalOptions("trace"):
            self.__SetTrace(value)

        method = {
            "generate": self.__ExecuteGenerate,
            "train": self.__ExecuteTrain,
            "evaluate": self.__ExecuteEvaluate,
            "compare": self.__ExecuteCompare,
            "sweep": self.__ExecuteSweep,
            "ablate": self.__ExecuteAblate,
            }[self.__command]
        return method()


    def GetGlobalOptions(self, option):

        return [v for o, v in self.__global_options if o == option]


    def GetConfig(self):
        """Return the 'AidaConfig' of the command line.

        Flags win over '--set', which wins over '--config', which wins
        over '~/.aidarc'."""

        assignments = [a for a in self.GetCommandOptions("set")
                       if not a.startswith(self.data_prefix)]
        for option in ("seed", "mode"):
            value = self.GetCommandOption(option)
            if value is not None:
                assignments.append("%s=%s" % (option, value))
        return load_config(self.GetCommandOption("config"), assignments)


    def GetSyntheticSpec(self):
        """Return the 'SyntheticSpec' of the '--set data.*' values."""

        text = {}
        for assignment in self.GetCommandOptions("set"):
            if assignment.startswith(self.data_prefix):
                name, value = aida.parse_assignment(
                    assignment[len(self.data_prefix):])
                text[name] = value
        if self.__command == "generate" and self.HasCommandOption("seed"):
            text["seed"] = self.GetCommandOption("seed")
        return data.SyntheticSpec(**validate_arguments(data.SyntheticSpec,
                                                       text))


    def GetDataSource(self):

        directory = self.GetCommandOption("data")
        if directory is not None:
            if [a for a in self.GetCommandOptions("set")
                if a.startswith(self.data_prefix)]:
                raise aida.cmdline.CommandError(
                    aida.error("conflicting options", option1="data",
                               option2="set " + self.data_prefix + "*"))
            return run.DataSource(directory=directory)
        return run.DataSource(spec=self.GetSyntheticSpec())


    def GetOutputDirectory(self, required=False):

        directory = self.GetCommandOption("out")
        if directory is None:
            if required:
                raise aida.cmdline.CommandError(
                    aida.error("missing option", command=self.__command,
                               option="out"))
            return None
        if not os.path.isdir(directory):
            os.makedirs(directory)
        return directory


    def GetCaps(self):
        """Return the '--caps' values as floats, or '[None]'."""

        text = self.GetCommandOption("caps")
        if text is None:
            return [None]
        return run.parse_grid_values(run.CAP, text)


    def GetSeeds(self, config):

        text = self.GetCommandOption("seeds")
        if text is None:
            return [config.seed]
        try:
            return [int(s) for s in aida.parse_string_list(text)]
        except ValueError:
            raise aida.cmdline.CommandError(
                aida.error("invalid grid value", name="seeds", value=text))


    def GetConcurrency(self):

        text = self.GetCommandOption("concurrency", "1")
        try:
            concurrency = int(text)
        except ValueError:
            concurrency = 0
        if concurrency < 1:
            raise aida.cmdline.CommandError(
                aida.error("concurrency not integer", value=text))
        return concurrency


    def MakeTextStream(self):
        """Return the text result stream for the standard output, or
        'None' if the format is "none"."""

        format = self.GetCommandOption("format", "brief")
        if format not in self.summary_formats:
            raise aida.cmdline.CommandError(
                aida.error("invalid format", format=format))
        if format == "none":
            return None
        return TextResultStream(file=self._stdout, format=format)


    def __SetTrace(self, value):

        if "=" in value:
            category, level = value.split("=", 1)
            try:
                level = int(level)
            except ValueError:
                raise aida.cmdline.CommandError(
                    aida.error("invalid trace level", value=value))
        else:
            category, level = value, 1
        self.__tracer.SetThreshold(category.strip().lower(), level)


    def __CheckArguments(self, count):

        if len(self.__arguments) != count:
            raise aida.cmdline.CommandError(
                aida.error("wrong argument count", command=self.__command,
                           expected=count, given=len(self.__arguments)))


    def __ExecuteGenerate(self):

        self.__CheckArguments(0)
        spec = self.GetSyntheticSpec()
        directory = self.GetOutputDirectory(required=True)
        pair = data.generate_synthetic_splits(spec, self.__tracer)
        manifest = {"generator": spec.GetClassName(),
                    "spec": spec.GetArgumentsAsText(),
                    "seed": spec.seed,
                    "version": aida.version}
        data.write_domains(pair, directory, manifest)
        self._stdout.write("Wrote %d source, %d target and %d held-out "
                           "examples over %d classes to %s.\n"
                           % (len(pair.source), len(pair.target),
                              len(pair.target_eval), pair.tree.K,
                              directory))
        return 0


    def __ExecuteTrain(self):

        self.__CheckArguments(0)
        config = self.GetConfig()
        source = self.GetDataSource()
        directory = self.GetOutputDirectory()
        cap = self.GetCaps()[-1]
        pair = source.GetPair(config.seed, cap, self.__tracer)
        resume = self.GetCommandOption("resume")
        state = None
        if resume is not None:
            state = trainer.resume(resume, pair, config.iterations)
            config = state.config
        checkpoints = None
        if directory is not None and config.checkpoint_interval > 0:
            checkpoints = os.path.join(directory, "checkpoints")
        state = trainer.train(config, pair, self.__tracer, checkpoints,
                              state)
        report = metrics.evaluate(state.model, pair,
                                  config.GetFingerprint(), config.seed,
                                  not self.HasCommandOption("no-probes"),
                                  self.__tracer)
        report.history = state.history
        report.curve = state.curve
        if directory is not None:
            trainer.write_state(state, os.path.join(directory,
                                                    "checkpoint.npz"))
            self.__WriteReport(os.path.join(directory, "report.json"),
                               config, report)
            run.write_rows(report.history,
                           os.path.join(directory, "history.csv"))
            if report.curve:
                run.write_curve(report.curve,
                                os.path.join(directory, "curve.csv"))
        self.__Display("train", config, report, cap)
        return 0


    def __ExecuteEvaluate(self):

        self.__CheckArguments(1)
        path = self.__arguments[0]
        model, parents, meta = model_module.read_checkpoint(path)
        config = trainer.read_config(meta)
        seed = self.GetCommandOption("seed")
        if seed is not None:
            config = config.Copy(**validate_arguments(AidaConfig,
                                                      {"seed": seed}))
        cap = self.GetCaps()[-1]
        pair = self.GetDataSource().GetPair(config.seed, cap, self.__tracer)
        if pair.tree.GetIdentifier() != model.tree.GetIdentifier():
            raise model_module.CheckpointError(
                aida.error("invalid checkpoint", path=path,
                           reason="hierarchy mismatch"))
        report = metrics.evaluate(model, pair, meta["fingerprint"],
                                  config.seed,
                                  not self.HasCommandOption("no-probes"),
                                  self.__tracer)
        report.history = meta.get("history", [])
        report.curve = meta.get("curve", [])
        directory = self.GetOutputDirectory()
        if directory is not None:
            self.__WriteReport(os.path.join(directory, "report.json"),
                               config, report)
        self.__Display("evaluate", config, report, cap)
        return 0


    def __ExecuteCompare(self):

        self.__CheckArguments(0)
        modes = MODES
        text = self.GetCommandOption("modes")
        if text is not None:
            modes = run.parse_grid_values("mode", text)
        grid = [("mode", list(modes))]
        caps = self.GetCaps()
        if caps != [None]:
            grid.insert(0, (run.CAP, caps))
        return self.__RunMatrix(grid, "compare.csv",
                                [name for name, values in grid])


    def __ExecuteSweep(self):

        self.__CheckArguments(0)
        grid = []
        for dimension in self.GetCommandOptions("grid"):
            name, text = aida.parse_assignment(dimension)
            grid.append((name, run.parse_grid_values(name, text)))
        if not grid:
            grid = list(run.SENSITIVITY_GRID)
        caps = self.GetCaps()
        if caps != [None]:
            grid.insert(0, (run.CAP, caps))
        return self.__RunMatrix(grid, "sensitivity.csv",
                                [name for name, values in grid])


    def __ExecuteAblate(self):

        self.__CheckArguments(0)
        variants = list(run.ABLATIONS)
        text = self.GetCommandOption("variants")
        if text is not None:
            variants = run.parse_grid_values(run.VARIANT, text)
        grid = [(run.VARIANT, variants)]
        caps = self.GetCaps()
        if caps != [None]:
            grid.insert(0, (run.CAP, caps))
        return self.__RunMatrix(grid, "ablation.csv",
                                [name for name, values in grid])


    def __RunMatrix(self, grid, summary_name, summary_parameters):

        config = self.GetConfig()
        directory = self.GetOutputDirectory(required=True)
        streams = []
        text_stream = self.MakeTextStream()
        if text_stream is not None:
            streams.append(text_stream)
        results = run.run_matrix(config, grid, self.GetSeeds(config),
                                 self.GetDataSource(), directory, streams,
                                 self.GetConcurrency(),
                                 not self.HasCommandOption("no-probes"),
                                 self.__tracer)
        run.write_rows(run.summarize_cells(results, summary_parameters),
                       os.path.join(directory, summary_name))
        if [r for r in results if r.GetOutcome() != Result.PASS]:
            return 1
        return 0


    def __WriteReport(self, path, config, report):

        document = {"config": config.GetArgumentsAsText(),
                    "report": report.AsDictionary()}
        with open(path, "w", encoding="utf-8") as file:
            json.dump(document, file, indent=2, sort_keys=True)
            file.write("\n")


    def __Display(self, name, config, report, cap):

        stream = self.MakeTextStream()
        if stream is None:
            return
        parameters = {"mode": config.mode, "seed": config.seed}
        if cap is not None:
            parameters[run.CAP] = cap
        result = Result(name, parameters=parameters)
        result[Result.FINGERPRINT] = config.GetFingerprint()
        result.report = report
        stream.WriteResult(result)
        stream.Summarize()

########################################################################
# Functions
########################################################################

def format_error(exception):
    """Return the machine-readable error document of 'exception'."""

    return json.dumps({"error": exception.__class__.__name__,
                       "kind": exception.GetKind(),
                       "message": str(exception)}, sort_keys=True)


def main(argument_list, stdout=None, stderr=None):
    """Run the 'aida' command.

    returns -- The exit status: 0 on success, 1 if the command failed
    or some run did not pass, 2 if the command line is invalid.  On
    failure a JSON object describing the error is written to
    'stderr'."""

    stderr = stderr or sys.stderr
    try:
        return AidaTool(argument_list, stdout).Execute()
    except aida.cmdline.CommandError as exception:
        stderr.write(format_error(exception) + "\n")
        return 2
    except aida.AidaException as exception:
        stderr.write(format_error(exception) + "\n")
        return 1

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
