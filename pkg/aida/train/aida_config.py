########################################################################
#
# File:   aida_config.py
# Date:   2026-03-09
#
# Contents:
#   AidaConfig
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import math

import aida
from aida import rewards
from aida.extension import Extension, validate_arguments
from aida.fields import BooleanField, EnumerationField, FloatField, \
     IntegerField, TextField

########################################################################
# Constants
########################################################################

AIDA = "aida"
SOURCE_ONLY = "source-only"
DANN = "dann"
CDAN = "cdan"
MODES = (AIDA, SOURCE_ONLY, DANN, CDAN)

CONSTANT = "constant"
WARMUP = "warmup"

RC_SECTION = "aida"
"""The section of '~/.aidarc' holding configuration defaults."""

########################################################################
# Classes
########################################################################

class TemperatureField(TextField):
    """The reward temperature: "median", "raw" or a positive number."""

    def Validate(self, value):

        if isinstance(value, (int, float)) and not isinstance(value, bool):
            value = repr(float(value))
        value = super(TemperatureField, self).Validate(value).strip()
        if value in (rewards.MEDIAN, rewards.RAW):
            return value
        try:
            number = float(value)
        except ValueError:
            number = -1.0
        if not (math.isfinite(number) and number > 0):
            self._Invalid(value, "expected \"median\", \"raw\" or a "
                          "positive number")
        return repr(number)



class AidaConfig(Extension):
    """Every tunable of a training run.

    A configuration is immutable in practice: 'Copy' returns a new one
    with some values replaced."""

    kind = "config"

    arguments = [
        FloatField("lambda_adv", 1.0, minimum=0.0,
                   description="The adversarial weight."),
        FloatField("lambda_2", 0.4, minimum=0.0,
                   description="The weight of the reward-weighted "
                   "all-classes loss."),
        FloatField("lambda_3", 0.9, minimum=0.0,
                   description="The weight of the hierarchy penalty."),
        FloatField("reward_alpha", 0.0, minimum=0.0,
                   description="The global reward constant.  Zero means "
                   "the square of the batch size, so that uniform rewards "
                   "weight every example by one."),
        TemperatureField("reward_temperature", rewards.MEDIAN,
                         description="How sparse sizes are scaled before "
                         "the class reward exponent."),
        FloatField("learning_rate", 0.01, positive=True,
                   description="The SGD learning rate."),
        FloatField("momentum", 0.9, minimum=0.0,
                   description="The SGD momentum."),
        IntegerField("batch_size", 32, minimum=1,
                     description="The number of examples per batch."),
        IntegerField("iterations", 1000, minimum=1,
                     description="The number of outer iterations."),
        IntegerField("seed", 0, minimum=0,
                     description="The seed of every random stream of a "
                     "run."),
        EnumerationField("mode", AIDA, list(MODES),
                         description="Which terms are trained.  'aida' "
                         "alternates the shared adversarial step with the "
                         "reward-weighted hierarchical step; 'cdan' runs the "
                         "shared adversarial step alone; 'dann' conditions "
                         "the discriminator on raw features; 'source-only' "
                         "drops the adversarial term."),
        EnumerationField("adversarial_schedule", CONSTANT,
                         [CONSTANT, WARMUP],
                         description="Whether the adversarial weight is "
                         "constant or ramps up over training."),
        BooleanField("uniform_rewards", False,
                     description="Replace the sparseness rewards by "
                     "uniform weights."),
        BooleanField("sibling_self_inclusion", True,
                     description="Whether a shared class belongs to its own "
                     "sibling shared set."),
        EnumerationField("encoder", "vector-mlp",
                         ["vector-mlp", "sequence-recurrent"],
                         description="The feature encoder variant."),
        EnumerationField("recurrent_cell", "lstm", ["lstm", "gru"],
                         description="The recurrent cell of the sequence "
                         "encoder."),
        BooleanField("bidirectional", True,
                     description="Whether the sequence encoder also reads "
                     "backward."),
        IntegerField("embedding_dim", 300, minimum=1,
                     description="The token embedding width."),
        IntegerField("hidden_dim", 128, minimum=0,
                     description="The recurrent state width, or the hidden "
                     "width of the vector encoder (zero for none)."),
        IntegerField("feature_dim", 256, minimum=1,
                     description="The feature width of the vector "
                     "encoder."),
        IntegerField("classifier_hidden", 256, minimum=0,
                     description="The hidden width of the classifier head "
                     "(zero for none)."),
        IntegerField("discriminator_hidden", 500, minimum=1,
                     description="The hidden width of the domain "
                     "discriminator."),
        EnumerationField("discriminator_activation", "relu",
                         ["relu", "tanh"],
                         description="The hidden nonlinearity of the domain "
                         "discriminator."),
        IntegerField("max_length", 300, minimum=1,
                     description="Longer token sequences are truncated."),
        IntegerField("eval_interval", 100, minimum=0,
                     description="Evaluate on the held-out target split "
                     "every this many iterations (zero for never)."),
        IntegerField("checkpoint_interval", 0, minimum=0,
                     description="Write a checkpoint every this many "
                     "iterations (zero for never)."),
        ]


    def GetFingerprint(self):
        """Return the SHA-1 of the canonical text of every value."""

        return aida.fingerprint("\n".join(self.GetArgumentsAsText()))


    def GetAlpha(self, batch_size):
        """Return the reward constant for a batch of 'batch_size'."""

        return self.reward_alpha or float(batch_size * batch_size)


    def GetTemperature(self):
        """Return the temperature as 'rewards.resolve_temperature'
        expects it."""

        if self.reward_temperature in (rewards.MEDIAN, rewards.RAW):
            return self.reward_temperature
        return float(self.reward_temperature)


    def GetAdversarialWeight(self, iteration):
        """Return the adversarial coefficient for 'iteration'.

        It is zero in source-only mode.  With the warm-up schedule it
        rises from zero toward 'lambda_adv' as
        '2 / (1 + exp(-10 p)) - 1', 'p' being the fraction of training
        done."""

        if self.mode == SOURCE_ONLY:
            return 0.0
        if self.adversarial_schedule == CONSTANT:
            return self.lambda_adv
        progress = float(iteration) / self.iterations
        return self.lambda_adv * (2.0 / (1.0 + math.exp(-10.0 * progress))
                                  - 1.0)


    def RunsHierarchicalStep(self):
        """Return true if the reward-weighted hierarchical step is
        active."""

        return self.mode == AIDA and (self.lambda_2 > 0 or self.lambda_3 > 0)


    def IsConditioned(self):
        """Return true if the discriminator sees the outer product of
        features and shared prediction."""

        return self.mode != DANN

########################################################################
# Functions
########################################################################

def load_config(path=None, assignments=(), overrides=None, use_rc=True):
    """Build an 'AidaConfig' from its layered sources.

    'path' -- A file of 'NAME=VALUE' lines, or 'None'.

    'assignments' -- A sequence of 'NAME=VALUE' strings, as given to
    '--set'.

    'overrides' -- A dictionary of already-typed values applied last.

    'use_rc' -- If true, the '[aida]' section of '~/.aidarc' supplies
    defaults.

    Later sources win: field defaults, then '~/.aidarc', then 'path',
    then 'assignments', then 'overrides'.

    raises -- 'UserError' for an unknown name or an invalid value."""

    text = {}
    if use_rc:
        rc = aida.RcConfiguration()
        rc.Load(RC_SECTION)
        for option in rc.GetOptions():
            text[option] = rc.Get(option, None)
    if path is not None:
        try:
            with open(path, "r") as file:
                text.update(aida.read_assignments(file))
        except OSError as exception:
            raise aida.UserError(aida.error("could not read file",
                                            path=path,
                                            reason=str(exception)))
    for assignment in assignments:
        name, value = aida.parse_assignment(assignment)
        text[name] = value
    values = validate_arguments(AidaConfig, text)
    values.update(overrides or {})
    return AidaConfig(**values)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
