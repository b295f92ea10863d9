########################################################################
#
# File:   trainer.py
# Date:   2026-03-10
#
# Contents:
#   The alternating training loop.
#
# For license terms see the file COPYING.
#
########################################################################

"""The alternating training loop.

Each outer iteration takes one step on the shared adversarial
objective and then, in 'aida' mode, one step on the reward-weighted
hierarchical objective:

  shared step        J_y + J_d, with the gradient of J_d reversed and
                     scaled by lambda on its way into the encoder;
                     updates encoder, classifier and discriminator.

  hierarchical step  lambda_2 * mean(R * L_K) + lambda_3 * H; updates
                     encoder and classifier, then re-estimates the
                     parent vectors.

The reported total is 'J_y - lambda J_d + lambda_2 J_K + lambda_3 H'.

Every random draw of a run comes from the generator held in the
'TrainState', so a run restored from a checkpoint continues exactly as
the uninterrupted run would have."""

########################################################################
# Imports
########################################################################

import os
import threading

import numpy

import aida
from aida import hierarchy
from aida import layers
from aida import model as model_module
from aida import optimizer
from aida import rewards
from aida import tensor
from aida.data import split_shared_nonshared
from aida.experiment import metrics
from aida.extension import validate_arguments
from aida.layers import DomainDiscriminator
from aida.optimizer import TrainingDivergence
from aida.tensor import NonFiniteError, PreconditionError
from aida.trace import get_tracer
from aida.train.aida_config import AIDA, AidaConfig
from aida.train.sampler import BatchSampler

########################################################################
# Constants
########################################################################

CHECKPOINT_NAME = "checkpoint-%06d.npz"

HISTORY_COLUMNS = ("iteration", "lambda", "J_y", "J_d", "J_K", "H", "total",
                   "clamped")

CURVE_COLUMNS = ("iteration", "accuracy", "macro_f1", "J_y", "J_d", "J_K",
                 "H", "total")

########################################################################
# Classes
########################################################################

class LossTerms:
    """The loss terms of one iteration, as floats.

    'lambda_adv' -- The adversarial coefficient in effect.

    'J_y' -- The shared classification loss.

    'J_d' -- The domain discrimination loss.

    'J_K' -- The reward-weighted all-classes loss.

    'H' -- The hierarchy penalty.

    'rewards' -- The 'RewardBatch' of the hierarchical step, or
    'None'."""

    def __init__(self, lambda_adv=0.0, J_y=0.0, J_d=0.0, J_K=0.0, H=0.0,
                 rewards=None):

        self.lambda_adv = lambda_adv
        self.J_y = J_y
        self.J_d = J_d
        self.J_K = J_K
        self.H = H
        self.rewards = rewards


    def GetTotal(self, config):
        """Return the combined objective under 'config'."""

        return self.J_y - self.lambda_adv * self.J_d \
               + config.lambda_2 * self.J_K + config.lambda_3 * self.H



class TrainState:
    """Everything a run needs to continue.

    'config' -- The 'AidaConfig'.

    'model' -- The 'AidaModel'.

    'parents' -- The 'ParentParams'.

    'iteration' -- The number of completed iterations.

    'generator' -- The random generator batches are drawn from.

    'history' -- One dictionary per completed iteration.

    'curve' -- One dictionary per evaluation of the held-out target
    set.

    'checkpoint' -- The path of the last checkpoint written, or
    'None'.

    An iteration updates the state while holding 'lock'; 'Snapshot'
    takes the same lock, so a snapshot never sees half an update."""

    def __init__(self, config, model, parents, generator, iteration=0,
                 history=None, curve=None):

        self.config = config
        self.model = model
        self.parents = parents
        self.generator = generator
        self.iteration = iteration
        self.history = history or []
        self.curve = curve or []
        self.checkpoint = None
        self.lock = threading.Lock()


    def Snapshot(self):
        """Return '(iteration, model, parents)' copies that training
        will not modify."""

        with self.lock:
            return (self.iteration, self.model.Copy(),
                    hierarchy.ParentParams(self.parents.vectors.copy(),
                                           self.parents.prior_scale))

########################################################################
# Functions
########################################################################

def make_encoder_spec(config, pair):
    """Return the 'EncoderSpec' of 'config' for the data in 'pair'.

    raises -- 'UserError' if the encoder variant does not suit the
    payloads."""

    sequence = pair.source.IsSequence()
    if (config.encoder == layers.SEQUENCE_RECURRENT) != sequence:
        raise aida.UserError(aida.error("encoder mismatch",
                                        encoder=config.encoder,
                                        payload=sequence and "tokens"
                                        or "vectors"))
    if sequence:
        return layers.EncoderSpec(layers.SEQUENCE_RECURRENT,
                                  vocabulary_size=len(pair.vocabulary),
                                  embedding_dim=config.embedding_dim,
                                  hidden_dim=config.hidden_dim,
                                  cell=config.recurrent_cell,
                                  bidirectional=config.bidirectional,
                                  max_length=config.max_length)
    return layers.EncoderSpec(layers.VECTOR_MLP,
                              input_dim=pair.source[0].payload.shape[0],
                              hidden_dim=config.hidden_dim,
                              output_dim=config.feature_dim)


def initialize(config, pair):
    """Return the 'TrainState' of a fresh run of 'config' on 'pair'."""

    if len(pair.source) == 0:
        raise PreconditionError(aida.error("empty batch",
                                           operation="initialize"))
    model = model_module.AidaModel(make_encoder_spec(config, pair),
                                   pair.tree,
                                   aida.make_random(config.seed, "init"),
                                   config.classifier_hidden,
                                   config.discriminator_hidden,
                                   config.IsConditioned(),
                                   config.discriminator_activation)
    parents = hierarchy.estimate_parents(model.head, pair.tree)
    return TrainState(config, model, parents,
                      aida.make_random(config.seed, "batches"))


def sdan_step(state, source_payloads, source_labels, target_payloads,
              config=None, iteration=None):
    """Take one step on the shared adversarial objective.

    'source_payloads', 'source_labels' -- A batch of source examples
    of shared classes.

    'target_payloads' -- A batch of unlabeled target examples.

    The discriminator sees the conditioned features through a gradient
    reversal with the coefficient of this iteration, so in one
    backward pass it descends the domain loss while the encoder
    ascends it.  Both factors of the conditioning, the features and
    the shared prediction, stay on the tape.

    returns -- A 'LossTerms' with 'J_y' and 'J_d' filled in.

    raises -- 'PreconditionError' if either batch is empty."""

    config = config or state.config
    if iteration is None:
        iteration = state.iteration
    source_count, target_count = len(source_payloads), len(target_payloads)
    if source_count == 0 or target_count == 0:
        raise PreconditionError(aida.error("empty batch",
                                           operation="sdan_step"))
    source_labels = numpy.asarray(source_labels, dtype=numpy.int64)
    if not all([state.model.tree.IsShared(int(y)) for y in source_labels]):
        raise PreconditionError(aida.error("label not shared",
                                           operation="sdan_step"))
    model = state.model
    lambda_adv = config.GetAdversarialWeight(iteration)

    f = tensor.concat([model.Encode(source_payloads),
                       model.Encode(target_payloads)], axis=0)
    g = layers.shared_predict(model.head, f, model.mask)
    J_y = tensor.cross_entropy(tensor.slice_rows(g, 0, source_count),
                               source_labels)
    conditioned = model.Condition(f, g)
    domains = [DomainDiscriminator.SOURCE] * source_count \
              + [DomainDiscriminator.TARGET] * target_count
    J_d = tensor.cross_entropy(model.discriminator.Forward(
        tensor.grad_reverse(conditioned, lambda_adv)), domains)
    _descend(tensor.add(J_y, J_d), model.GetParameters(), config,
             iteration)
    return LossTerms(lambda_adv, J_y.Item(), J_d.Item())


def hpn_step(state, payloads, labels, config=None, iteration=None,
             tracer=None):
    """Take one step on the reward-weighted hierarchical objective and
    re-estimate the parent vectors.

    'payloads', 'labels' -- A batch of source examples of any class.

    The rewards are computed with the discriminator as it stands; no
    gradient reaches it.  When both 'lambda_2' and 'lambda_3' are zero
    no step is taken and only the parents are refreshed.

    returns -- A 'LossTerms' with 'J_K', 'H' and 'rewards' filled in."""

    config = config or state.config
    if iteration is None:
        iteration = state.iteration
    model = state.model
    tree = model.tree
    if config.lambda_2 == 0 and config.lambda_3 == 0:
        state.parents = hierarchy.estimate_parents(model.head, tree)
        return LossTerms()
    if len(payloads) == 0:
        raise PreconditionError(aida.error("empty batch",
                                           operation="hpn_step"))
    labels = numpy.asarray(labels, dtype=numpy.int64)

    f = model.Encode(payloads)
    z = layers.classify_all(model.head, f)
    g = tensor.softmax(layers.mask_filter(tensor.constant(z), model.mask))
    batch = rewards.compute_rewards(tree, labels, model.discriminator,
                                    model.Condition(tensor.constant(f), g),
                                    config.GetAlpha(len(labels)),
                                    config.GetTemperature(),
                                    config.sibling_self_inclusion,
                                    config.uniform_rewards, tracer)
    J_K = tensor.cross_entropy(tensor.softmax(z), labels, batch.final)
    H = hierarchy.hierarchy_penalty(model.head, state.parents, tree)
    _descend(tensor.add(tensor.scale(J_K, config.lambda_2),
                        tensor.scale(H, config.lambda_3)),
             model.GetEncoderParameters() + model.GetClassifierParameters(),
             config, iteration)
    state.parents = hierarchy.estimate_parents(model.head, tree)
    return LossTerms(J_K=J_K.Item(), H=H.Item(), rewards=batch)


def _descend(loss, parameters, config, iteration):
    """Back-propagate 'loss' and step 'parameters'.

    The gradients are left at zero whether or not the step succeeds."""

    try:
        tensor.backward(loss)
        optimizer.sgd_step(parameters, config.learning_rate,
                           config.momentum, iteration)
    except (TrainingDivergence, NonFiniteError):
        optimizer.zero_grad(parameters)
        raise


def _history_row(state, iteration, terms, clamped):

    config = state.config
    row = {"iteration": iteration,
           "lambda": terms.lambda_adv,
           "J_y": terms.J_y,
           "J_d": terms.J_d,
           "J_K": terms.J_K,
           "H": terms.H,
           "total": terms.GetTotal(config),
           "clamped": clamped}
    if terms.rewards is not None:
        row.update(terms.rewards.GetStatistics())
    return row


def _curve_row(state, pair, row):

    evaluation = pair.target_eval
    labels = evaluation.GetLabels()
    predictions = state.model.Predict(evaluation.GetPayloads(), shared=True)
    curve = {"iteration": row["iteration"] + 1,
             "accuracy": metrics.accuracy(predictions, labels),
             "macro_f1": metrics.macro_f1(predictions, labels,
                                          pair.tree.K)}
    for column in CURVE_COLUMNS[3:]:
        curve[column] = row[column]
    return curve


def train(config, pair, tracer=None, checkpoint_directory=None, state=None):
    """Run the training loop of 'config' on 'pair'.

    'pair' -- A 'DomainPair'.  The shared classification step draws
    class-balanced batches from the source examples of shared classes;
    the hierarchical step draws uniform batches from all source
    examples.

    'checkpoint_directory' -- Where checkpoints are written every
    'checkpoint_interval' iterations, or 'None'.

    'state' -- A 'TrainState' to continue, as returned by 'resume'.
    By default a fresh one is built.

    returns -- The final 'TrainState'.

    raises -- 'TrainingDivergence' if a loss or gradient becomes
    non-finite; its 'checkpoint' is the path of the last checkpoint
    written, or 'None'."""

    tracer = tracer or get_tracer()
    if state is None:
        state = initialize(config, pair)
    shared, source = split_shared_nonshared(pair.source, pair.tree, tracer)
    shared_sampler = BatchSampler(shared, config.batch_size, balanced=True,
                                  name="sdan_step")
    target_sampler = BatchSampler(pair.target, config.batch_size,
                                  name="sdan_step")
    source_sampler = BatchSampler(source, config.batch_size,
                                  name="hpn_step")
    evaluating = config.eval_interval > 0 and pair.target_eval is not None \
                 and len(pair.target_eval) > 0
    diagnostics = tensor.get_diagnostics()

    while state.iteration < config.iterations:
        iteration = state.iteration
        diagnostics.Reset()
        try:
            with state.lock:
                generator = state.generator
                payloads, labels = shared_sampler.Draw(generator)
                target_payloads, _ = target_sampler.Draw(generator)
                terms = sdan_step(state, payloads, labels, target_payloads,
                                  config, iteration)
                if config.mode == AIDA:
                    # Without the hierarchical terms no batch is drawn,
                    # so the run follows the cdan trajectory exactly.
                    payloads = labels = ()
                    if config.RunsHierarchicalStep():
                        payloads, labels = source_sampler.Draw(generator)
                    hpn = hpn_step(state, payloads, labels, config,
                                   iteration, tracer)
                    terms.J_K, terms.H = hpn.J_K, hpn.H
                    terms.rewards = hpn.rewards
                state.iteration = iteration + 1
        except (TrainingDivergence, NonFiniteError) as exception:
            divergence = TrainingDivergence(
                iteration, getattr(exception, "parameter", None),
                state.checkpoint)
            raise divergence from exception
        row = _history_row(state, iteration, terms,
                           diagnostics.clamped_probabilities)
        state.history.append(row)
        tracer.Write("Iteration %d: total %.6f, J_y %.6f, J_d %.6f."
                     % (iteration, row["total"], row["J_y"], row["J_d"]),
                     "train")
        if terms.rewards is not None:
            tracer.Write("Rewards: R mean %.6f, max %.6f."
                         % (row["reward_R_mean"], row["reward_R_max"]),
                         "rewards")
        if diagnostics.clamped_probabilities:
            tracer.Warn("probability clamped", iteration=iteration,
                        count=diagnostics.clamped_probabilities)
        if evaluating and state.iteration % config.eval_interval == 0:
            state.curve.append(_curve_row(state, pair, row))
        if checkpoint_directory is not None \
           and config.checkpoint_interval > 0 \
           and state.iteration % config.checkpoint_interval == 0:
            path = os.path.join(checkpoint_directory,
                                CHECKPOINT_NAME % state.iteration)
            write_state(state, path)
    return state


def write_state(state, path):
    """Write 'state' as a checkpoint to 'path' and remember the path."""

    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    meta = {"config": state.config.GetArgumentsAsText(),
            "fingerprint": state.config.GetFingerprint(),
            "iteration": state.iteration,
            "rng": aida.get_random_state(state.generator),
            "history": state.history,
            "curve": state.curve}
    model_module.write_checkpoint(path, state.model, state.parents, meta)
    state.checkpoint = path


def read_config(meta):
    """Return the 'AidaConfig' stored in checkpoint metadata."""

    text = dict([aida.parse_assignment(a) for a in meta["config"]])
    return AidaConfig(**validate_arguments(AidaConfig, text))


def resume(path, pair, iterations=None):
    """Return the 'TrainState' stored in the checkpoint 'path'.

    'pair' -- The datasets of the run; their tree must match the
    checkpoint's.

    'iterations' -- If not 'None', the new total number of
    iterations.

    Passing the result to 'train' continues the run exactly where the
    checkpoint left it."""

    model, parents, meta = model_module.read_checkpoint(path)
    if model.tree.GetIdentifier() != pair.tree.GetIdentifier():
        raise model_module.CheckpointError(
            aida.error("invalid checkpoint", path=path,
                       reason="hierarchy mismatch"))
    model.tree = pair.tree
    config = read_config(meta)
    if iterations is not None:
        config = config.Copy(iterations=iterations)
    generator = aida.make_random(0)
    aida.set_random_state(generator, meta["rng"])
    if parents is None:
        parents = hierarchy.estimate_parents(model.head, pair.tree)
    state = TrainState(config, model, parents, generator,
                       meta["iteration"], meta["history"], meta["curve"])
    state.checkpoint = path
    return state

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
