########################################################################
#
# File:   model.py
# Date:   2026-03-08
#
# Contents:
#   The complete network and its checkpoint file.
#
# For license terms see the file COPYING.
#
########################################################################

"""The complete network and its checkpoint file.

A checkpoint is a NumPy '.npz' archive.  The member '__meta__' holds a
JSON document (as a 0-d unicode array):

  {"format": "aida-checkpoint", "version": 1,
   "encoder": {...EncoderSpec...}, "tree": <tree identifier>,
   "hierarchy": {...hierarchy document...}, ...}

Callers add further members to the document (the trainer stores the
configuration, the iteration, the random generator state and the
history).  Every other member is a float64 array: one per 'Parameter'
under its name, one per momentum buffer under 'momentum/<name>', and
one per parent vector under 'parent/<j>'."""

########################################################################
# Imports
########################################################################

import json

import numpy

import aida
from aida import config
from aida import layers
from aida.hierarchy import LabelTree, ParentParams

########################################################################
# Classes
########################################################################

class CheckpointError(aida.UserError):
    """A checkpoint file cannot be read or does not match."""

    kind = "checkpoint"



class AidaModel(object):
    """The encoder, classifier head and domain discriminator of one
    experiment.

    'spec' -- The 'EncoderSpec'.

    'tree' -- The 'LabelTree'.

    'encoder', 'head', 'discriminator' -- The layers.  The
    discriminator reads the conditioned features, whose width is
    'd * K'' or, when 'conditioned' is false, 'd'."""

    def __init__(self, spec, tree, generator, classifier_hidden=256,
                 discriminator_hidden=500, conditioned=True,
                 discriminator_activation="relu"):

        self.spec = spec
        self.tree = tree
        self.mask = tree.shared
        self.conditioned = conditioned
        self.classifier_hidden = classifier_hidden
        self.discriminator_hidden = discriminator_hidden
        self.discriminator_activation = discriminator_activation
        d = spec.GetFeatureWidth()
        self.encoder = layers.make_encoder(spec, generator)
        self.head = layers.ClassifierHead(d, classifier_hidden, tree.K,
                                          generator)
        if conditioned:
            width = d * self.mask.GetSharedCount()
        else:
            width = d
        self.discriminator = layers.DomainDiscriminator(
            width, discriminator_hidden, generator, discriminator_activation)


    def GetEncoderParameters(self):

        return self.encoder.GetParameters()


    def GetClassifierParameters(self):

        return self.head.GetParameters()


    def GetDiscriminatorParameters(self):

        return self.discriminator.GetParameters()


    def GetParameters(self):
        """Return every 'Parameter', encoder first, discriminator last."""

        return self.GetEncoderParameters() \
               + self.GetClassifierParameters() \
               + self.GetDiscriminatorParameters()


    def Encode(self, payloads):
        """Return the [B x d] features of 'payloads'."""

        return layers.encode(self.encoder, payloads)


    def Condition(self, f, g):
        """Return the discriminator input for features 'f' and shared
        prediction 'g'."""

        if not self.conditioned:
            return f
        return layers.condition(f, g, self.mask)


    def Predict(self, payloads, shared=True, batch_size=256):
        """Return the predicted class of each payload.

        'shared' -- If true, predict among the shared classes only.

        returns -- An integer array."""

        predictions = []
        for start in range(0, len(payloads), batch_size):
            f = self.Encode(payloads[start:start + batch_size])
            z = layers.classify_all(self.head, f)
            if shared:
                z = layers.mask_filter(z, self.mask)
            predictions.append(numpy.argmax(z.values, axis=1))
        if not predictions:
            return numpy.zeros(0, dtype=numpy.int64)
        return numpy.concatenate(predictions)


    def GetFeatures(self, payloads, batch_size=256):
        """Return the [n x d] features of 'payloads' as an array."""

        features = [self.Encode(payloads[start:start + batch_size]).values
                    for start in range(0, len(payloads), batch_size)]
        if not features:
            return numpy.zeros((0, self.spec.GetFeatureWidth()))
        return numpy.concatenate(features)


    def Copy(self):
        """Return an independent copy of this model.

        The copy shares no arrays with this model, so it can be read on
        another thread while training continues."""

        copy = AidaModel(self.spec, self.tree,
                         aida.make_random(0, "copy"),
                         self.classifier_hidden, self.discriminator_hidden,
                         self.conditioned, self.discriminator_activation)
        for mine, theirs in zip(self.GetParameters(), copy.GetParameters()):
            theirs.values[...] = mine.values
            theirs.momentum[...] = mine.momentum
        return copy


    def GetDescription(self):
        """Return the JSON-compatible construction arguments."""

        return {"encoder": self.spec.AsDictionary(),
                "tree": self.tree.GetIdentifier(),
                "hierarchy": self.tree.AsDocument(),
                "classifier_hidden": self.classifier_hidden,
                "discriminator_hidden": self.discriminator_hidden,
                "conditioned": self.conditioned,
                "discriminator_activation": self.discriminator_activation}

########################################################################
# Functions
########################################################################

def write_checkpoint(path, model, parents=None, meta=None):
    """Write 'model' to the checkpoint file 'path'.

    'parents' -- A 'ParentParams' to store, or 'None'.

    'meta' -- A JSON-compatible dictionary merged into the '__meta__'
    document."""

    document = {"format": config.checkpoint_format,
                "version": config.checkpoint_version}
    document.update(model.GetDescription())
    document.update(meta or {})
    arrays = {"__meta__": numpy.array(json.dumps(document, sort_keys=True))}
    for parameter in model.GetParameters():
        arrays[parameter.name] = parameter.values
        arrays["momentum/" + parameter.name] = parameter.momentum
    if parents is not None:
        for j, vector in enumerate(parents.vectors):
            arrays["parent/%d" % j] = vector
    with open(path, "wb") as file:
        numpy.savez(file, **arrays)


def read_checkpoint(path):
    """Read the checkpoint file 'path'.

    returns -- A triple '(model, parents, meta)': the restored
    'AidaModel' with its momentum buffers, the 'ParentParams' (or
    'None'), and the '__meta__' document.

    raises -- 'CheckpointError' if the file is not a checkpoint of a
    supported version or lacks a parameter."""

    try:
        with numpy.load(path, allow_pickle=False) as archive:
            arrays = dict([(name, archive[name]) for name in archive.files])
    except (OSError, ValueError) as exception:
        raise CheckpointError(aida.error("could not read file", path=path,
                                         reason=str(exception)))
    try:
        meta = json.loads(str(arrays.pop("__meta__")))
    except (KeyError, ValueError):
        raise CheckpointError(aida.error("invalid checkpoint", path=path,
                                         reason="no metadata"))
    if meta.get("format") != config.checkpoint_format \
       or meta.get("version") != config.checkpoint_version:
        raise CheckpointError(aida.error("invalid checkpoint", path=path,
                                         reason="unsupported format %r "
                                         "version %r"
                                         % (meta.get("format"),
                                            meta.get("version"))))
    tree = LabelTree.FromDocument(meta["hierarchy"])
    if tree.GetIdentifier() != meta["tree"]:
        raise CheckpointError(aida.error("invalid checkpoint", path=path,
                                         reason="hierarchy mismatch"))
    model = AidaModel(layers.EncoderSpec.FromDictionary(meta["encoder"]),
                      tree, aida.make_random(0, "checkpoint"),
                      meta["classifier_hidden"],
                      meta["discriminator_hidden"],
                      meta["conditioned"],
                      meta["discriminator_activation"])
    for parameter in model.GetParameters():
        for key, target in ((parameter.name, parameter.values),
                            ("momentum/" + parameter.name,
                             parameter.momentum)):
            if key not in arrays or arrays[key].shape != target.shape:
                raise CheckpointError(aida.error("invalid checkpoint",
                                                 path=path,
                                                 reason="bad member %s"
                                                 % key))
            target[...] = arrays[key]
    parents = None
    if "parent/0" in arrays:
        parents = ParentParams([arrays["parent/%d" % j]
                                for j in range(tree.G)])
    return (model, parents, meta)

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
