########################################################################
#
# File:   hierarchy.py
# Date:   2026-03-06
#
# Contents:
#   The label tree, sibling sets, hierarchy penalty and parent
#   estimation.
#
# For license terms see the file COPYING.
#
########################################################################

"""The two-level label tree.

Every leaf class has exactly one parent.  A leaf is shared if it occurs
in both domains.  The sibling shared set of a leaf is the set of shared
leaves under the same parent; by default a shared leaf belongs to its
own set.  The sparse size of a leaf is the smallest source count in its
sibling shared set, or 'SPARSE_SIZE_INFINITE' if the set is empty.

The hierarchy penalty pulls every class vector of the classifier toward
the vector of its parent; the parent vectors are re-estimated as the
mean of their children after each penalty step, which is the exact
minimizer of the penalty for fixed class vectors."""

########################################################################
# Imports
########################################################################

import json
import math

import numpy

import aida
from aida import tensor
from aida.layers import SharedMask

########################################################################
# Constants
########################################################################

SPARSE_SIZE_INFINITE = math.inf
"""The sparse size of a leaf with no shared siblings.

'exp(-SPARSE_SIZE_INFINITE * tau)' is exactly zero for every positive
'tau'."""

PRIOR_SCALE = 1.0
"""The scale of the Gaussian prior relating each class vector to its
parent.  It documents the model; no computation reads it."""

########################################################################
# Classes
########################################################################

class HierarchyError(aida.UserError):
    """The label tree is malformed."""

    kind = "hierarchy"



class LabelTree(object):
    """An immutable two-level label tree.

    'leaves' -- The leaf names; list position is the class index.

    'parent_names' -- The parent names; list position is the parent
    index.

    'parents' -- For each leaf, the index of its parent.

    'shared' -- A 'SharedMask'.

    'counts' -- For each leaf, the number of source examples, or
    'None' while unknown."""

    def __init__(self, leaves, parent_names, parents, shared, counts=None):

        self.leaves = tuple(leaves)
        self.parent_names = tuple(parent_names)
        self.parents = tuple([int(p) for p in parents])
        if not isinstance(shared, SharedMask):
            shared = SharedMask(shared)
        self.shared = shared
        if len(self.parents) != len(self.leaves) \
           or len(self.shared) != len(self.leaves):
            raise HierarchyError(aida.error("tree size mismatch",
                                            leaves=len(self.leaves)))
        for leaf, parent in zip(self.leaves, self.parents):
            if not 0 <= parent < len(self.parent_names):
                raise HierarchyError(aida.error("unknown parent",
                                                leaf=leaf, parent=parent))
        if len(set(self.leaves)) != len(self.leaves):
            raise HierarchyError(aida.error("duplicate leaf",
                                            leaf=[l for l in self.leaves
                                                  if self.leaves.count(l) > 1][0]))
        if counts is not None:
            counts = tuple([int(c) for c in counts])
            if len(counts) != len(self.leaves) or min(counts) < 0:
                raise HierarchyError(aida.error("invalid counts"))
        self.counts = counts


    @property
    def K(self):
        """The number of leaf classes."""

        return len(self.leaves)


    @property
    def G(self):
        """The number of parents."""

        return len(self.parent_names)


    def GetParent(self, k):

        return self.parents[k]


    def GetChildren(self, j):
        """Return the leaf indices whose parent is 'j', ascending."""

        return [k for k in range(self.K) if self.parents[k] == j]


    def IsShared(self, k):

        return self.shared.IsShared(k)


    def GetSharedIndices(self):

        return [int(k) for k in self.shared.GetSharedIndices()]


    def GetLeafIndex(self, name):
        """Return the class index of the leaf called 'name'.

        raises -- 'ValueError' if there is no such leaf."""

        return self.leaves.index(name)


    def WithCounts(self, counts):
        """Return a copy of this tree with per-leaf source 'counts'."""

        return LabelTree(self.leaves, self.parent_names, self.parents,
                         self.shared, counts)


    def GetIdentifier(self):
        """Return a fingerprint of the structure (counts excluded)."""

        return aida.fingerprint(json.dumps(self.AsDocument(),
                                           sort_keys=False))


    def AsDocument(self):
        """Return the JSON-compatible hierarchy document.

        The document maps each leaf name, in class order, to an object
        with members 'parent' and 'shared'."""

        document = {}
        for k, leaf in enumerate(self.leaves):
            document[leaf] = {"parent": self.parent_names[self.parents[k]],
                              "shared": bool(self.IsShared(k))}
        return document


    @classmethod
    def FromDocument(cls, document):
        """Build a tree from a hierarchy document.

        Parents are indexed in order of first appearance.

        raises -- 'HierarchyError' naming the offending leaf if an entry
        is malformed."""

        if not isinstance(document, dict) or not document:
            raise HierarchyError(aida.error("invalid hierarchy document"))
        leaves, parent_names, parents, shared = [], [], [], []
        for leaf, entry in document.items():
            if not isinstance(entry, dict) \
               or not isinstance(entry.get("parent"), str) \
               or not isinstance(entry.get("shared"), bool):
                raise HierarchyError(aida.error("invalid hierarchy entry",
                                                leaf=leaf))
            if entry["parent"] not in parent_names:
                parent_names.append(entry["parent"])
            leaves.append(leaf)
            parents.append(parent_names.index(entry["parent"]))
            shared.append(entry["shared"] and 1 or 0)
        if not any(shared):
            raise HierarchyError(aida.error("no shared leaf"))
        return cls(leaves, parent_names, parents, shared)



class ParentParams(object):
    """The parent vectors.

    'vectors' -- A [G x D] array; row j is the vector of parent j.  It
    is a constant with respect to differentiation.

    'prior_scale' -- See 'PRIOR_SCALE'."""

    def __init__(self, vectors, prior_scale=PRIOR_SCALE):

        self.vectors = numpy.array(vectors, dtype=numpy.float64)
        self.prior_scale = prior_scale

########################################################################
# Functions
########################################################################

def sibling_shared_set(tree, y, self_inclusion=True):
    """Return the shared leaves under the parent of 'y'.

    'self_inclusion' -- If true, a shared 'y' is a member of its own
    set; otherwise 'y' is always excluded.

    returns -- A 'frozenset' of leaf indices."""

    parent = tree.GetParent(y)
    members = set([k for k in tree.GetChildren(parent)
                   if tree.IsShared(k) and k != y])
    if self_inclusion and tree.IsShared(y):
        members.add(y)
    return frozenset(members)


def sparse_size(tree, y, self_inclusion=True):
    """Return the smallest source count in the sibling shared set of
    'y', or 'SPARSE_SIZE_INFINITE' if the set is empty.

    'tree' -- A 'LabelTree' with counts."""

    if tree.counts is None:
        raise HierarchyError(aida.error("tree without counts"))
    members = sibling_shared_set(tree, y, self_inclusion)
    if not members:
        return SPARSE_SIZE_INFINITE
    return min([tree.counts[k] for k in members])


def _class_vectors(head):

    if hasattr(head, "GetClassVectors"):
        return head.GetClassVectors()
    return tensor.as_tensor(head)


def hierarchy_penalty(head, parents, tree):
    """Return half the summed squared distance of each class vector to
    the vector of its parent.

    'head' -- A 'ClassifierHead', or the [K x D] class vector tensor.

    'parents' -- A 'ParentParams'.  It is held constant.

    returns -- A scalar 'Tensor' differentiable with respect to the
    class vectors."""

    vectors = _class_vectors(head)
    targets = parents.vectors[list(tree.parents)]
    if targets.shape != vectors.shape:
        raise tensor.DimensionError(aida.error("shape mismatch",
                                               operation="hierarchy_penalty",
                                               left=vectors.shape,
                                               right=parents.vectors.shape))
    return tensor.scale(tensor.sum(tensor.square(
        tensor.sub(vectors, tensor.Tensor(targets)))), 0.5)


def estimate_parents(head, tree, prior_scale=PRIOR_SCALE):
    """Return the parent vectors that minimize the hierarchy penalty for
    the current class vectors: the mean of each parent's children.

    raises -- 'HierarchyError' if a parent has no children."""

    values = _class_vectors(head).values
    vectors = numpy.empty((tree.G, values.shape[1]))
    for j in range(tree.G):
        children = tree.GetChildren(j)
        if not children:
            raise HierarchyError(aida.error("childless parent",
                                            parent=tree.parent_names[j]))
        vectors[j] = values[children].mean(axis=0)
    return ParentParams(vectors, prior_scale)


def load_hierarchy(path):
    """Read a hierarchy document from the file 'path'."""

    try:
        with open(path, "r") as file:
            document = json.load(file)
    except (OSError, ValueError) as exception:
        raise HierarchyError(aida.error("could not read file", path=path,
                                        reason=str(exception)))
    return LabelTree.FromDocument(document)


def write_hierarchy(tree, path):
    """Write the hierarchy document of 'tree' to 'path'."""

    with open(path, "w") as file:
        json.dump(tree.AsDocument(), file, indent=2)
        file.write("\n")

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
