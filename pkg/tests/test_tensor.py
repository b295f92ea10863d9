########################################################################
#
# File:   test_tensor.py
# Date:   2026-03-14
#
# Contents:
#   Tests of the tape-based tensor operations.
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import math

import numpy
import pytest

import aida
from aida import tensor
from aida.gradcheck import finite_difference_check
from aida.tensor import Parameter, Tensor

########################################################################
# Functions
########################################################################

def random_parameter(generator, shape, name="p"):

    return Parameter(generator.normal(size=shape), name)

########################################################################
# Tests
########################################################################

class TestMatmul:

    def test_identity(self):

        result = tensor.matmul([[1.0, 0.0], [0.0, 1.0]], [[3.0], [4.0]])
        assert result.values.tolist() == [[3.0], [4.0]]


    def test_row_by_column(self):

        result = tensor.matmul([[1.0, 2.0]], [[3.0], [4.0]])
        assert result.values.tolist() == [[11.0]]


    def test_shape_mismatch(self):

        with pytest.raises(tensor.DimensionError):
            tensor.matmul(numpy.ones((2, 3)), numpy.ones((2, 3)))


    def test_gradient(self, generator):

        a = random_parameter(generator, (2, 3), "a")
        b = random_parameter(generator, (3, 4), "b")
        tensor.backward(tensor.sum(tensor.matmul(a, b)))
        expected = numpy.broadcast_to(b.values.sum(axis=1), (2, 3))
        assert numpy.allclose(a.grad, expected)
        a.ZeroGrad()
        b.ZeroGrad()
        error = finite_difference_check(
            lambda: tensor.sum(tensor.matmul(a, b)), [a, b])
        assert error < 1e-4



class TestSoftmax:

    def test_symmetric(self):

        assert tensor.softmax([0.0, 0.0]).values.tolist() == [0.5, 0.5]


    def test_closed_form(self):

        p = tensor.softmax([math.log(2.0), 0.0]).values
        assert p == pytest.approx([2.0 / 3.0, 1.0 / 3.0], abs=1e-15)


    def test_sentinel_entry(self):

        p = tensor.softmax([5.0, 5.0 - 1e9]).values
        assert p[0] == pytest.approx(1.0)
        assert p[1] < 1e-12


    def test_large_logits(self):

        p = tensor.softmax([1000.0, 0.0, -1000.0]).values
        assert numpy.all(numpy.isfinite(p))
        assert p[0] == 1.0


    def test_all_sentinel_row(self):

        z = numpy.array([[0.0, 1.0], [tensor.MASK_SENTINEL] * 2])
        with pytest.raises(tensor.DegenerateInputError):
            tensor.softmax(z)


    def test_scalar_input(self):

        with pytest.raises(tensor.DimensionError):
            tensor.softmax(3.0)


    def test_rows_sum_to_one(self, generator):

        z = generator.normal(scale=20.0, size=(200, 7))
        p = tensor.softmax(z).values
        assert numpy.all(numpy.abs(p.sum(axis=1) - 1.0) < 1e-9)
        assert numpy.all(p >= 0)


    def test_gradient(self, generator):

        z = random_parameter(generator, (3, 4), "z")
        weights = Tensor(generator.normal(size=(3, 4)))
        error = finite_difference_check(
            lambda: tensor.sum(tensor.mul(tensor.softmax(z), weights)), [z])
        assert error < 1e-4



class TestCrossEntropy:

    def test_perfect_prediction(self):

        assert tensor.cross_entropy([1.0, 0.0], 0).Item() == 0.0


    def test_uniform_prediction(self):

        loss = tensor.cross_entropy([0.5, 0.5], 1).Item()
        assert loss == pytest.approx(math.log(2.0), abs=1e-15)


    def test_batch_mean(self):

        p = [[0.5, 0.5], [0.25, 0.75]]
        loss = tensor.cross_entropy(p, [0, 1]).Item()
        expected = (math.log(2.0) - math.log(0.75)) / 2
        assert loss == pytest.approx(expected, abs=1e-15)


    def test_weights(self):

        p = [[0.5, 0.5], [0.25, 0.75]]
        loss = tensor.cross_entropy(p, [0, 1], [2.0, 0.0]).Item()
        assert loss == pytest.approx(math.log(2.0), abs=1e-15)


    def test_zero_probability_is_clamped(self):

        diagnostics = tensor.get_diagnostics()
        diagnostics.Reset()
        p = Parameter([1.0, 0.0], "p")
        loss = tensor.cross_entropy(p, 1)
        assert loss.Item() == pytest.approx(-math.log(tensor.PROBABILITY_FLOOR))
        assert diagnostics.clamped_probabilities == 1
        tensor.backward(loss)
        assert p.grad.tolist() == [0.0, 0.0]
        diagnostics.Reset()
        assert diagnostics.clamped_probabilities == 0


    def test_label_out_of_range(self):

        with pytest.raises(tensor.PreconditionError):
            tensor.cross_entropy([[0.5, 0.5]], [2])


    def test_composite_gradient(self, generator):

        z = random_parameter(generator, (5, 3), "z")
        labels = [0, 2, 1, 1, 0]
        error = finite_difference_check(
            lambda: tensor.cross_entropy(tensor.softmax(z), labels), [z])
        assert error < 1e-4



class TestOuterFlatten:

    def test_one_hot(self):

        result = tensor.outer_flatten([1.0, 0.0], [0.0, 1.0, 0.0])
        assert result.values.tolist() == [0, 1, 0, 0, 0, 0]


    def test_scalars(self):

        assert tensor.outer_flatten([2.0], [3.0]).values.tolist() == [6.0]


    def test_batch_layout(self, generator):

        f = generator.normal(size=(4, 3))
        g = generator.normal(size=(4, 2))
        result = tensor.outer_flatten(f, g).values
        for b in range(4):
            for i in range(3):
                for j in range(2):
                    assert result[b, i * 2 + j] == f[b, i] * g[b, j]


    def test_mismatched_batches(self):

        with pytest.raises(tensor.DimensionError):
            tensor.outer_flatten(numpy.ones((2, 3)), numpy.ones((3, 2)))


    def test_gradient(self, generator):

        f = random_parameter(generator, (3, 4), "f")
        g = random_parameter(generator, (3, 2), "g")
        weights = Tensor(generator.normal(size=(3, 8)))
        error = finite_difference_check(
            lambda: tensor.sum(tensor.mul(tensor.outer_flatten(f, g),
                                          weights)), [f, g])
        assert error < 1e-4



class TestMaxOverTime:

    def test_columns(self):

        result = tensor.max_over_time([[1.0, 5.0], [3.0, 2.0]])
        assert result.values.tolist() == [3.0, 5.0]


    def test_single_step(self):

        assert tensor.max_over_time([[4.0, -1.0]]).values.tolist() \
               == [4.0, -1.0]


    def test_ties_go_to_first_step(self):

        h = Parameter([[1.0, 2.0], [1.0, 0.0]], "h")
        tensor.backward(tensor.sum(tensor.max_over_time(h)))
        assert h.grad.tolist() == [[1.0, 1.0], [0.0, 0.0]]


    def test_empty_sequence(self):

        with pytest.raises(tensor.PreconditionError):
            tensor.max_over_time(numpy.zeros((0, 3)))


    def test_gradient(self, generator):

        h = random_parameter(generator, (5, 3), "h")
        weights = Tensor([1.0, -2.0, 0.5])
        error = finite_difference_check(
            lambda: tensor.sum(tensor.mul(tensor.max_over_time(h),
                                          weights)), [h])
        assert error < 1e-4



class TestGradReverse:

    def test_identity_forward(self):

        x = Parameter([1.0, 2.0], "x")
        assert tensor.grad_reverse(x, 1.0).values.tolist() == [1.0, 2.0]


    def test_sign_flip(self):

        x = Parameter([1.0, 2.0], "x")
        tensor.backward(tensor.sum(tensor.grad_reverse(x, 1.0)))
        assert x.grad.tolist() == [-1.0, -1.0]


    def test_zero_coefficient(self):

        x = Parameter([1.0, 2.0], "x")
        tensor.backward(tensor.sum(tensor.grad_reverse(x, 0.0)))
        assert numpy.all(x.grad == 0)


    def test_double_reversal(self):

        x = Parameter([1.0, 2.0], "x")
        y = tensor.grad_reverse(tensor.grad_reverse(x, 2.0), 3.0)
        tensor.backward(tensor.sum(y))
        assert x.grad.tolist() == [6.0, 6.0]


    def test_negative_coefficient(self):

        with pytest.raises(tensor.PreconditionError):
            tensor.grad_reverse([1.0], -0.5)



class TestTape:

    def test_accumulation(self):

        x = Parameter([3.0], "x")
        tensor.backward(tensor.sum(tensor.add(x, x)))
        assert x.grad.tolist() == [2.0]


    def test_gradients_add_up_across_calls(self):

        x = Parameter([3.0], "x")
        tensor.backward(tensor.sum(tensor.square(x)))
        tensor.backward(tensor.sum(tensor.square(x)))
        assert x.grad.tolist() == [12.0]


    def test_constant_stops_gradient(self):

        x = Parameter([3.0], "x")
        y = tensor.mul(tensor.constant(x), x)
        assert tensor.constant(x).IsConstant()
        tensor.backward(tensor.sum(y))
        assert x.grad.tolist() == [3.0]


    def test_constant_inputs_are_not_recorded(self):

        assert tensor.add([1.0], [2.0]).IsConstant()


    def test_non_scalar_output(self):

        x = Parameter([1.0, 2.0], "x")
        with pytest.raises(tensor.DimensionError):
            tensor.backward(tensor.scale(x, 2.0))


    def test_non_finite_result(self):

        with pytest.raises(tensor.NonFiniteError) as info:
            tensor.log([-1.0])
        assert isinstance(info.value, aida.AidaException)


    def test_elementwise_gradients(self, generator):

        x = Parameter(generator.uniform(0.5, 2.0, size=(3, 2)), "x")
        y = Parameter(generator.normal(size=(2,)), "y")

        def build():
            h = tensor.add(tensor.mul(tensor.tanh(x), y),
                           tensor.sigmoid(tensor.sub(x, y)))
            h = tensor.add(h, tensor.log(x))
            h = tensor.add(h, tensor.exp(tensor.scale(x, -1.0)))
            return tensor.mean(tensor.square(h))

        assert finite_difference_check(build, [x, y]) < 1e-4


    def test_structural_gradients(self, generator):

        x = Parameter(generator.normal(size=(4, 3)), "x")
        table = Parameter(generator.normal(size=(5, 3)), "table")

        def build():
            rows = tensor.concat([tensor.slice_rows(x, 1, 3),
                                  tensor.embed(table, [0, 4, 4])], axis=0)
            columns = tensor.take_columns(tensor.transpose(rows), [0, 2, 2])
            return tensor.sum(tensor.square(
                tensor.reshape(columns, (columns.shape[0] * 3,))))

        assert finite_difference_check(build, [x, table]) < 1e-4


    def test_mask_fill(self):

        z = Parameter([[1.0, 2.0, 3.0]], "z")
        filled = tensor.mask_fill(z, [True, False, True])
        assert filled.values.tolist() == [[1.0, tensor.MASK_SENTINEL, 3.0]]
        tensor.backward(tensor.sum(tensor.scale(filled, 1e-9)))
        assert z.grad[0, 1] == 0.0

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
