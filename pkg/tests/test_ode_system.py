# -*- coding: utf-8 -*-
# Copyright (C) 2024 The mimeticpy Authors
#
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not
# use this file except in compliance with the License. You may obtain a copy of
# the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations under
# the License.
#
"""Tests for the skew ODE system."""

import numpy as np

import tests as _test
from mimeticpy.exceptions import InvalidWindowError, PreconditionError, ShapeError
from mimeticpy.schemes import ode_system, oscillator
from mimeticpy.utils import get_rng
from tests.test_helper import *


class SkewOperatorTest(_test.TestCase):
    def setUp(self):
        self.op = ode_system.random_operator(2, 3, PARAM_SEED)

    def test_shapes(self):
        self.assertEqual((self.op.rows, self.op.cols), (2, 3))
        with self.assertRaises(ShapeError):
            self.op.apply(np.zeros(2))
        with self.assertRaises(ShapeError):
            self.op.adjoint(np.zeros(3))
        with self.assertRaises(ShapeError):
            ode_system.SkewOperator([1.0, 2.0])

    def test_read_only(self):
        with self.assertRaises(ValueError):
            self.op.matrix[0, 0] = 1.0

    def test_adjoint_identity(self):
        rng = get_rng(3)
        for _ in range(10):
            f, g = rng.standard_normal(2), rng.standard_normal(3)
            lhs = float(np.dot(self.op.apply(g), f))
            rhs = float(np.dot(g, self.op.adjoint(f)))
            scale = np.linalg.norm(self.op.matrix) * np.linalg.norm(f) * np.linalg.norm(g)
            self.assertLessEqual(abs(lhs - rhs), 1e-13 * scale)

    def test_rank(self):
        op = ode_system.random_operator(3, 3, PARAM_SEED, rank=2)
        self.assertEqual(np.linalg.matrix_rank(op.matrix), 2)
        with self.assertRaises(PreconditionError):
            ode_system.random_operator(3, 3, PARAM_SEED, rank=4)

    def test_operator_norm(self):
        expected = np.linalg.norm(self.op.matrix, 2)
        self.assertRelativeClose(ode_system.operator_norm(self.op), expected, rel=1e-6)
        zero = ode_system.SkewOperator(np.zeros((2, 2)))
        self.assertEqual(ode_system.operator_norm(zero), 0.0)


class SkewSchemeTest(_test.TestCase):
    def setUp(self):
        self.op = ode_system.random_operator(2, 3, PARAM_SEED)
        self.dt = 0.5 / np.linalg.norm(self.op.matrix, 2)
        rng = get_rng(11)
        self.state = ode_system.init_g_half(rng.standard_normal(2), rng.standard_normal(3), self.op, self.dt)

    def test_init_g_half(self):
        f0, g0 = np.array([1.0, -1.0]), np.array([0.5, 0.0, 2.0])
        state = ode_system.init_g_half(f0, g0, self.op, 0.2)
        np.testing.assert_array_equal(state.g_half, g0 - 0.1 * (self.op.matrix.T @ f0))
        np.testing.assert_array_equal(state.f, f0)

    def test_step(self):
        new = ode_system.leapfrog_step(self.state, self.op)
        f = self.state.f + self.dt * (self.op.matrix @ self.state.g_half)
        g = self.state.g_half + self.dt * -(self.op.matrix.T @ f)
        np.testing.assert_array_equal(new.f, f)
        np.testing.assert_array_equal(new.g_half, g)
        self.assertEqual(new.n, 1)

    def test_state_shape_mismatch(self):
        with self.assertRaises(ShapeError):
            ode_system.leapfrog_step(ode_system.SkewState(np.zeros(3), np.zeros(3)), self.op)

    def test_conserved(self):
        states = list(ode_system.trajectory(self.state, self.op, 10000))
        for kind in ("C_n", "C_half"):
            values = np.array([ode_system.conserved(states[k - 1 : k + 1], self.op, kind) for k in range(1, 10001)])
            self.assertLessEqual(np.max(np.abs(values - values[0])) / abs(values[0]), 1e-12, msg=kind)

    def test_conserved_rank_deficient(self):
        op = ode_system.random_operator(3, 3, PARAM_SEED, rank=1)
        dt = 0.5 / ode_system.operator_norm(op)
        rng = get_rng(5)
        state = ode_system.init_g_half(rng.standard_normal(3), rng.standard_normal(3), op, dt)
        states = list(ode_system.trajectory(state, op, 10000))
        for kind in ("C_n", "C_half"):
            values = np.array([ode_system.conserved(states[k - 1 : k + 1], op, kind) for k in range(1, 10001)])
            self.assertLessEqual(np.max(np.abs(values - values[0])) / abs(values[0]), 1e-12, msg=kind)

    def test_continuous_quantity_not_conserved(self):
        states = list(ode_system.trajectory(self.state, self.op, 200))
        values = [ode_system.conserved(states[k - 1 : k + 1], self.op, "C_continuous") for k in range(1, 201)]
        self.assertGreater(max(values) - min(values), 1e-8)
        self.assertGreater(ode_system.conserved(states[:2], self.op, "E_energy"), 0.0)

    def test_second_order_residual(self):
        states = list(ode_system.trajectory(self.state, self.op, 3))
        scale = np.linalg.norm(self.state.f) + np.linalg.norm(self.state.g_half)
        for field in ("f", "g"):
            residual = ode_system.second_order_residual(states[:3], self.op, field)
            self.assertLessEqual(residual, 1e-10 * scale / self.dt**2)
        with self.assertRaises(ValueError):
            ode_system.second_order_residual(states[:3], self.op, "h")

    def test_unknown_kind(self):
        states = list(ode_system.trajectory(self.state, self.op, 1))
        with self.assertRaises(InvalidWindowError):
            ode_system.conserved(states, self.op, "C_everything")


class SkewExamplesTest(_test.TestCase):
    def test_matches_oscillator(self):
        omega, dt = 1.3, 0.2
        op = ode_system.SkewOperator([[omega]])
        state = ode_system.SkewState(np.array([1.0]), np.array([0.4]), 0, dt)
        osc = oscillator.OscState(1.0, 0.4, dt=dt, omega=omega)
        states = list(ode_system.trajectory(state, op, 50))
        osc_states = run_states(oscillator.leapfrog_step, osc, 50)
        for skew, expected in zip(states, osc_states):
            self.assertEqual(skew.f[0], expected.u)
            self.assertEqual(skew.g_half[0], expected.v_half)
        for kind in ("C_n", "C_half"):
            value = ode_system.conserved(states[9:11], op, kind)
            self.assertRelativeClose(value, 2 * oscillator.conserved(osc_states[9:11], kind), rel=1e-15)

    def test_zero_operator(self):
        op = ode_system.SkewOperator(np.zeros((2, 3)))
        f0, g0 = np.array([1.0, -2.0]), np.array([0.5, 0.25, 3.0])
        state = ode_system.init_g_half(f0, g0, op, 0.1)
        for later in ode_system.trajectory(state, op, 100):
            np.testing.assert_array_equal(later.f, f0)
            np.testing.assert_array_equal(later.g_half, g0)

    def test_operator_norm_examples(self):
        self.assertAlmostEqual(ode_system.operator_norm(ode_system.SkewOperator([[3.0]])), 3.0, delta=1e-12)
        diagonal = ode_system.SkewOperator([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        self.assertAlmostEqual(ode_system.operator_norm(diagonal), 2.0, delta=1e-8)

    def test_positive_and_bounded(self):
        op = ode_system.random_operator(2, 3, PARAM_SEED)
        norm = np.linalg.norm(op.matrix, 2)
        dt = 1.5 / norm
        rng = get_rng(7)
        state = ode_system.init_g_half(rng.standard_normal(2), rng.standard_normal(3), op, dt)
        initial = np.linalg.norm(state.f) + np.linalg.norm(state.g_half)
        states = list(ode_system.trajectory(state, op, 10000))
        factor = 1 - (dt * norm / 2) ** 2
        for k in range(1, 10001):
            earlier, later = states[k - 1], states[k]
            f_avg = (earlier.f + later.f) / 2
            value = ode_system.conserved(states[k - 1 : k + 1], op, "C_half")
            bound = np.dot(f_avg, f_avg) + factor * np.dot(earlier.g_half, earlier.g_half)
            self.assertGreaterEqual(value, bound - 1e-12 * value)
            self.assertGreater(ode_system.conserved(states[k - 1 : k + 1], op, "C_n"), 0.0)
            self.assertLessEqual(np.linalg.norm(later.f) + np.linalg.norm(later.g_half), 10 * initial)

    def test_corrupted_residual(self):
        op = ode_system.random_operator(2, 3, PARAM_SEED)
        dt = 0.5 / np.linalg.norm(op.matrix, 2)
        rng = get_rng(11)
        state = ode_system.init_g_half(rng.standard_normal(2), rng.standard_normal(3), op, dt)
        first, middle, last = list(ode_system.trajectory(state, op, 2))
        bump = np.array([1e-3, 0.0])
        corrupted = ode_system.SkewState(middle.f + bump, middle.g_half, middle.n, middle.dt)

        expected = np.linalg.norm(-2 / dt**2 * bump + op.matrix @ (op.matrix.T @ bump))
        residual = ode_system.second_order_residual([first, corrupted, last], op)
        self.assertRelativeClose(residual, expected, rel=1e-6)
