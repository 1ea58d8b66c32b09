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
"""Tests for the Maxwell scheme."""

import numpy as np

import tests as _test
from mimeticpy import mimetic3d
from mimeticpy.diagnostics import stability_probe
from mimeticpy.exceptions import InvalidWindowError, SignatureError
from mimeticpy.mimetic3d import Field3, FieldKind, GridSpec3, Material
from mimeticpy.schemes import maxwell3d
from mimeticpy.utils import get_rng
from tests.test_helper import *


def yee_step(E, H, dt, spacing):
    """One Yee update on a periodic lattice, written out component by component."""
    dx, dy, dz = spacing
    ex, ey, ez = E
    hx, hy, hz = H

    def back(a, axis):
        return a - np.roll(a, 1, axis)

    def fwd(a, axis):
        return np.roll(a, -1, axis) - a

    ex_new = ex + dt * (back(hz, 1) / dy - back(hy, 2) / dz)
    ey_new = ey + dt * (back(hx, 2) / dz - back(hz, 0) / dx)
    ez_new = ez + dt * (back(hy, 0) / dx - back(hx, 1) / dy)

    hx_new = hx - dt * (fwd(ez_new, 1) / dy - fwd(ey_new, 2) / dz)
    hy_new = hy - dt * (fwd(ex_new, 2) / dz - fwd(ez_new, 0) / dx)
    hz_new = hz - dt * (fwd(ey_new, 0) / dx - fwd(ex_new, 1) / dy)
    return (ex_new, ey_new, ez_new), (hx_new, hy_new, hz_new)


class MaxwellTest(_test.TestCase):
    def _start(self, grid, mat, factor=0.9, seed=PARAM_SEED):
        dt = factor * maxwell3d.cfl_estimate(mat, None, grid)
        return maxwell3d.init_h_half(maxwell3d.solenoidal_field(grid, mat, seed), None, mat, dt=dt)

    def test_yee_bitwise(self):
        grid = GRID_TINY
        rng = get_rng(PARAM_SEED)
        E = Field3.random(FieldKind.EDGE, grid, rng)
        H = Field3.random(FieldKind.DUAL_EDGE, grid, rng)
        dt = 0.05
        state = maxwell3d.MaxwellState(E, H, Material.electromagnetic(grid), 0, dt)

        new = maxwell3d.leapfrog_step(state)
        E_yee, H_yee = yee_step(E.components, H.components, dt, grid.spacing)

        for computed, expected in zip(new.E.components + new.H_half.components, E_yee + H_yee):
            np.testing.assert_array_equal(computed, expected)

    def test_state_validation(self):
        mat = unit_material(GRID_TINY)
        E = Field3.zeros(FieldKind.EDGE, GRID_TINY)
        with self.assertRaises(SignatureError):
            maxwell3d.MaxwellState(E, Field3.zeros(FieldKind.EDGE, GRID_TINY), mat)
        with self.assertRaises(SignatureError):
            maxwell3d.init_h_half(Field3.zeros(FieldKind.FACE, GRID_TINY), None)

    def test_materials(self):
        grid = GRID_TINY
        eps = [np.full(grid.shape, 2.0)] * 3
        state = maxwell3d.init_h_half(Field3.zeros(FieldKind.EDGE, grid), None, eps=eps, mu=4.0)
        np.testing.assert_array_equal(state.eps[0], eps[0])
        np.testing.assert_array_equal(state.mu[2], np.full(grid.shape, 4.0))

    def test_cfl_estimate(self):
        expected = 2.0 / np.sqrt(mimetic3d.fourier_symbol_max(GRID_SMALL))
        self.assertRelativeClose(maxwell3d.cfl_estimate(1.0, 1.0, GRID_SMALL), expected, rel=1e-6)
        slower = maxwell3d.cfl_estimate(4.0, 1.0, GRID_SMALL)
        self.assertRelativeClose(slower, 2 * expected, rel=1e-6)

    def test_conserved(self):
        for grid, mat in (
            (GridSpec3(16, 16, 16), unit_material(GridSpec3(16, 16, 16))),
            (GridSpec3(16, 16, 16), random_material(GridSpec3(16, 16, 16))),
        ):
            drifts = conserved_drifts(maxwell3d.leapfrog_step, maxwell3d.conserved, self._start(grid, mat), 500)
            for kind, drift in drifts.items():
                self.assertLessEqual(drift, 1e-12, msg=kind)

    def test_divergences(self):
        mat = random_material(GRID_SMALL)
        state = self._start(GRID_SMALL, mat)
        reference = maxwell3d.divergences(state)
        self.assertLessEqual(reference.electric.max_abs(), 1e-12)
        for _ in range(500):
            state = maxwell3d.leapfrog_step(state)
        electric, magnetic = maxwell3d.divergence_diagnostics(state, reference)
        self.assertLessEqual(electric, 1e-11)
        self.assertLessEqual(magnetic, 1e-11)

    def test_gradient_field(self):
        grid = GRID_SMALL
        E = maxwell3d.gradient_field(grid, PARAM_SEED)
        self.assertLessEqual(mimetic3d.apply_diff("R", E).max_abs(), 1e-13)
        state = maxwell3d.init_h_half(E, None, dt=0.1)
        self.assertGreater(maxwell3d.divergences(state).electric.max_abs(), 1e-3)
        self.assertLessEqual(state.H_half.max_abs(), 1e-14)
        electric, magnetic = maxwell3d.divergence_diagnostics(maxwell3d.leapfrog_step(state), state)
        self.assertLessEqual(electric, 1e-13)
        self.assertLessEqual(magnetic, 1e-13)

    def test_instability(self):
        grid = GridSpec3(6, 6, 6)
        mat = unit_material(grid)
        stable = stability_probe(maxwell3d.leapfrog_step, self._start(grid, mat, 0.9), 500)
        self.assertTrue(stable.stable)
        unstable = stability_probe(maxwell3d.leapfrog_step, self._start(grid, mat, 1.05), 500)
        self.assertFalse(unstable.stable)
        self.assertLess(unstable.step, 500)

    def test_second_order_residual(self):
        mat = random_material(GRID_TINY)
        state = self._start(GRID_TINY, mat)
        states = run_states(maxwell3d.leapfrog_step, state, 2)
        scale = mimetic3d.norm(FieldKind.EDGE, state.E, mat) / state.dt**2
        self.assertLessEqual(maxwell3d.second_order_residual(states), 1e-12 * scale)

    def test_unknown_kind(self):
        state = self._start(GRID_TINY, unit_material(GRID_TINY))
        with self.assertRaises(InvalidWindowError):
            maxwell3d.conserved([state, maxwell3d.leapfrog_step(state)], "C_poynting")
