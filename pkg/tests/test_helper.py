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
import numpy as np

from mimeticpy.mimetic3d import Field3, FieldKind, GridSpec3, Material
from mimeticpy.utils import get_rng

PARAM_SEED = 1234

PARAM_OMEGA = 1.0
PARAM_DT = 0.1

GRID_TINY = GridSpec3(4, 4, 4, 0.25, 0.25, 0.25)
GRID_SMALL = GridSpec3(8, 8, 8)
GRID_SKEWED = GridSpec3(6, 8, 10, 0.5, 0.25, 1.0)

ALL_KINDS = list(FieldKind)

CONFIG_OSCILLATOR = {"scenario": "oscillator", "omega": 1.0, "dt": 0.1, "steps": 100}

CONFIG_MAXWELL = {
    "scenario": "maxwell3d",
    "grid": {"n": 6, "spacing": 1.0},
    "steps": 60,
    "seed": 7,
}


def unit_material(grid):
    return Material.uniform(grid)


def random_material(grid, seed=PARAM_SEED):
    return Material.random(grid, seed)


def random_field(kind, grid, seed=PARAM_SEED):
    return Field3.random(kind, grid, get_rng(seed))


def gaussian_line(n, width=0.1):
    """A Gaussian pulse on ``n`` sites of the unit interval."""
    x = np.arange(n) / n
    return np.exp(-(((x - 0.5) / width) ** 2))


def run_states(step, state, n_steps):
    """The state and the ``n_steps`` states following it."""
    states = [state]
    for _ in range(n_steps):
        states.append(step(states[-1]))
    return states


def relative_drift(values):
    values = np.asarray(values)
    return float(np.max(np.abs(values - values[0])) / abs(values[0]))


def conserved_drifts(step, conserved, state, n_steps, kinds=("C_n", "C_half")):
    """Relative drifts of conserved quantities over a run, without keeping the states."""
    previous, current = state, step(state)
    values = {kind: [conserved((previous, current), kind)] for kind in kinds}
    for _ in range(n_steps - 1):
        previous, current = current, step(current)
        for kind in kinds:
            values[kind].append(conserved((previous, current), kind))
    return {kind: relative_drift(series) for kind, series in values.items()}
