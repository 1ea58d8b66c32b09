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
"""Tests for the runnable scenarios."""

import numpy as np

import tests as _test
from mimeticpy import scenarios
from mimeticpy.exceptions import ConfigError, NumericOverflowError, ScenarioNotFound
from tests.test_helper import *


def run(config):
    params = dict(config)
    scenario = scenarios.get_scenario_by_name(params.pop("scenario"))
    return scenario(scenario.validate(params)).run()


class ScenarioLookupTest(_test.TestCase):
    def test_scenario_by_name(self):
        for name in scenarios._NAME_TO_SCENARIO:
            self.assertEqual(scenarios.get_scenario_by_name(name).name, name)
        self.assertIs(scenarios.get_scenario_by_name("Oscillator"), scenarios.Oscillator)

        with self.assertRaises(ScenarioNotFound):
            scenarios.get_scenario_by_name("oscilator")
        with self.assertRaises(ScenarioNotFound):
            scenarios.get_scenario_by_name(None)


class ValidateTest(_test.TestCase):
    def test_defaults(self):
        params = scenarios.Maxwell3D.validate({})
        self.assertEqual(params["steps"], 1000)
        self.assertEqual(params["grid"], {"n": [16, 16, 16], "spacing": [1.0, 1.0, 1.0]})
        self.assertEqual(params["materials"], {"name": "constant", "eps": 1.0, "mu": 1.0})
        self.assertIsNone(params["dt"])

    def test_key_paths(self):
        cases = [
            ({"omgea": 1.0}, "omgea"),
            ({"omega": -1.0}, "omega"),
            ({"steps": 1.5}, "steps"),
            ({"steps": True}, "steps"),
            ({"scheme": "euler"}, "scheme"),
        ]
        for params, path in cases:
            with self.assertRaises(ConfigError) as ctx:
                scenarios.Oscillator.validate(params)
            self.assertEqual(ctx.exception.path, path)

    def test_nested_paths(self):
        cases = [
            ({"grid": {"m": 4}}, "grid.m"),
            ({"grid": {"n": [4, 4]}}, "grid.n"),
            ({"grid": {"n": [4, 1, 4]}}, "grid.n[1]"),
            ({"materials": {"name": "anisotropic"}}, "materials.name"),
            ({"materials": {"name": "random", "low": 0.0}}, "materials.low"),
            ({"initial": "solenoidal"}, "initial"),
        ]
        for params, path in cases:
            with self.assertRaises(ConfigError) as ctx:
                scenarios.Maxwell3D.validate(params)
            self.assertEqual(ctx.exception.path, path)

    def test_dt_and_cfl_factor(self):
        with self.assertRaises(ConfigError) as ctx:
            scenarios.Wave1D.validate({"dt": 0.001, "cfl_factor": 0.5})
        self.assertEqual(ctx.exception.path, "cfl_factor")

    def test_cfl_warning(self):
        with self.assertWarns(UserWarning):
            scenarios.Wave1D.validate({"cfl_factor": 1.5})


class ScenarioRunTest(_test.TestCase):
    def test_oscillator(self):
        result = run(CONFIG_OSCILLATOR)
        self.assertEqual(result.dt, 0.1)
        self.assertEqual(len(result.series), 101)
        np.testing.assert_array_equal(result.series.steps, np.arange(101))
        for label in ("C_n", "C_half"):
            self.assertDriftBelow(result.series, label, 1e-12)

    def test_oscillator_schemes(self):
        for scheme, labels in (("second_order", ("C_secondorder",)), ("crank_nicolson", ("C_simple",))):
            result = run(dict(CONFIG_OSCILLATOR, scheme=scheme))
            self.assertEqual(len(result.series), 101)
            for label in labels:
                self.assertDriftBelow(result.series, label, 1e-12)

    def test_oscillator_default_step(self):
        result = run({"scenario": "oscillator", "omega": 2.0, "steps": 10})
        self.assertEqual(result.dt, 0.9)

    def test_zero_steps(self):
        result = run(dict(CONFIG_OSCILLATOR, steps=0))
        self.assertEqual(len(result.series), 1)

    def test_odesys(self):
        for rank in (None, 1):
            result = run({"scenario": "odesys", "rows": 3, "cols": 3, "rank": rank, "steps": 500})
            for label in ("C_n", "C_half"):
                self.assertDriftBelow(result.series, label, 1e-12)

    def test_wave1d(self):
        result = run({"scenario": "wave1d", "n_sites": 64, "steps": 200})
        self.assertAlmostEqual(result.dt, 0.9 / 64)
        for label in ("C_n", "C_half"):
            self.assertDriftBelow(result.series, label, 1e-12)

    def test_scalarwave3d(self):
        for starred in (False, True):
            config = {
                "scenario": "scalarwave3d",
                "grid": {"n": 6},
                "starred": starred,
                "materials": {"name": "random"},
                "steps": 50,
            }
            result = run(config)
            for label in ("C_n", "C_half"):
                self.assertDriftBelow(result.series, label, 1e-12)
            self.assertLessEqual(np.max(result.series.column("curl")), 1e-12)

    def test_maxwell3d(self):
        result = run(CONFIG_MAXWELL)
        self.assertEqual(len(result.series), 61)
        for label in ("C_n", "C_half"):
            self.assertDriftBelow(result.series, label, 1e-12)
        self.assertLessEqual(np.max(result.series.column("divE_drift")), 1e-12)
        self.assertLessEqual(np.max(result.series.column("divH_drift")), 1e-12)

    def test_maxwell3d_unstable(self):
        with self.assertWarns(UserWarning):
            config = dict(CONFIG_MAXWELL, cfl_factor=1.05, steps=2000)
            with self.assertRaises(NumericOverflowError):
                run(config)

    def test_transport1d(self):
        config = {
            "scenario": "transport1d",
            "n_cells": 64,
            "velocity": {"name": "linear", "slope": -1.0},
            "steps": 300,
        }
        result = run(config)
        self.assertGreaterEqual(np.min(result.series.column("min_rho")), 0.0)
        self.assertDriftBelow(result.series, "mass", 1e-14)

    def test_transport1d_exact_shift(self):
        config = {"scenario": "transport1d", "n_cells": 64, "length": 1.0, "dt": 1.0 / 64, "steps": 64}
        result = run(config)
        self.assertEqual(result.series.column("mass")[-1], result.series.column("mass")[0])

    def test_transport1d_at_rest(self):
        config = {"scenario": "transport1d", "velocity": {"name": "uniform", "value": 0.0}, "steps": 5}
        with self.assertRaises(ConfigError):
            run(config)

    def test_diffusion1d(self):
        config = {
            "scenario": "diffusion1d",
            "n_cells": 64,
            "coefficient": {"name": "random"},
            "initial": {"name": "spike"},
            "cfl_factor": 0.99,
            "steps": 300,
            "seed": PARAM_SEED,
        }
        result = run(config)
        self.assertGreaterEqual(np.min(result.series.column("min_rho")), 0.0)
        self.assertDriftBelow(result.series, "mass", 1e-14)
