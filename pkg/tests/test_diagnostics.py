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
"""Tests for the conserved-quantity ledger and the run diagnostics."""

import io
import math
import os
import tempfile

import numpy as np

import tests as _test
from mimeticpy import diagnostics
from mimeticpy.exceptions import (
    EmptySeriesError,
    InvalidWindowError,
    PreconditionError,
    ShapeError,
)
from mimeticpy.schemes import oscillator, wave1d
from tests.test_helper import *


class ConservedSeriesTest(_test.TestCase):
    def setUp(self):
        self.series = diagnostics.ConservedSeries(["C_n", "C_half"])
        self.series.append(0, 0.0, [1.0, 2.0])
        self.series.append(1, 0.1, {"C_half": 2.5, "C_n": 1.5})

    def test_labels(self):
        self.assertEqual(self.series.labels, ("C_n", "C_half"))
        with self.assertRaises(ShapeError):
            diagnostics.ConservedSeries(["C_n", "C_n"])

    def test_append_errors(self):
        with self.assertRaises(InvalidWindowError):
            self.series.append(1, 0.2, [1.0, 2.0])
        with self.assertRaises(ShapeError):
            self.series.append(2, 0.2, [1.0])
        with self.assertRaises(ShapeError):
            self.series.append(2, 0.2, {"C_n": 1.0})
        self.assertEqual(len(self.series), 2)

    def test_columns(self):
        np.testing.assert_array_equal(self.series.column("C_half"), [2.0, 2.5])
        np.testing.assert_array_equal(self.series.steps, [0, 1])
        np.testing.assert_array_equal(self.series.times, [0.0, 0.1])
        with self.assertRaises(PreconditionError):
            self.series.column("C_total")

    def test_rows(self):
        stream = io.StringIO()
        self.series.write(stream)
        self.assertEqual(
            stream.getvalue(), "step,time,C_n,C_half\n0,0,1,2\n1,0.10000000000000001,1.5,2.5\n"
        )

    def test_to_csv(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "ledger.csv")
            self.series.to_csv(path)
            with open(path) as stream:
                self.assertEqual(stream.readline(), "step,time,C_n,C_half\n")


class DriftReportTest(_test.TestCase):
    def _series(self, values):
        series = diagnostics.ConservedSeries(["C"])
        for step, value in enumerate(values):
            series.append(step, 0.1 * step, [value])
        return series

    def test_constant(self):
        report = diagnostics.drift_report(self._series([2.0] * 5), "C")
        self.assertEqual(report.max_abs_drift, 0.0)
        self.assertEqual(report.max_rel_drift, 0.0)
        self.assertEqual(report.first_value, 2.0)

    def test_tiny_drift(self):
        report = diagnostics.drift_report(self._series([1.0, 1.0 + 1e-13]), "C")
        self.assertAlmostEqual(report.max_rel_drift, 1e-13, delta=1e-16)
        self.assertDriftBelow(self._series([1.0, 1.0 + 1e-13]), "C", 2e-13)

    def test_zero_first_value(self):
        report = diagnostics.drift_report(self._series([0.0, 1e-300]), "C")
        self.assertEqual(report.max_rel_drift, 1.0)

    def test_empty(self):
        with self.assertRaises(EmptySeriesError):
            diagnostics.drift_report(diagnostics.ConservedSeries(["C"]), "C")


class ConvergenceOrderTest(_test.TestCase):
    def test_second_order(self):
        errors = [(h, 3.0 * h**2) for h in (0.1, 0.05, 0.025)]
        self.assertAlmostEqual(diagnostics.convergence_order(errors), 2.0, delta=1e-12)

    def test_errors(self):
        with self.assertRaises(PreconditionError):
            diagnostics.convergence_order([(0.1, 0.01), (0.05, 0.0025)])
        with self.assertRaises(PreconditionError):
            diagnostics.convergence_order([(0.1, 0.01), (0.05, 0.0), (0.025, 1e-4)])
        with self.assertRaises(PreconditionError):
            diagnostics.convergence_order([(0.1, 0.01), (0.2, 0.04), (0.4, 0.16)])


class StabilityProbeTest(_test.TestCase):
    def test_zero_state(self):
        state = oscillator.OscState(0.0, 0.0, dt=1.5, omega=PARAM_OMEGA)
        result = diagnostics.stability_probe(oscillator.leapfrog_step, state, 100)
        self.assertTrue(result.stable)
        self.assertIsNone(result.step)

    def test_oscillator_boundary(self):
        unstable = oscillator.init_half_centered(1.0, 0.0, PARAM_OMEGA, 2.01)
        result = diagnostics.stability_probe(oscillator.leapfrog_step, unstable, 10000)
        self.assertFalse(result.stable)
        self.assertGreater(result.max_ratio, 1e3)

        stable = oscillator.init_half_centered(1.0, 0.0, PARAM_OMEGA, 1.99)
        result = diagnostics.stability_probe(oscillator.leapfrog_step, stable, 10000, blowup_factor=10)
        self.assertTrue(result.stable)

    def test_wave1d(self):
        n = 64
        state = wave1d.init_v_half(gaussian_line(n), np.zeros(n), 1.0 / n, 1.0, 0.99 / n)
        self.assertTrue(diagnostics.stability_probe(wave1d.leapfrog_step, state, 10000).stable)

    def test_blowup_factor(self):
        state = oscillator.OscState(1.0, 0.0, dt=0.1)
        with self.assertRaises(PreconditionError):
            diagnostics.stability_probe(oscillator.leapfrog_step, state, 10, blowup_factor=1.0)

    def test_state_norm(self):
        state = oscillator.OscState(-3.0, 2.0)
        self.assertEqual(diagnostics.state_norm(state), 3.0)
        self.assertTrue(math.isfinite(diagnostics.state_norm(np.ones(2))))
