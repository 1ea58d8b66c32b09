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
"""Tests for snapshot module."""

import os
import tempfile

import numpy as np

import tests as _test
from mimeticpy import snapshot
from mimeticpy.exceptions import ShapeError
from mimeticpy.mimetic3d import FieldKind
from tests.test_helper import *


class SnapshotTest(_test.TestCase):
    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = self._directory.name

    def tearDown(self):
        self._directory.cleanup()

    def test_snapshot_name(self):
        self.assertEqual(snapshot.snapshot_name("E", 12, 2), "E_00000012_c2")

    def test_write_field(self):
        field = random_field(FieldKind.DUAL_FACE, GRID_SKEWED)
        paths = snapshot.write_field(self.directory, "v", field, 5, 0.25)
        self.assertEqual(len(paths), 3)
        for component, path in enumerate(paths):
            self.assertTrue(os.path.exists(path))
            self.assertEqual(os.path.getsize(path), 8 * 6 * 8 * 10)
            data, meta = snapshot.read_component(path)
            np.testing.assert_array_equal(data, field.components[component])
            self.assertEqual(meta["kind"], FieldKind.DUAL_FACE.value)
            self.assertEqual(meta["component"], component)
            self.assertEqual(meta["step"], 5)
            self.assertEqual(meta["time"], 0.25)
            self.assertEqual((meta["nx"], meta["ny"], meta["nz"]), (6, 8, 10))
            self.assertEqual((meta["dx"], meta["dy"], meta["dz"]), (0.5, 0.25, 1.0))

    def test_x_fastest(self):
        field = random_field(FieldKind.NODE, GRID_SKEWED)
        (path,) = snapshot.write_field(self.directory, "u", field, 0, 0.0)
        raw = np.fromfile(path, dtype="<f8")
        self.assertEqual(raw[1], field.data[1, 0, 0])
        self.assertEqual(raw[6], field.data[0, 1, 0])

    def test_write_line(self):
        rho = np.linspace(0.0, 1.0, 7)
        (path,) = snapshot.write(self.directory, "rho", rho, 3, 0.5, dx=0.125)
        data, meta = snapshot.read_component(path)
        np.testing.assert_array_equal(data[:, 0, 0], rho)
        self.assertEqual(meta["kind"], "line")
        self.assertEqual(meta["dx"], 0.125)
        with self.assertRaises(ShapeError):
            snapshot.write_line(self.directory, "rho", np.zeros((2, 2)), 0, 0.0, 1.0)
