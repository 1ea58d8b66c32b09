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

import unittest

import numpy as np

from mimeticpy.diagnostics import drift_report


class TestCase(unittest.TestCase):
    def assertRelativeClose(self, first, second, rel=1e-12, msg=None):
        """Check that two floats agree to a relative tolerance, measured against the larger magnitude."""
        scale = max(abs(first), abs(second), 1e-300)
        if abs(first - second) > rel * scale:
            self.fail(msg or "{!r} != {!r} to relative tolerance {}".format(first, second, rel))

    def assertFieldsEqual(self, first, second, msg=None):
        """Check that two fields have the same kind and bitwise equal components."""
        self.assertEqual(first.kind, second.kind, msg)
        self.assertEqual(first.grid, second.grid, msg)
        for a, b in zip(first.components, second.components):
            np.testing.assert_array_equal(a, b, err_msg=msg or "")

    def assertDriftBelow(self, series, label, bound, msg=None):
        """Check that the relative drift of a ledger column stays below ``bound``."""
        report = drift_report(series, label)
        if not report.max_rel_drift <= bound:
            self.fail(
                msg
                or "{} drifted by {:.3e}, more than {:.3e} (first value {!r})".format(
                    label, report.max_rel_drift, bound, report.first_value
                )
            )
