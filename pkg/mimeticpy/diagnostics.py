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
"""
Ledgers of conserved quantities, drift statistics, convergence orders and stability probes.
"""

import math
from collections import namedtuple
from typing import List, Tuple

import numpy as np

from .convert import delimit_list, format_row
from .exceptions import (
    EmptySeriesError,
    InvalidWindowError,
    NumericOverflowError,
    PreconditionError,
    ShapeError,
)
from .solver_base import DEFAULT, options, pick
from .utils import logger, max_abs

TINY = 1e-300

DriftReport = namedtuple("DriftReport", ["max_abs_drift", "max_rel_drift", "first_value"])
ProbeResult = namedtuple("ProbeResult", ["stable", "step", "max_ratio"])

# Fields of the scheme states that carry the solution.
STATE_FIELDS = ("u", "v_half", "v", "f", "g_half", "E", "H_half", "rho", "u_prev", "u_curr")


class ConservedSeries(object):
    """A ledger: one row of labelled values per recorded step."""

    def __init__(self, labels):
        """
        :param labels: Ordered names of the recorded quantities.
        :type labels: list of str
        """
        self._labels = tuple(labels)
        if len(set(self._labels)) != len(self._labels):
            raise ShapeError("labels", "duplicate labels in {}".format(self._labels))
        self._entries: List[Tuple[int, float, Tuple[float, ...]]] = []

    @property
    def labels(self):
        return self._labels

    @property
    def entries(self):
        return list(self._entries)

    def __len__(self):
        return len(self._entries)

    def append(self, step, time, values):
        """Records one row.

        :param values: Values in label order, or a dict keyed by label.
        :type values: list or dict

        :raises mimeticpy.exceptions.InvalidWindowError: when ``step`` does not exceed the last step.
        :raises mimeticpy.exceptions.ShapeError: when the values do not match the labels.
        """
        if isinstance(values, dict):
            if set(values) != set(self._labels):
                raise ShapeError("values", "expects labels {}, got {}".format(self._labels, sorted(values)))
            values = [values[label] for label in self._labels]
        values = tuple(float(v) for v in values)
        if len(values) != len(self._labels):
            raise ShapeError("values", "expects {} values, got {}".format(len(self._labels), len(values)))
        if self._entries and step <= self._entries[-1][0]:
            raise InvalidWindowError(
                "step", "steps must increase, got {} after {}".format(step, self._entries[-1][0])
            )
        self._entries.append((int(step), float(time), values))

    def column(self, label):
        """The values of one label as an array."""
        try:
            index = self._labels.index(label)
        except ValueError:
            raise PreconditionError(label, "no such column; options are: {}".format(list(self._labels)))
        return np.array([entry[2][index] for entry in self._entries])

    @property
    def steps(self):
        return np.array([entry[0] for entry in self._entries], dtype=np.int64)

    @property
    def times(self):
        return np.array([entry[1] for entry in self._entries])

    def rows(self):
        """Yields the CSV lines: a header of labels, then one line per entry."""
        yield delimit_list(("step", "time") + self._labels)
        for step, time, values in self._entries:
            yield format_row((step, time) + values)

    def write(self, stream):
        for line in self.rows():
            stream.write(line + "\n")

    def to_csv(self, path):
        """Writes the ledger with 17 significant digits per value.

        :raises OSError: when the file cannot be written.
        """
        with open(path, "w", newline="") as stream:
            self.write(stream)

    def __repr__(self):  # pragma: no cover
        return "ConservedSeries({}, {} entries)".format(self._labels, len(self._entries))


def drift_report(series, label):
    """Drift of one ledger column from its first value.

    The relative drift is ``max |x_n - x_0| / max(|x_0|, 1e-300)``.

    :raises mimeticpy.exceptions.EmptySeriesError: when the series has no entries.

    :rtype: :class:`DriftReport`
    """
    if len(series) == 0:
        raise EmptySeriesError(label, "no entries recorded")
    values = series.column(label)
    first = float(values[0])
    if not math.isfinite(first):
        raise PreconditionError(label, "first value is not finite")
    drift = float(np.max(np.abs(values - first)))
    return DriftReport(drift, drift / max(abs(first), TINY), first)


def convergence_order(errors):
    """Least-squares slope of ``log(err)`` against ``log(h)``.

    :param errors: At least three ``(h, err)`` pairs with decreasing ``h``.
    :type errors: list of tuple

    :rtype: float
    """
    if len(errors) < 3:
        raise PreconditionError("errors", "needs at least 3 points, got {}".format(len(errors)))
    h = np.array([float(pair[0]) for pair in errors])
    err = np.array([float(pair[1]) for pair in errors])
    if np.any(h <= 0) or np.any(err <= 0):
        raise PreconditionError("errors", "step sizes and errors must be positive")
    if np.any(np.diff(h) >= 0):
        raise PreconditionError("errors", "step sizes must decrease")
    slope, _ = np.polyfit(np.log(h), np.log(err), 1)
    return float(slope)


def state_norm(state):
    """Largest absolute entry over the solution fields of a scheme state."""
    values = [getattr(state, name) for name in STATE_FIELDS if hasattr(state, name)]
    if not values:
        return max_abs(state)
    return max(max_abs(value) for value in values)


def stability_probe(step_fn, state, n_steps, blowup_factor=DEFAULT, norm=state_norm):
    """Steps a state and reports the first step at which its norm exceeds ``blowup_factor`` times the
    initial norm. A non-finite value counts as a blow-up.

    :param step_fn: One step of the scheme.
    :type step_fn: callable

    :param blowup_factor: Growth treated as unstable, greater than 1. Defaults to
        ``options.default_blowup_factor``.
    :type blowup_factor: float

    :rtype: :class:`ProbeResult`
    """
    factor = pick(blowup_factor, options.default_blowup_factor)
    if not factor > 1:
        raise PreconditionError("blowup_factor", "must exceed 1, got {}".format(factor))
    initial = norm(state)
    max_ratio = 0.0 if initial == 0 else 1.0
    for k in range(1, n_steps + 1):
        try:
            state = step_fn(state)
        except NumericOverflowError as err:
            logger.info("Stability probe hit a non-finite value at step %s", err.step)
            return ProbeResult(False, k, math.inf)
        value = norm(state)
        ratio = value / initial if initial > 0 else (0.0 if value == 0 else math.inf)
        max_ratio = max(max_ratio, ratio)
        if not ratio <= factor:
            logger.info("Stability probe exceeded growth %g at step %d", factor, k)
            return ProbeResult(False, k, max_ratio)
    return ProbeResult(True, None, max_ratio)
