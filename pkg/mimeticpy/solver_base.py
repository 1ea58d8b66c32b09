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
Core leapfrog functionality, common across all staggered-time schemes.
"""

try:
    from .__version__ import __version__
except (ModuleNotFoundError, ImportError):
    __version__ = "None"

import dataclasses
import math
from abc import ABCMeta, abstractmethod

from .exceptions import InvalidWindowError
from .utils import check_finite


class options(object):
    """
    Contains default configuration options for all schemes and estimators, e.g. the power iteration
    tolerance. Functions taking the same values as arguments override the values set in the `options` object.

    Example for tightening the power iteration used by the time step estimates:

    >>> from mimeticpy.solver_base import options
    >>> options.default_tol = 1e-12
    >>> options.default_max_iter = 50000

    Attributes:
        self.default_tol:
            Relative stopping tolerance of every power iteration. Float.

        self.default_max_iter:
            Iteration cap of every power iteration. Integer.

        self.default_seed:
            Seed of the start vectors of power iterations and of random test data. Integer.

        self.default_blowup_factor:
            Growth of the state norm over its initial value that a stability probe reports as unstable. Float.

        self.default_overflow_guard:
            Growth of the state norm over its initial value that a long run reports as a numeric overflow,
            even while the values are still finite. Float.

        self.default_cfl_factor:
            Fraction of the largest stable time step used when a run gives no time step. Float.

        self.default_threads:
            Cap on internal parallelism. Kernels are single threaded, so the results never depend on it. Integer.
    """

    default_tol = 1e-10
    default_max_iter = 20000
    default_seed = 1234
    default_blowup_factor = 1e3
    default_overflow_guard = 1e12
    default_cfl_factor = 0.9
    default_threads = 1


# Distinguishes "not given" from an explicit None.
DEFAULT = type("object", (object,), {"__repr__": lambda self: "DEFAULT"})()


def pick(value, default):
    """Returns ``value`` unless it is :data:`DEFAULT` or None, else ``default``."""
    return default if value is DEFAULT or value is None else value


class LeapfrogScheme(metaclass=ABCMeta):
    """Abstract base class every staggered-time scheme inherits from.

    A scheme advances an integer-step field ``f`` and a half-step field ``g`` by

    .. code::

        f[n+1]   = f[n]   + dt * integer_rate(g[n+1/2])
        g[n+3/2] = g[n+1/2] + dt * half_rate(f[n+1])

    in that order. States are frozen dataclasses holding the two fields under the names
    ``integer_field`` and ``half_field``, the step index ``n`` and the time step ``dt``.

    Windows passed to the conserved quantities are sequences of consecutive states. A state at step n
    carries ``f[n]`` and ``g[n+1/2]``, so two consecutive states give the integer-step quantity at the
    later step and the half-step quantity half a step after the earlier one.
    """

    integer_field = "u"
    half_field = "v_half"
    scale = 1.0

    @abstractmethod
    def integer_rate(self, state, half):
        """Time derivative of the integer-step field, evaluated from a half-step value."""
        pass

    @abstractmethod
    def half_rate(self, state, integer):
        """Time derivative of the half-step field, evaluated from an integer-step value."""
        pass

    @abstractmethod
    def integer_norm2(self, state, value):
        """Squared norm on the integer-step space."""
        pass

    @abstractmethod
    def half_norm2(self, state, value):
        """Squared norm on the half-step space."""
        pass

    def fields(self, state):
        return getattr(state, self.integer_field), getattr(state, self.half_field)

    def _replace(self, state, integer, half, n):
        return dataclasses.replace(state, **{self.integer_field: integer, self.half_field: half, "n": n})

    def step(self, state):
        """Advances a state by one time step.

        :raises mimeticpy.exceptions.NumericOverflowError: when a non-finite value appears.
        """
        f, g = self.fields(state)
        f_next = f + state.dt * self.integer_rate(state, g)
        g_next = g + state.dt * self.half_rate(state, f_next)
        check_finite(state.n + 1, f_next, g_next)
        return self._replace(state, f_next, g_next, state.n + 1)

    def rewind(self, state):
        """Exact algebraic inverse of :meth:`step`, used to recover the half-step value before the start."""
        f, g = self.fields(state)
        g_prev = g - state.dt * self.half_rate(state, f)
        f_prev = f - state.dt * self.integer_rate(state, g_prev)
        return self._replace(state, f_prev, g_prev, state.n - 1)

    def trajectory(self, state, n_steps):
        """Yields the state and the next ``n_steps`` states."""
        yield state
        for _ in range(n_steps):
            state = self.step(state)
            yield state

    def window(self, window, length=2):
        """Validates a window and returns its last ``length`` states."""
        states = tuple(window)
        if len(states) < length:
            raise InvalidWindowError(
                "window", "needs {} consecutive states, got {}".format(length, len(states))
            )
        states = states[-length:]
        for earlier, later in zip(states, states[1:]):
            if later.n != earlier.n + 1:
                raise InvalidWindowError(
                    "parity", "steps {} and {} are not consecutive".format(earlier.n, later.n)
                )
            if later.dt != earlier.dt:
                raise InvalidWindowError("dt", "window mixes time steps")
        return states

    def conserved_n(self, window):
        """Corrected conserved quantity at the integer step of the later state."""
        earlier, later = self.window(window)
        f = getattr(later, self.integer_field)
        g_avg = (getattr(earlier, self.half_field) + getattr(later, self.half_field)) * 0.5
        correction = self.half_norm2(later, self.half_rate(later, f))
        return self.scale * (
            self.integer_norm2(later, f) - later.dt**2 / 4 * correction + self.half_norm2(later, g_avg)
        )

    def conserved_half(self, window):
        """Corrected conserved quantity half a step after the earlier state."""
        earlier, later = self.window(window)
        g = getattr(earlier, self.half_field)
        f_avg = (getattr(earlier, self.integer_field) + getattr(later, self.integer_field)) * 0.5
        correction = self.integer_norm2(earlier, self.integer_rate(earlier, g))
        return self.scale * (
            self.integer_norm2(earlier, f_avg) + self.half_norm2(earlier, g) - earlier.dt**2 / 4 * correction
        )

    def conserved_simple(self, window):
        """The uncorrected quantity at the later integer step; it is not conserved."""
        earlier, later = self.window(window)
        f = getattr(later, self.integer_field)
        g_avg = (getattr(earlier, self.half_field) + getattr(later, self.half_field)) * 0.5
        return self.scale * (self.integer_norm2(later, f) + self.half_norm2(later, g_avg))

    def energy(self, window):
        """Half the squared norms of the centered time differences of both fields."""
        earlier, later = self.window(window)
        df = (getattr(later, self.integer_field) - getattr(earlier, self.integer_field)) * (1.0 / later.dt)
        dg = (getattr(later, self.half_field) - getattr(earlier, self.half_field)) * (1.0 / later.dt)
        return 0.5 * (self.integer_norm2(later, df) + self.half_norm2(later, dg))

    def second_order_residual(self, window, field="integer"):
        """Norm of the defect of the second-order recursion both fields satisfy along a trajectory.

        :param window: Three consecutive states.

        :param field: ``"integer"`` checks f[n-1], f[n], f[n+1]; ``"half"`` checks the half-step values.
        :type field: str

        :rtype: float
        """
        first, middle, last = self.window(window, length=3)
        dt2 = middle.dt**2
        if field == "integer":
            name, norm2 = self.integer_field, self.integer_norm2
            value = getattr(middle, name)
            accel = self.integer_rate(middle, self.half_rate(middle, value))
        elif field == "half":
            name, norm2 = self.half_field, self.half_norm2
            value = getattr(middle, name)
            accel = self.half_rate(middle, self.integer_rate(middle, value))
        else:
            raise ValueError("field must be either 'integer' or 'half', not {}.".format(field))
        defect = (getattr(last, name) - value * 2.0 + getattr(first, name)) * (1.0 / dt2) - accel
        return math.sqrt(norm2(middle, defect))
