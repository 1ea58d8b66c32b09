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
Harmonic oscillator ``u' = omega v, v' = -omega u`` discretized three ways: the staggered leapfrog scheme,
the direct second-order recursion and Crank-Nicolson on collocated values.
"""

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

from ..exceptions import (
    InvalidFrequencyError,
    InvalidWindowError,
    NumericOverflowError,
    PreconditionError,
)
from ..solver_base import DEFAULT, LeapfrogScheme, options, pick
from ..utils import check_finite


def _validate(dt, omega):
    if not omega > 0:
        raise InvalidFrequencyError("omega", "frequency must be positive, got {}".format(omega))
    if not dt > 0:
        raise PreconditionError("dt", "time step must be positive, got {}".format(dt))


@dataclass(frozen=True)
class OscState:
    """Leapfrog state: ``u`` at step ``n`` and ``v_half`` at step ``n + 1/2``."""

    u: float
    v_half: float
    n: int = 0
    dt: float = 0.1
    omega: float = 1.0

    def __post_init__(self):
        _validate(self.dt, self.omega)


@dataclass(frozen=True)
class OscSecondOrderState:
    """Direct second-order recursion state: ``u_prev`` at step ``n - 1`` and ``u_curr`` at step ``n``."""

    u_prev: float
    u_curr: float
    n: int = 1
    dt: float = 0.1
    omega: float = 1.0

    def __post_init__(self):
        _validate(self.dt, self.omega)


@dataclass(frozen=True)
class CNState:
    """Crank-Nicolson state with collocated ``u`` and ``v`` at step ``n``."""

    u: float
    v: float
    n: int = 0
    dt: float = 0.1
    omega: float = 1.0

    def __post_init__(self):
        _validate(self.dt, self.omega)


class OscillatorScheme(LeapfrogScheme):
    """Leapfrog for the oscillator. Quantities carry the factor 1/2 of the oscillator energy."""

    integer_field = "u"
    half_field = "v_half"
    scale = 0.5

    def integer_rate(self, state, half):
        return state.omega * half

    def half_rate(self, state, integer):
        return -state.omega * integer

    def integer_norm2(self, state, value):
        return value * value

    def half_norm2(self, state, value):
        return value * value


SCHEME = OscillatorScheme()


def init_half(u0, du0, omega, dt):
    """Starts the leapfrog scheme from the displacement and velocity at t = 0.

    :param u0: Initial displacement.
    :type u0: float

    :param du0: Initial velocity ``u'(0)``; the half-step variable is ``du0 / omega``.
    :type du0: float

    :param omega: Frequency, positive.
    :type omega: float

    :param dt: Time step, positive.
    :type dt: float

    :raises mimeticpy.exceptions.InvalidFrequencyError: when ``omega <= 0``.

    :rtype: :class:`OscState`
    """
    if not omega > 0:
        raise InvalidFrequencyError("omega", "frequency must be positive, got {}".format(omega))
    return OscState(u=float(u0), v_half=du0 / omega, n=0, dt=dt, omega=omega)


def init_half_centered(u0, du0, omega, dt):
    """Like :func:`init_half`, but takes ``v[1/2]`` from a Taylor step to the half-step time,
    ``du0 / omega - (omega dt / 2) u0``. The global error is then second order in ``dt``.

    :rtype: :class:`OscState`
    """
    state = init_half(u0, du0, omega, dt)
    return OscState(u=state.u, v_half=state.v_half - (omega * dt / 2) * state.u, n=0, dt=dt, omega=omega)


def leapfrog_step(state):
    """
    ``u[n+1] = u[n] + dt omega v[n+1/2]``, then ``v[n+3/2] = v[n+1/2] - dt omega u[n+1]``.

    :raises mimeticpy.exceptions.NumericOverflowError: on a non-finite result.

    :rtype: :class:`OscState`
    """
    return SCHEME.step(state)


def leapfrog_run(state, n_steps, overflow_guard=DEFAULT):
    """Runs the leapfrog scheme on plain floats, for long trajectories.

    Produces the same values as repeated :func:`leapfrog_step`.

    :returns: Arrays ``u[0..n_steps]`` of integer-step values and ``v[0..n_steps]`` of the half-step values
        ``v[n+1/2]``.
    :rtype: tuple of numpy.ndarray

    :raises mimeticpy.exceptions.NumericOverflowError: on non-finite values, or when ``|u|`` or ``|v|``
        exceeds ``overflow_guard`` times the initial size.
    """
    if n_steps < 0:
        raise PreconditionError("n_steps", "must be nonnegative, got {}".format(n_steps))
    guard = pick(overflow_guard, options.default_overflow_guard) * max(abs(state.u), abs(state.v_half))
    dt, omega = state.dt, state.omega
    u = np.empty(n_steps + 1)
    v = np.empty(n_steps + 1)
    u_n, v_n = float(state.u), float(state.v_half)
    u[0], v[0] = u_n, v_n
    for k in range(1, n_steps + 1):
        u_n = u_n + dt * (omega * v_n)
        v_n = v_n + dt * (-omega * u_n)
        if not (abs(u_n) <= guard and abs(v_n) <= guard):
            raise NumericOverflowError(state.n + k, "oscillator left the bounded regime")
        u[k], v[k] = u_n, v_n
    return u, v


def conserved_series(u, v_half, omega, dt):
    """Vectorised corrected quantities along a run from :func:`leapfrog_run`.

    :returns: ``C_n`` at steps ``1..N`` and ``C_half`` at steps ``1/2..N-1/2``.
    :rtype: tuple of numpy.ndarray
    """
    alpha2 = (omega * dt / 2) ** 2
    u = np.asarray(u)
    v = np.asarray(v_half)
    c_n = 0.5 * ((1 - alpha2) * u[1:] ** 2 + ((v[1:] + v[:-1]) / 2) ** 2)
    c_half = 0.5 * (((u[1:] + u[:-1]) / 2) ** 2 + (1 - alpha2) * v[:-1] ** 2)
    return c_n, c_half


def second_order_step(state):
    """``u[n+1] = (2 - (omega dt)**2) u[n] - u[n-1]``.

    :rtype: :class:`OscSecondOrderState`
    """
    factor = 2.0 - (state.omega * state.dt) ** 2
    u_next = factor * state.u_curr - state.u_prev
    check_finite(state.n + 1, u_next)
    return OscSecondOrderState(state.u_curr, u_next, state.n + 1, state.dt, state.omega)


def second_order_run(u0, u1, omega, dt, n_steps, overflow_guard=DEFAULT):
    """Runs the direct discretization of ``u'' + omega**2 u = 0``.

    :param u0: Value at step 0.
    :type u0: float

    :param u1: Value at step 1. Seeding with ``u0 + dt omega v[1/2]`` reproduces the leapfrog values.
    :type u1: float

    :param n_steps: Index of the last value returned, nonnegative.
    :type n_steps: int

    :returns: ``u[0..n_steps]``.
    :rtype: numpy.ndarray

    :raises mimeticpy.exceptions.NumericOverflowError: on non-finite values, or when ``|u|`` exceeds
        ``overflow_guard`` times the initial size.
    """
    _validate(dt, omega)
    if n_steps < 0:
        raise PreconditionError("n_steps", "must be nonnegative, got {}".format(n_steps))
    u = np.empty(n_steps + 1)
    u[0] = u0
    if n_steps == 0:
        return u
    u[1] = u1
    guard = pick(overflow_guard, options.default_overflow_guard) * max(abs(u0), abs(u1))
    factor = 2.0 - (omega * dt) ** 2
    for k in range(2, n_steps + 1):
        u[k] = factor * u[k - 1] - u[k - 2]
        if not abs(u[k]) <= guard:
            raise NumericOverflowError(k, "second-order recursion left the bounded regime")
    return u


@functools.lru_cache(maxsize=128)
def _rotation(beta):
    """Cosine and sine of the Crank-Nicolson rotation angle ``2 atan(beta)`` as exact fractions,
    ``((1 - beta**2), 2 beta) / (1 + beta**2)``."""
    b = Fraction(beta)
    det = 1 + b * b
    return (1 - b * b) / det, 2 * b / det


def crank_nicolson_step(state):
    """Solves ``u' + b v' = u - b v``, ``v' - b u' = v + b u`` with ``b = dt omega / 2``.

    The solution is the rotation ``u' = c u - s v``, ``v' = s u + c v`` with ``c = (1 - b**2) / (1 + b**2)``
    and ``s = 2 b / (1 + b**2)``. It is evaluated in rational arithmetic and rounded once, so
    ``(u**2 + v**2) / 2`` only picks up the unbiased rounding of the new values.

    :raises mimeticpy.exceptions.NumericOverflowError: when the state is not finite.

    :rtype: :class:`CNState`
    """
    check_finite(state.n, state.u, state.v)
    c, s = _rotation(state.dt * state.omega / 2)
    u, v = Fraction(state.u), Fraction(state.v)
    return CNState(float(c * u - s * v), float(s * u + c * v), state.n + 1, state.dt, state.omega)


def conservation_first_step(u, v_prev_half, v_half, omega, dt):
    """One step of the scheme obtained from Crank-Nicolson by the substitution ``v[n] = (v[n+1/2] + v[n-1/2]) / 2``.

    :returns: ``(u[n+1], v[n+3/2])``.
    :rtype: tuple of float
    """
    _validate(dt, omega)
    alpha = dt * omega / 2
    rhs1 = u - alpha * v_half - alpha / 2 * v_prev_half
    rhs2 = 2 * alpha * u + v_prev_half
    det = 1 + alpha * alpha
    return (rhs1 - alpha / 2 * rhs2) / det, (2 * alpha * rhs1 + rhs2) / det


Window = Union[OscState, OscSecondOrderState, CNState, Sequence]


def _as_states(window) -> Tuple:
    if isinstance(window, (OscState, OscSecondOrderState, CNState)):
        return (window,)
    return tuple(window)


def conserved(window, kind):
    """Evaluates a conserved or reference quantity on a window of consecutive states.

    ==================  ======================================  ======================================
    Kind                Window                                  Value
    ==================  ======================================  ======================================
    ``C_n``             2 :class:`OscState`                     corrected quantity at the later step
    ``C_half``          2 :class:`OscState`                     corrected quantity at earlier step + 1/2
    ``C_simple``        2 :class:`OscState`, or a CNState       uncorrected ``(u**2 + v**2) / 2``
    ``C_secondorder``   2 :class:`OscSecondOrderState`          quantity of the direct recursion
    ``E_classical``     3 :class:`OscState` or 2 second-order   ``(u'**2 + (omega u)**2) / 2``
    ==================  ======================================  ======================================

    ``E_classical`` approximates ``u'`` by the centered difference ``(u[n+1] - u[n-1]) / (2 dt)``.

    :raises mimeticpy.exceptions.InvalidWindowError: for windows that are too short, not consecutive
        or of the wrong state type.

    :rtype: float
    """
    states = _as_states(window)
    if not states:
        raise InvalidWindowError("window", "empty window")
    last = states[-1]

    if isinstance(last, CNState):
        if kind != "C_simple":
            raise InvalidWindowError(kind, "Crank-Nicolson states only carry C_simple")
        return 0.5 * (last.u * last.u + last.v * last.v)

    if isinstance(last, OscSecondOrderState):
        earlier, later = SCHEME.window(states)
        u_prev, u_curr, u_next = earlier.u_prev, earlier.u_curr, later.u_curr
        if earlier.u_curr != later.u_prev:
            raise InvalidWindowError("parity", "second-order states do not overlap")
        slope = (u_next - u_prev) / (2 * later.dt)
        if kind == "C_secondorder":
            alpha2 = (later.omega * later.dt / 2) ** 2
            return (1 - alpha2) * u_curr**2 + (slope / later.omega) ** 2
        if kind == "E_classical":
            return 0.5 * (slope**2 + (later.omega * u_curr) ** 2)
        raise InvalidWindowError(kind, "not available on second-order states")

    if kind == "C_n":
        return SCHEME.conserved_n(states)
    if kind == "C_half":
        return SCHEME.conserved_half(states)
    if kind == "C_simple":
        return SCHEME.conserved_simple(states)
    if kind == "E_classical":
        first, middle, last = SCHEME.window(states, length=3)
        slope = (last.u - first.u) / (2 * middle.dt)
        return 0.5 * (slope**2 + (middle.omega * middle.u) ** 2)
    raise InvalidWindowError(kind, "not available on leapfrog states")


def closed_form(u0, du0, omega, t):
    """Exact solution ``u(t)`` of the oscillator."""
    return u0 * np.cos(omega * t) + du0 / omega * np.sin(omega * t)


def max_error(dt, omega=1.0, t_end=10.0, u0=1.0, du0=0.0):
    """Largest leapfrog error against :func:`closed_form` on ``[0, t_end]``, started by
    :func:`init_half_centered`."""
    n_steps = int(round(t_end / dt))
    u, _ = leapfrog_run(init_half_centered(u0, du0, omega, dt), n_steps)
    times = dt * np.arange(n_steps + 1)
    return float(np.max(np.abs(u - closed_form(u0, du0, omega, times))))


def stable_step_limit(omega):
    """Largest stable time step ``2 / omega``."""
    if not omega > 0:
        raise InvalidFrequencyError("omega", "frequency must be positive, got {}".format(omega))
    return 2.0 / omega


__all__ = [
    "OscState",
    "OscSecondOrderState",
    "CNState",
    "OscillatorScheme",
    "init_half",
    "init_half_centered",
    "leapfrog_step",
    "leapfrog_run",
    "conserved_series",
    "second_order_step",
    "second_order_run",
    "crank_nicolson_step",
    "conservation_first_step",
    "conserved",
    "closed_form",
    "max_error",
    "stable_step_limit",
]
