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
The periodic 1D wave system ``u_t = c v_x, v_t = c u_x`` with ``u`` at the integer sites ``x_i`` and
``v`` at the half sites ``x_{i+1/2}``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidWindowError, PreconditionError, ShapeError
from ..solver_base import DEFAULT, LeapfrogScheme, options, pick
from ..utils import get_rng, power_iteration

TO_HALF = "to_half"
TO_INT = "to_int"


@dataclass(frozen=True, eq=False)
class Wave1DState:
    u: np.ndarray
    v_half: np.ndarray
    n: int = 0
    dt: float = 0.1
    dx: float = 0.1
    c: float = 1.0

    def __post_init__(self):
        if np.ndim(self.u) != 1 or np.shape(self.u) != np.shape(self.v_half):
            raise ShapeError(
                "state",
                "u {} and v {} must be vectors of one length".format(
                    np.shape(self.u), np.shape(self.v_half)
                ),
            )
        if len(self.u) < 2:
            raise ShapeError("state", "needs at least 2 sites")
        for name in ("dt", "dx", "c"):
            if not getattr(self, name) > 0:
                raise PreconditionError(name, "must be positive, got {}".format(getattr(self, name)))

    @property
    def ratio(self) -> float:
        """The Courant number ``c dt / dx``."""
        return self.c * self.dt / self.dx


def delta(values, direction):
    """Periodic difference between neighbouring sites.

    ``to_half`` maps integer-site values to half sites, ``delta(a)[i+1/2] = a[i+1] - a[i]``; ``to_int`` maps
    half-site values to integer sites, ``delta(c)[i] = c[i+1/2] - c[i-1/2]``. The two are negative adjoints
    of each other (summation by parts).

    :rtype: numpy.ndarray
    """
    values = np.asarray(values, dtype=np.float64)
    if direction == TO_HALF:
        return np.roll(values, -1) - values
    if direction == TO_INT:
        return values - np.roll(values, 1)
    raise ValueError("direction must be either 'to_half' or 'to_int', not {}.".format(direction))


class WaveScheme(LeapfrogScheme):
    integer_field = "u"
    half_field = "v_half"

    def integer_rate(self, state, half):
        return (state.c / state.dx) * delta(half, TO_INT)

    def half_rate(self, state, integer):
        return (state.c / state.dx) * delta(integer, TO_HALF)

    def integer_norm2(self, state, value):
        return float(np.dot(value, value))

    def half_norm2(self, state, value):
        return float(np.dot(value, value))


SCHEME = WaveScheme()


def leapfrog_step(state):
    """
    ``u[n+1] = u[n] + c dt/dx delta(v[n+1/2])``, then ``v[n+3/2] = v[n+1/2] + c dt/dx delta(u[n+1])``.

    :raises mimeticpy.exceptions.NumericOverflowError: on a non-finite result.

    :rtype: :class:`Wave1DState`
    """
    return SCHEME.step(state)


def init_v_half(u0, v0, dx, c, dt):
    """Builds the initial state with ``v[1/2] = v(0) + dt/2 c/dx delta(u(0))``."""
    u0 = np.asarray(u0, dtype=np.float64)
    v0 = np.asarray(v0, dtype=np.float64)
    if u0.shape != v0.shape:
        raise ShapeError("v0", "expects shape {}, got {}".format(u0.shape, v0.shape))
    return Wave1DState(u0.copy(), v0 + (dt / 2) * (c / dx) * delta(u0, TO_HALF), 0, dt, dx, c)


def conserved(window, kind):
    """Corrected quantities: ``C_n`` at the later state's step, ``C_half`` half a step after the earlier one.

    Norms are plain unweighted sums of squares.

    :rtype: float
    """
    if kind == "C_n":
        return SCHEME.conserved_n(window)
    if kind == "C_half":
        return SCHEME.conserved_half(window)
    raise InvalidWindowError(kind, "unknown quantity; options are C_n, C_half")


def second_order_residual(window, field="u"):
    """Defect of the discrete second-order wave equation for ``u`` or ``v`` on three consecutive states."""
    if field not in ("u", "v"):
        raise ValueError("field must be either 'u' or 'v', not {}.".format(field))
    return SCHEME.second_order_residual(window, field="integer" if field == "u" else "half")


def cfl_max(dx, c):
    """Largest stable time step ``dx / c``, from ``dt < 2 / ||delta|| * dx / c`` with ``||delta|| <= 2``."""
    if not dx > 0 or not c > 0:
        raise PreconditionError("cfl", "dx and c must be positive, got dx={}, c={}".format(dx, c))
    return dx / c


def delta_norm_estimate(n, tol=DEFAULT, max_iter=DEFAULT, seed=DEFAULT):
    """Power-iteration estimate of the norm of the periodic difference on ``n`` sites.

    The exact value is ``2 sin(pi floor(n/2) / n)``. The gap between the two largest eigenvalues of
    ``-delta delta`` is about ``4 (pi / n)**2``, so the default iteration cap is ``8 n**2`` when that
    exceeds ``options.default_max_iter``.
    """
    if n < 2:
        raise ShapeError("n", "needs at least 2 sites")
    rng = get_rng(pick(seed, options.default_seed))
    value = power_iteration(
        lambda x: -delta(delta(x, TO_HALF), TO_INT),
        lambda x: float(np.linalg.norm(x)),
        rng.standard_normal(n),
        pick(tol, options.default_tol),
        pick(max_iter, max(options.default_max_iter, 8 * n * n)),
        name="delta",
    )
    return math.sqrt(value)


def standing_mode(n_sites, t, c=1.0, k=1):
    """Exact solution ``u = cos(k x) cos(c k t)``, ``v = -sin(k x) sin(c k t)`` on ``[0, 2 pi)``.

    :returns: ``u`` sampled at the integer sites and ``v`` at the half sites.
    :rtype: tuple of numpy.ndarray
    """
    dx = 2 * math.pi / n_sites
    x = dx * np.arange(n_sites)
    return np.cos(k * x) * math.cos(c * k * t), -np.sin(k * (x + dx / 2)) * math.sin(c * k * t)


def standing_mode_state(n_sites, ratio=0.5, c=1.0, k=1):
    """Initial state of the standing mode, with ``v`` sampled exactly at ``t = dt/2``."""
    dx = 2 * math.pi / n_sites
    dt = ratio * dx / c
    u0, _ = standing_mode(n_sites, 0.0, c, k)
    _, v_half = standing_mode(n_sites, dt / 2, c, k)
    return Wave1DState(u0, v_half, 0, dt, dx, c)


def gaussian_pulse(n_sites, dx, width=None, centre=None):
    """A Gaussian ``exp(-((x - centre) / width)**2)`` at the integer sites, centred in the domain by default."""
    length = n_sites * dx
    width = pick(width, length / 20)
    centre = pick(centre, length / 2)
    x = dx * np.arange(n_sites)
    return np.exp(-(((x - centre) / width) ** 2))
