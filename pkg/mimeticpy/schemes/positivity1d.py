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
Mass- and positivity-preserving 1D schemes on a periodic line of cells.

Cell ``i`` holds the density ``rho[i]`` at its centre ``x_{i+1/2}``; its left edge is the node ``x_i``
where the velocity ``vel[i]`` and the diffusion coefficient ``D[i]`` live.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import PreconditionError, ShapeError
from ..utils import logger


def _validate_line(rho, edge, name, dt, dx):
    if np.ndim(rho) != 1 or np.shape(rho) != np.shape(edge):
        raise ShapeError(
            "state",
            "rho {} and {} {} must be vectors of one length".format(np.shape(rho), name, np.shape(edge)),
        )
    if len(rho) < 2:
        raise ShapeError("state", "needs at least 2 cells")
    if not dt > 0 or not dx > 0:
        raise PreconditionError("state", "dt and dx must be positive, got dt={}, dx={}".format(dt, dx))


@dataclass(frozen=True, eq=False)
class TransportState:
    rho: np.ndarray
    vel: np.ndarray
    dt: float
    dx: float
    n: int = 0

    def __post_init__(self):
        _validate_line(self.rho, self.vel, "vel", self.dt, self.dx)


@dataclass(frozen=True, eq=False)
class DiffusionState:
    rho: np.ndarray
    D: np.ndarray
    dt: float
    dx: float
    n: int = 0

    def __post_init__(self):
        _validate_line(self.rho, self.D, "D", self.dt, self.dx)
        if np.any(np.asarray(self.D) < 0):
            raise PreconditionError("D", "diffusion coefficients must be nonnegative")


def transport_fractions(state):
    """Fractions of a cell's content crossing each edge per step.

    :returns: ``(right, left)`` where ``right[i]`` moves from cell ``i-1`` to cell ``i`` through node ``i``
        and ``left[i]`` moves from cell ``i`` to cell ``i-1``.
    :rtype: tuple of numpy.ndarray
    """
    vel = np.asarray(state.vel, dtype=np.float64)
    ratio = state.dt / state.dx
    return ratio * np.maximum(vel, 0.0), ratio * np.maximum(-vel, 0.0)


def transport_step(state):
    """Upwind flux-form transport.

    Through every node ``i`` the amount ``v_i dt/dx rho[i-1]`` moves right when ``v_i >= 0``, and
    ``|v_i| dt/dx rho[i]`` moves left otherwise. The new density is accumulated as
    ``(rho - outflow) + inflow``, so ``|v| dt/dx = 1`` with uniform velocity is an exact one-cell shift.

    :raises mimeticpy.exceptions.PreconditionError: when ``max |v| dt/dx > 1``, or when a cell would lose
        more than its content through its two edges.

    :rtype: :class:`TransportState`
    """
    right, left = transport_fractions(state)
    courant = float(max(np.max(right), np.max(left)))
    if courant > 1:
        raise PreconditionError("cfl", "max |v| dt/dx = {} exceeds 1".format(courant))
    outflow = np.roll(right, -1) + left
    if np.any(outflow > 1):
        raise PreconditionError(
            "cfl",
            "cell {} loses a fraction {} > 1 per step".format(
                int(np.argmax(outflow)), float(np.max(outflow))
            ),
        )
    rho = np.asarray(state.rho, dtype=np.float64)
    inflow = right * np.roll(rho, 1) + np.roll(left, -1) * np.roll(rho, -1)
    return TransportState((rho - outflow * rho) + inflow, state.vel, state.dt, state.dx, state.n + 1)


def diffusion_step(state):
    """Forward-time centred-space diffusion with node coefficients,
    ``rho[i] (1 - lam (D[i] + D[i+1])) + lam D[i+1] rho[i+1] + lam D[i] rho[i-1]``, ``lam = dt / dx**2``.

    :raises mimeticpy.exceptions.PreconditionError: when ``lam (D[i] + D[i+1]) > 1`` for some cell.

    :rtype: :class:`DiffusionState`
    """
    lam = state.dt / state.dx**2
    D = np.asarray(state.D, dtype=np.float64)
    D_right = np.roll(D, -1)
    coefficient = lam * (D + D_right)
    if np.any(coefficient > 1):
        raise PreconditionError(
            "cfl", "(D[i] + D[i+1]) dt/dx**2 = {} exceeds 1".format(float(np.max(coefficient)))
        )
    rho = np.asarray(state.rho, dtype=np.float64)
    new = rho * (1.0 - coefficient) + (lam * D_right) * np.roll(rho, -1) + (lam * D) * np.roll(rho, 1)
    return DiffusionState(new, state.D, state.dt, state.dx, state.n + 1)


def total_mass(rho, dx):
    """``dx * sum(rho)``, summed with correct rounding so the result does not depend on the order."""
    return dx * math.fsum(np.asarray(rho, dtype=np.float64).ravel())


def amplification_factor(n_cells, k, lam):
    """FTCS amplification of the mode with wave number ``k`` for unit diffusion and ``lam = dt / dx**2``."""
    return 1.0 - 4.0 * lam * math.sin(math.pi * k / n_cells) ** 2


def max_transport_step(vel, dx):
    """Largest time step accepted by :func:`transport_step` for this velocity field."""
    vel = np.asarray(vel, dtype=np.float64)
    outflow = np.roll(np.maximum(vel, 0.0), -1) + np.maximum(-vel, 0.0)
    worst = max(float(np.max(np.abs(vel))), float(np.max(outflow)))
    if worst == 0:
        logger.debug("Velocity vanishes, any time step is stable")
        return math.inf
    return dx / worst


def max_diffusion_step(D, dx):
    """Largest time step accepted by :func:`diffusion_step` for these coefficients."""
    D = np.asarray(D, dtype=np.float64)
    worst = float(np.max(D + np.roll(D, -1)))
    return math.inf if worst == 0 else dx**2 / worst


def linear_velocity(n_cells, dx, slope):
    """Node velocities ``slope * (x_i - L/2)``: a negative slope collapses towards the centre, a positive
    slope expands away from it."""
    x = dx * np.arange(n_cells)
    return slope * (x - n_cells * dx / 2)


def square(n_cells, start, stop, value=1.0):
    """Density ``value`` on the cells ``start <= i < stop`` and zero elsewhere."""
    rho = np.zeros(n_cells)
    rho[start:stop] = value
    return rho


def spike(n_cells, index=None, value=1.0):
    """A single nonzero cell, the middle one by default."""
    rho = np.zeros(n_cells)
    rho[n_cells // 2 if index is None else index] = value
    return rho
