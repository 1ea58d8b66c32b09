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
The skew system ``f' = A g, g' = -A^T f`` for a dense, possibly rectangular or singular matrix ``A``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidWindowError, PreconditionError, ShapeError
from ..solver_base import DEFAULT, LeapfrogScheme, options, pick
from ..utils import get_rng, power_iteration


class SkewOperator(object):
    """An ``n x m`` matrix mapping length-m vectors to length-n vectors. Its adjoint is the transpose."""

    def __init__(self, matrix):
        """
        :param matrix: The dense real matrix.
        :type matrix: array_like of shape (n, m)

        :raises mimeticpy.exceptions.ShapeError: when ``matrix`` is not two-dimensional.
        """
        matrix = np.array(matrix, dtype=np.float64)
        if matrix.ndim != 2 or 0 in matrix.shape:
            raise ShapeError("matrix", "expects a non-empty 2-d array, got shape {}".format(matrix.shape))
        if not np.all(np.isfinite(matrix)):
            raise PreconditionError("matrix", "entries must be finite")
        matrix.setflags(write=False)
        self._matrix = matrix

    @property
    def matrix(self):
        return self._matrix

    @property
    def rows(self) -> int:
        return self._matrix.shape[0]

    @property
    def cols(self) -> int:
        return self._matrix.shape[1]

    def apply(self, g):
        g = np.asarray(g, dtype=np.float64)
        if g.shape != (self.cols,):
            raise ShapeError("g", "expects length {}, got shape {}".format(self.cols, g.shape))
        return self._matrix @ g

    def adjoint(self, f):
        f = np.asarray(f, dtype=np.float64)
        if f.shape != (self.rows,):
            raise ShapeError("f", "expects length {}, got shape {}".format(self.rows, f.shape))
        return self._matrix.T @ f

    def __repr__(self):  # pragma: no cover
        return "SkewOperator({}x{})".format(self.rows, self.cols)


@dataclass(frozen=True, eq=False)
class SkewState:
    """``f`` at step ``n`` (length n) and ``g_half`` at step ``n + 1/2`` (length m)."""

    f: np.ndarray
    g_half: np.ndarray
    n: int = 0
    dt: float = 0.1

    def __post_init__(self):
        if not self.dt > 0:
            raise PreconditionError("dt", "time step must be positive, got {}".format(self.dt))


class SkewScheme(LeapfrogScheme):
    integer_field = "f"
    half_field = "g_half"

    def __init__(self, op):
        self.op = op

    def integer_rate(self, state, half):
        return self.op.apply(half)

    def half_rate(self, state, integer):
        return -self.op.adjoint(integer)

    def integer_norm2(self, state, value):
        return float(np.dot(value, value))

    def half_norm2(self, state, value):
        return float(np.dot(value, value))

    def check(self, state):
        if np.shape(state.f) != (self.op.rows,) or np.shape(state.g_half) != (self.op.cols,):
            raise ShapeError(
                "state",
                "f {} and g {} do not fit a {}x{} operator".format(
                    np.shape(state.f), np.shape(state.g_half), self.op.rows, self.op.cols
                ),
            )
        return state


def leapfrog_step(state, op):
    """
    ``f[n+1] = f[n] + dt A g[n+1/2]``, then ``g[n+3/2] = g[n+1/2] - dt A^T f[n+1]``.

    :param state: The current state.
    :type state: :class:`SkewState`

    :param op: The operator.
    :type op: :class:`SkewOperator`

    :raises mimeticpy.exceptions.ShapeError: when the state does not fit the operator.
    :raises mimeticpy.exceptions.NumericOverflowError: on a non-finite result.

    :rtype: :class:`SkewState`
    """
    scheme = SkewScheme(op)
    return scheme.step(scheme.check(state))


def trajectory(state, op, n_steps):
    """Yields ``state`` and the following ``n_steps`` states."""
    scheme = SkewScheme(op)
    return scheme.trajectory(scheme.check(state), n_steps)


def init_g_half(f0, g0, op, dt):
    """Starts the scheme from ``f(0)`` and ``g(0)`` with ``g[1/2] = g(0) - dt/2 A^T f(0)``.

    :rtype: :class:`SkewState`
    """
    f0 = np.asarray(f0, dtype=np.float64)
    g0 = np.asarray(g0, dtype=np.float64)
    if g0.shape != (op.cols,):
        raise ShapeError("g0", "expects length {}, got shape {}".format(op.cols, g0.shape))
    g_half = g0 - (dt / 2) * op.adjoint(f0)
    return SkewState(f0.copy(), g_half, 0, dt)


def conserved(window, op, kind):
    """Evaluates a quantity on a window of consecutive states.

    ``C_n`` and ``C_half`` are the corrected quantities conserved by the scheme, ``C_continuous`` is half
    the squared norm conserved by the continuous system, ``E_energy`` half the squared norms of the time
    differences.

    :param window: At least two consecutive states.
    :type window: sequence of :class:`SkewState`

    :param kind: One of ``C_n, C_half, C_continuous, E_energy``.
    :type kind: str

    :rtype: float
    """
    scheme = SkewScheme(op)
    states = [scheme.check(s) for s in window]
    if kind == "C_n":
        return scheme.conserved_n(states)
    if kind == "C_half":
        return scheme.conserved_half(states)
    if kind == "C_continuous":
        return 0.5 * scheme.conserved_simple(states)
    if kind == "E_energy":
        return scheme.energy(states)
    raise InvalidWindowError(kind, "unknown quantity; options are C_n, C_half, C_continuous, E_energy")


def operator_norm(op, tol=DEFAULT, max_iter=DEFAULT, seed=DEFAULT):
    """Spectral norm of ``A`` by power iteration on ``A^T A``.

    :param tol: Relative tolerance on the eigenvalue of ``A^T A``. Defaults to ``options.default_tol``.
    :type tol: float

    :returns: 0 for the zero matrix.
    :rtype: float
    """
    rng = get_rng(pick(seed, options.default_seed))
    start = rng.standard_normal(op.cols)
    value = power_iteration(
        lambda x: op.adjoint(op.apply(x)),
        lambda x: float(np.linalg.norm(x)),
        start,
        pick(tol, options.default_tol),
        pick(max_iter, options.default_max_iter),
        name="A^T A",
    )
    return math.sqrt(value)


def second_order_residual(window, op, field="f"):
    """Defect of ``(x[n+1] - 2 x[n] + x[n-1]) / dt**2 = -A A^T x[n]`` (``field="f"``) or of
    the ``A^T A`` recursion of the half-step values (``field="g"``) on three consecutive states.

    :rtype: float
    """
    if field not in ("f", "g"):
        raise ValueError("field must be either 'f' or 'g', not {}.".format(field))
    scheme = SkewScheme(op)
    states = [scheme.check(s) for s in window]
    return scheme.second_order_residual(states, field="integer" if field == "f" else "half")


def random_operator(rows, cols, seed=DEFAULT, rank=None):
    """Seeded standard normal matrix, optionally of reduced rank.

    :param rank: When given, the matrix is a product of ``rows x rank`` and ``rank x cols`` factors.
    :type rank: int

    :rtype: :class:`SkewOperator`
    """
    rng = get_rng(pick(seed, options.default_seed))
    if rank is None:
        return SkewOperator(rng.standard_normal((rows, cols)))
    if not 0 <= rank <= min(rows, cols):
        raise PreconditionError("rank", "must lie in [0, {}], got {}".format(min(rows, cols), rank))
    return SkewOperator(rng.standard_normal((rows, rank)) @ rng.standard_normal((rank, cols)))
