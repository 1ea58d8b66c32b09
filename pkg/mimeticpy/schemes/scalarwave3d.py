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
The 3D scalar wave system ``u' = a^-1 D* v, v' = A G u`` with ``u`` at the primal nodes and ``v`` on
the dual faces, and its mirror ``u' = b^-1 D v, v' = B G* u`` with ``u`` at the dual nodes and ``v`` on
the primal faces.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import InvalidWindowError, PreconditionError, SignatureError
from ..mimetic3d import (
    Field3,
    FieldKind,
    Material,
    apply_diff,
    apply_material,
    inner,
    operator_norm_estimate,
)
from ..solver_base import DEFAULT, LeapfrogScheme

# starred -> (u kind, v kind, divergence, inverse scalar star, gradient, vector star, curl, inverse vector star)
_LAYOUT = {
    False: (FieldKind.NODE, FieldKind.DUAL_FACE, "D*", "a_inv", "G", "A", "R", "A_inv"),
    True: (FieldKind.DUAL_NODE, FieldKind.FACE, "D", "b_inv", "G*", "B", "R*", "B_inv"),
}


@dataclass(frozen=True, eq=False)
class ScalarWaveState:
    """``u`` at step ``n`` and ``v_half`` at step ``n + 1/2``. ``starred`` selects the mirrored layout."""

    u: Field3
    v_half: Field3
    mat: Material
    n: int = 0
    dt: float = 0.1
    starred: bool = False

    def __post_init__(self):
        u_kind, v_kind = _LAYOUT[bool(self.starred)][:2]
        if self.u.kind is not u_kind or self.v_half.kind is not v_kind:
            raise SignatureError(
                "state",
                "expects u on {} and v on {}, got {} and {}".format(
                    u_kind.value, v_kind.value, self.u.kind.value, self.v_half.kind.value
                ),
            )
        if self.u.grid != self.v_half.grid or self.mat.grid != self.u.grid:
            raise SignatureError("grid", "fields and materials live on different grids")
        if not self.dt > 0:
            raise PreconditionError("dt", "time step must be positive, got {}".format(self.dt))


class ScalarWaveScheme(LeapfrogScheme):
    integer_field = "u"
    half_field = "v_half"

    def integer_rate(self, state, half):
        _, _, div, scalar_inv = _LAYOUT[state.starred][:4]
        return apply_material(scalar_inv, apply_diff(div, half), state.mat)

    def half_rate(self, state, integer):
        grad, vector = _LAYOUT[state.starred][4:6]
        return apply_material(vector, apply_diff(grad, integer), state.mat)

    def integer_norm2(self, state, value):
        return inner(value.kind, value, value, state.mat)

    def half_norm2(self, state, value):
        return inner(value.kind, value, value, state.mat)


SCHEME = ScalarWaveScheme()


def leapfrog_step(state):
    """
    ``u[n+1] = u[n] + dt a^-1 D* v[n+1/2]``, then ``v[n+3/2] = v[n+1/2] + dt A G u[n+1]``
    (``b^-1 D`` and ``B G*`` for the mirrored layout).

    :raises mimeticpy.exceptions.NumericOverflowError: on a non-finite result.

    :rtype: :class:`ScalarWaveState`
    """
    return SCHEME.step(state)


def init_v_half(u0, v0, mat, dt):
    """Starts the scheme with ``v[1/2] = v(0) + dt/2 A G u(0)``. The layout follows the kind of ``u0``.

    :param u0: Initial ``u`` on the primal or the dual nodes.
    :type u0: :class:`mimeticpy.mimetic3d.Field3`

    :param v0: Initial ``v`` on the matching faces, or None for zero.
    :type v0: :class:`mimeticpy.mimetic3d.Field3`

    :rtype: :class:`ScalarWaveState`
    """
    if u0.kind not in (FieldKind.NODE, FieldKind.DUAL_NODE):
        raise SignatureError("u0", "expects S_N or S_N*, got {}".format(u0.kind.value))
    starred = u0.kind is FieldKind.DUAL_NODE
    if v0 is None:
        v0 = Field3.zeros(_LAYOUT[starred][1], u0.grid)
    probe = ScalarWaveState(u0, v0, mat, 0, dt, starred)
    return ScalarWaveState(u0, v0 + (dt / 2) * SCHEME.half_rate(probe, u0), mat, 0, dt, starred)


def conserved(window, kind):
    """Corrected quantities in the weighted inner products: ``C_n`` at the later state's step and
    ``C_half`` half a step after the earlier one.

    :rtype: float
    """
    if kind == "C_n":
        return SCHEME.conserved_n(window)
    if kind == "C_half":
        return SCHEME.conserved_half(window)
    raise InvalidWindowError(kind, "unknown quantity; options are C_n, C_half")


def second_order_residual(window):
    """Defect of ``(u[n+1] - 2 u[n] + u[n-1]) / dt**2 = a^-1 D* A G u[n]`` in the weighted norm."""
    return SCHEME.second_order_residual(window, field="integer")


def curl_diagnostic(state):
    """``max |R A^-1 v|`` (``R* B^-1 v`` mirrored). Constant zero along runs started from ``v(0) = 0``."""
    curl, vector_inv = _LAYOUT[state.starred][6:]
    return apply_diff(curl, apply_material(vector_inv, state.v_half, state.mat)).max_abs()


def cfl_estimate(grid, mat, tol=DEFAULT, starred=False, max_iter=DEFAULT):
    """Largest stable time step ``2 / sqrt(||a^-1 D* A G||)``, the norm from power iteration.

    :rtype: float
    """
    composite = "laplacian_P_star" if starred else "laplacian_P"
    return 2.0 / math.sqrt(operator_norm_estimate(composite, grid, mat, tol=tol, max_iter=max_iter))


def mode_symbol(grid, k):
    """Eigenvalue magnitude ``sum 4 sin(pi k_i / n_i)**2 / h_i**2`` of the unit-material laplacian on the
    cosine mode with integer wave numbers ``k``."""
    return sum(
        4.0 * math.sin(math.pi * ki / n) ** 2 / h**2 for ki, n, h in zip(k, grid.shape, grid.spacing)
    )


def mode_angle(grid, k, dt):
    """Phase advance per step of the discrete mode, ``cos(theta) = 1 - dt**2 symbol / 2``.

    :raises mimeticpy.exceptions.PreconditionError: when the mode is unstable at ``dt``.
    """
    cosine = 1.0 - dt * dt * mode_symbol(grid, k) / 2
    if abs(cosine) > 1:
        raise PreconditionError("dt", "mode {} is unstable at dt={}".format(tuple(k), dt))
    return math.acos(cosine)


def single_mode(grid, k=(1, 0, 0), starred=False):
    """The cosine mode ``cos(2 pi sum k_i x_i / L_i)`` on the primal (or dual) nodes."""
    kind = FieldKind.DUAL_NODE if starred else FieldKind.NODE
    lengths = [n * h for n, h in zip(grid.shape, grid.spacing)]

    def mode(x, y, z):
        phase = sum(2 * math.pi * ki * xi / length for ki, xi, length in zip(k, (x, y, z), lengths))
        return np.cos(phase)

    return Field3.from_function(kind, grid, mode)


def gaussian(grid, kind=FieldKind.NODE, width=None):
    """A Gaussian bump centred in the box, of width a tenth of the shortest side by default."""
    lengths = [n * h for n, h in zip(grid.shape, grid.spacing)]
    width = width if width is not None else min(lengths) / 10

    def bump(x, y, z):
        r2 = sum((xi - length / 2) ** 2 for xi, length in zip((x, y, z), lengths))
        return np.exp(-r2 / width**2)

    return Field3.from_function(kind, grid, bump)


__all__ = [
    "ScalarWaveState",
    "ScalarWaveScheme",
    "leapfrog_step",
    "init_v_half",
    "conserved",
    "second_order_residual",
    "curl_diagnostic",
    "cfl_estimate",
    "mode_symbol",
    "mode_angle",
    "single_mode",
    "gaussian",
]
