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
Source-free Maxwell equations ``E' = eps^-1 R* H, H' = -mu^-1 R E`` with ``E`` on the primal edges and
``H`` on the dual edges. Permittivity plays the role of the edge star ``A`` and permeability that of the
face star ``B``; with unit materials the update is the Yee scheme.
"""

import math
from collections import namedtuple
from dataclasses import dataclass

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
from ..solver_base import DEFAULT, LeapfrogScheme, options, pick
from ..utils import get_rng

Divergences = namedtuple("Divergences", ["electric", "magnetic"])
"""``D*(eps E)`` on the dual cells and ``D(mu H)`` on the primal cells."""


def _material(grid, eps, mu):
    if isinstance(eps, Material):
        return eps
    return Material.electromagnetic(grid, eps, mu)


@dataclass(frozen=True, eq=False)
class MaxwellState:
    """``E`` at step ``n`` and ``H_half`` at step ``n + 1/2``; ``mat`` carries ``eps`` as ``A`` and ``mu``
    as ``B``."""

    E: Field3
    H_half: Field3
    mat: Material
    n: int = 0
    dt: float = 0.1

    def __post_init__(self):
        if self.E.kind is not FieldKind.EDGE or self.H_half.kind is not FieldKind.DUAL_EDGE:
            raise SignatureError(
                "state",
                "expects E on V_E and H on V_E*, got {} and {}".format(
                    self.E.kind.value, self.H_half.kind.value
                ),
            )
        if self.E.grid != self.H_half.grid or self.mat.grid != self.E.grid:
            raise SignatureError("grid", "fields and materials live on different grids")
        if not self.dt > 0:
            raise PreconditionError("dt", "time step must be positive, got {}".format(self.dt))

    @property
    def eps(self):
        return self.mat.lattice("A")

    @property
    def mu(self):
        return self.mat.lattice("B")


class MaxwellScheme(LeapfrogScheme):
    integer_field = "E"
    half_field = "H_half"

    def integer_rate(self, state, half):
        return apply_material("A_inv", apply_diff("R*", half), state.mat)

    def half_rate(self, state, integer):
        return -apply_material("B_inv", apply_diff("R", integer), state.mat)

    def integer_norm2(self, state, value):
        return inner(FieldKind.EDGE, value, value, state.mat)

    def half_norm2(self, state, value):
        return inner(FieldKind.DUAL_EDGE, value, value, state.mat)


SCHEME = MaxwellScheme()


def leapfrog_step(state):
    """
    ``E[n+1] = E[n] + dt eps^-1 R* H[n+1/2]``, then ``H[n+3/2] = H[n+1/2] - dt mu^-1 R E[n+1]``.

    :raises mimeticpy.exceptions.NumericOverflowError: on a non-finite result.

    :rtype: :class:`MaxwellState`
    """
    return SCHEME.step(state)


def init_h_half(E0, H0, eps=1.0, mu=1.0, dt=0.1):
    """Starts the scheme with ``H[1/2] = H(0) - dt/2 mu^-1 R E(0)``.

    :param E0: Initial electric field on the primal edges.
    :type E0: :class:`mimeticpy.mimetic3d.Field3`

    :param H0: Initial magnetic field on the dual edges, or None for zero.
    :type H0: :class:`mimeticpy.mimetic3d.Field3`

    :param eps: Permittivity: a constant, three edge-site arrays, or a complete
        :class:`mimeticpy.mimetic3d.Material` (then ``mu`` is ignored).

    :param mu: Permeability: a constant or three face-site arrays.

    :rtype: :class:`MaxwellState`
    """
    if E0.kind is not FieldKind.EDGE:
        raise SignatureError("E0", "expects V_E, got {}".format(E0.kind.value))
    if H0 is None:
        H0 = Field3.zeros(FieldKind.DUAL_EDGE, E0.grid)
    mat = _material(E0.grid, eps, mu)
    probe = MaxwellState(E0, H0, mat, 0, dt)
    return MaxwellState(E0, H0 + (dt / 2) * SCHEME.half_rate(probe, E0), mat, 0, dt)


def conserved(window, kind):
    """Corrected quantities with eps-weights on ``V_E`` and mu-weights on ``V_E*``: ``C_n`` at the later
    state's step and ``C_half`` half a step after the earlier one.

    :rtype: float
    """
    if kind == "C_n":
        return SCHEME.conserved_n(window)
    if kind == "C_half":
        return SCHEME.conserved_half(window)
    raise InvalidWindowError(kind, "unknown quantity; options are C_n, C_half")


def second_order_residual(window):
    """Defect of ``(E[n+1] - 2 E[n] + E[n-1]) / dt**2 = -eps^-1 R* mu^-1 R E[n]`` in the weighted norm."""
    return SCHEME.second_order_residual(window, field="integer")


def divergences(state):
    """Discrete divergences of the displacement and the induction.

    :rtype: :class:`Divergences`
    """
    return Divergences(
        apply_diff("D*", apply_material("A", state.E, state.mat)),
        apply_diff("D", apply_material("B", state.H_half, state.mat)),
    )


def divergence_diagnostics(state, reference):
    """Drift of both divergences from a reference, as infinity norms.

    :param reference: The initial state, or its :func:`divergences`.
    :type reference: :class:`MaxwellState` or :class:`Divergences`

    :returns: ``(max |D*(eps E) - D*(eps E)_0|, max |D(mu H) - D(mu H)_0|)``.
    :rtype: tuple of float
    """
    if isinstance(reference, MaxwellState):
        reference = divergences(reference)
    current = divergences(state)
    return (
        (current.electric - reference.electric).max_abs(),
        (current.magnetic - reference.magnetic).max_abs(),
    )


def cfl_estimate(eps, mu, grid, tol=DEFAULT, max_iter=DEFAULT):
    """Largest stable time step ``2 / sqrt(||eps^-1 R* mu^-1 R||)``, the norm from power iteration.

    :rtype: float
    """
    mat = _material(grid, eps, mu)
    return 2.0 / math.sqrt(operator_norm_estimate("curlcurl_C", grid, mat, tol=tol, max_iter=max_iter))


def solenoidal_field(grid, mat, seed=DEFAULT):
    """``E = eps^-1 R* psi`` for a seeded random ``psi`` on the dual edges, so ``D*(eps E)`` vanishes."""
    psi = Field3.random(FieldKind.DUAL_EDGE, grid, get_rng(pick(seed, options.default_seed)))
    return apply_material("A_inv", apply_diff("R*", psi), mat)


def gradient_field(grid, seed=DEFAULT):
    """``E = G phi`` for a seeded random ``phi``; its curl vanishes and its divergence does not."""
    phi = Field3.random(FieldKind.NODE, grid, get_rng(pick(seed, options.default_seed)))
    return apply_diff("G", phi)
