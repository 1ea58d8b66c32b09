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
Mimetic operator calculus on a periodic staggered 3D lattice.

Every field lives on one of eight staggered kinds, four on the primal grid and four on the dual grid.
Component ``c`` of a field is stored as an ``(nx, ny, nz)`` array indexed ``[i, j, k]``; the staggering
offset is metadata:

============  ==============================================================
Kind          Location of entry ``[i, j, k]``
============  ==============================================================
S_N, S_C*     ``(i, j, k)``
V_E, V_F*     x: ``(i+1/2, j, k)``, y: ``(i, j+1/2, k)``, z: ``(i, j, k+1/2)``
V_F, V_E*     x: ``(i, j+1/2, k+1/2)``, y: ``(i+1/2, j, k+1/2)``, z: ``(i+1/2, j+1/2, k)``
S_C, S_N*     ``(i+1/2, j+1/2, k+1/2)``
============  ==============================================================

The primal operators G, R, D use forward differences and the dual operators G*, R*, D* backward
differences, so both chains ``S_N -> V_E -> V_F -> S_C`` and ``S_N* -> V_E* -> V_F* -> S_C*`` are exact.
"""

import math
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from .exceptions import PreconditionError, ShapeError, SignatureError
from .solver_base import DEFAULT, options, pick
from .utils import get_rng, power_iteration


class GridSpec3(object):
    """
    Periodic structured lattice: cell counts and spacings per axis.
    """

    def __init__(self, nx, ny, nz, dx=1.0, dy=1.0, dz=1.0):
        """
        :param nx: Number of cells along x, at least 2. Same for ``ny`` and ``nz``.
        :type nx: int

        :param dx: Spacing along x, positive. Same for ``dy`` and ``dz``.
        :type dx: float

        :raises mimeticpy.exceptions.SignatureError: for counts below 2 or nonpositive spacings.
        """
        counts = (int(nx), int(ny), int(nz))
        spacing = (float(dx), float(dy), float(dz))
        if min(counts) < 2:
            raise SignatureError("grid", "every axis needs at least 2 cells, got {}".format(counts))
        if not all(h > 0 and math.isfinite(h) for h in spacing):
            raise SignatureError("grid", "spacings must be positive, got {}".format(spacing))
        self._shape = counts
        self._spacing = spacing

    @property
    def shape(self) -> Tuple[int, int, int]:
        """
        The lattice shape ``(nx, ny, nz)`` shared by every component array.

        :rtype: tuple of int
        """
        return self._shape

    @property
    def spacing(self) -> Tuple[float, float, float]:
        """
        The spacings ``(dx, dy, dz)``.

        :rtype: tuple of float
        """
        return self._spacing

    @property
    def nx(self) -> int:
        return self._shape[0]

    @property
    def ny(self) -> int:
        return self._shape[1]

    @property
    def nz(self) -> int:
        return self._shape[2]

    @property
    def dx(self) -> float:
        return self._spacing[0]

    @property
    def dy(self) -> float:
        return self._spacing[1]

    @property
    def dz(self) -> float:
        return self._spacing[2]

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dy * self.dz

    @property
    def min_spacing(self) -> float:
        return min(self._spacing)

    def scaled(self, factor):
        """Returns the same lattice with every spacing multiplied by ``factor``."""
        return GridSpec3(*self._shape, *(h * factor for h in self._spacing))

    def __eq__(self, other):
        return (
            isinstance(other, GridSpec3)
            and self._shape == other._shape
            and self._spacing == other._spacing
        )

    def __hash__(self):
        return hash((self._shape, self._spacing))

    def __repr__(self):  # pragma: no cover
        return "GridSpec3({}, {})".format(self._shape, self._spacing)


class FieldKind(str, Enum):
    """The eight staggered field kinds. The value is the short symbol used in snapshots and messages."""

    NODE = "S_N"
    EDGE = "V_E"
    FACE = "V_F"
    CELL = "S_C"
    DUAL_NODE = "S_N*"
    DUAL_EDGE = "V_E*"
    DUAL_FACE = "V_F*"
    DUAL_CELL = "S_C*"

    @property
    def is_vector(self) -> bool:
        return self in _VECTOR_KINDS

    @property
    def is_dual(self) -> bool:
        return self.value.endswith("*")

    @property
    def n_components(self) -> int:
        return 3 if self.is_vector else 1

    @property
    def exponent(self) -> int:
        """Power ``k`` of the spatial unit ``1/d**k`` carried by fields of this kind."""
        return _EXPONENT[self]

    @property
    def offsets(self) -> Tuple[Tuple[float, float, float], ...]:
        """Staggering offset of each component, in units of the spacing."""
        return _OFFSETS[self]


_VECTOR_KINDS = frozenset([FieldKind.EDGE, FieldKind.FACE, FieldKind.DUAL_EDGE, FieldKind.DUAL_FACE])

_EXPONENT = {
    FieldKind.NODE: 0,
    FieldKind.EDGE: 1,
    FieldKind.FACE: 2,
    FieldKind.CELL: 3,
    FieldKind.DUAL_NODE: 0,
    FieldKind.DUAL_EDGE: 1,
    FieldKind.DUAL_FACE: 2,
    FieldKind.DUAL_CELL: 3,
}

_CORNER = ((0.0, 0.0, 0.0),)
_CENTRE = ((0.5, 0.5, 0.5),)
_EDGES = ((0.5, 0.0, 0.0), (0.0, 0.5, 0.0), (0.0, 0.0, 0.5))
_FACES = ((0.0, 0.5, 0.5), (0.5, 0.0, 0.5), (0.5, 0.5, 0.0))

_OFFSETS = {
    FieldKind.NODE: _CORNER,
    FieldKind.EDGE: _EDGES,
    FieldKind.FACE: _FACES,
    FieldKind.CELL: _CENTRE,
    FieldKind.DUAL_NODE: _CENTRE,
    FieldKind.DUAL_EDGE: _FACES,
    FieldKind.DUAL_FACE: _EDGES,
    FieldKind.DUAL_CELL: _CORNER,
}


def site_coordinates(grid, kind, component=0):
    """Coordinates of the sites of one component of a field kind.

    :param grid: The lattice.
    :type grid: :class:`GridSpec3`

    :param kind: The field kind.
    :type kind: :class:`FieldKind` or str

    :param component: Component index, 0 for scalar kinds.
    :type component: int

    :returns: Three ``(nx, ny, nz)`` arrays of x, y and z coordinates.
    :rtype: tuple of numpy.ndarray
    """
    offset = FieldKind(kind).offsets[component]
    axes = [
        (np.arange(n, dtype=np.float64) + o) * h for n, o, h in zip(grid.shape, offset, grid.spacing)
    ]
    return tuple(np.meshgrid(*axes, indexing="ij"))


class Field3(object):
    """
    A discrete field of one staggered kind: one component array for scalar kinds, three for vector kinds.
    Fields are treated as immutable; every operation returns a new field.
    """

    __array_ufunc__ = None

    def __init__(self, kind, grid, *components):
        """
        :param kind: The field kind.
        :type kind: :class:`FieldKind` or str

        :param grid: The lattice.
        :type grid: :class:`GridSpec3`

        :param components: One array per component, each of shape ``grid.shape``.
        :type components: numpy.ndarray
        """
        kind = FieldKind(kind)
        if len(components) != kind.n_components:
            raise ShapeError(
                kind.value, "expects {} components, got {}".format(kind.n_components, len(components))
            )
        arrays = tuple(np.asarray(c, dtype=np.float64) for c in components)
        for array in arrays:
            if array.shape != grid.shape:
                raise ShapeError(
                    kind.value, "component shape {} != grid {}".format(array.shape, grid.shape)
                )
        self._kind = kind
        self._grid = grid
        self._components = arrays

    @classmethod
    def zeros(cls, kind, grid):
        kind = FieldKind(kind)
        return cls(kind, grid, *(np.zeros(grid.shape) for _ in range(kind.n_components)))

    @classmethod
    def constant(cls, kind, grid, value):
        kind = FieldKind(kind)
        return cls(kind, grid, *(np.full(grid.shape, float(value)) for _ in range(kind.n_components)))

    @classmethod
    def random(cls, kind, grid, rng, low=-1.0, high=1.0):
        """Uniformly distributed entries drawn from a :class:`numpy.random.Generator`."""
        kind = FieldKind(kind)
        return cls(kind, grid, *(rng.uniform(low, high, grid.shape) for _ in range(kind.n_components)))

    @classmethod
    def spike(cls, kind, grid, index=(0, 0, 0), component=0, value=1.0):
        """A single nonzero entry."""
        field = cls.zeros(kind, grid)
        field._components[component][tuple(index)] = value
        return field

    @classmethod
    def from_function(cls, kind, grid, function):
        """Samples an analytic function at the staggered sites of ``kind``.

        :param function: ``function(x, y, z)`` returning an array for scalar kinds, or a 3-tuple of arrays
            for vector kinds; component ``c`` is taken from the evaluation at the sites of component ``c``.
        :type function: callable
        """
        kind = FieldKind(kind)
        components = []
        for c in range(kind.n_components):
            values = function(*site_coordinates(grid, kind, c))
            if kind.is_vector:
                values = values[c]
            components.append(np.broadcast_to(np.asarray(values, dtype=np.float64), grid.shape).copy())
        return cls(kind, grid, *components)

    @property
    def kind(self) -> FieldKind:
        return self._kind

    @property
    def grid(self) -> GridSpec3:
        return self._grid

    @property
    def components(self) -> Tuple[np.ndarray, ...]:
        """
        The component arrays, x first.

        :rtype: tuple of numpy.ndarray
        """
        return self._components

    @property
    def data(self):
        """The single array of a scalar field, the component tuple of a vector field."""
        return self._components if self._kind.is_vector else self._components[0]

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(c))) for c in self._components)

    def with_kind(self, kind):
        """The same values relabelled as another kind with the same component count."""
        return Field3(kind, self._grid, *self._components)

    def _check(self, other):
        if other._kind is not self._kind:
            raise SignatureError(
                "kind", "cannot combine {} with {}".format(self._kind.value, other._kind.value)
            )
        if other._grid != self._grid:
            raise SignatureError("grid", "fields live on different grids")

    def __add__(self, other):
        if not isinstance(other, Field3):
            return NotImplemented
        self._check(other)
        return Field3(self._kind, self._grid, *(a + b for a, b in zip(self._components, other._components)))

    def __sub__(self, other):
        if not isinstance(other, Field3):
            return NotImplemented
        self._check(other)
        return Field3(self._kind, self._grid, *(a - b for a, b in zip(self._components, other._components)))

    def __neg__(self):
        return Field3(self._kind, self._grid, *(-a for a in self._components))

    def __mul__(self, factor):
        if isinstance(factor, Field3):
            return NotImplemented
        factor = float(factor)
        return Field3(self._kind, self._grid, *(factor * a for a in self._components))

    __rmul__ = __mul__

    def __repr__(self):  # pragma: no cover
        return "Field3({}, {})".format(self._kind.value, self._grid)


class Material(object):
    """
    The positive pointwise star operators: ``a`` at nodes, ``b`` at cell centres, ``A`` at the three primal
    edge sites and ``B`` at the three primal face sites. Tensors are scalar-diagonal, one value per site.
    Inverses are computed once.
    """

    def __init__(self, grid, a, b, A, B):
        """
        :param grid: The lattice.
        :type grid: :class:`GridSpec3`

        :param a: Node values, shape ``grid.shape``.
        :type a: numpy.ndarray

        :param b: Cell-centre values.
        :type b: numpy.ndarray

        :param A: Three arrays at the x, y and z edge sites.
        :type A: sequence of numpy.ndarray

        :param B: Three arrays at the x, y and z face sites.
        :type B: sequence of numpy.ndarray

        :raises mimeticpy.exceptions.PreconditionError: when any entry is not strictly positive.
        """
        self._grid = grid
        lattices = {
            "a": (np.asarray(a, dtype=np.float64),),
            "b": (np.asarray(b, dtype=np.float64),),
            "A": tuple(np.asarray(c, dtype=np.float64) for c in A),
            "B": tuple(np.asarray(c, dtype=np.float64) for c in B),
        }
        for name, arrays in lattices.items():
            if len(arrays) != (1 if name in "ab" else 3):
                raise ShapeError(name, "wrong number of component lattices")
            for array in arrays:
                if array.shape != grid.shape:
                    raise ShapeError(name, "lattice shape {} != grid {}".format(array.shape, grid.shape))
                if not np.all(array > 0) or not np.all(np.isfinite(array)):
                    raise PreconditionError(name, "material must be strictly positive and finite")
        self._lattices = dict(lattices)
        for name, arrays in lattices.items():
            self._lattices[name + "_inv"] = tuple(1.0 / array for array in arrays)

    @classmethod
    def uniform(cls, grid, a=1.0, b=1.0, A=1.0, B=1.0):
        """Constant materials."""
        full = lambda value: np.full(grid.shape, float(value))  # noqa: E731
        return cls(grid, full(a), full(b), [full(A)] * 3, [full(B)] * 3)

    @classmethod
    def random(cls, grid, seed, low=0.5, high=2.0):
        """Seeded materials drawn uniformly from ``[low, high)``."""
        if not 0 < low <= high:
            raise PreconditionError("materials", "need 0 < low <= high, got [{}, {}]".format(low, high))
        rng = get_rng(seed)
        draw = lambda: rng.uniform(low, high, grid.shape)  # noqa: E731
        return cls(grid, draw(), draw(), [draw() for _ in range(3)], [draw() for _ in range(3)])

    @classmethod
    def sample(cls, grid, a=1.0, b=1.0, A=1.0, B=1.0):
        """Samples constants or analytic functions ``f(x, y, z)`` at the sites of each star operator.

        ``A`` and ``B`` are scalar functions times the identity, sampled at each of the three edge (resp. face)
        sites.
        """

        def lattice(spec, kind, component):
            if callable(spec):
                values = spec(*site_coordinates(grid, kind, component))
            else:
                values = spec
            return np.broadcast_to(np.asarray(values, dtype=np.float64), grid.shape).copy()

        return cls(
            grid,
            lattice(a, FieldKind.NODE, 0),
            lattice(b, FieldKind.CELL, 0),
            [lattice(A, FieldKind.EDGE, c) for c in range(3)],
            [lattice(B, FieldKind.FACE, c) for c in range(3)],
        )

    @classmethod
    def electromagnetic(cls, grid, eps=1.0, mu=1.0):
        """Permittivity in the ``A`` role and permeability in the ``B`` role.

        :param eps: A constant, or three arrays at the edge sites.
        :param mu: A constant, or three arrays at the face sites.
        """

        def components(value):
            if np.ndim(value) == 0:
                return [np.full(grid.shape, float(value))] * 3
            return list(value)

        ones = np.ones(grid.shape)
        return cls(grid, ones, ones, components(eps), components(mu))

    @property
    def grid(self) -> GridSpec3:
        return self._grid

    def lattice(self, which) -> Tuple[np.ndarray, ...]:
        """
        Component lattices of one star operator or its inverse, e.g. ``"A"`` or ``"b_inv"``.

        :rtype: tuple of numpy.ndarray
        """
        try:
            return self._lattices[which]
        except KeyError:
            raise SignatureError(which, "unknown star operator; options are: {}".format(list(_STAR)))

    def scaled(self, factor):
        """Every lattice multiplied by ``factor``."""
        return Material(
            self._grid,
            factor * self._lattices["a"][0],
            factor * self._lattices["b"][0],
            [factor * c for c in self._lattices["A"]],
            [factor * c for c in self._lattices["B"]],
        )

    def __repr__(self):  # pragma: no cover
        return "Material({})".format(self._grid)


def _forward(array, axis):
    return np.roll(array, -1, axis) - array


def _backward(array, axis):
    return array - np.roll(array, 1, axis)


def _gradient(diff, components, h):
    (s,) = components
    return tuple(diff(s, axis) / h[axis] for axis in range(3))


def _curl(diff, components, h):
    tx, ty, tz = components
    dx, dy, dz = h
    return (
        diff(tz, 1) / dy - diff(ty, 2) / dz,
        diff(tx, 2) / dz - diff(tz, 0) / dx,
        diff(ty, 0) / dx - diff(tx, 1) / dy,
    )


def _divergence(diff, components, h):
    nx, ny, nz = components
    return (diff(nx, 0) / h[0] + diff(ny, 1) / h[1] + diff(nz, 2) / h[2],)


# name -> (domain, codomain, stencil, difference)
_DIFF = {
    "G": (FieldKind.NODE, FieldKind.EDGE, _gradient, _forward),
    "R": (FieldKind.EDGE, FieldKind.FACE, _curl, _forward),
    "D": (FieldKind.FACE, FieldKind.CELL, _divergence, _forward),
    "G*": (FieldKind.DUAL_NODE, FieldKind.DUAL_EDGE, _gradient, _backward),
    "R*": (FieldKind.DUAL_EDGE, FieldKind.DUAL_FACE, _curl, _backward),
    "D*": (FieldKind.DUAL_FACE, FieldKind.DUAL_CELL, _divergence, _backward),
}

# name -> (domain, codomain)
_STAR = {
    "a": (FieldKind.NODE, FieldKind.DUAL_CELL),
    "b": (FieldKind.DUAL_NODE, FieldKind.CELL),
    "A": (FieldKind.EDGE, FieldKind.DUAL_FACE),
    "B": (FieldKind.DUAL_EDGE, FieldKind.FACE),
    "a_inv": (FieldKind.DUAL_CELL, FieldKind.NODE),
    "b_inv": (FieldKind.CELL, FieldKind.DUAL_NODE),
    "A_inv": (FieldKind.DUAL_FACE, FieldKind.EDGE),
    "B_inv": (FieldKind.FACE, FieldKind.DUAL_EDGE),
}

# space -> star lattice weighting its inner product
_WEIGHT = {
    FieldKind.NODE: "a",
    FieldKind.DUAL_NODE: "b",
    FieldKind.EDGE: "A",
    FieldKind.DUAL_EDGE: "B",
    FieldKind.FACE: "B_inv",
    FieldKind.DUAL_FACE: "A_inv",
    FieldKind.CELL: "b_inv",
    FieldKind.DUAL_CELL: "a_inv",
}


def diff_signature(op):
    """Domain and codomain kinds of a difference operator."""
    try:
        domain, codomain, _, _ = _DIFF[op]
    except KeyError:
        raise SignatureError(op, "unknown difference operator; options are: {}".format(list(_DIFF)))
    return domain, codomain


def apply_diff(op, f):
    """Applies one of the difference operators ``G, R, D`` or their duals ``G*, R*, D*``.

    :param op: Operator name.
    :type op: str

    :param f: A field of the operator's domain kind.
    :type f: :class:`Field3`

    :raises mimeticpy.exceptions.SignatureError: when ``f`` is not of the domain kind.

    :rtype: :class:`Field3`
    """
    domain, codomain = diff_signature(op)
    if f.kind is not domain:
        raise SignatureError(op, "expects {}, got {}".format(domain.value, f.kind.value))
    _, _, stencil, difference = _DIFF[op]
    return Field3(codomain, f.grid, *stencil(difference, f.components, f.grid.spacing))


def apply_material(which, f, mat):
    """Multiplies pointwise by a star operator, mapping a field to the co-located kind on the other grid.

    :param which: One of ``a, b, A, B, a_inv, b_inv, A_inv, B_inv``.
    :type which: str

    :param f: A field of the star operator's domain kind.
    :type f: :class:`Field3`

    :param mat: The materials.
    :type mat: :class:`Material`

    :rtype: :class:`Field3`
    """
    try:
        domain, codomain = _STAR[which]
    except KeyError:
        raise SignatureError(which, "unknown star operator; options are: {}".format(list(_STAR)))
    if f.kind is not domain:
        raise SignatureError(which, "expects {}, got {}".format(domain.value, f.kind.value))
    if mat.grid != f.grid:
        raise SignatureError("grid", "material and field live on different grids")
    return Field3(codomain, f.grid, *(w * c for w, c in zip(mat.lattice(which), f.components)))


def inner(space, f1, f2, mat):
    """Weighted inner product on one of the eight spaces, times the cell volume.

    Products are formed as ``weight * (f1 * f2)`` so the result is symmetric bitwise, and the sum runs
    component by component in a fixed order.

    :param space: The space both fields belong to.
    :type space: :class:`FieldKind` or str

    :rtype: float
    """
    space = FieldKind(space)
    for f in (f1, f2):
        if f.kind is not space:
            raise SignatureError(space.value, "inner product got a {} field".format(f.kind.value))
    if f1.grid != f2.grid or mat.grid != f1.grid:
        raise SignatureError("grid", "inner product operands live on different grids")
    total = 0.0
    for w, a, b in zip(mat.lattice(_WEIGHT[space]), f1.components, f2.components):
        total += float(np.sum(w * (a * b)))
    return total * f1.grid.cell_volume


def norm(space, f, mat):
    """Weighted norm, the square root of :func:`inner`."""
    return math.sqrt(inner(space, f, f, mat))


class AdjointReport(object):
    """
    Relative residuals of the three summation-by-parts identities, each normalised by the product of the
    operand norms. Access via properties ``gradient``, ``curl`` and ``divergence``.
    """

    def __init__(self, gradient, curl, divergence):
        self._gradient = gradient
        self._curl = curl
        self._divergence = divergence

    @property
    def gradient(self) -> float:
        """
        Residual of ``<A G s, n*>_F* = -<s, a^-1 D* n*>_N``.

        :rtype: float
        """
        return self._gradient

    @property
    def curl(self) -> float:
        """
        Residual of ``<B^-1 R t, t*>_E* = <t, A^-1 R* t*>_E``.

        :rtype: float
        """
        return self._curl

    @property
    def divergence(self) -> float:
        """
        Residual of ``<b^-1 D n, s*>_N* = -<n, B G* s*>_F``.

        :rtype: float
        """
        return self._divergence

    @property
    def residuals(self) -> Dict[str, float]:
        return {"gradient": self._gradient, "curl": self._curl, "divergence": self._divergence}

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def passed(self, tol=1e-13) -> bool:
        return self.max_residual() <= tol

    def __repr__(self):  # pragma: no cover
        return "AdjointReport({})".format(self.residuals)


def _relative(lhs, rhs, scale):
    return abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)


def adjoint_residuals(mat, s, n_star, t, t_star, n, s_star):
    """Evaluates the three adjoint identities on the given fields.

    :returns: The report with one relative residual per identity.
    :rtype: :class:`AdjointReport`
    """
    ags = apply_material("A", apply_diff("G", s), mat)
    ddn = apply_material("a_inv", apply_diff("D*", n_star), mat)
    gradient = _relative(
        inner(FieldKind.DUAL_FACE, ags, n_star, mat),
        -inner(FieldKind.NODE, s, ddn, mat),
        norm(FieldKind.DUAL_FACE, ags, mat) * norm(FieldKind.DUAL_FACE, n_star, mat)
        + norm(FieldKind.NODE, s, mat) * norm(FieldKind.NODE, ddn, mat),
    )

    brt = apply_material("B_inv", apply_diff("R", t), mat)
    art = apply_material("A_inv", apply_diff("R*", t_star), mat)
    curl = _relative(
        inner(FieldKind.DUAL_EDGE, brt, t_star, mat),
        inner(FieldKind.EDGE, t, art, mat),
        norm(FieldKind.DUAL_EDGE, brt, mat) * norm(FieldKind.DUAL_EDGE, t_star, mat)
        + norm(FieldKind.EDGE, t, mat) * norm(FieldKind.EDGE, art, mat),
    )

    bdn = apply_material("b_inv", apply_diff("D", n), mat)
    bgs = apply_material("B", apply_diff("G*", s_star), mat)
    divergence = _relative(
        inner(FieldKind.DUAL_NODE, bdn, s_star, mat),
        -inner(FieldKind.FACE, n, bgs, mat),
        norm(FieldKind.DUAL_NODE, bdn, mat) * norm(FieldKind.DUAL_NODE, s_star, mat)
        + norm(FieldKind.FACE, n, mat) * norm(FieldKind.FACE, bgs, mat),
    )
    return AdjointReport(gradient, curl, divergence)


def check_adjoints(grid, mat, seed=DEFAULT):
    """Checks the three adjoint identities on seeded random fields.

    :param grid: The lattice.
    :type grid: :class:`GridSpec3`

    :param mat: The materials.
    :type mat: :class:`Material`

    :param seed: Seed of the random fields. Defaults to ``options.default_seed``.
    :type seed: int

    :rtype: :class:`AdjointReport`
    """
    rng = get_rng(pick(seed, options.default_seed))
    kinds = (
        FieldKind.NODE,
        FieldKind.DUAL_FACE,
        FieldKind.EDGE,
        FieldKind.DUAL_EDGE,
        FieldKind.FACE,
        FieldKind.DUAL_NODE,
    )
    return adjoint_residuals(mat, *(Field3.random(kind, grid, rng) for kind in kinds))


class ExactnessReport(object):
    """
    Scaled infinity-norm residuals of the compositions that vanish identically: the gradients of constants
    and ``RG``, ``DR``, ``R*G*``, ``D*R*`` on random inputs.
    """

    def __init__(self, residuals):
        self._residuals = dict(residuals)

    @property
    def residuals(self) -> Dict[str, float]:
        return dict(self._residuals)

    def __getitem__(self, item):
        return self._residuals[item]

    def max_residual(self) -> float:
        return max(self._residuals.values())

    def passed(self, tol=1e-13) -> bool:
        return self.max_residual() <= tol

    def __repr__(self):  # pragma: no cover
        return "ExactnessReport({})".format(self._residuals)


def check_exactness(grid, seed=DEFAULT):
    """Checks that consecutive operators of both exact sequences compose to zero.

    Residuals are infinity norms divided by ``input scale / min spacing**2`` (``/ min spacing`` for the
    single gradients of constants).

    :param grid: The lattice.
    :type grid: :class:`GridSpec3`

    :param seed: Seed of the random inputs. Defaults to ``options.default_seed``.
    :type seed: int

    :rtype: :class:`ExactnessReport`
    """
    rng = get_rng(pick(seed, options.default_seed))
    h = grid.min_spacing
    value = rng.uniform(0.5, 2.0)

    def scaled(result, source, power):
        scale = source.max_abs() / h**power
        return result.max_abs() / scale if scale > 0 else result.max_abs()

    residuals = {}
    for op, kind in (("G", FieldKind.NODE), ("G*", FieldKind.DUAL_NODE)):
        c = Field3.constant(kind, grid, value)
        residuals[op + "_const"] = scaled(apply_diff(op, c), c, 1)
    for first, second in (("G", "R"), ("R", "D"), ("G*", "R*"), ("R*", "D*")):
        source = Field3.random(diff_signature(first)[0], grid, rng)
        result = apply_diff(second, apply_diff(first, source))
        residuals[second + first] = scaled(result, source, 2)
    return ExactnessReport(residuals)


class SecondOrder(object):
    """A composite second-order operator: a chain of difference and star operators applied right to left."""

    def __init__(self, name, chain):
        self._name = name
        self._chain = tuple(chain)
        last = self._chain[-1]
        self._space = diff_signature(last)[0] if last in _DIFF else _STAR[last][0]

    @property
    def name(self) -> str:
        return self._name

    @property
    def chain(self) -> Tuple[str, ...]:
        return self._chain

    @property
    def space(self) -> FieldKind:
        """The kind the operator maps to itself; its inner product makes the operator self-adjoint."""
        return self._space

    def __call__(self, mat, f):
        for op in reversed(self._chain):
            f = apply_diff(op, f) if op in _DIFF else apply_material(op, f, mat)
        return f

    def __repr__(self):  # pragma: no cover
        return "SecondOrder({}, {})".format(self._name, self._chain)


SECOND_ORDER = {
    "laplacian_P": SecondOrder("laplacian_P", ("a_inv", "D*", "A", "G")),
    "laplacian_V": SecondOrder("laplacian_V", ("D*", "A", "G", "a_inv")),
    "curlcurl_C": SecondOrder("curlcurl_C", ("A_inv", "R*", "B_inv", "R")),
    "curlcurl_S": SecondOrder("curlcurl_S", ("R", "A_inv", "R*", "B_inv")),
    "laplacian_P_star": SecondOrder("laplacian_P_star", ("b_inv", "D", "B", "G*")),
    "laplacian_V_star": SecondOrder("laplacian_V_star", ("D", "B", "G*", "b_inv")),
    "curlcurl_C_star": SecondOrder("curlcurl_C_star", ("B_inv", "R", "A_inv", "R*")),
    "curlcurl_S_star": SecondOrder("curlcurl_S_star", ("R*", "B_inv", "R", "A_inv")),
}


def get_second_order(kind):
    """Looks up a composite second-order operator by name.

    :rtype: :class:`SecondOrder`
    """
    try:
        return SECOND_ORDER[kind]
    except KeyError:
        raise SignatureError(kind, "unknown composite; options are: {}".format(list(SECOND_ORDER)))


def second_order(kind, mat, f):
    """Applies a composite second-order operator, checking every intermediate kind.

    Laplacians (``laplacian_*``) are negative semidefinite and curl-curls (``curlcurl_*``) positive
    semidefinite, both self-adjoint in the inner product of the composite's space.

    :param kind: Composite name, e.g. ``"laplacian_P"`` (``a^-1 D* A G`` on S_N) or ``"curlcurl_C"``
        (``A^-1 R* B^-1 R`` on V_E).
    :type kind: str

    :rtype: :class:`Field3`
    """
    return get_second_order(kind)(mat, f)


def operator_norm_estimate(composite, grid, mat, tol=DEFAULT, max_iter=DEFAULT, seed=DEFAULT):
    """Power-iteration estimate of a composite's norm in its weighted inner product.

    :param composite: Composite name, see :data:`SECOND_ORDER`, or a :class:`SecondOrder`.
    :type composite: str or :class:`SecondOrder`

    :param tol: Relative stopping tolerance. Defaults to ``options.default_tol``.
    :type tol: float

    :rtype: float
    """
    op = composite if isinstance(composite, SecondOrder) else get_second_order(composite)
    rng = get_rng(pick(seed, options.default_seed))
    start = Field3.random(op.space, grid, rng)
    return power_iteration(
        lambda x: op(mat, x),
        lambda x: norm(op.space, x, mat),
        start,
        pick(tol, options.default_tol),
        pick(max_iter, options.default_max_iter),
        name=op.name,
    )


def fourier_symbol_max(grid):
    """Largest eigenvalue magnitude of the unit-material laplacian and curl-curl on the periodic lattice.

    Both share the symbol ``sum over axes of 4 sin(pi k / n)**2 / h**2``, maximised over the wave numbers.

    :rtype: float
    """
    total = 0.0
    for n, h in zip(grid.shape, grid.spacing):
        total += max(4.0 * math.sin(math.pi * k / n) ** 2 for k in range(n)) / h**2
    return total
