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
Field snapshots: one raw file of little-endian doubles per component, x fastest, next to a JSON sidecar
describing the lattice.
"""

import json
import os

import numpy as np

from .exceptions import ShapeError
from .mimetic3d import Field3
from .utils import logger

DTYPE = "<f8"


def snapshot_name(prefix, step, component):
    return "{}_{:08d}_c{}".format(prefix, step, component)


def _write(directory, prefix, array, component, step, time, meta):
    base = os.path.join(directory, snapshot_name(prefix, step, component))
    np.asarray(array, dtype=DTYPE).ravel(order="F").tofile(base + ".bin")
    sidecar = dict(meta, component=component, step=int(step), time=float(time))
    with open(base + ".json", "w") as stream:
        json.dump(sidecar, stream, sort_keys=True)
    return base + ".bin"


def write_field(directory, prefix, field, step, time):
    """Writes every component of a :class:`mimeticpy.mimetic3d.Field3`.

    :returns: The paths of the component files.
    :rtype: list of str

    :raises OSError: when a file cannot be written.
    """
    grid = field.grid
    meta = {
        "kind": field.kind.value,
        "exponent": field.kind.exponent,
        "nx": grid.nx,
        "ny": grid.ny,
        "nz": grid.nz,
        "dx": grid.dx,
        "dy": grid.dy,
        "dz": grid.dz,
    }
    paths = [_write(directory, prefix, c, i, step, time, meta) for i, c in enumerate(field.components)]
    logger.debug("Wrote snapshot %s at step %d", prefix, step)
    return paths


def write_line(directory, prefix, array, step, time, dx, kind="line"):
    """Writes a 1D array as an ``n x 1 x 1`` lattice.

    :rtype: list of str
    """
    array = np.asarray(array)
    if array.ndim != 1:
        raise ShapeError(prefix, "expects a 1-d array, got shape {}".format(array.shape))
    meta = {"kind": kind, "nx": len(array), "ny": 1, "nz": 1, "dx": float(dx), "dy": 1.0, "dz": 1.0}
    return [_write(directory, prefix, array, 0, step, time, meta)]


def write(directory, prefix, value, step, time, dx=1.0):
    """Writes a field or a 1D array, whichever ``value`` is."""
    if isinstance(value, Field3):
        return write_field(directory, prefix, value, step, time)
    return write_line(directory, prefix, value, step, time, dx)


def read_component(path):
    """Reads one component file back as an ``(nx, ny, nz)`` array together with its sidecar.

    :rtype: tuple of (numpy.ndarray, dict)
    """
    base, _ = os.path.splitext(path)
    with open(base + ".json") as stream:
        meta = json.load(stream)
    data = np.fromfile(path, dtype=DTYPE)
    return data.reshape((meta["nx"], meta["ny"], meta["nz"]), order="F"), meta
