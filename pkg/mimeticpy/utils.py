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

import logging
import math

import numpy as np

from .exceptions import NumericOverflowError, PreconditionError

logger = logging.getLogger("mimeticpy")


def get_rng(seed):
    """Returns a seeded :class:`numpy.random.Generator`.

    :param seed: Seed of the generator. The same seed always gives the same stream.
    :type seed: int

    :rtype: numpy.random.Generator
    """
    return np.random.default_rng(seed)


def max_abs(value):
    """Largest absolute entry of a scalar, an array or a field, as a Python float."""
    if hasattr(value, "components"):
        return max(max_abs(array) for array in value.components)
    if np.ndim(value) == 0:
        return abs(float(value))
    if np.size(value) == 0:
        return 0.0
    return float(np.max(np.abs(value)))


def check_finite(step, *values):
    """Raises :class:`mimeticpy.exceptions.NumericOverflowError` if any value holds inf or nan.

    :param step: Step index reported with the error.
    :type step: int
    """
    for value in values:
        arrays = value.components if hasattr(value, "components") else (value,)
        if not all(np.all(np.isfinite(array)) for array in arrays):
            raise NumericOverflowError(step, "non-finite value, the scheme is unstable")


def power_iteration(apply, norm, start, tol, max_iter, name="operator"):
    """Estimates the largest eigenvalue of a self-adjoint positive semidefinite operator.

    The iterate is renormalised in the operator's own norm after each application and the
    estimate is the ratio ``norm(apply(x)) / norm(x)``. Iteration stops when two consecutive
    estimates agree to the relative tolerance ``tol``.

    :param apply: Operator as a callable acting on iterates.
    :type apply: callable

    :param norm: Norm in which the operator is self-adjoint.
    :type norm: callable

    :param start: Initial iterate, usually a seeded random vector or field.

    :param tol: Relative stopping tolerance, must be positive.
    :type tol: float

    :param max_iter: Iteration cap.
    :type max_iter: int

    :param name: Operator name used in log messages.
    :type name: str

    :returns: Estimated largest eigenvalue, 0 for the zero operator.
    :rtype: float
    """
    if tol <= 0:
        raise PreconditionError("tol", "tolerance must be positive, got {}".format(tol))

    x = start
    size = norm(x)
    if size == 0.0:
        return 0.0
    x = x * (1.0 / size)

    estimate = 0.0
    for iteration in range(1, max_iter + 1):
        y = apply(x)
        value = norm(y)
        if value == 0.0:
            logger.info("Power iteration on %s hit the kernel after %d iterations", name, iteration)
            return 0.0
        if math.isclose(value, estimate, rel_tol=tol, abs_tol=0.0):
            estimate = value
            logger.info(
                "Power iteration on %s converged at %d iterations, estimate %.12g", name, iteration, value
            )
            return estimate
        estimate = value
        x = y * (1.0 / value)

    logger.warning(
        "Power iteration on %s stopped at the %d iteration cap, estimate %.12g", name, max_iter, estimate
    )
    return estimate
