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
"""Converts Python and numpy values to the string representations written to ledgers.
"""

import numpy as np


def is_list(arg):
    """Whether ``arg`` is a flat sequence of cells: a list, a tuple or a 1-d array."""
    if isinstance(arg, (list, tuple)):
        return True
    return isinstance(arg, np.ndarray) and arg.ndim == 1


def delimit_list(arg, delimiter=","):
    """Joins the cells of one ledger line.

    :raises TypeError: when ``arg`` is not a list, a tuple or a 1-d array.
    """
    if not is_list(arg):
        raise TypeError("Expected a list, tuple or 1-d array, but got {}".format(type(arg).__name__))
    return delimiter.join(str(cell) for cell in arg)


def format_float(arg):
    """Formats a float with 17 significant digits, enough to round-trip any double.

    For example:

    format_float(1) -> "1"
    format_float(0.1) -> "0.10000000000000001"
    format_float(0.5) -> "0.5"

    :param arg: The value.
    :type arg: float

    :rtype: string
    """
    return "%.17g" % float(arg)


def format_value(arg):
    """Formats integers verbatim and everything else through :func:`format_float`."""
    if isinstance(arg, bool):
        raise TypeError("Expected a number, but got bool")
    if isinstance(arg, int):
        return str(arg)
    return format_float(arg)


def format_row(values, delimiter=","):
    """Formats one ledger row."""
    return delimit_list([format_value(v) for v in values], delimiter)
