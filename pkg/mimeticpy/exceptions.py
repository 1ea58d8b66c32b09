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
Defines exceptions that are thrown by the schemes, the operator calculus and the scenario runner.
"""


class SchemeError(Exception):
    """Represents an exception raised while building or advancing a discretization."""

    def __init__(self, status, message=None):
        self.status = status
        self.message = message

    def __str__(self):
        if self.message is None:
            return str(self.status)
        else:
            return "%s (%s)" % (self.status, self.message)


class NumericOverflowError(SchemeError):
    """A step produced a non-finite value or blew up. ``status`` is the offending step index."""

    @property
    def step(self):
        return self.status


class InvalidFrequencyError(SchemeError):
    """The oscillator frequency is not strictly positive."""


class InvalidWindowError(SchemeError):
    """A window of states is too short, not consecutive or mixes time steps."""


class ShapeError(SchemeError):
    """Array dimensions do not match the operator."""


class SignatureError(SchemeError):
    """A field kind does not match the domain of the operator it is passed to, or the grid is degenerate."""


class PreconditionError(SchemeError):
    """A stability or positivity precondition is violated."""


class EmptySeriesError(SchemeError):
    """A ledger has no entries for the requested label."""


class ConfigError(Exception):
    """Represents an invalid run configuration. ``path`` names the offending key."""

    def __init__(self, path, message=None):
        self.path = path
        self.message = message

    def __str__(self):
        if self.message is None:
            return self.path
        else:
            return "%s: %s" % (self.path, self.message)


class JSONParseError(ConfigError):
    """The JSON configuration document can't be parsed."""


class ScenarioNotFound(ConfigError):
    """Represents an exception raised when a scenario can not be found by name."""
