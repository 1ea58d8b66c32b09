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
**mimeticpy** integrates wave-type equations with staggered leapfrog schemes that conserve a
discrete quantity exactly.

It covers the harmonic oscillator, general skew-adjoint ODE systems, the 1D wave equation, a periodic
3D mimetic operator calculus with the scalar wave and Maxwell systems built on it, and the positivity
preserving 1D transport and diffusion schemes. Every run can be recorded as a ledger of conserved
quantities and replayed from a JSON configuration with ``mimeticpy run``.

**mimeticpy** is tested against 3.8, 3.9, 3.10, 3.11.
"""

from . import diagnostics, mimetic3d, schemes, snapshot  # noqa: F401
from .exceptions import *  # noqa: F401
from .scenarios import get_scenario_by_name  # noqa: F401
from .solver_base import __version__, options  # noqa: F401
