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
Runnable scenarios: each one validates its parameters, builds the initial state, steps it and records a
ledger of conserved quantities.
"""

import math
import warnings
from abc import ABCMeta, abstractmethod
from collections import namedtuple

import numpy as np

from .diagnostics import ConservedSeries, state_norm
from .exceptions import ConfigError, NumericOverflowError, ScenarioNotFound
from .mimetic3d import FieldKind, GridSpec3, Material
from .schemes import maxwell3d, ode_system, oscillator, positivity1d, scalarwave3d, wave1d
from .solver_base import options, pick
from .utils import get_rng, logger

ScenarioResult = namedtuple("ScenarioResult", ["series", "dt"])


# Validators take the dotted key path and the raw value and return the checked value.


def number(minimum=None, exclusive=True):
    def check(path, value):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigError(path, "expects a finite number, got {!r}".format(value))
        if minimum is not None and (value <= minimum if exclusive else value < minimum):
            raise ConfigError(path, "must be {} {}, got {}".format(">" if exclusive else ">=", minimum, value))
        return float(value)

    return check


def integer(minimum=0):
    def check(path, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, "expects an integer, got {!r}".format(value))
        if value < minimum:
            raise ConfigError(path, "must be >= {}, got {}".format(minimum, value))
        return value

    return check


def choice(*allowed):
    def check(path, value):
        if value not in allowed:
            raise ConfigError(path, "expects one of {}, got {!r}".format(list(allowed), value))
        return value

    return check


def boolean(path, value):
    if not isinstance(value, bool):
        raise ConfigError(path, "expects true or false, got {!r}".format(value))
    return value


def string(path, value):
    if not isinstance(value, str) or not value:
        raise ConfigError(path, "expects a non-empty string, got {!r}".format(value))
    return value


def triple(validator):
    """A scalar broadcast to three axes, or a list of three values."""

    def check(path, value):
        values = value if isinstance(value, list) else [value] * 3
        if len(values) != 3:
            raise ConfigError(path, "expects one value or three, got {}".format(len(values)))
        return [validator("{}[{}]".format(path, i), v) for i, v in enumerate(values)]

    return check


def section(spec):
    """A nested object with its own keys, filled with defaults."""

    def check(path, value):
        if not isinstance(value, dict):
            raise ConfigError(path, "expects an object, got {!r}".format(value))
        return validate(spec, value, path)

    return check


def tagged(**variants):
    """A nested object whose ``name`` key selects the allowed keys."""

    def check(path, value):
        if not isinstance(value, dict) or "name" not in value:
            raise ConfigError(path, "expects an object with a name, one of {}".format(sorted(variants)))
        name = value["name"]
        if name not in variants:
            raise ConfigError(path + ".name", "expects one of {}, got {!r}".format(sorted(variants), name))
        rest = {k: v for k, v in value.items() if k != "name"}
        return dict(validate(variants[name], rest, path), name=name)

    return check


def validate(spec, params, path=""):
    """Checks ``params`` against ``spec``, a mapping of key to ``(validator, default)``.

    :raises mimeticpy.exceptions.ConfigError: naming the dotted path of the first unknown or invalid key.
    """
    prefix = path + "." if path else ""
    for key in params:
        if key not in spec:
            raise ConfigError(prefix + key, "unknown key; options are: {}".format(sorted(spec)))
    checked = {}
    for key, (validator, default) in spec.items():
        if key in params and params[key] is not None:
            checked[key] = validator(prefix + key, params[key])
        elif default is not None:
            checked[key] = validator(prefix + key, default)
        else:
            checked[key] = default
    return checked


COMMON_KEYS = {
    "steps": (integer(0), 1000),
    "dt": (number(0.0), None),
    "cfl_factor": (number(0.0), None),
    "seed": (integer(0), None),
    "output": (string, None),
}

SNAPSHOT_KEYS = {"snapshot_every": (integer(0), 0)}

GRID_KEYS = {
    "n": (triple(integer(2)), 16),
    "spacing": (triple(number(0.0)), 1.0),
}


class Scenario(metaclass=ABCMeta):
    """Abstract base class of every scenario.

    Subclasses declare their keys in ``keys`` on top of :data:`COMMON_KEYS` and implement :meth:`run`.
    """

    name = None
    keys = {}
    labels = ()

    def __init__(self, params):
        """
        :param params: Validated parameters, see :meth:`validate`.
        :type params: dict
        """
        self.params = params

    @classmethod
    def validate(cls, params):
        spec = dict(COMMON_KEYS, **cls.keys)
        checked = validate(spec, params)
        if checked["dt"] is not None and checked["cfl_factor"] is not None:
            raise ConfigError("cfl_factor", "dt and cfl_factor are mutually exclusive")
        factor = checked["cfl_factor"]
        if factor is not None and factor > 1:
            warnings.warn(
                "cfl_factor {} exceeds 1, the run is expected to be unstable".format(factor), UserWarning
            )
        return checked

    @property
    def seed(self):
        return pick(self.params["seed"], options.default_seed)

    @property
    def steps(self):
        return self.params["steps"]

    def time_step(self, dt_max):
        """The configured ``dt``, else ``cfl_factor`` (default ``options.default_cfl_factor``) times ``dt_max``."""
        if self.params["dt"] is not None:
            return self.params["dt"]
        if not math.isfinite(dt_max):
            raise ConfigError("dt", "the scheme has no step limit here, give dt explicitly")
        return pick(self.params["cfl_factor"], options.default_cfl_factor) * dt_max

    def snapshot_due(self, step):
        every = self.params.get("snapshot_every", 0)
        return every > 0 and step % every == 0

    @abstractmethod
    def run(self, sink=None):
        """Runs the scenario.

        :param sink: Called as ``sink(prefix, value, step, time, dx)`` for every snapshot, or None.
        :type sink: callable

        :raises mimeticpy.exceptions.NumericOverflowError: when the run becomes unstable.
        :raises mimeticpy.exceptions.PreconditionError: when a stability precondition is violated.

        :rtype: :class:`ScenarioResult`
        """
        pass

    def _guard(self, state, initial):
        if state_norm(state) > options.default_overflow_guard * initial:
            raise NumericOverflowError(state.n, "state norm grew past the overflow guard")

    def leapfrog_ledger(self, scheme, state, extra=None, snapshot=None):
        """Steps a leapfrog state and records ``C_n`` and ``C_half`` for steps ``0..steps``.

        The step-0 row recovers the half-step value before the start with :meth:`LeapfrogScheme.rewind`.
        """
        series = ConservedSeries(self.labels)
        initial = state_norm(state)
        previous, current, following = scheme.rewind(state), state, scheme.step(state)
        for k in range(self.steps + 1):
            values = [scheme.conserved_n((previous, current)), scheme.conserved_half((current, following))]
            if extra is not None:
                values.extend(extra(current))
            series.append(current.n, current.n * current.dt, values)
            if snapshot is not None and self.snapshot_due(current.n):
                snapshot(current)
            if k < self.steps:
                previous, current, following = current, following, scheme.step(following)
                self._guard(following, initial)
        return series


class Oscillator(Scenario):
    name = "oscillator"
    keys = {
        "omega": (number(0.0), 1.0),
        "u0": (number(), 1.0),
        "du0": (number(), 0.0),
        "scheme": (choice("leapfrog", "second_order", "crank_nicolson"), "leapfrog"),
    }
    _LABELS = {
        "leapfrog": ("C_n", "C_half"),
        "second_order": ("C_secondorder", "E_classical"),
        "crank_nicolson": ("C_simple",),
    }

    @property
    def labels(self):
        return self._LABELS[self.params["scheme"]]

    def run(self, sink=None):
        omega, u0, du0 = self.params["omega"], self.params["u0"], self.params["du0"]
        dt = self.time_step(oscillator.stable_step_limit(omega))
        scheme = self.params["scheme"]
        logger.info("Oscillator with %s, omega=%g, dt=%.17g, %d steps", scheme, omega, dt, self.steps)
        if scheme == "leapfrog":
            series = self.leapfrog_ledger(oscillator.SCHEME, oscillator.init_half(u0, du0, omega, dt))
        elif scheme == "second_order":
            series = self._second_order(u0, du0, omega, dt)
        else:
            series = self._crank_nicolson(u0, du0, omega, dt)
        return ScenarioResult(series, dt)

    def _second_order(self, u0, du0, omega, dt):
        u1 = u0 + dt * du0
        u_before = (2.0 - (omega * dt) ** 2) * u0 - u1
        u = oscillator.second_order_run(u_before, u0, omega, dt, self.steps + 2)
        states = [
            oscillator.OscSecondOrderState(u[k], u[k + 1], k, dt, omega) for k in range(self.steps + 2)
        ]
        series = ConservedSeries(self.labels)
        for n in range(self.steps + 1):
            window = states[n : n + 2]
            values = [oscillator.conserved(window, "C_secondorder"), oscillator.conserved(window, "E_classical")]
            series.append(n, n * dt, values)
        return series

    def _crank_nicolson(self, u0, du0, omega, dt):
        # Crank-Nicolson advances u' = -omega v.
        state = oscillator.CNState(u0, -du0 / omega, 0, dt, omega)
        series = ConservedSeries(self.labels)
        for n in range(self.steps + 1):
            series.append(n, n * dt, [oscillator.conserved(state, "C_simple")])
            if n < self.steps:
                state = oscillator.crank_nicolson_step(state)
        return series


class OdeSystem(Scenario):
    name = "odesys"
    keys = {
        "rows": (integer(1), 2),
        "cols": (integer(1), 3),
        "rank": (integer(0), None),
    }
    labels = ("C_n", "C_half")

    def run(self, sink=None):
        rows, cols = self.params["rows"], self.params["cols"]
        op = ode_system.random_operator(rows, cols, self.seed, self.params["rank"])
        norm = ode_system.operator_norm(op)
        dt = self.time_step(2.0 / norm if norm > 0 else 1.0)
        logger.info("Skew system %dx%d, ||A||=%.12g, dt=%.17g, %d steps", rows, cols, norm, dt, self.steps)
        rng = get_rng(self.seed + 1)
        state = ode_system.init_g_half(rng.standard_normal(rows), rng.standard_normal(cols), op, dt)
        return ScenarioResult(self.leapfrog_ledger(ode_system.SkewScheme(op), state), dt)


class Wave1D(Scenario):
    name = "wave1d"
    keys = dict(
        SNAPSHOT_KEYS,
        n_sites=(integer(2), 256),
        length=(number(0.0), 1.0),
        c=(number(0.0), 1.0),
        initial=(
            tagged(gaussian={"width": (number(0.0), None)}, cosine={"k": (integer(0), 1)}),
            {"name": "gaussian"},
        ),
    )
    labels = ("C_n", "C_half")

    def run(self, sink=None):
        n, c = self.params["n_sites"], self.params["c"]
        dx = self.params["length"] / n
        dt = self.time_step(wave1d.cfl_max(dx, c))
        initial = self.params["initial"]
        if initial["name"] == "gaussian":
            u0 = wave1d.gaussian_pulse(n, dx, initial["width"])
        else:
            u0 = np.cos(2 * math.pi * initial["k"] * np.arange(n) / n)
        logger.info("1D wave on %d sites, c dt/dx=%.6g, %d steps", n, c * dt / dx, self.steps)
        state = wave1d.init_v_half(u0, np.zeros(n), dx, c, dt)

        def snapshot(s):
            if sink is not None:
                sink("u", s.u, s.n, s.n * dt, dx)
                sink("v", s.v_half, s.n, s.n * dt, dx)

        return ScenarioResult(self.leapfrog_ledger(wave1d.SCHEME, state, snapshot=snapshot), dt)


def build_grid(params):
    return GridSpec3(*params["n"], *params["spacing"])


class ScalarWave3D(Scenario):
    name = "scalarwave3d"
    keys = dict(
        SNAPSHOT_KEYS,
        grid=(section(GRID_KEYS), {}),
        starred=(boolean, False),
        materials=(
            tagged(
                constant={k: (number(0.0), 1.0) for k in ("a", "b", "A", "B")},
                random={"low": (number(0.0), 0.5), "high": (number(0.0), 2.0)},
            ),
            {"name": "constant"},
        ),
        initial=(
            tagged(gaussian={"width": (number(0.0), None)}, mode={"k": (triple(integer(0)), [1, 0, 0])}),
            {"name": "gaussian"},
        ),
    )
    labels = ("C_n", "C_half", "curl")

    def materials(self, grid):
        spec = self.params["materials"]
        if spec["name"] == "random":
            return Material.random(grid, self.seed, spec["low"], spec["high"])
        return Material.uniform(grid, spec["a"], spec["b"], spec["A"], spec["B"])

    def run(self, sink=None):
        grid = build_grid(self.params["grid"])
        mat = self.materials(grid)
        starred = self.params["starred"]
        dt = self.time_step(scalarwave3d.cfl_estimate(grid, mat, starred=starred))
        initial = self.params["initial"]
        if initial["name"] == "mode":
            u0 = scalarwave3d.single_mode(grid, initial["k"], starred)
        else:
            kind = FieldKind.DUAL_NODE if starred else FieldKind.NODE
            u0 = scalarwave3d.gaussian(grid, kind, initial["width"])
        logger.info("Scalar wave on %s, starred=%s, dt=%.17g, %d steps", grid.shape, starred, dt, self.steps)
        state = scalarwave3d.init_v_half(u0, None, mat, dt)

        def snapshot(s):
            if sink is not None:
                sink("u", s.u, s.n, s.n * dt, grid.dx)

        series = self.leapfrog_ledger(
            scalarwave3d.SCHEME,
            state,
            extra=lambda s: [scalarwave3d.curl_diagnostic(s)],
            snapshot=snapshot,
        )
        return ScenarioResult(series, dt)


class Maxwell3D(Scenario):
    name = "maxwell3d"
    keys = dict(
        SNAPSHOT_KEYS,
        grid=(section(GRID_KEYS), {}),
        materials=(
            tagged(
                constant={"eps": (number(0.0), 1.0), "mu": (number(0.0), 1.0)},
                random={"low": (number(0.0), 0.5), "high": (number(0.0), 2.0)},
            ),
            {"name": "constant"},
        ),
        initial=(tagged(solenoidal={}, gradient={}), {"name": "solenoidal"}),
    )
    labels = ("C_n", "C_half", "divE_drift", "divH_drift")

    def materials(self, grid):
        spec = self.params["materials"]
        if spec["name"] == "random":
            return Material.random(grid, self.seed, spec["low"], spec["high"])
        return Material.electromagnetic(grid, spec["eps"], spec["mu"])

    def run(self, sink=None):
        grid = build_grid(self.params["grid"])
        mat = self.materials(grid)
        dt = self.time_step(maxwell3d.cfl_estimate(mat, None, grid))
        if self.params["initial"]["name"] == "gradient":
            E0 = maxwell3d.gradient_field(grid, self.seed)
        else:
            E0 = maxwell3d.solenoidal_field(grid, mat, self.seed)
        logger.info("Maxwell on %s, dt=%.17g, %d steps", grid.shape, dt, self.steps)
        state = maxwell3d.init_h_half(E0, None, mat, dt=dt)
        reference = maxwell3d.divergences(state)

        def snapshot(s):
            if sink is not None:
                sink("E", s.E, s.n, s.n * dt, grid.dx)

        series = self.leapfrog_ledger(
            maxwell3d.SCHEME,
            state,
            extra=lambda s: list(maxwell3d.divergence_diagnostics(s, reference)),
            snapshot=snapshot,
        )
        return ScenarioResult(series, dt)


LINE_INITIAL = (
    tagged(
        square={"start": (integer(0), None), "stop": (integer(0), None), "value": (number(0.0, False), 1.0)},
        spike={"index": (integer(0), None), "value": (number(0.0, False), 1.0)},
    ),
    {"name": "square"},
)


def line_initial(spec, n):
    if spec["name"] == "spike":
        return positivity1d.spike(n, spec["index"], spec["value"])
    start = pick(spec["start"], n // 4)
    stop = pick(spec["stop"], n // 2)
    return positivity1d.square(n, start, stop, spec["value"])


class _Positivity(Scenario):
    labels = ("mass", "min_rho")

    def march(self, state, step_fn, sink):
        series = ConservedSeries(self.labels)
        for k in range(self.steps + 1):
            series.append(
                state.n, state.n * state.dt, [positivity1d.total_mass(state.rho, state.dx), np.min(state.rho)]
            )
            if sink is not None and self.snapshot_due(state.n):
                sink("rho", state.rho, state.n, state.n * state.dt, state.dx)
            if k < self.steps:
                state = step_fn(state)
        return series


class Transport1D(_Positivity):
    name = "transport1d"
    keys = dict(
        SNAPSHOT_KEYS,
        n_cells=(integer(2), 100),
        length=(number(0.0), 1.0),
        velocity=(
            tagged(uniform={"value": (number(), 1.0)}, linear={"slope": (number(), -1.0)}),
            {"name": "uniform"},
        ),
        initial=LINE_INITIAL,
    )

    def run(self, sink=None):
        n = self.params["n_cells"]
        dx = self.params["length"] / n
        spec = self.params["velocity"]
        if spec["name"] == "linear":
            vel = positivity1d.linear_velocity(n, dx, spec["slope"])
        else:
            vel = np.full(n, spec["value"])
        dt = self.time_step(positivity1d.max_transport_step(vel, dx))
        logger.info("Transport on %d cells, dt=%.17g, %d steps", n, dt, self.steps)
        state = positivity1d.TransportState(line_initial(self.params["initial"], n), vel, dt, dx)
        return ScenarioResult(self.march(state, positivity1d.transport_step, sink), dt)


class Diffusion1D(_Positivity):
    name = "diffusion1d"
    keys = dict(
        SNAPSHOT_KEYS,
        n_cells=(integer(2), 100),
        length=(number(0.0), 1.0),
        coefficient=(
            tagged(
                uniform={"value": (number(0.0, False), 1.0)},
                random={"low": (number(0.0, False), 0.5), "high": (number(0.0, False), 2.0)},
            ),
            {"name": "uniform"},
        ),
        initial=LINE_INITIAL,
    )

    def run(self, sink=None):
        n = self.params["n_cells"]
        dx = self.params["length"] / n
        spec = self.params["coefficient"]
        if spec["name"] == "random":
            D = get_rng(self.seed).uniform(spec["low"], spec["high"], n)
        else:
            D = np.full(n, spec["value"])
        dt = self.time_step(positivity1d.max_diffusion_step(D, dx))
        logger.info("Diffusion on %d cells, dt=%.17g, %d steps", n, dt, self.steps)
        state = positivity1d.DiffusionState(line_initial(self.params["initial"], n), D, dt, dx)
        return ScenarioResult(self.march(state, positivity1d.diffusion_step, sink), dt)


_NAME_TO_SCENARIO = {
    "oscillator": Oscillator,
    "odesys": OdeSystem,
    "wave1d": Wave1D,
    "scalarwave3d": ScalarWave3D,
    "maxwell3d": Maxwell3D,
    "transport1d": Transport1D,
    "diffusion1d": Diffusion1D,
}


def get_scenario_by_name(scenario_name):
    """
    Given a scenario's name, return the scenario class.

    >>> from mimeticpy.scenarios import get_scenario_by_name
    >>> scenario = get_scenario_by_name("oscillator")
    >>> params = scenario.validate({"omega": 1.0, "dt": 0.1, "steps": 100})
    >>> result = scenario(params).run()

    If the name is not recognized, a :class:`mimeticpy.exceptions.ScenarioNotFound` exception is raised
    listing the available names.

    :param scenario_name: Name of the scenario.
    :type scenario_name: str

    :rtype: type
    """
    try:
        return _NAME_TO_SCENARIO[scenario_name.lower()]
    except (KeyError, AttributeError):
        raise ScenarioNotFound(
            "scenario", "unknown scenario {!r}; options are: {}".format(scenario_name, list(_NAME_TO_SCENARIO))
        )
