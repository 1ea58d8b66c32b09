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
Command line runner: ``mimeticpy run <config.json> [--out DIR] [--quiet]``.

Exit codes: 0 success, 1 invalid configuration, 2 instability or violated stability precondition,
3 I/O failure.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict

from . import snapshot
from .diagnostics import drift_report
from .exceptions import ConfigError, JSONParseError, NumericOverflowError, PreconditionError
from .scenarios import get_scenario_by_name
from .solver_base import __version__, options
from .utils import logger

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNSTABLE = 2
EXIT_IO = 3

THREADS_VARIABLE = "MIMETIC_THREADS"


@dataclass
class RunConfig:
    """A validated run configuration."""

    scenario: str
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def output(self) -> str:
        return self.params.get("output") or "{}.csv".format(self.scenario)

    @property
    def snapshot_every(self) -> int:
        return self.params.get("snapshot_every", 0)


def parse_config(text):
    """Parses and validates a JSON run configuration.

    :param text: The JSON document, an object with a ``scenario`` key and the scenario's parameters.
    :type text: str

    :raises mimeticpy.exceptions.JSONParseError: for malformed JSON.
    :raises mimeticpy.exceptions.ScenarioNotFound: for an unknown scenario.
    :raises mimeticpy.exceptions.ConfigError: for unknown keys and invalid values, naming the key path.

    :rtype: :class:`RunConfig`
    """
    try:
        document = json.loads(text)
    except ValueError as err:
        raise JSONParseError("$", str(err))
    if not isinstance(document, dict):
        raise ConfigError("$", "expects a JSON object")
    if "scenario" not in document:
        raise ConfigError("scenario", "missing")
    name = document["scenario"]
    scenario = get_scenario_by_name(name)
    params = scenario.validate({k: v for k, v in document.items() if k != "scenario"})
    return RunConfig(scenario.name, params)


def run_scenario(config, out_dir=".", quiet=False):
    """Runs a scenario, writes its ledger and snapshots into ``out_dir`` and prints the drift summary.

    :param config: The validated configuration.
    :type config: :class:`RunConfig`

    :returns: The exit status.
    :rtype: int
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as err:
        logger.error("Cannot create output directory %s: %s", out_dir, err)
        return EXIT_IO

    def sink(prefix, value, step, time, dx):
        snapshot.write(out_dir, "{}_{}".format(config.scenario, prefix), value, step, time, dx)

    scenario = get_scenario_by_name(config.scenario)(config.params)
    try:
        result = scenario.run(sink if config.snapshot_every > 0 else None)
    except NumericOverflowError as err:
        logger.error("Run became unstable at step %s: %s", err.step, err)
        return EXIT_UNSTABLE
    except PreconditionError as err:
        logger.error("Stability precondition violated: %s", err)
        return EXIT_UNSTABLE
    except ConfigError as err:
        logger.error("Invalid configuration: %s", err)
        return EXIT_CONFIG
    except OSError as err:
        logger.error("Cannot write snapshot: %s", err)
        return EXIT_IO

    path = os.path.join(out_dir, config.output)
    try:
        result.series.to_csv(path)
    except OSError as err:
        logger.error("Cannot write ledger %s: %s", path, err)
        return EXIT_IO

    if not quiet:
        print("{}: dt={:.17g}, {} rows written to {}".format(config.scenario, result.dt, len(result.series), path))
        for label in result.series.labels:
            report = drift_report(result.series, label)
            print(
                "  {:<14} first={:.17g} max_abs_drift={:.3e} max_rel_drift={:.3e}".format(
                    label, report.first_value, report.max_abs_drift, report.max_rel_drift
                )
            )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="mimeticpy", description="Structure-preserving wave scheme runner")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    commands = parser.add_subparsers(dest="command", required=True)
    run = commands.add_parser("run", help="run a scenario described by a JSON configuration")
    run.add_argument("config", help="path of the JSON configuration")
    run.add_argument("--out", default=".", help="output directory for the ledger and snapshots")
    run.add_argument("--quiet", action="store_true", help="only report warnings and errors")
    return parser


def _threads():
    value = os.environ.get(THREADS_VARIABLE)
    if value is None:
        return options.default_threads
    try:
        threads = int(value)
    except ValueError:
        raise ConfigError(THREADS_VARIABLE, "expects a positive integer, got {!r}".format(value))
    if threads < 1:
        raise ConfigError(THREADS_VARIABLE, "expects a positive integer, got {}".format(threads))
    return threads


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logging.captureWarnings(True)

    try:
        options.default_threads = _threads()
        with open(args.config) as stream:
            text = stream.read()
    except ConfigError as err:
        logger.error("Invalid configuration: %s", err)
        return EXIT_CONFIG
    except OSError as err:
        logger.error("Cannot read configuration %s: %s", args.config, err)
        return EXIT_IO

    try:
        config = parse_config(text)
    except ConfigError as err:
        logger.error("Invalid configuration: %s", err)
        return EXIT_CONFIG
    return run_scenario(config, args.out, args.quiet)
