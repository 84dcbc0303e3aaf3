# Copyright 2026 The LUBA Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Lowest unique bid auctions: equilibria, learning and revenue."""

import json

from ._core import (
    AuctionConfig,
    CapExceededError,
    ConfigError,
    asymmetric_equilibrium,
    compute_payoffs,
    expected_min_unique,
    expected_revenue,
    ibg_strategy,
    ibg_value,
    pure_equilibria,
    replicator_field,
    resolve_item,
    risk_two_bidder_equilibrium,
    scenario_names,
    three_bidder_equilibrium,
    two_bidder_equilibrium,
    two_by_two_risk_equilibrium,
    verify_two_bidder,
)
from . import _core

__version__ = "0.1.0"


def scenario_spec(name):
    """Default spec of a registered scenario as a dict."""
    return json.loads(_core.scenario_spec(name))


def run_spec(spec, write_files=False):
    """Runs a spec dict and returns the summary dict."""
    return json.loads(_core.run_spec(json.dumps(spec), True, write_files))


def run_scenario(name, write_files=False, **run_overrides):
    """Runs a named scenario; keyword arguments override the `run` block."""
    spec = scenario_spec(name)
    spec.setdefault("run", {}).update(run_overrides)
    if "seed" in run_overrides or "repeats" in run_overrides:
        spec["run"].pop("seeds", None)
    return run_spec(spec, write_files)


def load_spec(text, json_format=False):
    """Parses YAML (or JSON) spec text into a normalized dict."""
    return json.loads(_core.normalize_spec(text, json_format))
