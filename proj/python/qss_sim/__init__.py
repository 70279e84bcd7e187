# Copyright 2026 The qss-sim Authors
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

"""Three-party d-level quantum secret sharing simulator."""

import json

from ._core import (
    SCHEMA_VERSION,
    ContractError,
    NumericalError,
    ResourceError,
    detection_analytic,
    eigenspace_rank,
    ghz_state,
    joint_distribution,
)
from . import _core

__all__ = [
    "SCHEMA_VERSION",
    "ContractError",
    "NumericalError",
    "ResourceError",
    "attack",
    "detection_analytic",
    "eigenspace_rank",
    "ghz_state",
    "joint_distribution",
    "run",
    "verify",
]


def verify(d_min, d_max=None):
    """Verify report for dimensions d_min..d_max as a dict."""
    return json.loads(_core.verify_json(d_min, d_min if d_max is None else d_max))


def run(d, n, *, alpha=None, alpha_mode="fixed", adversary="none", seed=0, test_fraction=None):
    """Run the protocol once; returns the run report as a dict."""
    return json.loads(_core.run_json(d, n, alpha, alpha_mode, adversary, seed, test_fraction))


def attack(d, n, adversary, trials, *, seed=0, threads=1, test_fraction=None):
    """Estimate the detection rate of an attack; returns the attack report as a dict."""
    return json.loads(_core.attack_json(d, n, adversary, trials, seed, threads, test_fraction))
