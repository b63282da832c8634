# Copyright 2026 The cplab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python interface to the cplab copy-protection toolkit."""

import json

from ._cplab import (
    CapacityError,
    DimensionMismatch,
    Error,
    ParameterError,
    moe_adversary_names,
    pirate_names,
    punctured_prf_agreement,
    resample_law,
    run_cli,
    scheme_names,
    steg_roundtrip,
    truncated_limit,
)
from . import _cplab

__all__ = [
    "CapacityError",
    "DimensionMismatch",
    "Error",
    "ParameterError",
    "copy_protection_game",
    "moe_adversary_names",
    "moe_game",
    "pirate_names",
    "punctured_prf_agreement",
    "resample_law",
    "run_cli",
    "scheme_names",
    "steg_roundtrip",
    "strong_antipiracy_game",
    "truncated_limit",
]


def moe_game(d, adversary="split-basis", trials=4096, seed=1):
    """Runs the monogamy-of-entanglement game; returns a result dict."""
    return json.loads(_cplab.moe_game(d, adversary, trials, seed))


def copy_protection_game(n_in=6, n_out=8, d=8, pirate="forwarding", trials=100, seed=1):
    """Runs the copy-protection game for the PRF evaluation scheme."""
    return json.loads(_cplab.copy_protection_game(n_in, n_out, d, pirate, trials, seed))


def strong_antipiracy_game(n_in=6, n_out=8, d=8, pirate="forwarding", gamma=0.1, trials=100, seed=1):
    """Runs the strong anti-piracy game with threshold measurements."""
    return json.loads(_cplab.strong_antipiracy_game(n_in, n_out, d, pirate, gamma, trials, seed))
