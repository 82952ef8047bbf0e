# Copyright 2026 The balclust Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Balanced clustering: balance indices, exact and Pareto solvers, team formation.

Element ids and cluster indices are 0-based in this API. JSON documents and
the command line use 1-based ids.
"""

import json as _json

from ._balclust import *  # noqa: F401,F403
from ._balclust import evaluate_teams as _evaluate_teams
from ._balclust import parse_problem_spec, parse_team_spec

__version__ = "0.1.0"


def evaluate_teams(instance, solution, spec):
    """Team report as a dict (per-team skills, compatibility, checks)."""
    return _json.loads(_evaluate_teams(instance, solution, spec))


def problem_spec(spec):
    """ProblemSpec from a JSON string or a dict."""
    return parse_problem_spec(spec if isinstance(spec, str) else _json.dumps(spec))


def team_spec(spec):
    """TeamSpec from a JSON string or a dict."""
    return parse_team_spec(spec if isinstance(spec, str) else _json.dumps(spec))
