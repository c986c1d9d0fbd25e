"""Quantum game simulation and verification.

Thin wrappers over the native core: configs and policies are plain dicts,
results come back as dicts.
"""

import json as _json

from . import _core
from ._core import InfeasibleProfile, NonReducible, NotEnumerable

__all__ = [
    "InfeasibleProfile",
    "NonReducible",
    "NotEnumerable",
    "Sessions",
    "config_hash",
    "default_config",
    "enumerate",
    "evaluate",
    "games",
    "simulate",
    "value",
    "wilson_interval",
]


def _cfg(config):
    return _json.dumps(config or {})


def games():
    return _core.games()


def default_config():
    return _json.loads(_core.default_config())


def config_hash(config=None):
    return _core.config_hash(_cfg(config))


def value(game, side="quantum", config=None):
    """Exact value; "value" is a rational string such as "1/2"."""
    return _json.loads(_core.value(game, side, _cfg(config)))


def evaluate(game, policies=None, config=None):
    return _json.loads(_core.evaluate(game, dict(policies or {}), _cfg(config)))


def simulate(game, policies=None, config=None, trials=10000, seed=42, threads=0):
    """Monte Carlo run; returns the report dict."""
    return _json.loads(_core.simulate(game, dict(policies or {}), _cfg(config), trials, seed, threads))


def enumerate(game, roles=None, config=None):  # noqa: A001
    """[(description, rational value)] over deterministic classical profiles."""
    return _core.enumerate(game, list(roles or []), _cfg(config))


def wilson_interval(successes, n):
    return _core.wilson_interval(successes, n)


class Sessions:
    """In-process session service. Methods return (status, body dict)."""

    def __init__(self):
        self._m = _core.SessionManager()

    @staticmethod
    def _wrap(reply):
        status, body = reply
        return status, _json.loads(body)

    def create(self, game, human_roles, config=None, seed=None, series=True, policies=None):
        req = {"game": game, "human_roles": list(human_roles), "config": config or {}, "series": series}
        if seed is not None:
            req["seed"] = seed
        if policies:
            req["policies"] = policies
        return self._wrap(self._m.create(_json.dumps(req)))

    def view(self, session_id, token):
        return self._wrap(self._m.view(session_id, token))

    def move(self, session_id, token, move, trial=None):
        req = {"move": move}
        if trial is not None:
            req["trial"] = trial
        return self._wrap(self._m.move(session_id, token, _json.dumps(req)))

    def close(self, session_id, token):
        return self._wrap(self._m.close(session_id, token))

    def result(self, session_id, token):
        return self._wrap(self._m.result(session_id, token))
