"""Numerical tolerances shared by every module.

A single :class:`ToleranceConfig` is threaded through all public functions as
the optional ``tol`` argument.  The CLI can load overrides from a JSON file
named by the ``CHOIMAP_TOLERANCE_FILE`` environment variable.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

TOLERANCE_ENV_VAR = "CHOIMAP_TOLERANCE_FILE"


@dataclass(frozen=True)
class ToleranceConfig:
    gauge_tol: float = 1e-12
    entry_tol: float = 1e-12
    herm_tol: float = 1e-12
    # condition values closer to zero than this count as saturated
    sat_tol: float = 1e-9
    # relative to the largest singular value
    rank_tol: float = 1e-8
    # fourth-root arguments of edge kernel vectors must exceed this
    degen_tol: float = 1e-10
    radicand_clamp: float = 1e-14
    radicand_tol: float = 1e-10
    state_tol: float = 1e-10
    scalable_tol: float = 1e-10

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ValueError(f"tolerance {f.name} must be > 0, got {v!r}")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tolerance fields: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def from_env(cls):
        path = os.environ.get(TOLERANCE_ENV_VAR)
        if not path:
            return cls()
        return cls.from_file(path)

    def override(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_TOL = ToleranceConfig()
