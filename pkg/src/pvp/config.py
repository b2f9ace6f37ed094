"""Run-time settings; ``PVP_*`` environment variables override the defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from pvp.groebner import DEFAULT_BUDGET
from pvp.prolongation import DEFAULT_MAX_ORDER
from pvp.structure import DEFAULT_MAX_GROUP_ORDER


@dataclass(frozen=True)
class Settings:
    order: int = DEFAULT_MAX_ORDER
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    jobs: int = 1
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER

    @classmethod
    def from_env(cls, environ=None, **overrides) -> Settings:
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(f"PVP_{f.name.upper()}")
            if raw is not None:
                try:
                    values[f.name] = int(raw)
                except ValueError:
                    raise ValueError(f"PVP_{f.name.upper()} must be an integer, got {raw!r}") from None
        settings = cls(**values)
        return replace(settings, **{k: v for k, v in overrides.items() if v is not None})
