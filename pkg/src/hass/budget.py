"""Exhaustive-enumeration budgets.

Defaults can be raised through the ``HASS_BUDGET_OVERRIDE`` environment
variable, e.g. ``HASS_BUDGET_OVERRIDE="setsys_n=7,coalition=22"``.
"""
from __future__ import annotations

import dataclasses
import os

ENV_VAR = "HASS_BUDGET_OVERRIDE"


@dataclasses.dataclass(frozen=True)
class Budgets:
    poly_exhaustive_n: int = 20
    poly_terms: int = 2_000_000
    setsys_n: int = 6
    coalition: int = 20
    recon_coalition: int = 12
    cofactor: int = 10**6
    retries: int = 2000


def _parse(spec: str) -> dict[str, int]:
    out = {}
    names = {f.name for f in dataclasses.fields(Budgets)}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in names:
            raise ValueError(f"unknown budget {key!r} in {ENV_VAR}")
        out[key] = int(value)
    return out


def budgets() -> Budgets:
    """Current budgets, honouring the environment override."""
    spec = os.environ.get(ENV_VAR, "")
    return Budgets(**_parse(spec)) if spec else Budgets()
