"""Resource caps and the exception types shared by every module.

Caps can be overridden process-wide through the ``ORIENTDIST_CAPS``
environment variable, e.g. ``ORIENTDIST_CAPS="max_edges=26,max_aut_vertices=18"``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_VAR = "ORIENTDIST_CAPS"


class InvalidInputError(ValueError):
    """Malformed family spec, mask, labelling, permutation or parameter."""


class ResourceCapError(RuntimeError):
    """A configured size or work budget would be exceeded."""


@dataclass(frozen=True)
class Caps:
    max_edges: int = 24  # full orientation enumeration
    max_vertices: int = 64  # graph storage
    max_aut_vertices: int = 16  # materialised automorphism groups
    max_biclique_vertices: int = 34  # twin-free biclique route
    max_search_vertices: int = 40  # stop-at-first searches (rigidity, distinguishing)
    max_group_size: int = 500_000
    labelling_nodes: int = 20_000_000
    max_canonical_m: int = 5

    def replace(self, **changes: int) -> "Caps":
        return dataclasses.replace(self, **changes)


def caps_from_env(value: str | None = None) -> Caps:
    text = os.environ.get(ENV_VAR, "") if value is None else value
    if not text.strip():
        return Caps()
    names = {f.name for f in dataclasses.fields(Caps)}
    changes: dict[str, int] = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise InvalidInputError(f"bad cap override {item!r}; known caps: {sorted(names)}")
        try:
            changes[key] = int(raw)
        except ValueError:
            raise InvalidInputError(f"cap {key} needs an integer, got {raw!r}") from None
        if changes[key] < 0:
            raise InvalidInputError(f"cap {key} must be non-negative")
    return Caps(**changes)


_default: Caps | None = None


def default_caps() -> Caps:
    global _default
    if _default is None:
        _default = caps_from_env()
    return _default


def resolve(caps: Caps | None) -> Caps:
    return default_caps() if caps is None else caps
