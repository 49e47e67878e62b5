"""Process-wide size limits for the enumeration kernels."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, fields


@dataclass
class Caps:
    group_order: int = 10**6
    subgroups: int = 2000
    chain_sylow_order: int = 64
    degree_engine_order: int = 50_000


caps = Caps()


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed a configured cap."""


@contextmanager
def override_caps(**changes):
    old = {f.name: getattr(caps, f.name) for f in fields(caps)}
    for key, value in changes.items():
        if value is None:
            continue
        if not hasattr(caps, key):
            raise KeyError(key)
        if int(value) <= 0:
            raise ValueError(f"cap {key} must be positive")
        setattr(caps, key, int(value))
    try:
        yield caps
    finally:
        for key, value in old.items():
            setattr(caps, key, value)
