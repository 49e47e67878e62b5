"""Fusion-system descriptions on disk."""
from __future__ import annotations

import json
from pathlib import Path

from .catalog import CatalogError, RVCatalog
from .fusion import GroupRealized
from .groups import GroupInputError, load_group


def fusion_system_from_dict(data: dict, base: Path | None = None):
    """Build a system from {"kind": "group", "group_file", "prime"} or {"kind": "rv", "name", "prime"}."""
    kind = data.get("kind")
    try:
        p = int(data["prime"])
        if kind == "rv":
            return RVCatalog.named(str(data["name"]), p)
        if kind == "group":
            path = Path(data["group_file"])
            if base is not None and not path.is_absolute():
                path = base / path
            return GroupRealized(load_group(path), p)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (CatalogError, GroupInputError)):
            raise
        raise GroupInputError(f"malformed fusion system description: {exc}") from exc
    raise GroupInputError(f"unknown fusion system kind {kind!r}")


def load_fusion_system(path: str | Path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupInputError(f"cannot read system file {path}: {exc}") from exc
    return fusion_system_from_dict(data, base=path.parent)
