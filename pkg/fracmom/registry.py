"""Known printed-formula discrepancies, shipped as a versioned JSON file."""

from __future__ import annotations

import functools
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

from packaging.version import InvalidVersion, Version

from .errors import UnsupportedArgument

logger = logging.getLogger(__name__)

DEFAULT_PATH = Path(__file__).parent / "data" / "known_discrepancies.json"
SUPPORTED_MAJOR = 1

DISPLAYED_VALUE = "displayed-value"
MOMENT_REGIME = "moment-regime"


@dataclass(frozen=True)
class KnownDiscrepancy:
    id: str
    kind: str
    description: str
    family: Optional[str] = None
    regime: Optional[str] = None


@dataclass(frozen=True)
class DiscrepancyRegistry:
    version: Version
    entries: Tuple[KnownDiscrepancy, ...]

    def by_id(self) -> Dict[str, KnownDiscrepancy]:
        return {entry.id: entry for entry in self.entries}

    def known_value(self, check_id: str) -> Optional[KnownDiscrepancy]:
        entry = self.by_id().get(check_id)
        if entry is not None and entry.kind == DISPLAYED_VALUE:
            return entry
        return None

    def known_regime(self, family: str, regime: str) -> Optional[KnownDiscrepancy]:
        for entry in self.entries:
            if entry.kind == MOMENT_REGIME and entry.family == family and entry.regime == regime:
                return entry
        return None


def parse_registry(data: dict) -> DiscrepancyRegistry:
    try:
        version = Version(str(data["format_version"]))
    except (KeyError, InvalidVersion) as exc:
        raise UnsupportedArgument(f"discrepancy registry has no valid format_version: {exc}") from None
    if version.major != SUPPORTED_MAJOR:
        raise UnsupportedArgument(f"discrepancy registry format {version} is not supported (need {SUPPORTED_MAJOR}.x)")
    entries = []
    for raw in data.get("entries", []):
        if raw.get("kind") not in (DISPLAYED_VALUE, MOMENT_REGIME):
            raise UnsupportedArgument(f"registry entry {raw.get('id')!r} has unknown kind {raw.get('kind')!r}")
        entries.append(KnownDiscrepancy(**raw))
    return DiscrepancyRegistry(version, tuple(entries))


def load_registry(path: Optional[Path] = None) -> DiscrepancyRegistry:
    if path is None:
        return _default_registry()
    with open(path, encoding="utf-8") as fh:
        registry = parse_registry(json.load(fh))
    logger.debug("loaded %d known discrepancies from %s", len(registry.entries), path)
    return registry


@functools.lru_cache(maxsize=1)
def _default_registry() -> DiscrepancyRegistry:
    with open(DEFAULT_PATH, encoding="utf-8") as fh:
        return parse_registry(json.load(fh))
