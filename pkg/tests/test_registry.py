import json

import pytest
from packaging.version import Version

from fracmom.errors import UnsupportedArgument
from fracmom.registry import load_registry, parse_registry


def test_bundled_registry():
    registry = load_registry()
    assert registry.version == Version("1.0")
    assert registry.known_value("printed-a1") is not None
    assert registry.known_value("printed-zeta-prime-even") is not None
    assert registry.known_value("a_seq") is None
    assert registry.known_regime("power", "k>=m") is None


def test_moment_regime_entries(tmp_path):
    path = tmp_path / "registry.json"
    path.write_text(
        json.dumps(
            {
                "format_version": "1.2",
                "entries": [
                    {"id": "x", "kind": "moment-regime", "description": "d", "family": "sympower", "regime": "k=2m-1"}
                ],
            }
        )
    )
    registry = load_registry(path)
    assert registry.known_regime("sympower", "k=2m-1").id == "x"
    assert registry.known_value("x") is None


@pytest.mark.parametrize(
    "data",
    [
        {"entries": []},
        {"format_version": "not a version"},
        {"format_version": "2.0", "entries": []},
        {"format_version": "1.0", "entries": [{"id": "y", "kind": "guess", "description": "d"}]},
    ],
)
def test_malformed_registries_are_rejected(data):
    with pytest.raises(UnsupportedArgument):
        parse_registry(data)
