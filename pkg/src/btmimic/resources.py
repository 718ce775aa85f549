"""Access to packaged data files.

File references in specs and CLI flags accept either a filesystem path
or ``builtin:<name>`` resolving into the package data directory.
"""

from __future__ import annotations

from importlib import resources

_DATA = {
    "builtin:default.map": ("btmimic.data", "default.map"),
    "builtin:default.balance": ("btmimic.data", "default.balance"),
    "builtin:default.delays": ("btmimic.data", "default.delays"),
    "builtin:desk.spec": ("btmimic.data", "desk.spec"),
    "builtin:strategy_a.bt": ("btmimic.strategies.data", "strategy_a.bt"),
    "builtin:strategy_a.params": ("btmimic.strategies.data", "strategy_a.params"),
    "builtin:strategy_b.bt": ("btmimic.strategies.data", "strategy_b.bt"),
    "builtin:strategy_b.params": ("btmimic.strategies.data", "strategy_b.params"),
}


def read_ref(ref: str) -> str:
    """Read a file reference (path or builtin:name) as text."""
    if ref.startswith("builtin:"):
        try:
            pkg, name = _DATA[ref]
        except KeyError:
            raise FileNotFoundError(f"unknown builtin resource {ref!r}") from None
        return resources.files(pkg).joinpath(name).read_text(encoding="utf-8")
    with open(ref, "r", encoding="utf-8") as fh:
        return fh.read()
