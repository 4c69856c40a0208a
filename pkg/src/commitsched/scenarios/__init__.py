"""Bundled scenario files (*.scn)."""

from __future__ import annotations

from importlib import resources


def bundled_names() -> tuple[str, ...]:
    """Names of all bundled scenarios, sorted."""
    root = resources.files(__name__)
    return tuple(
        sorted(p.name[: -len(".scn")] for p in root.iterdir() if p.name.endswith(".scn"))
    )


def load_text(name: str) -> str:
    """Raw text of a bundled scenario."""
    return resources.files(__name__).joinpath(f"{name}.scn").read_text(encoding="utf-8")
