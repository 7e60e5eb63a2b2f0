"""JSON and text formats shared by the library and the CLI."""
from __future__ import annotations

import json
import os

from .algebra import Line, LineError, format_scalar, to_scalar
from .linkage import Linkage, SymConfiguration

__all__ = [
    "FormatError",
    "linkage_to_json",
    "linkage_from_json",
    "dumps_linkage",
    "loads_linkage",
    "configs_to_json",
    "configs_from_json",
    "scalar_mode_override",
]


class FormatError(ValueError):
    """Malformed input document."""


def scalar_mode_override():
    """``HEXALINK_SCALAR`` environment override: ``"rational"``, ``"float"`` or None."""
    mode = os.environ.get("HEXALINK_SCALAR", "").strip().lower()
    if mode in ("rational", "float"):
        return mode
    return None


def linkage_to_json(L: Linkage) -> dict:
    scalar = "rational" if L.exact else "float"
    return {
        "scalar": scalar,
        "joints": [
            {
                "primal": [format_scalar(x) for x in h.direction],
                "dual": [format_scalar(x) for x in h.moment],
            }
            for h in L
        ],
    }


def linkage_from_json(doc: dict, scalar=None) -> Linkage:
    """Parse the linkage document; raises FormatError or LineError."""
    if not isinstance(doc, dict) or "joints" not in doc:
        raise FormatError("linkage document needs a 'joints' list")
    scalar = scalar or scalar_mode_override() or doc.get("scalar", "rational")
    if scalar not in ("rational", "float"):
        raise FormatError(f"unknown scalar mode {scalar!r}")
    exact = scalar == "rational"
    joints = doc["joints"]
    if not isinstance(joints, list) or len(joints) != 6:
        raise FormatError("'joints' must list exactly 6 lines")
    lines = []
    for n, j in enumerate(joints, 1):
        try:
            p = [to_scalar(x, exact) for x in j["primal"]]
            d = [to_scalar(x, exact) for x in j["dual"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"joint {n}: {exc}") from None
        if len(p) != 3 or len(d) != 3:
            raise FormatError(f"joint {n}: primal and dual need 3 coordinates")
        try:
            lines.append(Line.from_plucker(p, d))
        except LineError as exc:
            raise LineError(f"joint {n}: {exc}") from None
    return Linkage(lines)


def dumps_linkage(L: Linkage) -> str:
    return json.dumps(linkage_to_json(L), separators=(",", ":"))


def loads_linkage(text: str, scalar=None) -> Linkage:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return linkage_from_json(doc, scalar)


def configs_to_json(configs) -> dict:
    return {"configurations": [c.to_json() for c in configs]}


def configs_from_json(doc, exact=False):
    if isinstance(doc, dict):
        doc = doc.get("configurations")
    if not isinstance(doc, list):
        raise FormatError("expected a list of configurations")
    out = []
    for c in doc:
        if not isinstance(c, list) or len(c) != 3:
            raise FormatError("each configuration must be [t1, t2, t3]")
        try:
            out.append(SymConfiguration(c, exact))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad configuration {c!r}: {exc}") from None
    return out
