"""Deterministic JSON files for tilings, certificates, indexings and complexes.

Every file is a dict with a "type" field.  Dumps use sorted keys and a fixed
layout so that load followed by dump reproduces the bytes exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

from .complexes import ComplexOfGroups
from .homology import CoefficientCertificate
from .indexing import Indexing
from .surface import TiledSurface

TESSELLATION, CERTIFICATE, INDEXING, COG, REPORT = "tessellation", "certificate", "indexing", "cog", "report"


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def to_document(obj, ts: TiledSurface | None = None) -> dict:
    if isinstance(obj, TiledSurface):
        return {"type": TESSELLATION, **obj.to_dict()}
    if isinstance(obj, CoefficientCertificate):
        return {"type": CERTIFICATE, **obj.to_dict()}
    if isinstance(obj, ComplexOfGroups):
        return {"type": COG, **obj.to_dict()}
    if isinstance(obj, Indexing):
        if ts is None:
            raise ValueError("an indexing is saved together with its tessellation")
        return {"type": INDEXING, "tessellation": ts.to_dict(), **obj.to_dict(ts)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_document(data: dict):
    """The object a document describes; an indexing comes back as (Indexing, TiledSurface)."""
    kind = data.get("type")
    body = {k: v for k, v in data.items() if k != "type"}
    if kind == TESSELLATION:
        return TiledSurface.from_dict(body)
    if kind == CERTIFICATE:
        return CoefficientCertificate.from_dict(body)
    if kind == COG:
        return ComplexOfGroups.from_dict(body)
    if kind == INDEXING:
        ts = TiledSurface.from_dict(body["tessellation"])
        return Indexing.from_dict(body, ts), ts
    raise ValueError(f"unknown document type {kind!r}")


def save(path, obj, ts: TiledSurface | None = None) -> None:
    Path(path).write_text(dumps(to_document(obj, ts)))


def save_json(path, data: dict) -> None:
    Path(path).write_text(dumps(data))


def load(path):
    return from_document(json.loads(Path(path).read_text()))


def load_typed(path, kind: str):
    data = json.loads(Path(path).read_text())
    if data.get("type") != kind:
        raise ValueError(f"{path}: expected a {kind} document, found {data.get('type')!r}")
    return from_document(data)
