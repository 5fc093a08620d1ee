"""JSON round-trip for per-node key material."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from blomkit.blom import ADJACENCY, VANDERMONDE, NodeKeyMaterial, PublicMatrixG
from blomkit.field import FieldMatrix, transpose


def material_to_dict(m: NodeKeyMaterial) -> dict:
    doc = {
        "scheme": m.scheme,
        "q": m.q,
        "lambda": m.lam,
        "node_id": m.node_id,
        "private_row": list(m.private_row),
    }
    if m.n is not None:
        doc["n"] = m.n
    if m.scheme == VANDERMONDE:
        doc["public_seed"] = m.public_seed
    else:
        doc["neighbors"] = list(m.neighbors)
    return doc


def material_from_dict(doc: dict) -> NodeKeyMaterial:
    scheme = doc["scheme"]
    return NodeKeyMaterial(
        scheme=scheme,
        q=int(doc["q"]),
        lam=int(doc["lambda"]),
        node_id=int(doc["node_id"]),
        private_row=tuple(int(x) for x in doc["private_row"]),
        public_seed=int(doc["public_seed"]) if scheme == VANDERMONDE else None,
        neighbors=tuple(int(x) for x in doc["neighbors"]) if scheme == ADJACENCY else None,
        n=int(doc["n"]) if "n" in doc else None,
    )


def dumps(m: NodeKeyMaterial) -> str:
    return json.dumps(material_to_dict(m), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> NodeKeyMaterial:
    return material_from_dict(json.loads(text))


def node_filename(node_id: int) -> str:
    return f"node_{node_id:04d}.json"


def save_directory(materials: Iterable[NodeKeyMaterial], directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for m in materials:
        path = out / node_filename(m.node_id)
        path.write_text(dumps(m))
        paths.append(path)
    return paths


def load_directory(directory: str | Path) -> dict[int, NodeKeyMaterial]:
    found = {}
    for path in sorted(Path(directory).glob("node_*.json")):
        m = loads(path.read_text())
        found[m.node_id] = m
    if not found:
        raise FileNotFoundError(f"no node_*.json key material in {directory}")
    return found


def public_matrix_from_materials(materials: dict[int, NodeKeyMaterial]) -> PublicMatrixG:
    """Reassemble G from every node's public column (ids must be 1..N)."""
    n = len(materials)
    if sorted(materials) != list(range(1, n + 1)):
        raise ValueError("material set must cover nodes 1..N exactly")
    cols = tuple(materials[k].public_column() for k in range(1, n + 1))
    first = materials[1]
    generator = None
    if first.scheme == VANDERMONDE:
        generator = first.public_seed
    return PublicMatrixG(transpose(FieldMatrix(cols)), generator=generator)
