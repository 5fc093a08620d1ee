"""Adjacency-matrix variant of Blom's scheme.

The public matrix comes from the network graph: an edge gives 1, everything
else (non-edges and the diagonal) gives q-1, and the first λ+1 rows are kept.
A node can rebuild any peer's column from that peer's neighbor list alone.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from blomkit.blom import (
    ADJACENCY,
    BlomInstance,
    NodeKeyMaterial,
    PublicMatrixG,
    SchemeParams,
    SecretMatrixD,
    compute_share_matrix,
    gen_secret_matrix,
)
from blomkit.field import FieldMatrix, PrimeField, is_symmetric


@dataclass(frozen=True)
class NetworkTopology:
    """Undirected simple graph on nodes 1..n."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one node, got n={self.n}")
        normalized = set()
        for edge in self.edges:
            i, j = edge
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            for v in (i, j):
                if not 1 <= v <= self.n:
                    raise ValueError(f"node id {v} outside 1..{self.n}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> NetworkTopology:
        return cls(n, frozenset(tuple(e) for e in edges))

    def neighbors(self, node: int) -> tuple[int, ...]:
        out = [j if i == node else i for i, j in self.edges if node in (i, j)]
        return tuple(sorted(out))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_connected(self) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> NetworkTopology:
        return cls.from_edges(int(data["n"]), data["edges"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> NetworkTopology:
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> NetworkTopology:
        return cls.from_json(Path(path).read_text())


def paper_topology() -> NetworkTopology:
    """The bundled six-node example network."""
    text = resources.files("blomkit.data").joinpath("paper_topology.json").read_text()
    return NetworkTopology.from_json(text)


def random_connected_topology(
    n: int, rng: random.Random, edge_probability: float = 0.5, max_draws: int = 100
) -> NetworkTopology:
    """Erdős–Rényi draw, redrawn until connected."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for _ in range(max_draws):
        topo = NetworkTopology(n, frozenset(p for p in pairs if rng.random() < edge_probability))
        if topo.is_connected():
            return topo
    raise RuntimeError(f"no connected graph on {n} nodes after {max_draws} draws")


@dataclass(frozen=True)
class ModifiedAdjacency:
    matrix: FieldMatrix
    q: int

    def __post_init__(self):
        allowed = {1, self.q - 1}
        if any(x not in allowed for row in self.matrix.entries for x in row):
            raise ValueError(f"entries must be 1 or {self.q - 1}")
        if not is_symmetric(self.matrix):
            raise ValueError("adjacency matrix must be symmetric")


def build_modified_adjacency(topo: NetworkTopology, f: PrimeField) -> ModifiedAdjacency:
    other = f.minus_one
    rows = [
        [1 if topo.has_edge(i, j) else other for j in range(1, topo.n + 1)]
        for i in range(1, topo.n + 1)
    ]
    return ModifiedAdjacency(FieldMatrix.from_rows(rows), f.q)


def select_public_matrix(adj: ModifiedAdjacency, lam: int) -> PublicMatrixG:
    """Keep the first λ+1 rows as the (λ+1)×N public matrix."""
    n = adj.matrix.rows
    if lam < 0 or lam + 1 > n:
        raise ValueError(f"lambda + 1 = {lam + 1} does not fit {n} rows")
    return PublicMatrixG(adj.matrix.top_rows(lam + 1))


def column_from_neighbors(
    node: int, neighbors: Iterable[int], lam: int, f: PrimeField
) -> tuple[int, ...]:
    """Public column of ``node`` built only from its own neighbor list."""
    nbrs = set(neighbors)
    return tuple(1 if r in nbrs and r != node else f.minus_one for r in range(1, lam + 2))


def node_public_column(topo: NetworkTopology, j: int, lam: int, f: PrimeField) -> tuple[int, ...]:
    if not 1 <= j <= topo.n:
        raise IndexError(f"node id {j} outside 1..{topo.n}")
    if lam + 1 > topo.n:
        raise ValueError(f"lambda + 1 = {lam + 1} exceeds node count {topo.n}")
    return column_from_neighbors(j, topo.neighbors(j), lam, f)


def setup_modified_scheme(
    topo: NetworkTopology,
    lam: int,
    f: PrimeField,
    rng_seed: int = 0,
    d: SecretMatrixD | None = None,
    omega: int = 1,
) -> BlomInstance:
    """Central-authority provisioning for the adjacency variant.

    ``omega`` key spaces may be requested but only the first is provisioned.
    """
    if omega < 1:
        raise ValueError(f"omega must be >= 1, got {omega}")
    params = SchemeParams(f, topo.n, lam)
    g = select_public_matrix(build_modified_adjacency(topo, f), lam)
    if d is None:
        d = gen_secret_matrix(params, rng_seed)
    a = compute_share_matrix(d, g, f)
    nodes = tuple(
        NodeKeyMaterial(
            scheme=ADJACENCY,
            q=f.q,
            lam=lam,
            node_id=k,
            private_row=a.row(k),
            neighbors=topo.neighbors(k),
            n=topo.n,
        )
        for k in range(1, topo.n + 1)
    )
    return BlomInstance(field=f, g=g, d=d, a=a, nodes=nodes)
