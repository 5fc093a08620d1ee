"""Original Blom scheme over GF(q).

The central authority picks a public (λ+1)×N matrix G and a secret symmetric
(λ+1)×(λ+1) matrix D, then hands node k row k of A = (D·G)^T. Because D is
symmetric, A·G is symmetric and K_ij = A_i·G_j = A_j·G_i is the pairwise key.

Node ids are 1-based throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from blomkit.field import (
    DimensionError,
    FieldMatrix,
    PrimeField,
    dot,
    find_primitive_element,
    is_symmetric,
    mat_mul,
    raw_mat_mul,
    transpose,
)

VANDERMONDE = "blom-vandermonde"
ADJACENCY = "blom-adjacency"


@dataclass(frozen=True)
class SchemeParams:
    field: PrimeField
    n: int
    lam: int

    def __post_init__(self):
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.lam + 1 > self.n:
            raise ValueError(f"lambda + 1 = {self.lam + 1} exceeds node count {self.n}")
        if self.n >= self.field.q:
            raise ValueError(f"node count {self.n} must be below q = {self.field.q}")

    @property
    def q(self) -> int:
        return self.field.q


@dataclass(frozen=True)
class PublicMatrixG:
    """Public (λ+1)×N matrix; ``generator`` is set for the Vandermonde form."""

    matrix: FieldMatrix
    generator: int | None = None

    @property
    def lam(self) -> int:
        return self.matrix.rows - 1

    @property
    def n(self) -> int:
        return self.matrix.cols

    def column(self, node_id: int) -> tuple[int, ...]:
        _check_node(node_id, self.n)
        return self.matrix.column(node_id - 1)


@dataclass(frozen=True)
class SecretMatrixD:
    matrix: FieldMatrix

    def __post_init__(self):
        if not is_symmetric(self.matrix):
            raise ValueError("secret matrix must be square and symmetric")

    @property
    def size(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class ShareMatrixA:
    """N×(λ+1) matrix whose row k is node k's private key material."""

    matrix: FieldMatrix

    def row(self, node_id: int) -> tuple[int, ...]:
        _check_node(node_id, self.matrix.rows)
        return self.matrix.row(node_id - 1)


@dataclass(frozen=True)
class NodeKeyMaterial:
    """What a single node stores after provisioning.

    Vandermonde nodes keep the seed s^k that regenerates their public column;
    adjacency nodes keep their neighbor list instead.
    """

    scheme: str
    q: int
    lam: int
    node_id: int
    private_row: tuple[int, ...]
    public_seed: int | None = None
    neighbors: tuple[int, ...] | None = None
    n: int | None = None

    def __post_init__(self):
        if self.scheme not in (VANDERMONDE, ADJACENCY):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if len(self.private_row) != self.lam + 1:
            raise DimensionError(
                f"private row has {len(self.private_row)} entries, expected {self.lam + 1}"
            )
        if self.scheme == VANDERMONDE and self.public_seed is None:
            raise ValueError("Vandermonde key material needs a public seed")
        if self.scheme == ADJACENCY and self.neighbors is None:
            raise ValueError("adjacency key material needs a neighbor list")
        object.__setattr__(self, "private_row", tuple(self.private_row))
        if self.neighbors is not None:
            object.__setattr__(self, "neighbors", tuple(sorted(self.neighbors)))

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    def public_column(self) -> tuple[int, ...]:
        """This node's column of G, rebuilt from what the node stores."""
        if self.scheme == VANDERMONDE:
            return derive_column_from_seed(self.public_seed, self.lam, self.field)
        from blomkit.modified import column_from_neighbors

        return column_from_neighbors(self.node_id, self.neighbors, self.lam, self.field)

    def public_info(self) -> dict:
        """The plaintext part a node sends to a peer during key agreement."""
        if self.scheme == VANDERMONDE:
            return {"node_id": self.node_id, "public_seed": self.public_seed}
        return {"node_id": self.node_id, "neighbors": list(self.neighbors)}


def _check_node(node_id: int, n: int) -> None:
    if not 1 <= node_id <= n:
        raise IndexError(f"node id {node_id} outside 1..{n}")


def gen_vandermonde(params: SchemeParams, s: int) -> PublicMatrixG:
    """Vandermonde public matrix: column c is [1, s^c, s^2c, ..., s^λc]."""
    f = params.field
    if s % f.q in (0, 1):
        raise ValueError(f"generator must not be 0 or 1 mod q, got {s}")
    if params.n >= f.q:
        raise ValueError(f"node count {params.n} must be below q = {f.q}")
    cols = [derive_column_from_seed(f.pow(s, c), params.lam, f) for c in range(1, params.n + 1)]
    return PublicMatrixG(transpose(FieldMatrix(tuple(cols))), generator=s % f.q)


def derive_column_from_seed(seed: int, lam: int, f: PrimeField) -> tuple[int, ...]:
    """Expand a stored seed into the column [1, seed, seed^2, ..., seed^λ]."""
    seed %= f.q
    if seed == 0:
        raise ValueError("seed must be nonzero")
    col = [1]
    for _ in range(lam):
        col.append(col[-1] * seed % f.q)
    return tuple(col)


def gen_secret_matrix(params: SchemeParams, rng_seed: int) -> SecretMatrixD:
    """Random symmetric D: upper triangle filled row-major from ``rng_seed``, then mirrored."""
    rng = random.Random(rng_seed)
    size = params.lam + 1
    m = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            m[i][j] = m[j][i] = rng.randrange(params.q)
    return SecretMatrixD(FieldMatrix.from_rows(m))


def secret_matrix_from_rows(rows: Sequence[Sequence[int]], f: PrimeField) -> SecretMatrixD:
    return SecretMatrixD(FieldMatrix.from_rows(rows, f))


def compute_share_matrix(d: SecretMatrixD, g: PublicMatrixG, f: PrimeField) -> ShareMatrixA:
    if d.size != g.matrix.rows:
        raise DimensionError(f"D is {d.matrix.shape} but G is {g.matrix.shape}")
    return ShareMatrixA(transpose(mat_mul(d.matrix, g.matrix, f)))


def provision_node(a: ShareMatrixA, g: PublicMatrixG, node_id: int, f: PrimeField) -> NodeKeyMaterial:
    """Key material for node ``node_id`` of a Vandermonde instance: row of A plus seed s^k."""
    if g.generator is None:
        raise ValueError("public matrix has no generator; use the adjacency provisioning")
    n = a.matrix.rows
    _check_node(node_id, n)
    return NodeKeyMaterial(
        scheme=VANDERMONDE,
        q=f.q,
        lam=g.lam,
        node_id=node_id,
        private_row=a.row(node_id),
        public_seed=f.pow(g.generator, node_id),
        n=n,
    )


@dataclass(frozen=True)
class KeyValue:
    """A derived key together with the unreduced dot product it came from."""

    key: int
    raw: int


def pairwise_key(private_row: Sequence[int], public_column: Sequence[int], f: PrimeField) -> int:
    return pairwise_key_raw(private_row, public_column, f).key


def pairwise_key_raw(private_row: Sequence[int], public_column: Sequence[int], f: PrimeField) -> KeyValue:
    """Dot product accumulated in wide integers and reduced once at the end."""
    raw = dot(private_row, public_column)
    return KeyValue(key=raw % f.q, raw=raw)


@dataclass(frozen=True)
class KeyMatrix:
    reduced: FieldMatrix
    raw: tuple[tuple[int, ...], ...] = field(repr=False)

    def key(self, i: int, j: int) -> int:
        return self.reduced[i - 1, j - 1]

    def raw_key(self, i: int, j: int) -> int:
        return self.raw[i - 1][j - 1]


def full_key_matrix(a: ShareMatrixA, g: PublicMatrixG, f: PrimeField) -> KeyMatrix:
    """K = A·G, both unreduced and reduced mod q."""
    raw = raw_mat_mul(a.matrix, g.matrix)
    return KeyMatrix(
        reduced=FieldMatrix.from_rows(raw, f),
        raw=tuple(tuple(r) for r in raw),
    )


@dataclass(frozen=True)
class BlomInstance:
    """Everything the central authority holds for one deployment."""

    field: PrimeField
    g: PublicMatrixG
    d: SecretMatrixD
    a: ShareMatrixA
    nodes: tuple[NodeKeyMaterial, ...]

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def lam(self) -> int:
        return self.g.lam

    @property
    def scheme(self) -> str:
        return self.nodes[0].scheme

    def node(self, node_id: int) -> NodeKeyMaterial:
        _check_node(node_id, self.n)
        return self.nodes[node_id - 1]

    def key(self, i: int, j: int) -> int:
        """K_ij as derived by node i."""
        return pairwise_key(self.a.row(i), self.g.column(j), self.field)


def setup_original_scheme(
    params: SchemeParams,
    rng_seed: int = 0,
    s: int | None = None,
    d: SecretMatrixD | None = None,
) -> BlomInstance:
    """Provision a full Vandermonde instance; ``s`` defaults to the smallest primitive element."""
    f = params.field
    if s is None:
        s = find_primitive_element(f)
    g = gen_vandermonde(params, s)
    if d is None:
        d = gen_secret_matrix(params, rng_seed)
    a = compute_share_matrix(d, g, f)
    nodes = tuple(provision_node(a, g, k, f) for k in range(1, params.n + 1))
    return BlomInstance(field=f, g=g, d=d, a=a, nodes=nodes)
