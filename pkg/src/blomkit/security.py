"""λ-security checks and collusion attacks.

A public matrix is λ-secure when every λ+1 of its columns are linearly
independent. Colluding nodes pool their private rows and solve for the
upper triangle of D; once D is known every key in the network follows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from blomkit.blom import PublicMatrixG, SecretMatrixD, compute_share_matrix, pairwise_key
from blomkit.field import FieldMatrix, PrimeField, columns_linearly_independent, row_reduce


class InconsistentSystemError(ValueError):
    """The compromised rows cannot come from any symmetric D with this G."""


@dataclass(frozen=True)
class SecurityReport:
    checked_subsets: int
    independent: bool
    witness: tuple[int, ...] | None
    exhaustive: bool
    total_subsets: int = 0

    def to_dict(self) -> dict:
        return {
            "checked_subsets": self.checked_subsets,
            "total_subsets": self.total_subsets,
            "independent": self.independent,
            "witness": list(self.witness) if self.witness is not None else None,
            "exhaustive": self.exhaustive,
        }


def unrank_combination(rank: int, n: int, k: int) -> tuple[int, ...]:
    """The ``rank``-th k-subset of range(n) in lexicographic order."""
    out = []
    x = 0
    for remaining in range(k, 0, -1):
        while True:
            block = comb(n - x - 1, remaining - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def check_lambda_secure(
    g: PublicMatrixG,
    lam: int,
    f: PrimeField,
    subset_limit: int = 100_000,
    rng_seed: int = 0,
) -> SecurityReport:
    """Look for λ+1 public columns that are linearly dependent.

    Exhaustive (lexicographic) when the subset count is within ``subset_limit``,
    otherwise ``subset_limit`` subsets sampled without replacement. The witness
    uses 1-based node ids.
    """
    n = g.n
    k = lam + 1
    if k > n:
        raise ValueError(f"lambda + 1 = {k} exceeds {n} columns")
    total = comb(n, k)
    if total <= subset_limit:
        subsets: Iterable[tuple[int, ...]] = combinations(range(n), k)
        exhaustive = True
    else:
        ranks = sorted(random.Random(rng_seed).sample(range(total), subset_limit))
        subsets = (unrank_combination(r, n, k) for r in ranks)
        exhaustive = False
    checked = 0
    for cols in subsets:
        checked += 1
        if not columns_linearly_independent(g.matrix, cols, f):
            return SecurityReport(checked, False, tuple(c + 1 for c in cols), exhaustive, total)
    return SecurityReport(checked, True, None, exhaustive, total)


@dataclass(frozen=True)
class RecoveryResult:
    recovered: SecretMatrixD | None
    solution_space_dim: int
    equations: int = 0
    unknowns: int = 0

    def to_dict(self) -> dict:
        return {
            "recovered": self.recovered.matrix.to_lists() if self.recovered else None,
            "solution_space_dim": self.solution_space_dim,
            "equations": self.equations,
            "unknowns": self.unknowns,
        }


def _upper_index(size: int) -> dict[tuple[int, int], int]:
    idx = {}
    for r in range(size):
        for c in range(r, size):
            idx[(r, c)] = len(idx)
    return idx


def recover_secret_matrix(
    compromised: Mapping[int, Sequence[int]] | Iterable[tuple[int, Sequence[int]]],
    g: PublicMatrixG,
    f: PrimeField,
) -> RecoveryResult:
    """Solve for D from pooled private rows.

    Row k of A is (D·g_k)^T, so each compromised node gives λ+1 equations in
    the (λ+1)(λ+2)/2 upper-triangle entries of D.
    """
    rows = dict(compromised.items() if isinstance(compromised, Mapping) else compromised)
    if not rows:
        raise ValueError("need at least one compromised node")
    size = g.lam + 1
    idx = _upper_index(size)
    n_unknowns = len(idx)
    system = []
    for node_id, private_row in sorted(rows.items()):
        if len(private_row) != size:
            raise ValueError(f"node {node_id} row has {len(private_row)} entries, expected {size}")
        col = g.column(node_id)
        for m in range(size):
            eq = [0] * (n_unknowns + 1)
            for t in range(size):
                key = (m, t) if m <= t else (t, m)
                eq[idx[key]] = (eq[idx[key]] + col[t]) % f.q
            eq[-1] = private_row[m] % f.q
            system.append(eq)
    reduced, pivots = row_reduce(system, f)
    if n_unknowns in pivots:
        raise InconsistentSystemError("compromised rows are inconsistent with G")
    dim = n_unknowns - len(pivots)
    if dim:
        return RecoveryResult(None, dim, len(system), n_unknowns)
    solution = [0] * n_unknowns
    for r, pc in enumerate(pivots):
        solution[pc] = reduced[r][-1]
    d = [[0] * size for _ in range(size)]
    for (r, c), k in idx.items():
        d[r][c] = d[c][r] = solution[k]
    return RecoveryResult(SecretMatrixD(FieldMatrix.from_rows(d)), 0, len(system), n_unknowns)


@dataclass(frozen=True)
class ColumnDependence:
    """Public column ``target`` equals sum(coeff * column m) over GF(q); ids are 1-based."""

    target: int
    coefficients: dict[int, int] = field(default_factory=dict)


def column_dependence(
    g: PublicMatrixG, target: int, support: Sequence[int], f: PrimeField
) -> ColumnDependence | None:
    """Express column ``target`` in terms of the ``support`` columns, if possible."""
    support = [m for m in support if m != target]
    cols = [g.column(m) for m in support]
    tcol = g.column(target)
    augmented = [[c[r] for c in cols] + [tcol[r]] for r in range(g.matrix.rows)]
    reduced, pivots = row_reduce(augmented, f)
    if len(support) in pivots:
        return None
    coeffs = {m: 0 for m in support}
    for r, pc in enumerate(pivots):
        coeffs[support[pc]] = reduced[r][-1]
    return ColumnDependence(target, {m: a for m, a in coeffs.items() if a})


def dependence_from_witness(g: PublicMatrixG, witness: Sequence[int], f: PrimeField) -> ColumnDependence:
    """Turn a dependent column set into an explicit relation.

    The first column that falls in the span of the ones before it becomes the
    target, so a witness starting ``(1, 2, ...)`` with c2 = -c1 yields target 2.
    """
    witness = list(witness)
    for end in range(1, len(witness) + 1):
        dep = column_dependence(g, witness[end - 1], witness[: end - 1], f)
        if dep is not None:
            return dep
    raise ValueError(f"columns {witness} are linearly independent")


def predict_foreign_key(
    knowledge: RecoveryResult | ColumnDependence | None,
    g: PublicMatrixG,
    i: int,
    j: int,
    f: PrimeField,
    known_keys: Mapping[int, int] | None = None,
) -> int | None:
    """Attacker's prediction of K_ij, or None when the knowledge does not suffice.

    With a recovered D the key is computed outright. With a column relation
    c_j = sum(a_m c_m) the attacker needs K_im for each m, supplied in
    ``known_keys`` keyed by m.
    """
    if isinstance(knowledge, RecoveryResult):
        if knowledge.recovered is None:
            return None
        a = compute_share_matrix(knowledge.recovered, g, f)
        return pairwise_key(a.row(i), g.column(j), f)
    if isinstance(knowledge, ColumnDependence):
        if knowledge.target != j or known_keys is None:
            return None
        if any(m not in known_keys for m in knowledge.coefficients):
            return None
        return sum(a * known_keys[m] for m, a in knowledge.coefficients.items()) % f.q
    return None
