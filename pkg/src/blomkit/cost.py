"""Digit-level operation counting for key derivations.

Effort is measured as schoolbook work on base-``radix`` digits: a product of
a d_a-digit and a d_b-digit number costs d_a*d_b digit multiplications plus
the partial-product additions, a sum costs one digit addition per digit of
the longer operand, and a reduction mod q is charged as one long-division
pass of digits(a)*digits(q) digit operations.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Sequence

from blomkit.blom import ADJACENCY, VANDERMONDE, BlomInstance, KeyValue
from blomkit.field import DimensionError, PrimeField


@dataclass(frozen=True)
class CostModelSpec:
    radix: int = 10
    mult_weight: float = 1
    add_weight: float = 1
    reduction_weight: float = 1
    # skip products by 0/1 and turn products by q-1 into a negation
    shortcut: bool = False

    def __post_init__(self):
        if self.radix < 2:
            raise ValueError(f"radix must be >= 2, got {self.radix}")
        if min(self.mult_weight, self.add_weight, self.reduction_weight) < 0:
            raise ValueError("cost weights must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> CostModelSpec:
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CostModelSpec:
        return cls.from_dict(json.loads(text))


DEFAULT_SPEC = CostModelSpec()


@dataclass(frozen=True)
class CostLedger:
    """Counters for one measurement; ledgers add componentwise.

    ``multiplications`` and ``additions`` count whole-number operations; the
    ``digit_*`` counters and ``reduction_ops`` count the digit work inside them.
    """

    digit_mults: int = 0
    digit_adds: int = 0
    reductions: int = 0
    reduction_ops: int = 0
    total_effort: float = 0
    multiplications: int = 0
    additions: int = 0

    def __add__(self, other: CostLedger) -> CostLedger:
        if not isinstance(other, CostLedger):
            return NotImplemented
        return CostLedger(
            self.digit_mults + other.digit_mults,
            self.digit_adds + other.digit_adds,
            self.reductions + other.reductions,
            self.reduction_ops + other.reduction_ops,
            self.total_effort + other.total_effort,
            self.multiplications + other.multiplications,
            self.additions + other.additions,
        )

    def __radd__(self, other):
        # lets sum() start from 0
        if other == 0:
            return self
        return NotImplemented


ZERO = CostLedger()


def _delta(
    spec: CostModelSpec, mults: int = 0, adds: int = 0, reductions: int = 0, red_ops: int = 0, **ops
) -> CostLedger:
    total = spec.mult_weight * mults + spec.add_weight * adds + spec.reduction_weight * red_ops
    return CostLedger(mults, adds, reductions, red_ops, total, **ops)


def digits(n: int, radix: int = 10) -> int:
    """Number of base-``radix`` digits of ``n``; zero has one digit."""
    if n < 0:
        raise ValueError("digits() needs a nonnegative integer")
    count = 1
    while n >= radix:
        n //= radix
        count += 1
    return count


def cost_of_mul(a: int, b: int, spec: CostModelSpec = DEFAULT_SPEC) -> CostLedger:
    da, db = digits(a, spec.radix), digits(b, spec.radix)
    adds = da * db - da if db > 1 else 0
    return _delta(spec, mults=da * db, adds=adds, multiplications=1)


def cost_of_add(a: int, b: int, spec: CostModelSpec = DEFAULT_SPEC) -> CostLedger:
    return _delta(spec, adds=max(digits(a, spec.radix), digits(b, spec.radix)), additions=1)


def cost_of_reduction(a: int, q: int, spec: CostModelSpec = DEFAULT_SPEC) -> CostLedger:
    return _delta(spec, reductions=1, red_ops=digits(a, spec.radix) * digits(q, spec.radix))


def measured_product(a: int, b: int, f: PrimeField, spec: CostModelSpec) -> tuple[int, CostLedger]:
    """One term of a dot product: returns the (unreduced) term and its cost."""
    if spec.shortcut:
        for x, y in ((a, b), (b, a)):
            if y in (0, 1):
                return x * y, ZERO
            if y == f.q - 1:
                return (f.q - x) % f.q, cost_of_add(f.q, x, spec)
    return a * b, cost_of_mul(a, b, spec)


def measured_dot(
    private_row: Sequence[int], column: Sequence[int], f: PrimeField, spec: CostModelSpec = DEFAULT_SPEC
) -> tuple[KeyValue, CostLedger]:
    """Dot product accumulated unreduced, then reduced once."""
    if len(private_row) != len(column):
        raise DimensionError(f"length mismatch {len(private_row)} != {len(column)}")
    ledger = ZERO
    acc = None
    for a, g in zip(private_row, column):
        term, cost = measured_product(a, g, f, spec)
        ledger += cost
        if acc is None:
            acc = term
        else:
            ledger += cost_of_add(acc, term, spec)
            acc += term
    ledger += cost_of_reduction(acc, f.q, spec)
    return KeyValue(key=acc % f.q, raw=acc), ledger


def measured_seed_expansion(
    seed: int, lam: int, f: PrimeField, spec: CostModelSpec = DEFAULT_SPEC
) -> tuple[tuple[int, ...], CostLedger]:
    """Rebuild [1, seed, ..., seed^λ]; seed^2..seed^λ each cost a product and a reduction."""
    col = [1, seed % f.q][: lam + 1]
    ledger = ZERO
    while len(col) < lam + 1:
        product, cost = measured_product(col[-1], seed, f, spec)
        ledger += cost + cost_of_reduction(product, f.q, spec)
        col.append(product % f.q)
    return tuple(col), ledger


def measured_column(instance: BlomInstance, j: int, spec: CostModelSpec = DEFAULT_SPEC) -> tuple[tuple[int, ...], CostLedger]:
    """Node j's public column as a peer obtains it, with the arithmetic that costs."""
    peer = instance.node(j)
    if peer.scheme == VANDERMONDE:
        return measured_seed_expansion(peer.public_seed, peer.lam, instance.field, spec)
    if peer.scheme == ADJACENCY:
        return peer.public_column(), ZERO
    raise ValueError(f"unknown scheme {peer.scheme!r}")


def measured_key_agreement(
    instance: BlomInstance, i: int, j: int, spec: CostModelSpec = DEFAULT_SPEC
) -> tuple[int, CostLedger]:
    """Node i derives K_ij from j's public info; returns the key and its full cost."""
    if i == j:
        raise ValueError("a node does not agree a key with itself")
    col, acquire = measured_column(instance, j, spec)
    kv, work = measured_dot(instance.node(i).private_row, col, instance.field, spec)
    return kv.key, acquire + work
