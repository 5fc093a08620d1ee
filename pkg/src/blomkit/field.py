"""Exact arithmetic over GF(q) for prime q, plus dense matrices over it.

Field elements are plain Python ints kept in ``range(q)``; matrices are
immutable row-major tuples. Everything here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit an operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def largest_prime_leq(bound: int) -> int | None:
    """Largest prime not exceeding ``bound``, or None when there is none."""
    for candidate in range(bound, 1, -1):
        if is_prime(candidate):
            return candidate
    return None


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(q)."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"modulus must be an int, got {type(self.q).__name__}")
        if self.q <= 2:
            raise ValueError(f"modulus must exceed 2, got {self.q}")
        if not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.q

    @property
    def minus_one(self) -> int:
        return self.q - 1

    def check(self, value: int) -> int:
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not a reduced residue mod {self.q}")
        return value

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def pow(self, base: int, exp: int) -> int:
        if exp < 0:
            raise ValueError("negative exponent")
        result = 1
        base %= self.q
        while exp:
            if exp & 1:
                result = result * base % self.q
            base = base * base % self.q
            exp >>= 1
        return result

    def inv(self, a: int) -> int:
        # extended Euclid on (a, q)
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        old_r, r = a, self.q
        old_s, s = 1, 0
        while r:
            quot = old_r // r
            old_r, r = r, old_r - quot * r
            old_s, s = s, old_s - quot * s
        return old_s % self.q

    def elements(self) -> range:
        return range(self.q)


def fe_add(a: int, b: int, f: PrimeField) -> int:
    return f.add(a, b)


def fe_mul(a: int, b: int, f: PrimeField) -> int:
    return f.mul(a, b)


def fe_pow(base: int, exp: int, f: PrimeField) -> int:
    """``base**exp mod q`` by square-and-multiply; ``base**0 == 1``."""
    return f.pow(base, exp)


def multiplicative_order(g: int, f: PrimeField) -> int:
    if g % f.q == 0:
        raise ValueError("zero has no multiplicative order")
    order = f.q - 1
    for p in prime_factors(f.q - 1):
        while order % p == 0 and f.pow(g, order // p) == 1:
            order //= p
    return order


def is_primitive(g: int, f: PrimeField) -> bool:
    g %= f.q
    if g == 0:
        return False
    return all(f.pow(g, (f.q - 1) // p) != 1 for p in prime_factors(f.q - 1))


def find_primitive_element(f: PrimeField) -> int:
    """Smallest generator ``g >= 2`` of the multiplicative group of GF(q)."""
    for g in range(2, f.q):
        if is_primitive(g, f):
            return g
    raise AssertionError(f"no primitive element found mod {f.q}")  # unreachable for prime q


@dataclass(frozen=True)
class FieldMatrix:
    """Dense row-major matrix of residues."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise DimensionError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], f: PrimeField | None = None) -> FieldMatrix:
        """Build a matrix, reducing every entry when a field is given."""
        if f is None:
            return cls(tuple(tuple(r) for r in rows))
        return cls(tuple(tuple(x % f.q for x in r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> FieldMatrix:
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> FieldMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        return self.entries[r][c]

    def row(self, r: int) -> tuple[int, ...]:
        return self.entries[r]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c] for row in self.entries)

    def columns(self, indices: Sequence[int]) -> FieldMatrix:
        """Sub-matrix of the given 0-based columns, in the given order."""
        return FieldMatrix(tuple(tuple(row[c] for c in indices) for row in self.entries))

    def top_rows(self, k: int) -> FieldMatrix:
        return FieldMatrix(self.entries[:k])

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_reduced(self, f: PrimeField) -> bool:
        return all(0 <= x < f.q for row in self.entries for x in row)


def raw_mat_mul(a: FieldMatrix, b: FieldMatrix) -> list[list[int]]:
    """Integer product with no reduction at all."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bt = list(zip(*b.entries)) if b.rows else [() for _ in range(b.cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a.entries]


def mat_mul(a: FieldMatrix, b: FieldMatrix, f: PrimeField) -> FieldMatrix:
    return FieldMatrix.from_rows(raw_mat_mul(a, b), f)


def transpose(a: FieldMatrix) -> FieldMatrix:
    return FieldMatrix(tuple(zip(*a.entries)))


def is_symmetric(a: FieldMatrix) -> bool:
    if a.rows != a.cols:
        return False
    return all(a[i, j] == a[j, i] for i in range(a.rows) for j in range(i + 1, a.cols))


def row_reduce(rows: Sequence[Sequence[int]], f: PrimeField) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form over GF(q).

    Pivot is the first nonzero entry found scanning down the current column.
    Returns the echelon rows and the list of pivot column indices.
    """
    m = [[x % f.q for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = f.inv(m[r][c])
        m[r] = [x * inv % f.q for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [(x - factor * y) % f.q for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod(a: FieldMatrix, f: PrimeField) -> int:
    return len(row_reduce(a.entries, f)[1])


def null_space(a: FieldMatrix, f: PrimeField) -> list[list[int]]:
    """Basis of ``{x : a x = 0}`` over GF(q), one vector per free column."""
    reduced, pivots = row_reduce(a.entries, f)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * a.cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = f.neg(reduced[r][fc])
        basis.append(vec)
    return basis


def columns_linearly_independent(a: FieldMatrix, col_indices: Iterable[int], f: PrimeField) -> bool:
    """Whether the chosen 0-based columns of ``a`` are independent over GF(q)."""
    cols = list(col_indices)
    if len(set(cols)) != len(cols):
        raise ValueError(f"duplicate column indices in {cols}")
    for c in cols:
        if not 0 <= c < a.cols:
            raise IndexError(f"column {c} out of range for {a.cols} columns")
    if len(cols) > a.rows:
        return False
    return rank_mod(a.columns(cols), f) == len(cols)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return sum(x * y for x, y in zip(u, v))
