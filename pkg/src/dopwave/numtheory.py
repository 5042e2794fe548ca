"""Exact integer machinery behind PTM pulse ordering.

Digit sums, Prouhet-Thue-Morse (PTM) sequences and block partitions, power
sums, equal-sums-of-like-powers (ESP) partition checking and search, and the
Rademacher-style sign transform used to isolate sidelobe contributions.

Everything combinatorial here is exact: power sums use Python's
arbitrary-precision integers, sign tables are small integer matrices, and
partition checks are integer equality tests.  Floating point enters only when
a transform is applied to complex data.
"""

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "digit_sum_mod",
    "ptm_sequence",
    "ptm_partition",
    "power_sum",
    "prouhet_sum",
    "esp_check",
    "esp_search",
    "weight_table",
    "forward_transform",
    "inverse_transform",
    "sidelobe_split_check",
    "PtmPartition",
    "EspPartition",
    "EspCheck",
    "WeightTable",
    "SidelobeSplitReport",
]

# Partition sizes p^(M+1) beyond this are refused rather than silently built.
MAX_PARTITION_SIZE = 1 << 22

# Default cap on the universe handed to the exhaustive ESP search.
MAX_SEARCH_UNIVERSE = 30


def digit_sum_mod(n: int, p: int) -> int:
    """Sum of the base-p digits of n, reduced mod p.

    This is the symbol the mod-p PTM sequence assigns to index n.  For
    0 <= n < p it equals n itself.
    """
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    total = 0
    while n:
        n, r = divmod(n, p)
        total += r
    return total % p


def ptm_sequence(p: int, length: int) -> list[int]:
    """First `length` terms of the mod-p PTM sequence.

    Term n is digit_sum_mod(n, p).  For p=2 this is the classical
    Thue-Morse sequence 0,1,1,0,1,0,0,1,...
    """
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    return [digit_sum_mod(n, p) for n in range(length)]


@dataclass(frozen=True)
class PtmPartition:
    """Partition of {0,...,p^(degree+1)-1} into p blocks by PTM symbol.

    Block i holds exactly the n with digit_sum_mod(n, p) == i.  The blocks
    are pairwise disjoint, each of size p^degree, and share identical power
    sums sum(n^m) for m = 1..degree.
    """

    p: int
    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        """Total number of integers partitioned, p^(degree+1)."""
        return self.p ** (self.degree + 1)

    def prouhet_sums(self) -> tuple[int, ...]:
        """Common power sums P_0..P_degree shared by every block."""
        return tuple(power_sum(self.blocks[0], m) for m in range(self.degree + 1))

    def as_esp(self) -> "EspPartition":
        return EspPartition(self.blocks, self.degree, self.prouhet_sums())

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "M": self.degree,
            "blocks": [list(b) for b in self.blocks],
            "prouhetSums": list(self.prouhet_sums()),
        }


def ptm_partition(p: int, degree: int) -> PtmPartition:
    """Build the PTM p-block partition of {0,...,p^(degree+1)-1}."""
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    size = p ** (degree + 1)
    if size > MAX_PARTITION_SIZE:
        raise ValueError(f"partition size {size} exceeds cap {MAX_PARTITION_SIZE}")
    blocks = [[] for _ in range(p)]
    for n, symbol in enumerate(ptm_sequence(p, size)):
        blocks[symbol].append(n)
    return PtmPartition(p, degree, tuple(tuple(b) for b in blocks))


def power_sum(values, m: int) -> int:
    """Exact sum of m-th powers over an integer multiset.

    Uses arbitrary-precision arithmetic; 0**0 counts as 1 so that the m=0
    sum is the multiset cardinality.
    """
    if m < 0:
        raise ValueError(f"power must be non-negative, got {m}")
    return sum(v ** m for v in values)


def prouhet_sum(p: int, degree: int, m: int) -> int:
    """Common m-th power sum of the blocks of the (p, degree) PTM partition.

    For m <= degree every block has the same sum and this value times p
    equals sum(n^m) over the whole range.  Requesting m > degree is allowed
    but the cross-block equality no longer holds, so a warning is issued and
    the block-0 sum is returned.
    """
    if m < 0:
        raise ValueError(f"power must be non-negative, got {m}")
    if m > degree:
        warnings.warn(
            f"m={m} exceeds partition degree {degree}; blocks no longer share "
            "this power sum",
            stacklevel=2,
        )
    return power_sum(ptm_partition(p, degree).blocks[0], m)


@dataclass(frozen=True)
class EspCheck:
    """Outcome of an equal-power-sums test over a block family."""

    is_esp: bool
    prouhet_sums: tuple[int, ...]


def esp_check(blocks, degree: int) -> EspCheck:
    """Test whether blocks share identical power sums for m = 1..degree.

    Blocks are integer multisets (repeats count).  The reported sums
    P_0..P_degree come from block 0; P_0 is its cardinality.
    """
    mats = [tuple(b) for b in blocks]
    if len(mats) < 2:
        raise ValueError("need at least two blocks")
    reference = tuple(power_sum(mats[0], m) for m in range(degree + 1))
    ok = all(
        power_sum(b, m) == reference[m]
        for b in mats[1:]
        for m in range(1, degree + 1)
    )
    return EspCheck(ok, reference)


@dataclass(frozen=True)
class EspPartition:
    """A p-block integer multiset family with equal power sums up to `degree`.

    prouhet_sums[m] is the common m-th power sum; prouhet_sums[0] is the
    common block cardinality.  Blocks may overlap (padded schedules) but each
    block is stored sorted.
    """

    blocks: tuple[tuple[int, ...], ...]
    degree: int
    prouhet_sums: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks, degree: int) -> "EspPartition":
        """Validate the equal-power-sums property and build the partition."""
        mats = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
        if any(v < 0 for b in mats for v in b):
            raise ValueError("slot values must be non-negative")
        result = esp_check(mats, degree)
        if not result.is_esp:
            raise ValueError(f"blocks do not share power sums up to degree {degree}")
        return cls(mats, degree, result.prouhet_sums)

    @property
    def p(self) -> int:
        return len(self.blocks)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "M": self.degree,
            "blocks": [list(b) for b in self.blocks],
            "prouhetSums": list(self.prouhet_sums),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EspPartition":
        return cls.from_blocks(data["blocks"], int(data["M"]))


def esp_search(
    universe,
    p: int,
    degree: int,
    max_solutions: int | None = None,
    *,
    max_universe: int = MAX_SEARCH_UNIVERSE,
) -> list[EspPartition]:
    """Exhaustively enumerate equal-size ESP partitions of a universe.

    Depth-first assignment of the sorted universe into p blocks of size
    |universe|/p, pruning on partial power sums (all elements are
    non-negative, so partial sums never exceed the per-block targets) and
    breaking block-permutation symmetry by only opening block j after block
    j-1 is non-empty; in particular the minimum element always lands in
    block 0.  Output order is the lexicographic assignment order, so results
    are deterministic.
    """
    elems = sorted(universe)
    if len(set(elems)) != len(elems):
        raise ValueError("universe must not contain duplicate values")
    if any(e < 0 for e in elems):
        raise ValueError("universe values must be non-negative")
    if p < 2:
        raise ValueError(f"block count must be at least 2, got {p}")
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    count = len(elems)
    if count == 0 or count % p:
        raise ValueError(f"universe size {count} is not divisible by {p} blocks")
    if count > max_universe:
        raise ValueError(
            f"universe size {count} exceeds search bound {max_universe}; "
            "pass max_universe to override"
        )
    if max_solutions is not None and max_solutions < 1:
        raise ValueError("max_solutions must be positive when given")

    quota = count // p
    targets = []
    for m in range(1, degree + 1):
        total = power_sum(elems, m)
        if total % p:
            return []
        targets.append(total // p)

    powers = [[e ** m for m in range(degree + 1)] for e in elems]
    blocks: list[list[int]] = [[] for _ in range(p)]
    sums = [[0] * (degree + 1) for _ in range(p)]
    found: list[EspPartition] = []

    def place(i: int) -> bool:
        # Returns False once enough solutions were collected.
        if i == count:
            found.append(
                EspPartition(
                    tuple(tuple(b) for b in blocks),
                    degree,
                    tuple(sums[0]),
                )
            )
            return max_solutions is None or len(found) < max_solutions
        elem_powers = powers[i]
        for j in range(p):
            if j and not blocks[j - 1]:
                break  # opening block j before j-1 only permutes blocks
            block, block_sums = blocks[j], sums[j]
            if len(block) == quota:
                continue
            closing = len(block) == quota - 1
            feasible = True
            for m in range(1, degree + 1):
                s = block_sums[m] + elem_powers[m]
                if s > targets[m - 1] or (closing and s != targets[m - 1]):
                    feasible = False
                    break
            if not feasible:
                continue
            block.append(elems[i])
            for m in range(degree + 1):
                block_sums[m] += elem_powers[m]
            keep_going = place(i + 1)
            for m in range(degree + 1):
                block_sums[m] -= elem_powers[m]
            block.pop()
            if not keep_going:
                return False
        return True

    place(0)
    return found


@dataclass(frozen=True)
class WeightTable:
    """Sign table of the 2^(p-1) Rademacher-style weight sequences.

    rows[i, v] = (-1)**bit(i, p-1-v); row 0 is all ones.  A weight sequence
    is evaluated at general n through the PTM symbol: w_i(n) = rows[i, v]
    with v = digit_sum_mod(n, p).
    """

    p: int
    rows: np.ndarray

    def weight(self, i: int, n: int) -> int:
        return int(self.rows[i, digit_sum_mod(n, self.p)])


def weight_table(p: int) -> WeightTable:
    """Build the 2^(p-1) x p sign matrix of weight sequences."""
    if not 2 <= p <= 20:
        raise ValueError(f"symbol count must be in 2..20, got {p}")
    rows = np.empty((1 << (p - 1), p), dtype=np.int8)
    for i in range(rows.shape[0]):
        for v in range(p):
            rows[i, v] = -1 if (i >> (p - 1 - v)) & 1 else 1
    rows.setflags(write=False)
    return WeightTable(p, rows)


def forward_transform(values, table: WeightTable | None = None) -> np.ndarray:
    """Signed sums B_i = sum_n w_i(n) * A_n over the p input scalars.

    Produces 2^(p-1) components.  For p=2 this is (a0+a1, a0-a1).
    """
    a = np.asarray(values, dtype=complex)
    if a.ndim != 1:
        raise ValueError("expected a 1-D array of scalars")
    if table is None:
        table = weight_table(len(a))
    if table.p != len(a):
        raise ValueError(f"table is for p={table.p}, input has length {len(a)}")
    return table.rows @ a


def inverse_transform(values, table: WeightTable | None = None) -> np.ndarray:
    """Recover the p scalars from their 2^(p-1) signed sums.

    A_n = 2^(1-p) * sum_i w_i(n) * B_i; exact inverse of forward_transform
    because distinct columns of the sign matrix are orthogonal over the
    2^(p-1) rows.
    """
    b = np.asarray(values, dtype=complex)
    if b.ndim != 1:
        raise ValueError("expected a 1-D array of scalars")
    if table is None:
        p = int(round(np.log2(len(b)))) + 1
        if (1 << (p - 1)) != len(b):
            raise ValueError(f"length {len(b)} is not a power of two")
        table = weight_table(p)
    if (1 << (table.p - 1)) != len(b):
        raise ValueError(f"table is for p={table.p}, input has length {len(b)}")
    return (table.rows.T @ b) / float(1 << (table.p - 1))


@dataclass(frozen=True)
class SidelobeSplitReport:
    """Residuals of the weighted sidelobe-isolation identity.

    For the split A_n = 2^(1-p) * (B_0 + S(n)) with S(n) the signed sum of
    the non-constant transform components, the identity

        sum_{n < p^(degree+1)} n^m * S(n) = N_m * B_0,
        N_m = 2^(p-1) * P_m - sum_{n < p^(degree+1)} n^m

    holds for m = 1..degree.  residuals[m-1] is the relative mismatch of the
    two sides evaluated independently.
    """

    degree: int
    n_coefficients: tuple[int, ...]
    residuals: np.ndarray


def sidelobe_split_check(values, degree: int) -> SidelobeSplitReport:
    """Evaluate both sides of the sidelobe-isolation identity directly.

    The left side is a plain weighted sum over n = 0..p^(degree+1)-1 of the
    non-constant signed component S(n); the right side uses the exact
    integer coefficient N_m.  No block structure is assumed in the
    evaluation, so the returned residuals genuinely test the identity.
    """
    a = np.asarray(values, dtype=complex)
    if a.ndim != 1:
        raise ValueError("expected a 1-D array of scalars")
    p = len(a)
    table = weight_table(p)
    size = p ** (degree + 1)
    if size > MAX_PARTITION_SIZE:
        raise ValueError(f"range size {size} exceeds cap {MAX_PARTITION_SIZE}")

    b = table.rows @ a
    # S(n) depends on n only through its PTM symbol.
    s_by_symbol = table.rows[1:].T.astype(float) @ b[1:]
    symbols = np.array(ptm_sequence(p, size), dtype=np.intp)
    s_vals = s_by_symbol[symbols]

    partition = ptm_partition(p, degree)
    index_range = np.arange(size, dtype=float)
    n_coeffs = []
    residuals = np.empty(degree)
    for m in range(1, degree + 1):
        lhs = complex(index_range ** m @ s_vals)
        n_m = (1 << (p - 1)) * power_sum(partition.blocks[0], m) - power_sum(
            range(size), m
        )
        rhs = n_m * b[0]
        residuals[m - 1] = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        n_coeffs.append(n_m)
    return SidelobeSplitReport(degree, tuple(n_coeffs), residuals)
