"""Staggered multi-antenna schedules from equal-power-sum partitions.

A degree-M ESP partition assigns transmission slots to codes; padding fills
the unused slots into every block (adding equal values to all blocks keeps
the power sums equal), and a greedy sweep decomposes the padded demand into
contiguous per-antenna pulse trains with delays.  The summed ambiguity of
the lanes inherits order-M Doppler nulls from the partition alone: the
per-slot code multiplicities are exactly the padded blocks, so the composite
coefficient c_m(k) collapses to P_m times the summed code autocorrelations
for every m <= M.

The schedule is shorter than the PTM train of equal null order whenever the
partition spans fewer slots than K^(M+1).
"""

from dataclasses import dataclass

import numpy as np

from .codes import Ccm
from .doppler import NULL_TOL, _taylor_from_weights, code_acfs
from .numtheory import EspPartition, esp_search, power_sum, ptm_partition

__all__ = [
    "Lane",
    "StaggerPlan",
    "CompositeReport",
    "ScheduleComparison",
    "builtin_partition",
    "pad_partition",
    "decompose_to_antennas",
    "composite_taylor",
    "compare_ptm_vs_stagger",
]

DEFAULT_ANTENNA_CAP = 8

# Known short two-block partitions by degree, each smaller than the PTM
# partition of equal degree.  Validated on first use.
_BUILTIN_BLOCKS = {
    2: ((0, 4, 5), (1, 2, 6)),
    3: ((0, 4, 7, 11), (1, 2, 9, 10)),
    5: ((0, 5, 6, 16, 17, 22), (1, 2, 10, 12, 20, 21)),
}


def builtin_partition(degree: int) -> EspPartition:
    """Built-in two-block ESP partition for degree 2, 3 or 5."""
    if degree not in _BUILTIN_BLOCKS:
        raise KeyError(f"no built-in partition of degree {degree}")
    return EspPartition.from_blocks(_BUILTIN_BLOCKS[degree], degree)


@dataclass(frozen=True)
class Lane:
    """One antenna's contiguous transmission: code indices from slot `delay`."""

    delay: int
    indices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def last_slot(self) -> int:
        return self.delay + self.length - 1


@dataclass(frozen=True)
class StaggerPlan:
    """Per-antenna lanes realizing a padded ESP partition's slot demand.

    At every slot t the number of lanes transmitting code c equals the
    multiplicity of t in padded block c; each lane is contiguous.
    """

    ccm: Ccm
    horizon: int
    degree: int
    lanes: tuple[Lane, ...]
    partition: EspPartition

    @property
    def span(self) -> int:
        """Slots from the first transmitted pulse to the last, inclusive."""
        return max(l.last_slot for l in self.lanes) + 1 - min(
            l.delay for l in self.lanes
        )

    @property
    def total_pulses(self) -> int:
        return sum(l.length for l in self.lanes)

    def slot_multiplicities(self) -> list[dict[int, int]]:
        """Transmission count per code at each slot, derived from the lanes."""
        table: list[dict[int, int]] = [{} for _ in range(self.horizon)]
        for lane in self.lanes:
            for offset, code in enumerate(lane.indices):
                slot = lane.delay + offset
                table[slot][code] = table[slot].get(code, 0) + 1
        return table

    def to_json_dict(self) -> dict:
        return {
            "D": self.horizon,
            "M": self.degree,
            "lanes": [
                {"delay": l.delay, "indices": list(l.indices)} for l in self.lanes
            ],
            "partition": self.partition.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, data: dict, ccm: Ccm) -> "StaggerPlan":
        return cls(
            ccm,
            int(data["D"]),
            int(data["M"]),
            tuple(
                Lane(int(l["delay"]), tuple(l["indices"])) for l in data["lanes"]
            ),
            EspPartition.from_json_dict(data["partition"]),
        )


def pad_partition(partition: EspPartition, horizon: int | None = None) -> EspPartition:
    """Fill every unused slot below the horizon into all blocks.

    A slot missing from the union of blocks is added to each block, which
    leaves the pairwise power-sum equalities intact (the same values are
    added everywhere) but makes the blocks overlap.  The default horizon is
    one past the largest slot in use.
    """
    used = set()
    for block in partition.blocks:
        used.update(block)
    if horizon is None:
        horizon = max(used) + 1
    if any(v >= horizon for v in used):
        raise ValueError("partition uses slots at or beyond the horizon")
    missing = sorted(set(range(horizon)) - used)
    padded = [tuple(sorted(block + tuple(missing))) for block in partition.blocks]
    return EspPartition.from_blocks(padded, partition.degree)


def _slot_demands(partition: EspPartition, horizon: int) -> list[list[int]]:
    """Sorted code multiset demanded at each slot (one entry per block hit)."""
    demands: list[list[int]] = [[] for _ in range(horizon)]
    for code, block in enumerate(partition.blocks):
        for slot in block:
            demands[slot].append(code)
    for d in demands:
        d.sort()
    return demands


def decompose_to_antennas(
    padded: EspPartition,
    ccm: Ccm,
    antenna_cap: int = DEFAULT_ANTENNA_CAP,
) -> StaggerPlan:
    """Greedy sweep turning per-slot code demand into contiguous lanes.

    Walking the slots in order: open lanes must transmit every slot, so when
    demand shrinks the oldest lanes close (their trains end), and when it
    grows new lanes open at the current slot.  Demand codes are assigned to
    open lanes in ascending code order against lane opening order, which
    makes the whole construction deterministic.  The result satisfies the
    per-slot multiplicity contract by construction.
    """
    if len(padded.blocks) != ccm.count:
        raise ValueError(
            f"partition has {len(padded.blocks)} blocks but the set has "
            f"{ccm.count} codes"
        )
    horizon = max(max(b) for b in padded.blocks) + 1
    demands = _slot_demands(padded, horizon)
    if any(not d for d in demands):
        gap = next(t for t, d in enumerate(demands) if not d)
        raise ValueError(f"padded blocks leave slot {gap} empty; pad first")
    peak = max(len(d) for d in demands)
    if peak > antenna_cap:
        raise ValueError(f"slot demand {peak} exceeds antenna cap {antenna_cap}")

    open_lanes: list[tuple[int, list[int]]] = []  # (delay, codes) in opening order
    finished: list[tuple[int, list[int]]] = []
    for slot, demand in enumerate(demands):
        while len(open_lanes) > len(demand):
            finished.append(open_lanes.pop(0))
        while len(open_lanes) < len(demand):
            open_lanes.append((slot, []))
        for (_, codes), code in zip(open_lanes, demand):
            codes.append(code)
    finished.extend(open_lanes)
    finished.sort(key=lambda lane: lane[0])
    lanes = tuple(Lane(delay, tuple(codes)) for delay, codes in finished)
    return StaggerPlan(ccm, horizon, padded.degree, lanes, padded)


@dataclass(frozen=True)
class CompositeReport:
    """Taylor view of the summed ambiguity of all lanes.

    Mirrors the single-train report and adds the schedule costs: total
    pulses actually transmitted and the slot span of the whole schedule.
    """

    max_order: int
    lags: np.ndarray
    coeffs: np.ndarray
    max_sidelobe_residual: np.ndarray
    thresholds: np.ndarray
    null_order: int
    total_pulses: int
    span: int

    def to_json_dict(self) -> dict:
        return {
            "M": self.max_order,
            "lags": [int(k) for k in self.lags],
            "coeffs": [
                [[float(v.real), float(v.imag)] for v in row] for row in self.coeffs
            ],
            "maxSidelobeResidual": [float(v) for v in self.max_sidelobe_residual],
            "thresholds": [float(v) for v in self.thresholds],
            "nullOrder": self.null_order,
            "totalPulses": self.total_pulses,
            "span": self.span,
        }


def composite_taylor(
    plan: StaggerPlan, max_order: int, tol: float = NULL_TOL
) -> CompositeReport:
    """Taylor coefficients of the summed lane ambiguities.

    Lane j's pulse at position n carries weight (n + delay_j)^m, so grouping
    by code gives c_m(k) = sum_c W_c(m) * ACF_c(k) with exact integer
    W_c(m); for m up to the partition degree the W_c coincide and the
    off-peak coefficients collapse to complementary-sum residuals.
    """
    slots_by_code: list[list[int]] = [[] for _ in range(plan.ccm.count)]
    for lane in plan.lanes:
        for offset, code in enumerate(lane.indices):
            slots_by_code[code].append(lane.delay + offset)
    weights = np.array(
        [
            [float(power_sum(slots, m)) for slots in slots_by_code]
            for m in range(max_order + 1)
        ]
    )
    acfs = code_acfs(plan.ccm)
    last_slot = max(lane.last_slot for lane in plan.lanes)
    lags, coeffs, residuals, thresholds, null_order = _taylor_from_weights(
        acfs, weights, last_slot, tol
    )
    return CompositeReport(
        max_order,
        lags,
        coeffs,
        residuals,
        thresholds,
        null_order,
        plan.total_pulses,
        plan.span,
    )


@dataclass(frozen=True)
class ScheduleComparison:
    """Side-by-side costs of the PTM train and the staggered schedule."""

    degree: int
    ptm_span: int
    ptm_pulses: int
    ptm_null_order: int
    stagger_span: int
    stagger_pulses: int
    stagger_null_order: int

    def to_json_dict(self) -> dict:
        return {
            "M": self.degree,
            "ptm": {"span": self.ptm_span, "pulses": self.ptm_pulses},
            "stagger": {"span": self.stagger_span, "pulses": self.stagger_pulses},
            "nullOrders": {
                "ptm": self.ptm_null_order,
                "stagger": self.stagger_null_order,
            },
        }


def _partition_for_degree(ccm: Ccm, degree: int) -> EspPartition:
    if ccm.count == 2 and degree in _BUILTIN_BLOCKS:
        return builtin_partition(degree)
    # Fall back to the PTM split itself; correct for any K, never shorter.
    size = ccm.count ** (degree + 1)
    try:
        candidates = esp_search(range(size), ccm.count, degree, max_solutions=1)
    except ValueError as exc:
        raise ValueError(
            f"no ESP partition of degree {degree} for {ccm.count} blocks "
            "within search bounds; supply one explicitly"
        ) from exc
    if not candidates:
        raise ValueError(
            f"no ESP partition of degree {degree} found for {ccm.count} blocks"
        )
    return candidates[0]


def compare_ptm_vs_stagger(
    ccm: Ccm,
    degree: int,
    partition: EspPartition | None = None,
    antenna_cap: int = DEFAULT_ANTENNA_CAP,
) -> ScheduleComparison:
    """Measure what staggering buys over the single PTM train.

    Both schedules are built and verified to reach null order >= degree; the
    comparison reports their spans and pulse counts.  Without an explicit
    partition, the built-in table covers degrees 2/3/5 for two codes and an
    exhaustive search over the PTM-sized slot range covers small cases.
    """
    from .doppler import build_ptm_train, taylor_coeffs

    if partition is None:
        partition = _partition_for_degree(ccm, degree)
    if len(partition.blocks) != ccm.count:
        raise ValueError("partition block count must match the code count")
    if partition.degree < degree:
        raise ValueError("partition degree is below the requested degree")

    train = build_ptm_train(ccm, degree)
    ptm_report = taylor_coeffs(train, degree)

    plan = decompose_to_antennas(pad_partition(partition), ccm, antenna_cap)
    stagger_report = composite_taylor(plan, degree)

    if ptm_report.null_order < degree or stagger_report.null_order < degree:
        raise ValueError(
            "schedule failed to reach the requested null order: "
            f"ptm={ptm_report.null_order}, stagger={stagger_report.null_order}"
        )
    return ScheduleComparison(
        degree,
        train.length,
        train.length,
        ptm_report.null_order,
        plan.span,
        plan.total_pulses,
        stagger_report.null_order,
    )


def ptm_partition_as_esp(p: int, degree: int) -> EspPartition:
    """The PTM partition viewed as an ESP partition (disjoint, gap-free)."""
    return ptm_partition(p, degree).as_esp()
