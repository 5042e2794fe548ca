"""Pulse trains and their delay-Doppler behaviour.

A pulse train transmits one code of a complementary set per slot; its
ambiguity function is

    g(k, theta) = sum_n ACF_{x_n}(k) * exp(1j*(n+d)*theta)

over delay lag k and per-pulse Doppler phase theta, with d the train delay
in whole pulses.  Expanding about theta = 0 gives Taylor coefficients

    c_m(k) = sum_n (n+d)^m * ACF_{x_n}(k)

and, in the z-domain, C_m(z) = sum_n (n+d)^m * |X_n(z)|^2.  PTM-ordered
trains of length K^(M+1) drive c_m(k) to zero at every non-zero lag for all
m <= M, which is what the null-order report measures.  Coefficients are
always computed from exact integer slot weights grouped per code; numerical
differentiation of g is never used here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .codes import Ccm, ztransform_eval
from .codes import acf as _acf
from .numtheory import power_sum, ptm_sequence

__all__ = [
    "PulseTrain",
    "TaylorReport",
    "AmbiguitySurface",
    "EquivalenceResult",
    "DomainMismatchError",
    "build_ptm_train",
    "build_cyclic_train",
    "code_acfs",
    "ambiguity",
    "taylor_coeffs",
    "zdomain_samples",
    "zdomain_coeff_check",
    "equivalence_check",
    "ambiguity_surface",
]

# Trains longer than this are refused outright.
MAX_TRAIN_LENGTH = 1 << 20

# Taylor orders above this cap are almost certainly a unit error upstream.
MAX_TAYLOR_ORDER = 32

# Scale-aware null test: coefficient m "vanishes" when its worst off-peak
# magnitude is at most NULL_TOL * N * max(1, last_slot)^m.  Raw weights grow
# like slot^m, so a flat tolerance would misjudge high orders.
NULL_TOL = 1e-9


class DomainMismatchError(RuntimeError):
    """Delay-domain and z-domain null verdicts disagree for some order.

    The two tests measure the same property, so disagreement means a broken
    computation (or a deliberately borderline input) and is never silently
    swallowed.
    """

    def __init__(self, order, time_residual, z_deviation):
        super().__init__(
            f"order-{order} null verdicts disagree: delay-domain residual "
            f"{time_residual:.3e}, z-domain deviation {z_deviation:.3e}"
        )
        self.order = order
        self.time_residual = time_residual
        self.z_deviation = z_deviation


@dataclass(frozen=True)
class PulseTrain:
    """Sequence of code indices into a CCM, transmitted d slots late."""

    ccm: Ccm
    indices: tuple[int, ...]
    delay: int = 0

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("train must contain at least one pulse")
        if any(i < 0 or i >= self.ccm.count for i in idx):
            raise ValueError("every index must address a code of the set")
        if self.delay < 0:
            raise ValueError("delay must be non-negative")
        object.__setattr__(self, "indices", idx)

    @property
    def length(self) -> int:
        return len(self.indices)

    def is_ptm_ordered(self) -> bool:
        """True when slot n carries code digit_sum_mod(n, K) and delay is 0."""
        if self.delay != 0:
            return False
        return list(self.indices) == ptm_sequence(self.ccm.count, self.length)

    def to_json_dict(self) -> dict:
        return {
            "ccm": self.ccm.to_json_dict(),
            "indices": list(self.indices),
            "delay": self.delay,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PulseTrain":
        return cls(
            Ccm.from_json_dict(data["ccm"]),
            tuple(data["indices"]),
            int(data.get("delay", 0)),
        )


def build_ptm_train(ccm: Ccm, order: int) -> PulseTrain:
    """PTM-ordered train of length K^(order+1) over the given code set.

    Slot n transmits code digit_sum_mod(n, K); the construction nulls the
    ambiguity Taylor coefficients through the requested order at all
    non-zero lags.
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    length = ccm.count ** (order + 1)
    if length > MAX_TRAIN_LENGTH:
        raise ValueError(f"train length {length} exceeds cap {MAX_TRAIN_LENGTH}")
    return PulseTrain(ccm, tuple(ptm_sequence(ccm.count, length)))


def build_cyclic_train(ccm: Ccm, length: int) -> PulseTrain:
    """Control train cycling codes in fixed order 0,1,...,K-1,0,1,...

    Uses each code equally often (when K divides the length) but pays no
    attention to power sums, so its first-order coefficient already fails to
    vanish; useful as the non-PTM baseline.
    """
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    return PulseTrain(ccm, tuple(n % ccm.count for n in range(length)))


def code_acfs(ccm: Ccm) -> np.ndarray:
    """Autocorrelations of all codes, shape (2N-1, K), lag k at row N-1+k."""
    return np.column_stack([_acf(ccm.code(k)) for k in range(ccm.count)])


def _slot_weights(train: PulseTrain, order: int) -> np.ndarray:
    """Exact integer weights sum((n+d)^m) grouped per code, as floats.

    Grouping keeps the integer cancellation between slots of the same code
    exact; the only rounding is the final int-to-float conversion.
    Row m, column k holds the total order-m weight of code k.
    """
    slots_by_code: list[list[int]] = [[] for _ in range(train.ccm.count)]
    for n, c in enumerate(train.indices):
        slots_by_code[c].append(n + train.delay)
    return np.array(
        [
            [float(power_sum(slots, m)) for slots in slots_by_code]
            for m in range(order + 1)
        ]
    )


def ambiguity(train: PulseTrain, lag: int, theta: float) -> complex:
    """Single ambiguity sample g(lag, theta)."""
    n = train.ccm.length
    if abs(lag) > n - 1:
        raise ValueError(f"lag {lag} out of range for length-{n} codes")
    row = code_acfs(train.ccm)[n - 1 + lag, :]
    per_pulse = row[list(train.indices)]
    slots = np.arange(train.length) + train.delay
    return complex(np.sum(per_pulse * np.exp(1j * theta * slots)))


@dataclass(frozen=True)
class TaylorReport:
    """Ambiguity Taylor coefficients and the null order they certify.

    coeffs[m] is c_m over all lags (lag k at column N-1+k); c_0 is the plain
    summed autocorrelation of the train.  max_sidelobe_residual[m] is the
    worst off-peak magnitude of c_m, and null_order is the largest m such
    that every coefficient up to m stays below its scale-aware threshold.
    """

    max_order: int
    lags: np.ndarray
    coeffs: np.ndarray
    max_sidelobe_residual: np.ndarray
    thresholds: np.ndarray
    null_order: int

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
        }


def _taylor_from_weights(
    acfs: np.ndarray, weights: np.ndarray, last_slot: int, tol: float
):
    """Shared coefficient pipeline for single trains and composite plans."""
    code_length = (acfs.shape[0] + 1) // 2
    max_order = weights.shape[0] - 1
    coeffs = weights @ acfs.T
    center = code_length - 1
    if acfs.shape[0] > 1:
        off_peak = np.abs(np.delete(coeffs, center, axis=1))
        residuals = off_peak.max(axis=1)
    else:
        residuals = np.zeros(max_order + 1)
    base = float(max(1, last_slot))
    thresholds = tol * code_length * base ** np.arange(max_order + 1)
    null_order = -1
    for m in range(max_order + 1):
        if residuals[m] > thresholds[m]:
            break
        null_order = m
    lags = np.arange(1 - code_length, code_length)
    return lags, coeffs, residuals, thresholds, null_order


def taylor_coeffs(
    train: PulseTrain, max_order: int, tol: float = NULL_TOL
) -> TaylorReport:
    """Taylor coefficients c_0..c_max_order of the train's ambiguity."""
    if not 0 <= max_order <= MAX_TAYLOR_ORDER:
        raise ValueError(f"max_order must be in 0..{MAX_TAYLOR_ORDER}")
    acfs = code_acfs(train.ccm)
    weights = _slot_weights(train, max_order)
    last_slot = train.length - 1 + train.delay
    lags, coeffs, residuals, thresholds, null_order = _taylor_from_weights(
        acfs, weights, last_slot, tol
    )
    return TaylorReport(max_order, lags, coeffs, residuals, thresholds, null_order)


def _unit_circle(count: int) -> np.ndarray:
    if count < 1:
        raise ValueError("need at least one sample point")
    return np.exp(2j * np.pi * np.arange(count) / count)


def _power_spectra(ccm: Ccm, zs: np.ndarray) -> np.ndarray:
    """|X_k(z)|^2 for every code k at every sample z, shape (len(zs), K)."""
    return np.column_stack(
        [
            np.abs([ztransform_eval(ccm.code(k), z) for z in zs]) ** 2
            for k in range(ccm.count)
        ]
    )


def zdomain_samples(train: PulseTrain, order: int, z_count: int = 64) -> np.ndarray:
    """C_m(z) = sum_n (n+d)^m |X_{x_n}(z)|^2 at z_count unit-circle points.

    Real-valued by construction.  Works for any train; PTM-ordered trains
    make this constant in z for m up to the train order.
    """
    zs = _unit_circle(z_count)
    spectra = _power_spectra(train.ccm, zs)
    weights = _slot_weights(train, order)[order]
    return spectra @ weights


def zdomain_coeff_check(
    train: PulseTrain, max_order: int, z_count: int = 64
) -> np.ndarray:
    """Relative deviation of C_m(z) from its predicted constant N*K*P_m.

    P_m is the common block power sum of the train's own PTM partition
    (block cardinality for m = 0).  Requires a PTM-ordered train, for which
    the prediction is exact through the train order; entry m of the result
    is max_z |C_m(z) - N*K*P_m| / max(1, N*K*P_m).
    """
    if not 0 <= max_order <= MAX_TAYLOR_ORDER:
        raise ValueError(f"max_order must be in 0..{MAX_TAYLOR_ORDER}")
    if not train.is_ptm_ordered():
        raise ValueError("reference check requires a PTM-ordered, zero-delay train")
    k = train.ccm.count
    n = train.ccm.length
    block0 = [i for i in range(train.length) if train.indices[i] == 0]
    zs = _unit_circle(z_count)
    spectra = _power_spectra(train.ccm, zs)
    weights = _slot_weights(train, max_order)
    residuals = np.empty(max_order + 1)
    for m in range(max_order + 1):
        samples = spectra @ weights[m]
        target = n * k * power_sum(block0, m)
        residuals[m] = np.max(np.abs(samples - target)) / max(1.0, target)
    return residuals


@dataclass(frozen=True)
class EquivalenceResult:
    """Null verdicts for one Taylor order in both domains."""

    order: int
    time_domain_null: bool
    z_domain_constant: bool
    time_residual: float
    z_deviation: float


def equivalence_check(
    train: PulseTrain,
    order: int,
    z_count: int = 64,
    tol: float = NULL_TOL,
) -> EquivalenceResult:
    """Cross-validate the order-m null in the delay and z domains.

    The delay-domain test thresholds the worst off-peak |c_m(k)|; the
    z-domain test thresholds the spread of sampled C_m(z) about its mean.  A
    vanished coefficient makes C_m exactly constant and vice versa, so the
    verdicts must agree; if they do not, a DomainMismatchError is raised
    rather than returning a half-trusted answer.
    """
    report = taylor_coeffs(train, order, tol)
    time_residual = float(report.max_sidelobe_residual[order])
    threshold = float(report.thresholds[order])
    time_null = time_residual <= threshold

    samples = zdomain_samples(train, order, z_count)
    z_dev = float(np.max(np.abs(samples - samples.mean())))
    # The deviation polynomial has 2(N-1) coefficient terms of size |c_m(k)|.
    z_constant = z_dev <= 2 * max(1, train.ccm.length - 1) * threshold

    if time_null != z_constant:
        raise DomainMismatchError(order, time_residual, z_dev)
    return EquivalenceResult(order, time_null, z_constant, time_residual, z_dev)


@dataclass(frozen=True)
class AmbiguitySurface:
    """|g(k, theta)| sampled on a dense delay-Doppler grid.

    magnitudes[t, j] is the response at thetas[t], lags[j]; rows scan theta,
    columns scan lag, matching the CSV export order.
    """

    thetas: np.ndarray
    lags: np.ndarray
    magnitudes: np.ndarray
    description: str = ""

    def sidelobe_peaks(self) -> np.ndarray:
        """Worst off-peak magnitude at each theta sample."""
        center = (self.lags.size - 1) // 2
        if self.lags.size == 1:
            return np.zeros(self.thetas.size)
        return np.delete(self.magnitudes, center, axis=1).max(axis=1)

    def write_csv(self, path) -> None:
        """Rows theta-major: header theta,k,magnitude; theta to 12 digits."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("theta,k,magnitude\n")
            for t, theta in enumerate(self.thetas):
                for j, k in enumerate(self.lags):
                    fh.write(f"{theta:.12g},{int(k)},{self.magnitudes[t, j]:.17g}\n")


def ambiguity_surface(
    train: PulseTrain, theta_min: float, theta_max: float, theta_steps: int
) -> AmbiguitySurface:
    """Sample |g| over every lag and a uniform theta interval.

    The grid is computed by direct summation of the defining series (one
    matrix product), never from Taylor data, so surfaces remain an
    independent view of the train.
    """
    if theta_steps < 2:
        raise ValueError(f"need at least 2 theta steps, got {theta_steps}")
    if not math.isfinite(theta_min) or not math.isfinite(theta_max):
        raise ValueError("theta bounds must be finite")
    thetas = np.linspace(theta_min, theta_max, theta_steps)
    acfs = code_acfs(train.ccm)
    per_pulse = acfs[:, list(train.indices)]
    slots = np.arange(train.length) + train.delay
    phase = np.exp(1j * np.outer(thetas, slots))
    grid = phase @ per_pulse.T
    n = train.ccm.length
    description = (
        f"L={train.length} K={train.ccm.count} N={n} delay={train.delay}"
    )
    return AmbiguitySurface(thetas, np.arange(1 - n, n), np.abs(grid), description)
