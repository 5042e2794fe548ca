"""Unimodular code sets and aperiodic autocorrelation.

A code is a 1-D array of unit-magnitude complex samples.  A set of K codes
of common length N is complementary when the K autocorrelations sum to
N*K at lag zero and cancel at every other lag; such a set is stored as a
``Ccm`` (columns = codes).  Two concrete generators ship: binary pairs grown
by the concatenation doubling recursion, and the DFT phase family (column k
has entries exp(2j*pi*k*n/K)).

Codes built from integer phases keep those phases alongside the complex
entries so files round-trip bit-exactly and binary/quaternary sets can be
validated in exact Gaussian-integer arithmetic.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Ccm",
    "CcmValidation",
    "ExactCcmValidation",
    "acf",
    "validate_ccm",
    "validate_ccm_exact",
    "gen_golay_pair",
    "gen_dft_set",
    "ztransform_eval",
]

# Unit-magnitude and phase-consistency tolerance for stored entries.
UNIT_TOL = 1e-12

# Default per-lag tolerance on summed autocorrelations (adequate to N ~ 4096).
CCM_TOL = 1e-9

_EXACT_ROOTS = {
    1: np.array([1], dtype=complex),
    2: np.array([1, -1], dtype=complex),
    4: np.array([1, 1j, -1, -1j], dtype=complex),
}

_GAUSS_ROOTS = {
    2: ((1, 0), (-1, 0)),
    4: ((1, 0), (0, 1), (-1, 0), (0, -1)),
}


def entries_from_phases(phases, order: int) -> np.ndarray:
    """Complex p-th roots of unity exp(2j*pi*phase/order).

    Orders 1, 2 and 4 are produced from an exact lookup so binary and
    quaternary codes carry no rounding at all.
    """
    ph = np.asarray(phases) % order
    if order in _EXACT_ROOTS:
        return _EXACT_ROOTS[order][ph]
    return np.exp(2j * np.pi * ph / order)


@dataclass(frozen=True, eq=False)
class Ccm:
    """K unimodular codes of common length N, stored as matrix columns.

    Construction checks unit magnitude (and, when integer phases are given,
    that they reproduce the entries) but not complementarity; use
    validate_ccm for that, so candidate sets can be represented and then
    judged.
    """

    columns: np.ndarray
    phase_order: int | None = None
    phases: np.ndarray | None = None

    def __post_init__(self):
        cols = np.array(self.columns, dtype=complex)
        if cols.ndim != 2 or cols.shape[0] < 1 or cols.shape[1] < 1:
            raise ValueError("columns must form a non-empty 2-D matrix")
        if np.max(np.abs(np.abs(cols) - 1.0)) > UNIT_TOL:
            raise ValueError("all entries must have unit magnitude")
        if (self.phases is None) != (self.phase_order is None):
            raise ValueError("phase_order and phases must be given together")
        ph = None
        if self.phases is not None:
            if self.phase_order < 1:
                raise ValueError("phase_order must be positive")
            ph = np.array(self.phases, dtype=np.int64) % self.phase_order
            if ph.shape != cols.shape:
                raise ValueError("phases must match the column matrix shape")
            rebuilt = entries_from_phases(ph, self.phase_order)
            if np.max(np.abs(rebuilt - cols)) > UNIT_TOL:
                raise ValueError("phases do not reproduce the stored entries")
            ph.setflags(write=False)
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "phases", ph)

    @classmethod
    def from_phases(cls, phases, order: int) -> "Ccm":
        ph = np.asarray(phases, dtype=np.int64)
        return cls(entries_from_phases(ph, order), order, ph)

    @property
    def length(self) -> int:
        return self.columns.shape[0]

    @property
    def count(self) -> int:
        return self.columns.shape[1]

    def code(self, k: int) -> np.ndarray:
        return self.columns[:, k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ccm):
            return NotImplemented
        if self.phase_order != other.phase_order:
            return False
        if (self.phases is None) != (other.phases is None):
            return False
        if self.phases is not None and not np.array_equal(self.phases, other.phases):
            return False
        return np.array_equal(self.columns, other.columns)

    def to_json_dict(self) -> dict:
        data = {"N": self.length, "K": self.count, "phaseOrder": self.phase_order}
        if self.phases is not None:
            data["phases"] = [
                [int(v) for v in self.phases[:, k]] for k in range(self.count)
            ]
        else:
            data["columns"] = [
                [[float(v.real), float(v.imag)] for v in self.columns[:, k]]
                for k in range(self.count)
            ]
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "Ccm":
        order = data.get("phaseOrder")
        if order is not None:
            phases = np.array(data["phases"], dtype=np.int64).T
            ccm = cls.from_phases(phases, int(order))
        else:
            cols = np.array(
                [[complex(re, im) for re, im in col] for col in data["columns"]],
                dtype=complex,
            ).T
            ccm = cls(cols)
        if ccm.length != int(data["N"]) or ccm.count != int(data["K"]):
            raise ValueError("declared N/K do not match the stored codes")
        return ccm


def acf(code) -> np.ndarray:
    """Aperiodic autocorrelation, length 2N-1, lag k at index N-1+k.

    ACF(k) = sum_i x[i] * conj(x[i+k]) for k >= 0, mirrored by conjugation
    for negative lags (the mirror is built by construction, so the conjugate
    symmetry is exact).  The lag-0 value equals the code energy N.
    """
    x = np.asarray(code, dtype=complex)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("code must be a non-empty 1-D array")
    n = x.size
    positive = np.array([np.vdot(x[k:], x[: n - k]) for k in range(n)])
    return np.concatenate([np.conj(positive[:0:-1]), positive])


def _column_list(columns) -> list[np.ndarray]:
    if isinstance(columns, Ccm):
        return [columns.code(k) for k in range(columns.count)]
    cols = [np.asarray(c, dtype=complex) for c in columns]
    if not cols:
        raise ValueError("need at least one code")
    n = cols[0].size
    if any(c.ndim != 1 or c.size != n for c in cols):
        raise ValueError("all codes must be 1-D and of the same length")
    return cols


@dataclass(frozen=True)
class CcmValidation:
    is_ccm: bool
    worst_sidelobe: float
    peak_error: float


def validate_ccm(columns, tol: float = CCM_TOL) -> CcmValidation:
    """Check that summed autocorrelations equal N*K*delta within tol.

    Reports the worst absolute off-peak sum either way, so near-misses can
    be inspected.
    """
    cols = _column_list(columns)
    n, k = cols[0].size, len(cols)
    total = sum(acf(c) for c in cols)
    center = n - 1
    off_peak = np.abs(np.delete(total, center))
    worst = float(off_peak.max()) if off_peak.size else 0.0
    peak_error = float(abs(total[center] - n * k))
    return CcmValidation(worst <= tol and peak_error <= tol, worst, peak_error)


@dataclass(frozen=True)
class ExactCcmValidation:
    is_ccm: bool
    worst_sidelobe_sq: int


def validate_ccm_exact(ccm: Ccm) -> ExactCcmValidation:
    """Complementarity check in exact Gaussian-integer arithmetic.

    Available for binary and quaternary phase codes only, whose entries are
    Gaussian integers.  The worst sidelobe is reported as its exact squared
    magnitude; zero means the set is complementary with no tolerance at all.
    """
    if ccm.phases is None or ccm.phase_order not in _GAUSS_ROOTS:
        raise ValueError("exact validation requires integer phases of order 2 or 4")
    roots = _GAUSS_ROOTS[ccm.phase_order]
    cols = [[roots[int(p)] for p in ccm.phases[:, k]] for k in range(ccm.count)]
    n = ccm.length
    worst = 0
    for lag in range(1, n):
        s_re = 0
        s_im = 0
        for col in cols:
            for i in range(n - lag):
                xr, xi = col[i]
                yr, yi = col[i + lag]
                s_re += xr * yr + xi * yi
                s_im += xi * yr - xr * yi
        worst = max(worst, s_re * s_re + s_im * s_im)
    peak = sum(
        xr * xr + xi * xi for col in cols for xr, xi in col
    )
    return ExactCcmValidation(worst == 0 and peak == n * ccm.count, worst)


def gen_golay_pair(exponent: int) -> Ccm:
    """Binary complementary pair of length 2^exponent.

    Grown from the seed pair ((1), (1)) by the doubling step
    a' = a || b, b' = a || -b, which preserves complementarity at every
    stage.  Entries are exactly +/-1.
    """
    if not 1 <= exponent <= 20:
        raise ValueError(f"exponent must be in 1..20, got {exponent}")
    a, b = [1], [1]
    for _ in range(exponent):
        a, b = a + b, a + [-v for v in b]
    phases = np.array(
        [[0 if v > 0 else 1 for v in a], [0 if v > 0 else 1 for v in b]],
        dtype=np.int64,
    ).T
    return Ccm.from_phases(phases, 2)


def gen_dft_set(count: int) -> Ccm:
    """K codes of length K with entries exp(2j*pi*k*n/K), k = 0..K-1.

    Summed autocorrelations telescope: at lag t != 0 the sum over k of
    omega^(-k*t) vanishes, so the set is complementary for every K >= 2.
    """
    if not 2 <= count <= 64:
        raise ValueError(f"code count must be in 2..64, got {count}")
    grid = np.arange(count, dtype=np.int64)
    phases = np.outer(grid, grid) % count
    return Ccm.from_phases(phases, count)


def ztransform_eval(code, z: complex) -> complex:
    """Evaluate X(z) = sum_n x[n] * z^(-n) by Horner's rule in 1/z."""
    x = np.asarray(code, dtype=complex)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("code must be a non-empty 1-D array")
    zc = complex(z)
    if zc == 0:
        raise ValueError("z = 0 is outside the region of convergence")
    w = 1.0 / zc
    acc = 0j
    for v in x[::-1]:
        acc = acc * w + v
    return complex(acc)
