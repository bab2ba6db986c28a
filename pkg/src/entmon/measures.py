"""Entanglement measures: reduced-state h-functions and closed forms.

Every pure-state measure here is a unitarily invariant, strictly concave
function of the reduced state's spectrum.  Mixed-state closed forms cover
negativity, logarithmic negativity, and the two-qubit Wootters
concurrence / entanglement of formation.

Values are in nats for entropic measures; logarithmic negativity alone uses
log base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .states import (
    DensityMatrix,
    DimensionMismatchError,
    PureState,
    partial_trace,
    partial_transpose,
    trace_norm,
)

H_KINDS = ("entropy", "concurrence", "g-concurrence", "tangle", "negativity", "renyi", "tsallis")


@dataclass(frozen=True)
class HFunction:
    """Concave spectral function on reduced states defining a pure-state measure.

    ``renyi`` takes an order ``alpha`` in (0, 1] (alpha = 1 reduces to the
    entropy); ``tsallis`` takes ``q > 0``, ``q != 1``.  The other kinds are
    parameter-free.
    """

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind not in H_KINDS:
            raise ValueError(f"unknown h-function kind {self.kind!r}")
        if self.kind == "renyi":
            if self.param is None or not 0.0 < self.param <= 1.0:
                raise ValueError("renyi order must lie in (0, 1]")
        elif self.kind == "tsallis":
            if self.param is None or self.param <= 0.0 or self.param == 1.0:
                raise ValueError("tsallis order must be positive and != 1")
        elif self.param is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @property
    def measure_id(self) -> str:
        """External identifier of the associated pure-state measure."""
        if self.kind == "entropy":
            return "eof"
        if self.kind in ("renyi", "tsallis"):
            return f"{self.kind}:{self.param:g}"
        return self.kind


ENTROPY = HFunction("entropy")
CONCURRENCE = HFunction("concurrence")
G_CONCURRENCE = HFunction("g-concurrence")
TANGLE = HFunction("tangle")
NEGATIVITY_H = HFunction("negativity")


def renyi(alpha: float) -> HFunction:
    return HFunction("renyi", alpha)


def tsallis(q: float) -> HFunction:
    return HFunction("tsallis", q)


@dataclass(frozen=True)
class MeasureValue:
    """A measure evaluation; tiny negative roundoff is clipped to zero."""

    value: float
    measure_id: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        v = float(self.value)
        if v < -1e-12:
            raise ValueError(f"measure value {v} below the roundoff floor")
        object.__setattr__(self, "value", max(0.0, v))

    def __float__(self) -> float:
        return self.value


# Spectral weights below this floor are treated as exact zeros.  Several h
# kinds amplify roundoff hard (sqrt for the negativity function, mu^alpha
# for small Renyi orders), so without a floor a numerically pure state
# would not evaluate to 0.
SPECTRUM_FLOOR = 1e-13


def h_of_spectrum(h: HFunction, mu: np.ndarray) -> np.ndarray:
    """Evaluate ``h`` on spectra.  ``mu`` is (..., d) of nonnegative weights.

    Floored weights are renormalized so a numerically pure spectrum maps to
    exactly zero even for the roundoff-amplifying kinds (sqrt, small
    powers).
    """
    mu = np.asarray(mu, dtype=float)
    mu = np.where(mu < SPECTRUM_FLOOR, 0.0, mu)
    total = np.sum(mu, axis=-1, keepdims=True)
    mu = mu / np.where(total > 0.0, total, 1.0)
    if h.kind == "entropy":
        safe = np.where(mu > 0.0, mu, 1.0)
        return -np.sum(mu * np.log(safe), axis=-1)
    if h.kind == "concurrence":
        return np.sqrt(np.clip(2.0 * (1.0 - np.sum(mu * mu, axis=-1)), 0.0, None))
    if h.kind == "tangle":
        return np.clip(2.0 * (1.0 - np.sum(mu * mu, axis=-1)), 0.0, None)
    if h.kind == "g-concurrence":
        d = mu.shape[-1]
        # d * (prod mu)^(1/d); exactly 0 on singular spectra.
        prod = np.prod(mu, axis=-1)
        return d * np.power(prod, 1.0 / d)
    if h.kind == "negativity":
        s = np.sum(np.sqrt(mu), axis=-1)
        return np.clip((s * s - 1.0) / 2.0, 0.0, None)
    if h.kind == "renyi":
        a = float(h.param)
        if a == 1.0:
            safe = np.where(mu > 0.0, mu, 1.0)
            return -np.sum(mu * np.log(safe), axis=-1)
        return np.log(np.sum(np.power(mu, a), axis=-1)) / (1.0 - a)
    if h.kind == "tsallis":
        q = float(h.param)
        return (1.0 - np.sum(np.power(mu, q), axis=-1)) / (q - 1.0)
    raise AssertionError(h.kind)


def h_eval(h: HFunction, rho_a: DensityMatrix) -> float:
    """Value of ``h`` on a single-factor state, from its spectrum."""
    return float(h_of_spectrum(h, rho_a.eigenvalues()))


def pure_measure(h: HFunction, psi: PureState) -> MeasureValue:
    """Measure of a bipartite pure state: ``h`` on the reduced state of A."""
    if len(psi.dims.factors) != 2:
        raise DimensionMismatchError("pure_measure requires a bipartite state")
    rho_a = partial_trace(psi.density(), "A")
    return MeasureValue(h_eval(h, rho_a), h.measure_id)


def negativity(rho: DensityMatrix) -> MeasureValue:
    """(||rho^{T_A}||_Tr - 1) / 2.  Zero exactly on PPT states."""
    val = (trace_norm(partial_transpose(rho, "A")) - 1.0) / 2.0
    return MeasureValue(val, "negativity")


def log_negativity(rho: DensityMatrix) -> MeasureValue:
    """log2 of the trace norm of the partial transpose.

    Equals log2(1 + 2N), hence 0 exactly on PPT states and always finite;
    this is the cited trace-norm form of the logarithmic negativity.
    """
    val = math.log2(trace_norm(partial_transpose(rho, "A")))
    return MeasureValue(val, "log-negativity")


_SY_SY = np.kron(
    np.array([[0.0, -1.0j], [1.0j, 0.0]]), np.array([[0.0, -1.0j], [1.0j, 0.0]])
)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence via the spin-flip spectrum.

    C = max(0, s1 - s2 - s3 - s4) with s_i the decreasing square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).  These equal the
    singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)), which is the
    numerically stable way to get them (the raw product matrix is
    non-normal and its tiny eigenvalues lose half the working precision).
    """
    if rho.dims.factors != (2, 2):
        raise DimensionMismatchError("Wootters concurrence is defined for 2x2 systems")
    vals, vecs = np.linalg.eigh(rho.matrix)
    root = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    s = np.linalg.svd(root @ _SY_SY @ root.conj(), compute_uv=False)
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)


def wootters_eof(rho: DensityMatrix) -> float:
    """Two-qubit entanglement of formation in nats.

    E_f = H2((1 + sqrt(1 - C^2)) / 2) with C the Wootters concurrence.
    """
    c = wootters_concurrence(rho)
    return _binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)
