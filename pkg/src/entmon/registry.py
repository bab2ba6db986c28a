"""Measure identifiers and dispatch.

External identifier strings (used by the CLI and in reports):

    eof, concurrence, g-concurrence, tangle, negativity, negativity-roof,
    log-negativity, renyi:<alpha>, tsallis:<q>, ree

``eof`` and ``concurrence`` use the Wootters closed form on two-qubit
density matrices and the reduced-state h-function on pure states of any
dimensions.  The h-only measures (g-concurrence, tangle, renyi, tsallis)
are defined on pure states; a density matrix is accepted when it is pure
to within roundoff.  ``negativity-roof`` and ``ree`` call the respective
optimizers and carry solver metadata in the diagnostics.
"""

from __future__ import annotations

import numpy as np

from . import measures, ree, roof
from .measures import HFunction, MeasureValue
from .states import DensityMatrix, PureState

PURITY_TOL = 1e-10

CLOSED_FORM_IDS = ("eof", "concurrence", "g-concurrence", "tangle", "negativity", "log-negativity")
OPTIMIZER_IDS = ("negativity-roof", "ree")

# Unit class per measure: "nats" values convert to bits on request,
# "log2" values are already in bits, "dimensionless" values never convert.
UNITS = {
    "eof": "nats",
    "ree": "nats",
    "renyi": "nats",
    "log-negativity": "log2",
    "concurrence": "dimensionless",
    "g-concurrence": "dimensionless",
    "tangle": "dimensionless",
    "negativity": "dimensionless",
    "negativity-roof": "dimensionless",
    "tsallis": "dimensionless",
}


class MeasureError(ValueError):
    """Unknown measure id, bad parameter, or unsupported state for a measure."""


def parse_measure_id(measure_id: str) -> tuple[str, float | None]:
    """Split an id like ``renyi:0.5`` into (family, parameter)."""
    if ":" in measure_id:
        family, _, raw = measure_id.partition(":")
        if family not in ("renyi", "tsallis"):
            raise MeasureError(f"unknown measure id {measure_id!r}")
        try:
            param = float(raw)
        except ValueError as exc:
            raise MeasureError(f"bad parameter in measure id {measure_id!r}") from exc
        try:
            HFunction(family, param)
        except ValueError as exc:
            raise MeasureError(str(exc)) from exc
        return family, param
    if measure_id in CLOSED_FORM_IDS or measure_id in OPTIMIZER_IDS:
        return measure_id, None
    raise MeasureError(f"unknown measure id {measure_id!r}")


def unit_of(measure_id: str) -> str:
    family, _ = parse_measure_id(measure_id)
    return UNITS[family]


def measure_tier(measure_id: str) -> str:
    """Tolerance class: 'closed', 'roof', or 'ree'."""
    family, _ = parse_measure_id(measure_id)
    if family == "negativity-roof":
        return "roof"
    if family == "ree":
        return "ree"
    return "closed"


def as_pure(state: PureState | DensityMatrix) -> PureState | None:
    """The underlying pure state if there is one, else None."""
    if isinstance(state, PureState):
        return state
    vals, vecs = np.linalg.eigh(state.matrix)
    if 1.0 - float(vals[-1]) <= PURITY_TOL:
        return PureState(vecs[:, -1], state.dims)
    return None


def _as_density(state: PureState | DensityMatrix) -> DensityMatrix:
    return state.density() if isinstance(state, PureState) else state


_H_BY_FAMILY = {
    "eof": measures.ENTROPY,
    "concurrence": measures.CONCURRENCE,
    "g-concurrence": measures.G_CONCURRENCE,
    "tangle": measures.TANGLE,
}


def evaluate_measure(
    measure_id: str,
    state: PureState | DensityMatrix,
    rng: np.random.Generator | None = None,
    roof_restarts: int = 20,
    roof_n_terms: int | None = None,
    ree_max_iters: int = 2000,
) -> MeasureValue:
    """Evaluate a measure by its external id on a bipartite state."""
    family, param = parse_measure_id(measure_id)

    if family == "negativity":
        return measures.negativity(_as_density(state))
    if family == "log-negativity":
        return measures.log_negativity(_as_density(state))

    if family == "negativity-roof":
        result = roof.roof_minimize(
            measures.NEGATIVITY_H, _as_density(state), roof_n_terms, roof_restarts, rng
        )
        return MeasureValue(
            result.value,
            "negativity-roof",
            {"restarts_used": result.restarts_used, "converged": result.converged},
        )
    if family == "ree":
        result = ree.ree_minimize(_as_density(state), max_iters=ree_max_iters, rng=rng)
        return MeasureValue(
            result.value,
            "ree",
            {
                "iterations": result.iterations,
                "duality_gap_estimate": result.duality_gap_estimate,
                "converged": result.converged,
                "upper_bound_only": result.upper_bound_only,
            },
        )

    if family in ("eof", "concurrence"):
        dm = _as_density(state)
        if dm.dims.factors == (2, 2):
            if family == "eof":
                return MeasureValue(measures.wootters_eof(dm), "eof")
            return MeasureValue(measures.wootters_concurrence(dm), "concurrence")
        psi = as_pure(state)
        if psi is None:
            raise MeasureError(
                f"{measure_id!r} needs a two-qubit state or a pure state, "
                f"got a mixed state on {dm.dims.factors}"
            )
        return measures.pure_measure(_H_BY_FAMILY[family], psi)

    # Pure-state h measures.
    psi = as_pure(state)
    if psi is None:
        raise MeasureError(f"{measure_id!r} is a pure-state measure; input is mixed")
    if family in ("renyi", "tsallis"):
        h = HFunction(family, param)
    else:
        h = _H_BY_FAMILY[family]
    return measures.pure_measure(h, psi)
