"""Relative entropy of entanglement via Frank-Wolfe over the separable set.

E_r(rho) minimizes S(rho || sigma) over separable sigma.  The feasible set
is the convex hull of product projectors |a><a| x |b><b|, so Frank-Wolfe
applies directly: at each iterate the gradient of the objective is
linearized and the best product projector for that linear function is found
by an alternating largest-eigenvector iteration (a bilinear, nonconvex
subproblem solved from several random starts; failures only loosen the
upper bound).  Every step uses exact line search on a 1-D segment, so the
objective never increases.  The returned value is an upper bound on E_r.

The iterate is kept as an explicit weighted atom list, which enables
pairwise steps (move mass from the worst active atom onto the new one)
alongside classic mixing steps.  Plain mixing alone zigzags badly when the
optimum sits on a low-rank face, as it does for pure inputs; pairwise
steps restore fast convergence there while preserving feasibility by
construction.

On 2x2 and 2x3 systems PPT equals separability, so feasibility of the
reported closest separable state is exactly certifiable there; larger
systems are flagged as upper-bound-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .channels import LocalKrausChannel, _embed
from .states import (
    DensityMatrix,
    DimensionMismatchError,
    _rel_entropy_psd,
    clipped_eigvalsh,
)

GAP_TOL = 1e-4
EIG_FLOOR = 1e-14
INNER_ROUNDS = 12
INNER_VAL_TOL = 1e-10
MAX_TOTAL_DIM = 16


@dataclass(frozen=True)
class ReeResult:
    """Upper bound on E_r with the separable iterate that achieves it."""

    value: float
    closest_separable: DensityMatrix
    iterations: int
    duality_gap_estimate: float
    converged: bool
    upper_bound_only: bool


@dataclass(frozen=True)
class DataProcessingReport:
    """Both sides of the outcome-ensemble relative-entropy inequality."""

    outcome_divergence: float  # sum_i S(p_i rho_i || q_i sigma_i)
    total_divergence: float  # S(rho || sigma)
    gap: float  # total - outcome, >= 0 up to roundoff
    p: np.ndarray
    q: np.ndarray
    max_prob_deviation: float
    skipped_reason: str | None = None


def _tr_rho_ln_rho(rho_m: np.ndarray) -> float:
    nu = clipped_eigvalsh(rho_m)
    pos = nu[nu > 1e-15]
    return float(np.sum(pos * np.log(pos)))


def _objective(rho_m: np.ndarray, tr_rln_r: float, sigma_m: np.ndarray) -> float:
    mu, u = np.linalg.eigh(sigma_m)
    mu = np.clip(mu, 1e-17, None)
    w = np.clip(np.real(np.einsum("ji,jk,ki->i", u.conj(), rho_m, u)), 0.0, None)
    return tr_rln_r - float(np.sum(w * np.log(mu)))


def _gradient(rho_m: np.ndarray, sigma_m: np.ndarray) -> np.ndarray:
    """Frechet derivative of sigma -> -Tr[rho ln sigma], in matrix form.

    Evaluated in the eigenbasis of sigma with the divided-difference kernel
    (ln mu_i - ln mu_j)/(mu_i - mu_j) and diagonal 1/mu_i; eigenvalues are
    clipped at EIG_FLOOR for stability.
    """
    mu, u = np.linalg.eigh(sigma_m)
    mu = np.clip(mu, EIG_FLOOR, None)
    rho_t = u.conj().T @ rho_m @ u
    lm = np.log(mu)
    den = mu[:, None] - mu[None, :]
    num = lm[:, None] - lm[None, :]
    near = np.abs(den) < 1e-12 * np.maximum(mu[:, None], mu[None, :])
    kernel = np.where(near, 1.0 / mu[:, None], num / np.where(near, 1.0, den))
    g = -(u @ (rho_t * kernel) @ u.conj().T)
    return 0.5 * (g + g.conj().T)


def _min_product_expectation(
    g: np.ndarray,
    dA: int,
    dB: int,
    restarts: int,
    rng: np.random.Generator,
    warm_start: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Approximate argmin over product vectors of <a b|G|a b>.

    Alternates the minimal-eigenvector update of each factor; all starts
    advance in one batched sweep.  A warm start (the previous atom's A
    factor) rides along with the random starts when available.
    """
    g4 = g.reshape(dA, dB, dA, dB)
    z = rng.standard_normal((2, restarts, dA))
    a = z[0] + 1j * z[1]
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    if warm_start is not None:
        a = np.vstack([warm_start[None, :], a])
    vals = np.full(a.shape[0], np.inf)
    b = np.zeros((a.shape[0], dB), dtype=complex)
    for _ in range(INNER_ROUNDS):
        gb = np.einsum("ri,ijkl,rk->rjl", a.conj(), g4, a)
        gb = 0.5 * (gb + np.swapaxes(gb, -2, -1).conj())
        _, vb = np.linalg.eigh(gb)
        b = vb[:, :, 0]
        ga = np.einsum("rj,ijkl,rl->rik", b.conj(), g4, b)
        ga = 0.5 * (ga + np.swapaxes(ga, -2, -1).conj())
        wa, va = np.linalg.eigh(ga)
        a = va[:, :, 0]
        new_vals = wa[:, 0]
        if float(np.max(np.abs(new_vals - vals))) < INNER_VAL_TOL:
            vals = new_vals
            break
        vals = new_vals
    best = int(np.argmin(vals))
    return a[best], b[best], float(vals[best])


def ree_minimize(
    rho: DensityMatrix,
    max_iters: int = 2000,
    restarts: int = 8,
    rng: np.random.Generator | None = None,
    gap_tol: float = GAP_TOL,
) -> ReeResult:
    """Upper bound on the relative entropy of entanglement of ``rho``.

    Starts from the maximally mixed state (interior, full support) and
    stops when the Frank-Wolfe duality-gap estimate drops below
    ``gap_tol`` or after ``max_iters`` iterations; non-convergence is
    reported through the ``converged`` flag, never as a failure.
    """
    if len(rho.dims.factors) != 2:
        raise DimensionMismatchError("E_r is computed on bipartite states")
    dA, dB = rho.dims.factors
    n = dA * dB
    if n > MAX_TOTAL_DIM:
        raise DimensionMismatchError(f"total dimension {n} exceeds the desk-scale cap {MAX_TOTAL_DIM}")
    if rng is None:
        rng = np.random.default_rng(0)
    base_seed = int(rng.integers(2**62))

    rho_m = rho.matrix
    tr_rln_r = _tr_rho_ln_rho(rho_m)

    # Atom list: rows are product vectors, weights sum to 1.  The start is
    # the maximally mixed state, itself a mixture of product basis states.
    atoms = np.eye(n, dtype=complex)
    weights = np.full(n, 1.0 / n)

    def assemble(at: np.ndarray, w: np.ndarray) -> np.ndarray:
        s = (at.T * w) @ at.conj()
        return 0.5 * (s + s.conj().T)

    sigma = assemble(atoms, weights)
    gap = math.inf
    iterations = 0
    converged = False
    prev_a: np.ndarray | None = None
    for t in range(max_iters):
        iterations = t + 1
        g = _gradient(rho_m, sigma)
        inner_rng = np.random.default_rng(base_seed + t)
        a, b, atom_val = _min_product_expectation(g, dA, dB, restarts, inner_rng, prev_a)
        gap = float(np.real(np.trace(g @ sigma))) - atom_val
        if gap < gap_tol:
            # The gap rests on an approximate inner solve; confirm with a
            # harder search before declaring convergence.
            a2, b2, val2 = _min_product_expectation(
                g, dA, dB, 8 * restarts,
                np.random.default_rng(base_seed + t + 7_777_777), prev_a,
            )
            if val2 < atom_val:
                a, b, atom_val = a2, b2, val2
                gap = float(np.real(np.trace(g @ sigma))) - atom_val
            if gap < gap_tol:
                converged = True
                break
        prev_a = a
        new_atom = np.kron(a, b)
        pi = np.outer(new_atom, new_atom.conj())
        f0 = _objective(rho_m, tr_rln_r, sigma)

        # Pairwise step: shift mass from the active atom with the largest
        # gradient expectation onto the new atom.
        away_vals = np.real(np.einsum("ki,ij,kj->k", atoms.conj(), g, atoms))
        away = int(np.argmax(away_vals))
        direction = pi - np.outer(atoms[away], atoms[away].conj())
        gamma_max = float(weights[away])

        def phi_pair(gamma: float) -> float:
            return _objective(rho_m, tr_rln_r, sigma + gamma * direction)

        stepped = False
        if gamma_max > 1e-15 and away_vals[away] > atom_val + 1e-15:
            res = minimize_scalar(
                phi_pair, bounds=(0.0, gamma_max), method="bounded", options={"xatol": 1e-12}
            )
            if res.fun < f0:
                gamma = float(res.x)
                weights[away] -= gamma
                atoms = np.vstack([atoms, new_atom[None, :]])
                weights = np.append(weights, gamma)
                stepped = True

        if not stepped:
            # Classic mixing step toward the new atom.
            def phi_mix(gamma: float) -> float:
                return _objective(rho_m, tr_rln_r, (1.0 - gamma) * sigma + gamma * pi)

            res = minimize_scalar(
                phi_mix, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12}
            )
            if res.fun >= f0:
                break
            gamma = float(res.x)
            weights = weights * (1.0 - gamma)
            atoms = np.vstack([atoms, new_atom[None, :]])
            weights = np.append(weights, gamma)

        keep = weights > 1e-15
        atoms = atoms[keep]
        weights = weights[keep]
        weights = weights / float(np.sum(weights))
        sigma = assemble(atoms, weights)

    closest = DensityMatrix(sigma, rho.dims)
    value = max(0.0, _objective(rho_m, tr_rln_r, sigma))
    return ReeResult(
        value=value,
        closest_separable=closest,
        iterations=iterations,
        duality_gap_estimate=gap,
        converged=converged,
        upper_bound_only=n > 6,
    )


def ree_data_processing_check(
    rho: DensityMatrix, sigma: DensityMatrix, channel: LocalKrausChannel
) -> DataProcessingReport:
    """Compare sum_i S(p_i rho_i || q_i sigma_i) with S(rho || sigma).

    The same channel is applied to both states and the outcome terms stay
    index-aligned (no probability floor), so the probability vectors p and
    q are directly comparable.  Support violations produce a skipped report
    with the infinity carried in the total, not an exception.
    """
    if rho.dims.factors != sigma.dims.factors:
        raise DimensionMismatchError("states must share dims")
    sig_min = float(np.linalg.eigvalsh(sigma.matrix)[0])
    if sig_min < 1e-12:
        return DataProcessingReport(
            math.nan, math.nan, math.nan, np.array([]), np.array([]), math.nan,
            skipped_reason="sigma is not full rank",
        )
    total = _rel_entropy_psd(rho.matrix, sigma.matrix)
    terms = []
    p_list, q_list = [], []
    for m in channel.kraus:
        op = _embed(channel, m, rho.dims)
        x = op @ rho.matrix @ op.conj().T
        y = op @ sigma.matrix @ op.conj().T
        p_list.append(float(np.real(np.trace(x))))
        q_list.append(float(np.real(np.trace(y))))
        if p_list[-1] < 1e-15:
            terms.append(0.0)  # zero operator contributes nothing
        else:
            terms.append(_rel_entropy_psd(x, y))
    outcome = float(sum(terms))
    if math.isinf(outcome) or math.isinf(total):
        return DataProcessingReport(
            outcome, total, math.nan, np.array(p_list), np.array(q_list), math.nan,
            skipped_reason="support violation produced an infinite divergence",
        )
    p = np.array(p_list)
    q = np.array(q_list)
    return DataProcessingReport(
        outcome_divergence=outcome,
        total_divergence=total,
        gap=total - outcome,
        p=p,
        q=q,
        max_prob_deviation=float(np.max(np.abs(p - q))),
    )
