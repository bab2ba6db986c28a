#!/usr/bin/env python3
"""Strict concavity of the h-functions and the reduced-state condition.

Every measure here is generated by a strictly concave spectral function on
reduced states.  Mixing two distinct states always gains a positive h-gap,
and for the tangle the gap has an exact algebraic value.  On pure states,
a one-sided channel strictly lowers the average measure exactly when some
outcome moves the reduced state of the untouched side.
"""

import numpy as np

from entmon import (
    Dims,
    ENTROPY,
    TANGLE,
    bell_state,
    check_reduced_state_condition,
    check_strict_concavity,
    haar_unitary,
    random_channel,
    random_mixed,
    random_pure,
    renyi,
    tsallis,
    unitary_mixture_channel,
)
from entmon.channels import LocalKrausChannel
from entmon.measures import CONCURRENCE, G_CONCURRENCE, NEGATIVITY_H

rng = np.random.default_rng(0)

print("=" * 64)
print("Concavity gaps at lambda = 1/2 for random state pairs (d = 3)")
print("=" * 64)
for h in (ENTROPY, CONCURRENCE, G_CONCURRENCE, TANGLE, NEGATIVITY_H,
          renyi(0.5), tsallis(2.0)):
    r1 = random_mixed(Dims(3), 3, rng)
    r2 = random_mixed(Dims(3), 3, rng)
    rep = check_strict_concavity(h, r1, r2, 0.5)
    print(f"  {h.measure_id:14s} gap = {rep.gap:.6f}  [{rep.verdict}]")

print()
print("=" * 64)
print("The tangle gap is exactly 2 lam (1-lam) ||r1 - r2||_F^2")
print("=" * 64)
r1 = random_mixed(Dims(2), None, rng)
r2 = random_mixed(Dims(2), None, rng)
for lam in (0.2, 0.5, 0.8):
    rep = check_strict_concavity(TANGLE, r1, r2, lam)
    predicted = 2 * lam * (1 - lam) * np.linalg.norm(r1.matrix - r2.matrix) ** 2
    print(f"  lam={lam}: gap = {rep.gap:.8f}   predicted = {predicted:.8f}   "
          f"dev = {rep.metadata['tangle_identity_dev']:.1e}")

print()
print("=" * 64)
print("Reduced-state condition on the Bell state")
print("=" * 64)
eye = np.eye(2)
projective = LocalKrausChannel("B", (np.outer(eye[0], eye[0]), np.outer(eye[1], eye[1])))
rep = check_reduced_state_condition(ENTROPY, bell_state(), projective)
print(f"  projective measurement moves the A marginal: gap = {rep.gap:.6f} = ln 2")
mixture = unitary_mixture_channel(
    [0.5, 0.5], [haar_unitary(2, rng), haar_unitary(2, rng)]
)
rep = check_reduced_state_condition(ENTROPY, bell_state(), mixture)
print(f"  unitary mixture keeps it fixed:           gap = {rep.gap:+.1e} "
      f"(branch: {rep.metadata['branch']})")

print()
print("=" * 64)
print("Random pure states, random channels")
print("=" * 64)
for t in range(5):
    psi = random_pure(Dims(2, 2), rng)
    channel = random_channel(2, 2 + t % 3, rng)
    rep = check_reduced_state_condition(ENTROPY, psi, channel)
    print(f"  max marginal move {rep.metadata['max_reduced_dev']:.4f}  "
          f"gap = {rep.gap:+.5f}  [{rep.verdict}]")
