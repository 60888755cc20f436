"""Monte-Carlo scatter checks of the two conjectured inequalities.

Pure qutrits obey M_SN >= (C/2) sqrt(1 - C/2) with C the l1 coherence;
qutrit-qubit states obey 16 E^2 + 9 M^2 <= 4 with E the negativity of the
joint state and M the sum negativity of the reduced qutrit. The second
bound is attained exactly by product states with maximally magical
marginals, so it is checked non-strictly.
"""

import numpy as np

from magiclab import (ExperimentConfig, basis_ket, coherence_magic_scatter,
                      dm_from_pure, entanglement_magic_scatter, l1_coherence,
                      negativity, partial_trace, strange_state, sum_negativity,
                      tensor)

cfg = ExperimentConfig(seed=7, samples=20_000)

coh = coherence_magic_scatter(cfg)
print("coherence vs magic, random qutrits")
print(f"  pure samples : {cfg.samples}, min slack = {coh.min_slack_pure:+.6f}")
print(f"  mixed samples: {cfg.samples // 10}, min slack = {coh.min_slack_mixed:+.6f}")
print("  (mixed states may dip below the pure-state bound; that is expected)")

ent = entanglement_magic_scatter(cfg)
print("\nentanglement vs reduced magic, random qutrit-qubit states")
print(f"  max 16E^2 + 9M^2 = {ent.max_lhs:.9f} (mixed+pure), "
      f"{ent.max_lhs_pure:.9f} on pure alone")

# the boundary case: a product state with a maximally magical marginal
prod = tensor(dm_from_pure(strange_state()), dm_from_pure(basis_ket(2, 0)))
e = negativity(prod, (3, 2))
m = sum_negativity(partial_trace(prod, (3, 2), 0))
print(f"\nboundary case strange x |0>: E = {e:.3f}, M = {m:.6f}, "
      f"LHS = {16 * e ** 2 + 9 * m ** 2:.12f}")

# and the opposite corner: maximal entanglement, magic-free marginal
vec = np.zeros(6, dtype=complex)
vec[0] = vec[3] = 1 / np.sqrt(2)
bell = dm_from_pure(vec)
e = negativity(bell, (3, 2))
m = sum_negativity(partial_trace(bell, (3, 2), 0))
print(f"boundary case Bell pair   : E = {e:.3f}, M = {m:.6f}, "
      f"LHS = {16 * e ** 2 + 9 * m ** 2:.12f}")

# strange-state row of the coherence scatter, by hand
c = l1_coherence(dm_from_pure(strange_state()))
bound = (c / 2) * np.sqrt(1 - c / 2)
print(f"\nstrange state row: C_l1 = {c:.3f}, bound = {bound:.6f}, "
      f"M_SN = {sum_negativity(dm_from_pure(strange_state())):.6f}")
