import numpy as np
import pytest

from magiclab import channels as ch, linalg, monotones as mo, stabilizer as st

OMEGA = np.exp(2j * np.pi / 3)


def test_kraus_completeness_enforced():
    with pytest.raises(ValueError):
        ch.KrausChannel(kraus=(np.eye(3) * 0.5,))


def test_dephasing_admitted_and_incoherent():
    dep = ch.dephasing_channel(3)
    assert ch.is_incoherent(dep)
    assert len(dep.kraus) == 3


def test_sampled_incoherent_channel_properties():
    rng = np.random.default_rng(60)
    for _ in range(50):
        lam = ch.sample_incoherent_channel(3, int(rng.integers(1, 10)), rng)
        total = sum(k.conj().T @ k for k in lam.kraus)
        assert np.max(np.abs(total - np.eye(3))) < 1e-10
        assert ch.is_incoherent(lam)
        diag = np.diag(rng.dirichlet(np.ones(3))).astype(complex)
        out = ch.apply(lam, diag)
        off = out - np.diag(np.diag(out))
        assert np.max(np.abs(off)) < 1e-10


def test_sampled_incoherent_channel_deterministic():
    a = ch.sample_incoherent_channel(3, 4, seed=7)
    b = ch.sample_incoherent_channel(3, 4, seed=7)
    for ka, kb in zip(a.kraus, b.kraus):
        assert np.array_equal(ka, kb)


def test_sample_incoherent_rejects_no_kraus():
    with pytest.raises(ValueError):
        ch.sample_incoherent_channel(3, 0, seed=0)


def test_apply_identity_and_dephasing():
    rho = linalg.random_mixed(3, seed=61)
    assert np.max(np.abs(ch.apply(ch.identity_channel(3), rho) - rho)) < 1e-14
    dep = ch.apply(ch.dephasing_channel(3), rho)
    assert np.allclose(dep, np.diag(np.diag(rho)), atol=1e-14)


def test_apply_preserves_trace():
    rng = np.random.default_rng(62)
    for _ in range(20):
        rho = linalg.random_mixed(3, seed=rng)
        lam = ch.sample_channel(3, int(rng.integers(1, 10)), rng)
        assert abs(np.trace(ch.apply(lam, rho)).real - 1) < 1e-12


def test_apply_dim_mismatch():
    with pytest.raises(ValueError):
        ch.apply(ch.identity_channel(3), linalg.maximally_mixed(2))


def test_selective_outcomes_unitary():
    rho = linalg.random_mixed(3, seed=63)
    outs = ch.selective_outcomes(ch.unitary_channel(st.clifford_generators(3)[2]), rho)
    assert len(outs) == 1
    assert abs(outs[0][0] - 1) < 1e-12


def test_selective_outcomes_dephasing_coherent(named_states):
    outs = ch.selective_outcomes(ch.dephasing_channel(3), named_states["coherent"])
    assert len(outs) == 3
    for p, _ in outs:
        assert abs(p - 1 / 3) < 1e-12


def test_selective_outcomes_resolve_channel():
    rng = np.random.default_rng(64)
    for _ in range(10):
        rho = linalg.random_mixed(3, seed=rng)
        lam = ch.sample_incoherent_channel(3, 5, rng)
        outs = ch.selective_outcomes(lam, rho)
        assert abs(sum(p for p, _ in outs) - 1) < 1e-10
        resolved = sum(p * s for p, s in outs)
        assert np.max(np.abs(resolved - ch.apply(lam, rho))) < 1e-10


def test_is_incoherent_classifier():
    _, _, f, _ = st.clifford_generators(3)
    assert not ch.is_incoherent(ch.unitary_channel(f))
    assert ch.is_incoherent(ch.unitary_channel(np.diag([1.0, 1.0j])))
    perm = np.eye(3)[[2, 0, 1]].astype(complex)
    assert ch.is_incoherent(ch.unitary_channel(perm))


def test_incoherent_clifford_unitaries_membership():
    x, z, f, _ = st.clifford_generators(3)
    monos = ch.incoherent_clifford_unitaries(3)
    keys = {ch._phase_key(u) for u in monos}
    assert ch._phase_key(x) in keys
    assert ch._phase_key(z) in keys
    assert ch._phase_key(f) not in keys
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    keys2 = {ch._phase_key(u) for u in ch.incoherent_clifford_unitaries(2)}
    assert ch._phase_key(sx) in keys2


def test_incoherent_clifford_unitaries_counts_vs_oracle():
    # independent census: every permutation x diag(w^a, w^b) candidate that
    # conjugates X and Z into Paulis (up to phase) is an incoherent Clifford
    import itertools

    x, z, _, _ = st.clifford_generators(3)
    paulis = []
    for a in range(3):
        for b in range(3):
            paulis.append(np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b))

    def is_pauli_up_to_phase(m):
        for p in paulis:
            ratio = None
            ok = True
            for i in range(3):
                for j in range(3):
                    if abs(p[i, j]) > 1e-9:
                        r = m[i, j] / p[i, j]
                        if ratio is None:
                            ratio = r
                        elif abs(r - ratio) > 1e-9:
                            ok = False
                    elif abs(m[i, j]) > 1e-9:
                        ok = False
            if ok and ratio is not None and abs(abs(ratio) - 1) < 1e-9:
                return True
        return False

    count = 0
    for perm in itertools.permutations(range(3)):
        pmat = np.zeros((3, 3), dtype=complex)
        for col, row in enumerate(perm):
            pmat[row, col] = 1
        for a in range(3):
            for b in range(3):
                u = pmat @ np.diag([1, OMEGA ** a, OMEGA ** b])
                if is_pauli_up_to_phase(u @ x @ u.conj().T) and is_pauli_up_to_phase(u @ z @ u.conj().T):
                    count += 1
    assert count == len(ch.incoherent_clifford_unitaries(3)) == 54
    assert len(ch.incoherent_clifford_unitaries(2)) == 8


def test_incoherent_cliffords_closed_under_product():
    rng = np.random.default_rng(65)
    monos = ch.incoherent_clifford_unitaries(3)
    for _ in range(100):
        u = monos[rng.integers(len(monos))] @ monos[rng.integers(len(monos))]
        assert ch._is_monomial(u)


def test_is_genuinely_stabilizer(qubit_vertices):
    assert ch.is_genuinely_stabilizer(ch.identity_channel(2), qubit_vertices)
    assert not ch.is_genuinely_stabilizer(ch.dephasing_channel(2), qubit_vertices)


def test_classify_flags(qubit_vertices):
    flags = ch.classify(ch.identity_channel(2), qubit_vertices)
    assert flags.incoherent and flags.incoherent_clifford_unitary
    assert flags.stabilizer_preserving and flags.genuinely_stabilizer
    flags = ch.classify(ch.dephasing_channel(2), qubit_vertices)
    assert flags.incoherent and not flags.genuinely_stabilizer
    # genuinely stabilizer implies stabilizer preserving on the audit sample
    assert (not flags.genuinely_stabilizer) or flags.stabilizer_preserving


def test_result1_audit_small():
    report = ch.result1_audit(n_trials=400, seed=1)
    assert report.passed
    assert report.worst_margin <= 1e-8


def test_lp_audit_small():
    report = ch.lp_monotonicity_audit(n_trials=150, seed=1)
    assert report.passed
    assert report.worst_margin <= 1e-9


def test_selective_audit_small():
    report = ch.selective_audit(n_trials=300, seed=1)
    assert report.passed


def test_gso_audit_small():
    report = ch.gso_audit(n_trials=1500, seed=1)
    assert report.passed
    assert report.details["non_identity_fixers"] == 0
    assert report.details["diag_both_bases_kernel_dim"] == 1


def test_lp_plain_partial_trace_fails_for_p2():
    # the decomposed step C(Tr X) <= C(X) is false for p > 1: a mixed diagonal
    # ancilla scales C_lp down, and tracing it back out restores C_lp(rho)
    rho = linalg.dm_from_pure(linalg.strange_state())
    sigma = np.diag([0.5, 0.5]).astype(complex)
    joint = linalg.tensor(rho, sigma)
    c_joint = mo.lp_coherence(joint, 2)
    c_traced = mo.lp_coherence(linalg.partial_trace(joint, (3, 2), 0), 2)
    assert c_traced > c_joint + 0.2  # the violation is macroscopic
    # while the l1 version is safe
    assert mo.l1_coherence(linalg.partial_trace(joint, (3, 2), 0)) <= mo.l1_coherence(joint) + 1e-12
