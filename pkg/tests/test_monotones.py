import numpy as np
import pytest

from magiclab import channels, linalg, monotones as mo, stabilizer as st
from conftest import random_qutrit_batch


def test_sum_negativity_named(named_states):
    assert abs(mo.sum_negativity(named_states["strange"]) - 2 / 3) < 1e-10
    assert abs(mo.sum_negativity(named_states["norrell"]) - 2 / 3) < 1e-10
    assert abs(mo.sum_negativity(named_states["mixed"])) < 1e-12
    assert abs(mo.sum_negativity(named_states["coherent"]) - 4 / 9) < 1e-10


def test_sum_negativity_rejects_even_dim():
    with pytest.raises(ValueError):
        mo.sum_negativity(linalg.maximally_mixed(2))


def test_sum_negativity_zero_on_polytope(qutrit_vertices):
    rng = np.random.default_rng(40)
    for v in qutrit_vertices.projectors:
        assert mo.sum_negativity(v) < 1e-10
    for _ in range(1000):
        wts = rng.dirichlet(np.ones(12))
        rho = np.einsum("m,mij->ij", wts, qutrit_vertices.projectors)
        assert mo.sum_negativity(rho) < 1e-10


def test_sum_negativity_convexity():
    rng = np.random.default_rng(41)
    for _ in range(50):
        a = linalg.dm_from_pure(linalg.random_pure(3, rng))
        b = linalg.random_mixed(3, seed=rng)
        lam = rng.uniform()
        mix = mo.sum_negativity(lam * a + (1 - lam) * b)
        assert mix <= lam * mo.sum_negativity(a) + (1 - lam) * mo.sum_negativity(b) + 1e-9


def test_mana_values(named_states):
    assert abs(mo.mana(named_states["mixed"])) < 1e-12
    assert abs(mo.mana(named_states["strange"]) - np.log(5 / 3)) < 1e-10
    assert abs(mo.mana(named_states["strange"], base=2) - np.log2(5 / 3)) < 1e-10


def test_mana_preserves_ordering():
    rhos = random_qutrit_batch(40, seed=42)
    msn = [mo.sum_negativity(r) for r in rhos]
    man = [mo.mana(r) for r in rhos]
    assert np.array_equal(np.argsort(msn), np.argsort(man))


def test_l1_coherence_values(named_states):
    assert abs(mo.l1_coherence(named_states["coherent"]) - 2) < 1e-12
    assert abs(mo.l1_coherence(named_states["strange"]) - 1) < 1e-12
    assert mo.l1_coherence(np.diag([0.2, 0.5, 0.3]).astype(complex)) < 1e-14


def test_l1_coherence_qutrit_bound():
    rhos = random_qutrit_batch(2000, seed=43)
    vals = [mo.l1_coherence(r) for r in rhos]
    assert max(vals) <= 2 + 1e-10


def test_lp_coherence_matches_l1_at_p1():
    rng = np.random.default_rng(44)
    for _ in range(20):
        rho = linalg.random_mixed(3, seed=rng)
        assert abs(mo.lp_coherence(rho, 1) - mo.l1_coherence(rho)) < 1e-12


def test_lp_coherence_tensor_scaling():
    # C_lp(rho x sigma) = (sum_k q_k^p)^{1/p} C_lp(rho) for diagonal sigma
    rng = np.random.default_rng(45)
    for p in (1.0, 1.5, 2.0, 3.0):
        for _ in range(10):
            rho = linalg.random_mixed(3, seed=rng)
            q = rng.dirichlet(np.ones(3))
            sigma = np.diag(q).astype(complex)
            lhs = mo.lp_coherence(linalg.tensor(rho, sigma), p)
            rhs = np.sum(q ** p) ** (1 / p) * mo.lp_coherence(rho, p)
            assert abs(lhs - rhs) < 1e-10


def test_lp_coherence_strange_p2(named_states):
    assert abs(mo.lp_coherence(named_states["strange"], 2) - 1 / np.sqrt(2)) < 1e-12


def test_lp_coherence_rejects_small_p():
    with pytest.raises(ValueError):
        mo.lp_coherence(linalg.maximally_mixed(3), 0.5)


def test_cw_zero_on_diagonal():
    rng = np.random.default_rng(46)
    for _ in range(100):
        diag = np.diag(rng.dirichlet(np.ones(3))).astype(complex)
        assert mo.cw_coherence(diag) < 1e-7


def test_cw_coherent_pinned(named_states):
    # derived by hand from the striation marginals of the maximally coherent
    # state (piecewise-linear minimum at lambda = 1), and matched by the grid
    val = mo.cw_coherence(named_states["coherent"])
    assert abs(val - 5 / 9) < 1e-9
    assert abs(mo.cw_grid_oracle(named_states["coherent"]) - 5 / 9) < 1e-5


def test_cw_vertical_only_degenerate():
    rng = np.random.default_rng(47)
    for _ in range(20):
        rho = linalg.random_mixed(3, seed=rng)
        assert mo.cw_coherence(rho, striation_indices=[0]) < 1e-12


def test_cw_optimizer_matches_grid_oracle():
    rhos = random_qutrit_batch(20, seed=48)
    for rho in rhos:
        opt = mo.cw_coherence(rho)
        assert abs(opt - mo.cw_grid_oracle(rho)) < 1e-4


def test_cw_full_result_fields(named_states):
    res = mo.cw_coherence(named_states["coherent"], full=True)
    assert res.converged
    assert 0 < res.lam < mo.CW_LAMBDA_MAX - 1e-9
    assert res.sigma.min() >= -1e-12 and abs(res.sigma.sum() - 1) < 1e-10


def test_distance_monotones_trivial_cases(qutrit_vertices):
    vertex = qutrit_vertices.projectors[7]
    assert mo.distance_magic(vertex) <= 1e-9
    diag = np.diag([0.1, 0.6, 0.3]).astype(complex)
    assert mo.distance_magic(diag) <= 1e-9
    assert mo.distance_coherence(diag) <= 1e-9


def test_distance_magic_below_coherence(qutrit_vertices):
    rhos = random_qutrit_batch(1000, seed=49)
    d_stab, _, _, _ = st.polytope_distance_batch(rhos, qutrit_vertices.projectors)
    d_inc, _, _, _ = st.polytope_distance_batch(rhos, st.basis_projectors(3))
    assert np.all(d_stab <= d_inc + 1e-9)


def test_negativity_product_zero():
    rng = np.random.default_rng(50)
    for _ in range(10):
        prod = linalg.tensor(linalg.random_mixed(3, seed=rng), linalg.random_mixed(2, seed=rng))
        assert mo.negativity(prod, (3, 2)) < 1e-10


def test_negativity_bell():
    vec = np.zeros(6, dtype=complex)
    vec[0] = vec[3] = 1 / np.sqrt(2)
    assert abs(mo.negativity(linalg.dm_from_pure(vec), (3, 2)) - 0.5) < 1e-12


def test_negativity_local_unitary_invariant():
    rng = np.random.default_rng(51)

    def haar_unitary(d):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, r = np.linalg.qr(g)
        return q * (np.diagonal(r) / np.abs(np.diagonal(r))).conj()

    for _ in range(100):
        rho = linalg.random_mixed(6, seed=rng)
        u = np.kron(haar_unitary(3), haar_unitary(2))
        before = mo.negativity(rho, (3, 2))
        after = mo.negativity(u @ rho @ u.conj().T, (3, 2))
        assert abs(before - after) < 1e-10


def test_negativity_requires_dims():
    with pytest.raises(ValueError):
        mo.negativity(linalg.maximally_mixed(6), (4, 2))


def test_all_monotones_order_and_applicability(named_states):
    reports = mo.all_monotones(named_states["strange"])
    names = [r.name for r in reports]
    assert names == ["sum_negativity", "mana", "l1_coherence", "l2_coherence",
                     "cw_coherence", "distance_magic", "distance_coherence"]
    assert all(r.value >= -1e-10 for r in reports)
    qubit = mo.all_monotones(linalg.maximally_mixed(2))
    assert [r.name for r in qubit] == ["l1_coherence", "l2_coherence"]
    joint = mo.all_monotones(linalg.maximally_mixed(6), dims=(3, 2))
    assert [r.name for r in joint] == ["l1_coherence", "l2_coherence", "negativity"]


def test_monotones_nonnegative_on_random_sample():
    rhos = random_qutrit_batch(50, seed=52)
    for rho in rhos:
        for rep in mo.all_monotones(rho):
            assert rep.value >= -1e-10


def test_estimate_cm_bounds():
    rng = np.random.default_rng(53)
    diag = np.diag([0.2, 0.5, 0.3]).astype(complex)
    assert channels.estimate_cm(diag, 30, seed=rng) <= 1e-9
    for _ in range(5):
        rho = linalg.random_mixed(3, seed=rng)
        est = channels.estimate_cm(rho, 30, seed=rng)
        assert est >= mo.distance_magic(rho) - 1e-9
        assert est <= mo.distance_coherence(rho) + 1e-9
