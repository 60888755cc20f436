import numpy as np
import pytest

from magiclab import linalg, stabilizer


@pytest.fixture(scope="session")
def qutrit_vertices():
    return stabilizer.stabilizer_pure_states(3)


@pytest.fixture(scope="session")
def qubit_vertices():
    return stabilizer.stabilizer_pure_states(2)


@pytest.fixture(scope="session")
def named_states():
    return {
        "strange": linalg.dm_from_pure(linalg.strange_state()),
        "norrell": linalg.dm_from_pure(linalg.norrell_state()),
        "coherent": linalg.dm_from_pure(linalg.maximally_coherent_state()),
        "mixed": linalg.maximally_mixed(3),
    }


def random_qutrit_batch(n, seed):
    """Half Haar-pure, half HS-mixed qutrit states, stacked (n, 3, 3)."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        if i % 2:
            out.append(linalg.random_mixed(3, seed=rng))
        else:
            out.append(linalg.dm_from_pure(linalg.random_pure(3, rng)))
    return np.stack(out)


def project_simplex(v):
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    cond = u - css / idx > 0
    tau = css[cond][-1] / idx[cond][-1]
    return np.maximum(v - tau, 0.0)


def slsqp_polytope_oracle(rho, vertices, starts=12, seed=11):
    """Independent trace-distance minimizer: SLSQP multi-start with the
    returned weights projected exactly onto the simplex (raw SLSQP output can
    be slightly infeasible and undershoot the true minimum)."""
    from scipy.optimize import minimize

    vertices = np.asarray(vertices)
    m = len(vertices)

    def f(w):
        delta = rho - np.einsum("m,mij->ij", w, vertices)
        return np.sum(np.abs(np.linalg.eigvalsh(delta))) / 2

    best = np.inf
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        res = minimize(f, rng.dirichlet(np.ones(m)), method="SLSQP",
                       bounds=[(0, 1)] * m,
                       constraints=[{"type": "eq", "fun": lambda w: w.sum() - 1}],
                       options={"maxiter": 400, "ftol": 1e-14})
        best = min(best, f(project_simplex(res.x)))
    return best
