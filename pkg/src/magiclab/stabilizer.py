"""Pure stabilizer states and distances to the stabilizer polytope.

The vertex set is the Clifford orbit of |0><0| under the generators
X (shift), Z (clock), F (Fourier) and S (phase), closed by breadth-first
search and deduplicated in trace distance. For d = 3 this yields the twelve
qutrit vertices (the eigenvectors of the four mutually unbiased bases), for
d = 2 the six octahedron vertices.

Distances are minimum trace distances to the convex hull of a vertex list,
min over simplex weights w of (1/2)||rho - sum_i w_i v_i||_1. The solver is
an ADMM splitting whose two half-steps are exact: eigenvalue soft
thresholding for the trace-norm block and a tiny simplex-constrained least
squares (FISTA) for the weights. The same minimizer over the
computational-basis projectors gives the distance to the incoherent states.
(A plain Frank-Wolfe scheme with exact line search stalls here: the
steepest-descent vertex computed from a subgradient need not be a descent
direction at the eigenvalue crossings where the optimum sits.)
"""

from dataclasses import dataclass

import numpy as np

from .linalg import validate_density_matrix
from .phasespace import _is_prime, clock_matrix, shift_matrix

DEDUP_TOL = 1e-8

GENERATOR_NAMES = ("X", "Z", "F", "S")


def clifford_generators(d):
    """The generators [X, Z, F, S] of the single-qudit Clifford group.

    F_{jk} = w^{jk}/sqrt(d); S = diag(w^{j(j-1)/2}) for odd prime d and
    diag(1, i) for d = 2 (the qubit phase gate, needed to close the
    octahedron orbit).
    """
    if not _is_prime(d):
        raise ValueError(f"generators are defined for prime d, got {d}")
    omega = np.exp(2j * np.pi / d)
    j = np.arange(d)
    f = omega ** np.outer(j, j) / np.sqrt(d)
    if d == 2:
        s = np.diag([1.0, 1.0j])
    else:
        inv2 = (d + 1) // 2
        s = np.diag(omega ** (j * (j - 1) * inv2 % d))
    return [shift_matrix(d), clock_matrix(d), f, s]


def _canonical_phase(ket):
    """Rotate the global phase so the first significant entry is real positive."""
    idx = np.argmax(np.abs(ket) > 1e-9)
    return ket * np.exp(-1j * np.angle(ket[idx]))


def _pure_trace_distance(ket_a, ket_b):
    """Trace distance of the rank-1 projectors, sqrt(1 - |<a|b>|^2).

    Computed as the norm of the component of b orthogonal to a, which stays
    accurate near zero (the direct sqrt form amplifies machine noise to
    ~sqrt(eps) and would put exact duplicates above the dedup threshold).
    """
    residual = ket_b - np.vdot(ket_a, ket_b) * ket_a
    return float(np.linalg.norm(residual))


@dataclass(frozen=True)
class StabilizerVertexSet:
    """Pure stabilizer projectors for one dimension, with generator provenance."""
    dim: int
    kets: np.ndarray        # (n, d), phase-canonical
    projectors: np.ndarray  # (n, d, d)
    words: tuple            # generator word producing each vertex, e.g. "FX|0>"

    def __len__(self):
        return len(self.kets)


def stabilizer_pure_states(d):
    """Breadth-first Clifford-orbit closure of |0><0|, deduplicated.

    Supported for d in {2, 3}; BFS order (generator order X, Z, F, S) is
    deterministic, so vertex indices are stable across runs.
    """
    if d not in (2, 3):
        raise ValueError(f"vertex enumeration supports d in {{2, 3}}, got {d}")
    gens = clifford_generators(d)
    start = np.zeros(d, dtype=complex)
    start[0] = 1.0
    kets = [start]
    words = ["|0>"]
    frontier = [0]
    while frontier:
        next_frontier = []
        for idx in frontier:
            for name, g in zip(GENERATOR_NAMES, gens):
                candidate = g @ kets[idx]
                candidate = _canonical_phase(candidate / np.linalg.norm(candidate))
                if all(_pure_trace_distance(candidate, k) > DEDUP_TOL for k in kets):
                    kets.append(candidate)
                    words.append(name + words[idx])
                    next_frontier.append(len(kets) - 1)
        frontier = next_frontier
    kets = np.array(kets)
    projectors = np.einsum("ni,nj->nij", kets, kets.conj())
    return StabilizerVertexSet(dim=d, kets=kets, projectors=projectors, words=tuple(words))


def basis_projectors(d):
    """The d computational-basis projectors, the vertices of the incoherent simplex."""
    return np.stack([np.diag(row).astype(complex) for row in np.eye(d)])


# ---------------------------------------------------------------------------
# trace-distance minimization over a vertex simplex (ADMM splitting)
# ---------------------------------------------------------------------------

def _project_simplex_batch(v):
    """Row-wise Euclidean projection onto the probability simplex."""
    u = np.sort(v, axis=1)[:, ::-1]
    css = np.cumsum(u, axis=1) - 1.0
    idx = np.arange(1, v.shape[1] + 1)
    cond = u - css / idx > 0
    last = cond.cumsum(axis=1).argmax(axis=1)
    shift = css[np.arange(len(v)), last] / (last + 1.0)
    return np.maximum(v - shift[:, None], 0.0)


@dataclass(frozen=True)
class PolytopeResult:
    """Outcome of a simplex-constrained trace-distance minimization."""
    distance: float
    weights: np.ndarray
    iterations: int
    converged: bool


def polytope_distance_batch(rhos, vertices, tol=1e-9, max_iter=5000, inner=150, relax=1.6):
    """min_w (1/2)||rho - sum_i w_i v_i||_1 over the simplex, for a state stack.

    Over-relaxed ADMM on the split M = rho - Vw: the M update soft-thresholds
    eigenvalues at 1/(2 tau), the w update solves the quadratic simplex
    subproblem with warm-started FISTA, and the scaled dual Y tracks the
    constraint. The per-state penalty tau grows when the split residual lags.
    The reported distance is always evaluated at the feasible weights, so it
    is a valid upper bound at any iteration count.

    Returns (distances, weights, iterations, converged); `converged` means
    the objective settled to within `tol` (checked every 10 sweeps together
    with the split residual) before `max_iter`.
    """
    rhos = np.asarray(rhos, dtype=complex)
    verts = np.asarray(vertices, dtype=complex)
    n = rhos.shape[0]
    m = verts.shape[0]

    gram = np.einsum("aij,bji->ab", verts, verts).real
    lip = np.linalg.eigvalsh(gram)[-1]

    w = np.full((n, m), 1.0 / m)
    y = np.zeros_like(rhos)
    tau = np.ones(n)
    f = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(rhos - np.einsum("nm,mij->nij", w, verts))), axis=-1)
    iters = np.zeros(n, dtype=int)
    converged = np.zeros(n, dtype=bool)
    active = np.arange(n)

    for sweep in range(1, max_iter + 1):
        if len(active) == 0:
            break
        wa, ya, ta = w[active], y[active], tau[active]
        ra = rhos[active]
        vw = np.einsum("nm,mij->nij", wa, verts)

        # trace-norm block: eigenvalue soft threshold
        lam, u = np.linalg.eigh(ra - vw - ya / ta[:, None, None])
        lam = np.sign(lam) * np.maximum(np.abs(lam) - 0.5 / ta[:, None], 0.0)
        mat = np.einsum("nak,nk,nbk->nab", u, lam, u.conj())
        mat = relax * mat + (1.0 - relax) * (ra - vw)

        # weight block: min_w ||mat - rho + Vw + y/tau||_F^2 on the simplex
        b = np.einsum("nij,mji->nm", mat - ra + ya / ta[:, None, None], verts).real
        x, z, tk = wa.copy(), wa.copy(), 1.0
        for _ in range(inner):
            x_new = _project_simplex_batch(z - (z @ gram + b) / lip)
            tk_new = (1.0 + np.sqrt(1.0 + 4.0 * tk * tk)) / 2.0
            z = x_new + (tk - 1.0) / tk_new * (x_new - x)
            if np.max(np.abs(x_new - x)) < 1e-14:
                x = x_new
                break
            x, tk = x_new, tk_new
        wa = x

        resid = mat - (ra - np.einsum("nm,mij->nij", wa, verts))
        w[active] = wa
        y[active] = ya + ta[:, None, None] * resid
        iters[active] = sweep

        if sweep % 10 == 0 or sweep == max_iter:
            fa = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(
                rhos[active] - np.einsum("nm,mij->nij", wa, verts))), axis=-1)
            rp = np.max(np.abs(resid), axis=(1, 2))
            done = (np.abs(f[active] - fa) < tol) & (rp < 1e-9)
            done |= fa <= tol  # distances are nonnegative: the floor is optimal
            f[active] = fa
            tau[active] = np.where(rp > 1e-7, tau[active] * 1.5, tau[active])
            converged[np.compress(done, active)] = True
            active = np.compress(~done, active)

    f = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(rhos - np.einsum("nm,mij->nij", w, verts))), axis=-1)
    return f, w, iters, converged


def polytope_distance(rho, vertex_set, tol=1e-9, max_iter=5000):
    """Minimum trace distance from rho to the convex hull of a vertex set."""
    rho = validate_density_matrix(rho)
    verts = vertex_set.projectors if isinstance(vertex_set, StabilizerVertexSet) else np.asarray(vertex_set)
    if verts.shape[1] != rho.shape[0]:
        raise ValueError(f"dimension mismatch: state {rho.shape[0]}, vertices {verts.shape[1]}")
    dist, w, iters, conv = polytope_distance_batch(rho[None], verts, tol=tol, max_iter=max_iter)
    return PolytopeResult(distance=float(dist[0]), weights=w[0],
                          iterations=int(iters[0]), converged=bool(conv[0]))


def in_polytope(rho, vertex_set, tol=1e-7):
    """True iff the minimum trace distance to the polytope is at most tol."""
    return polytope_distance(rho, vertex_set).distance <= tol


def incoherent_distance(rho, tol=1e-9, max_iter=5000):
    """Minimum trace distance to the diagonal (incoherent) states."""
    rho = validate_density_matrix(rho)
    return polytope_distance(rho, basis_projectors(rho.shape[0]), tol=tol, max_iter=max_iter).distance
