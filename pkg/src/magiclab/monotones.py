"""Scalar resource quantifiers: magic, coherence and entanglement monotones.

Magic is measured on the discrete Wigner grid (sum negativity and mana),
coherence by l_p norms of the off-diagonal part, by minimum trace distance
to the incoherent states, and by the line-sum monotone
:func:`cw_coherence` built from striation marginals. Entanglement is the
negativity of the partial transpose.
"""

from dataclasses import dataclass, field

import numpy as np

from . import stabilizer
from .linalg import partial_transpose, trace_norm, validate_density_matrix
from .phasespace import striation_marginals, wigner

CW_LAMBDA_MAX = 3.0


@dataclass(frozen=True)
class MonotoneReport:
    """A named monotone value with optional optimizer diagnostics."""
    name: str
    value: float
    metadata: dict = field(default_factory=dict)


def sum_negativity(rho):
    """sum_u |W_u| - 1 of the discrete Wigner grid; zero iff the grid is nonnegative."""
    w = wigner(rho)
    return float(np.abs(w).sum() - 1.0)


def sum_negativity_grid(w):
    """Sum negativity straight from a precomputed Wigner grid (or stack of grids)."""
    w = np.asarray(w, dtype=float)
    return np.abs(w).sum(axis=(-2, -1)) - 1.0


def mana(rho, base=None):
    """log(sum_u |W_u|) = log(1 + sum negativity); natural log unless `base` given."""
    total = sum_negativity(rho) + 1.0
    if base is None:
        return float(np.log(total))
    return float(np.log(total) / np.log(base))


def l1_coherence(rho):
    """Sum of absolute off-diagonal entries; zero iff diagonal."""
    rho = validate_density_matrix(rho)
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


def lp_coherence(rho, p):
    """(sum_{i != j} |rho_ij|^p)^{1/p} for p >= 1."""
    if p < 1:
        raise ValueError(f"l_p coherence needs p >= 1, got p={p}")
    rho = validate_density_matrix(rho)
    off = np.abs(rho - np.diag(np.diag(rho)))
    total = np.sum(off ** p)
    return float(total ** (1.0 / p))


def distance_magic(rho, vertex_set=None):
    """Minimum trace distance to the stabilizer polytope (qutrit by default)."""
    rho = validate_density_matrix(rho)
    if vertex_set is None:
        vertex_set = stabilizer.stabilizer_pure_states(rho.shape[0])
    return stabilizer.polytope_distance(rho, vertex_set).distance


def distance_coherence(rho):
    """Minimum trace distance to the incoherent (diagonal) states."""
    return stabilizer.incoherent_distance(rho)


def negativity(rho, dims, on=1):
    """Entanglement negativity (||rho^{T_B}||_1 - 1)/2; zero on product states."""
    rho = validate_density_matrix(rho)
    pt = partial_transpose(rho, dims, on)
    return float(max(0.0, (trace_norm(pt) - 1.0) / 2.0))


# ---------------------------------------------------------------------------
# line-sum coherence monotone
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CwResult:
    """Outcome of the C_w minimization over (diagonal state, scale lambda)."""
    value: float
    sigma: np.ndarray
    lam: float
    iterations: int
    converged: bool


def _k_vector(grid, striation_indices=None):
    """Concatenated striation marginals of a Wigner grid, scaled to sum to 1."""
    marg = striation_marginals(grid)
    if striation_indices is not None:
        marg = marg[list(striation_indices)]
    return marg.reshape(-1) / marg.shape[0]


def _k_basis_matrix(d, striation_indices=None):
    """Linear map sigma -> K_sigma: columns are K vectors of basis projectors."""
    cols = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1.0
        cols.append(_k_vector(wigner(e), striation_indices))
    return np.array(cols).T


def _project_simplex(v):
    """Euclidean projection onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    cond = u - css / idx > 0
    tau = css[cond][-1] / idx[cond][-1]
    return np.maximum(v - tau, 0.0)


def _golden_min(fun, lo, hi, iters=80):
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d_ = a + invphi * (b - a)
    fc, fd = fun(c), fun(d_)
    for _ in range(iters):
        if fc <= fd:
            b, d_, fd = d_, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + invphi * (b - a)
            fd = fun(d_)
    x = (a + b) / 2.0
    return x, fun(x)


def cw_coherence(rho, striation_indices=None, tol=1e-7, max_iter=2000, full=False):
    """Coherence from Wigner line sums: min over diagonal sigma and lambda >= 0 of
    ||K_rho - lambda K_sigma||_1, with K the concatenated striation marginals.

    Alternating minimization: golden-section search for lambda on
    [0, CW_LAMBDA_MAX] at fixed sigma, projected subgradient on the simplex
    for sigma at fixed lambda. Returns the value, or a :class:`CwResult`
    when ``full=True`` (``converged`` False if the iteration cap is hit or
    the optimal lambda lands on the search cap).
    """
    rho = validate_density_matrix(rho)
    d = rho.shape[0]
    k_rho = _k_vector(wigner(rho), striation_indices)
    k_map = _k_basis_matrix(d, striation_indices)

    def objective(sigma, lam):
        return float(np.abs(k_rho - lam * (k_map @ sigma)).sum())

    # The only sigma-dependent block of K is the vertical striation (the
    # marginals of a diagonal state are uniform in every other direction),
    # and that block is minimized by sigma = diag(rho). Start there.
    sigma = np.abs(np.diag(rho).real)
    sigma = sigma / sigma.sum()
    lam = 1.0
    value = objective(sigma, lam)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        lam, _ = _golden_min(lambda x: objective(sigma, x), 0.0, CW_LAMBDA_MAX)
        # projected subgradient descent in sigma at fixed lambda
        step0 = 0.5
        for k in range(1, 61):
            resid = k_rho - lam * (k_map @ sigma)
            sub = -lam * (k_map.T @ np.sign(resid))
            sigma_try = _project_simplex(sigma - step0 / np.sqrt(k) * sub)
            if objective(sigma_try, lam) <= objective(sigma, lam):
                sigma = sigma_try
        new_value = objective(sigma, lam)
        if abs(value - new_value) < tol:
            value = min(value, new_value)
            converged = True
            break
        value = min(value, new_value)
    if lam >= CW_LAMBDA_MAX - 1e-9:
        converged = False  # optimum must be interior to the lambda cap
    if full:
        return CwResult(value=value, sigma=sigma, lam=float(lam),
                        iterations=it, converged=converged)
    return value


def cw_grid_oracle(rho, striation_indices=None, coarse=0.01, lam_step=0.01, refine_rounds=4):
    """Dense-grid reference for :func:`cw_coherence` (qutrit only).

    Scans a (sigma_1, sigma_2, lambda) grid, then refines locally around the
    best point; the objective is convex in lambda*sigma, so the coarse basin
    is the right one and refinement is a pure resolution matter. Independent
    of the alternating optimizer; slow but simple.
    """
    rho = validate_density_matrix(rho)
    d = rho.shape[0]
    if d != 3:
        raise ValueError("the grid oracle is written for qutrits")
    k_rho = _k_vector(wigner(rho), striation_indices)
    k_map = _k_basis_matrix(d, striation_indices)

    def scan(s1_vals, s2_vals, lam_vals):
        s1g, s2g = np.meshgrid(s1_vals, s2_vals, indexing="ij")
        keep = s1g + s2g <= 1.0 + 1e-12
        s1f, s2f = s1g[keep], s2g[keep]
        sig = np.stack([s1f, s2f, 1.0 - s1f - s2f], axis=0)  # (3, ns)
        ks = k_map @ sig  # (12, ns)
        best = (np.inf, None)
        for lam in lam_vals:
            vals = np.abs(k_rho[:, None] - lam * ks).sum(axis=0)
            i = int(np.argmin(vals))
            if vals[i] < best[0]:
                best = (float(vals[i]), (float(s1f[i]), float(s2f[i]), float(lam)))
        return best

    val, (s1, s2, lam) = scan(np.arange(0, 1 + coarse, coarse),
                              np.arange(0, 1 + coarse, coarse),
                              np.arange(0, CW_LAMBDA_MAX + lam_step, lam_step))
    width_s, width_l = 2 * coarse, 2 * lam_step
    for _ in range(refine_rounds):
        s1_vals = np.linspace(max(0, s1 - width_s), min(1, s1 + width_s), 81)
        s2_vals = np.linspace(max(0, s2 - width_s), min(1, s2 + width_s), 81)
        lam_vals = np.linspace(max(0, lam - width_l), min(CW_LAMBDA_MAX, lam + width_l), 81)
        val, (s1, s2, lam) = scan(s1_vals, s2_vals, lam_vals)
        width_s /= 20.0
        width_l /= 20.0
    return val


def all_monotones(rho, dims=None):
    """Every applicable monotone as a fixed-order list of MonotoneReports.

    Wigner-based entries require odd prime dimension; negativity requires
    subsystem dims. Inapplicable entries are skipped.
    """
    rho = validate_density_matrix(rho)
    d = rho.shape[0]
    out = []
    wigner_ok = d % 2 == 1 and all(d % k for k in range(2, d))
    if wigner_ok:
        out.append(MonotoneReport("sum_negativity", sum_negativity(rho)))
        out.append(MonotoneReport("mana", mana(rho)))
    out.append(MonotoneReport("l1_coherence", l1_coherence(rho)))
    out.append(MonotoneReport("l2_coherence", lp_coherence(rho, 2)))
    if wigner_ok:
        res = cw_coherence(rho, full=True)
        out.append(MonotoneReport("cw_coherence", res.value,
                                  {"lambda": res.lam, "iterations": res.iterations,
                                   "converged": res.converged}))
    if d == 3:
        out.append(MonotoneReport("distance_magic", distance_magic(rho)))
        out.append(MonotoneReport("distance_coherence", distance_coherence(rho)))
    if dims is not None:
        out.append(MonotoneReport("negativity", negativity(rho, dims)))
    return out
