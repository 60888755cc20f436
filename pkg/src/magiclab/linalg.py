"""Dense complex linear algebra for small qudit systems.

States are plain numpy arrays: a pure state is a length-d complex vector,
a density matrix is a d x d complex array. Bipartite operations take the
subsystem dimensions explicitly (e.g. ``dims=(3, 2)``); there is no wrapper
object. All functions are pure; randomness enters only through an explicit
seed or ``numpy.random.Generator``.
"""

import numpy as np

# Construction-time tolerances for state validation.
HERM_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
NORM_ATOL = 1e-10


def rng_from(seed):
    """Return a numpy Generator from a seed (or pass a Generator through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_pure_state(psi, atol=NORM_ATOL):
    """Check normalization of a state vector; return it as a complex array."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 2:
        raise ValueError(f"pure state must be a vector of length >= 2, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"state vector is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return psi


def validate_density_matrix(rho, herm_atol=HERM_ATOL, trace_atol=TRACE_ATOL, psd_atol=PSD_ATOL):
    """Check Hermiticity, unit trace and positivity; return a complex array.

    Raises ValueError on the first violated invariant.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm_err = np.max(np.abs(rho - rho.conj().T))
    if herm_err > herm_atol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm_err:.3e}")
    trace_err = abs(np.trace(rho) - 1.0)
    if trace_err > trace_atol:
        raise ValueError(f"trace is not 1: |tr - 1| = {trace_err:.3e}")
    min_eig = np.linalg.eigvalsh(rho)[0]
    if min_eig < -psd_atol:
        raise ValueError(f"not positive semidefinite: min eigenvalue = {min_eig:.3e}")
    return rho


def is_density_matrix(rho, **kwargs):
    """Boolean form of :func:`validate_density_matrix`."""
    try:
        validate_density_matrix(rho, **kwargs)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def basis_ket(d, i):
    """Computational basis vector |i> in dimension d."""
    if not 0 <= i < d:
        raise ValueError(f"basis index {i} out of range for dimension {d}")
    psi = np.zeros(d, dtype=complex)
    psi[i] = 1.0
    return psi


def dm_from_pure(psi):
    """Rank-1 projector |psi><psi| from a normalized state vector."""
    psi = validate_pure_state(psi)
    return np.outer(psi, psi.conj())


def maximally_mixed(d):
    """I/d."""
    return np.eye(d, dtype=complex) / d


def strange_state():
    """The qutrit (0, 1, -1)/sqrt(2) vector, maximally distant from polytope faces."""
    return np.array([0.0, 1.0, -1.0], dtype=complex) / np.sqrt(2.0)


def norrell_state():
    """The qutrit (-1, 2, -1)/sqrt(6) vector, maximally distant from polytope edges."""
    return np.array([-1.0, 2.0, -1.0], dtype=complex) / np.sqrt(6.0)


def maximally_coherent_state(d=3):
    """(|0> - |1> + |2> - ...)/sqrt(d), the alternating-sign uniform superposition."""
    signs = np.array([(-1.0) ** i for i in range(d)])
    return signs.astype(complex) / np.sqrt(d)


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------

def random_pure(d, seed=None):
    """Haar-random pure state: i.i.d. complex Gaussian vector, normalized."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    rng = rng_from(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_mixed(d, rank=None, seed=None):
    """Random density matrix rho = G G^dag / tr(G G^dag), G a d x rank Ginibre matrix.

    rank=d (the default) samples from the Hilbert-Schmidt measure.
    """
    if rank is None:
        rank = d
    if not 1 <= rank <= d:
        raise ValueError(f"rank must satisfy 1 <= rank <= {d}, got {rank}")
    rng = rng_from(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_diagonal_state(d, seed=None):
    """Random incoherent state: uniform (Dirichlet) weights on the basis projectors."""
    rng = rng_from(seed)
    return np.diag(rng.dirichlet(np.ones(d))).astype(complex)


# ---------------------------------------------------------------------------
# bipartite operations
# ---------------------------------------------------------------------------

def tensor(a, b):
    """Kronecker product of two states (or operators)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _check_dims(rho, dims):
    rho = np.asarray(rho, dtype=complex)
    dims = tuple(int(x) for x in dims)
    if len(dims) < 2:
        raise ValueError("dims must list at least two subsystem dimensions")
    if int(np.prod(dims)) != rho.shape[0] or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"dims {dims} do not match matrix shape {rho.shape}")
    return rho, dims


def partial_trace(rho, dims, keep):
    """Reduced state on subsystem `keep` of a state with factor dimensions `dims`."""
    rho, dims = _check_dims(rho, dims)
    n = len(dims)
    if not 0 <= keep < n:
        raise ValueError(f"keep index {keep} out of range for {n} subsystems")
    t = rho.reshape(dims + dims)
    # trace out everything but `keep`, from the back to keep axis numbers stable
    for idx in reversed([i for i in range(n) if i != keep]):
        t = np.trace(t, axis1=idx, axis2=idx + t.ndim // 2)
    return t


def partial_transpose(rho, dims, on):
    """Transpose one tensor factor; Hermitian, trace 1, not necessarily PSD."""
    rho, dims = _check_dims(rho, dims)
    n = len(dims)
    if not 0 <= on < n:
        raise ValueError(f"subsystem index {on} out of range for {n} subsystems")
    t = rho.reshape(dims + dims)
    t = np.swapaxes(t, on, on + n)
    return t.reshape(rho.shape)


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def trace_distance(a, b):
    """(1/2) ||a - b||_1 for Hermitian matrices of equal dimension."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return 0.5 * trace_norm(a - b)
