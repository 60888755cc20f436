"""Plain-text state files.

Format: first line ``dim=<d>``, then either one line of d comma-separated
complex amplitudes (pure state) or d lines of d entries (density matrix),
row-major. Entries read ``a+bi`` with a '.' decimal point, locale
independent. Blank lines and lines starting with '#' are ignored, so the
output of ``stab --list`` parses directly.
"""

import numpy as np


def _parse_complex(token):
    token = token.strip().replace(" ", "")
    if not token:
        raise ValueError("empty numeric field")
    s = token.replace("i", "j").replace("I", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise ValueError(f"cannot parse complex entry {token!r}") from exc


def _fmt_complex(z):
    return f"{z.real:.17g}{z.imag:+.17g}i"


def loads_state(text):
    """Parse state-file text; returns a 1-d array (pure) or 2-d array (dm)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("dim="):
        raise ValueError("state file must start with a 'dim=<d>' line")
    d = int(lines[0].split("=", 1)[1])
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    body = lines[1:]
    if len(body) == 1:
        row = [_parse_complex(tok) for tok in body[0].split(",")]
        if len(row) != d:
            raise ValueError(f"pure state needs {d} amplitudes, got {len(row)}")
        return np.array(row, dtype=complex)
    if len(body) == d:
        mat = []
        for ln in body:
            row = [_parse_complex(tok) for tok in ln.split(",")]
            if len(row) != d:
                raise ValueError(f"density matrix row needs {d} entries, got {len(row)}")
            mat.append(row)
        return np.array(mat, dtype=complex)
    raise ValueError(f"expected 1 or {d} data lines, got {len(body)}")


def load_state(path):
    with open(path) as fh:
        return loads_state(fh.read())


def dumps_state(state):
    """Serialize a pure-state vector or density matrix to state-file text."""
    state = np.asarray(state, dtype=complex)
    d = state.shape[0]
    lines = [f"dim={d}"]
    if state.ndim == 1:
        lines.append(",".join(_fmt_complex(z) for z in state))
    elif state.ndim == 2 and state.shape == (d, d):
        lines.extend(",".join(_fmt_complex(z) for z in row) for row in state)
    else:
        raise ValueError(f"expected a vector or square matrix, got shape {state.shape}")
    return "\n".join(lines) + "\n"


def write_state(path, state):
    with open(path, "w", newline="") as fh:
        fh.write(dumps_state(state))
