"""Fixed-dimension index bookkeeping for four-dimensional frame computations.

Indices are 0-based internally (0..3). Antisymmetric index pairs are stored
once, in lexicographic order of ``a < b``, and expanded to the full index
range by the signed embedding :data:`PAIR_EMBEDDING`.
"""
from __future__ import annotations

import itertools

import numpy as np

DIM = 4

#: Ordered pairs ``(a, b)`` with ``a < b``; the position is the pair code.
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(DIM), 2))
NPAIRS = len(PAIRS)

_PAIR_CODES = {pair: code for code, pair in enumerate(PAIRS)}


def check_index(value) -> int:
    """Return ``value`` as an ``int`` after checking it lies in ``0..3``."""
    if isinstance(value, (bool, np.bool_)) or int(value) != value:
        raise TypeError(f"index must be an integer, got {value!r}")
    value = int(value)
    if not 0 <= value < DIM:
        raise ValueError(f"index {value} out of range 0..{DIM - 1}")
    return value


def _permutation_sign(indices) -> int:
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    seq = list(indices)
    # selection sort, counting transpositions
    for k in range(len(seq)):
        m = seq.index(min(seq[k:]), k)
        if m != k:
            seq[k], seq[m] = seq[m], seq[k]
            sign = -sign
    return sign


def levi_civita(i, j, p, q) -> int:
    """Permutation symbol with ``levi_civita(0, 1, 2, 3) == 1``.

    Upper- and lower-index symbols share this table; no metric factors.
    """
    return _permutation_sign([check_index(k) for k in (i, j, p, q)])


def eta(mu, nu) -> int:
    """Minkowski metric component, signature ``(-, +, +, +)``."""
    mu, nu = check_index(mu), check_index(nu)
    if mu != nu:
        return 0
    return -1 if mu == 0 else 1


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


LEVI_CIVITA = _readonly(np.array(
    [_permutation_sign(idx) for idx in itertools.product(range(DIM), repeat=4)],
    dtype=float,
).reshape((DIM,) * 4))

ETA = _readonly(np.diag([-1.0, 1.0, 1.0, 1.0]))
DELTA = _readonly(np.eye(DIM))


def epsilon_pair_contraction(xi, eta_, lam, sigma) -> int:
    """Sum over ``a, b`` of ``eps(xi, eta_, a, b) * eps(a, b, lam, sigma)``."""
    xi, eta_, lam, sigma = (check_index(k) for k in (xi, eta_, lam, sigma))
    total = 0
    for a in range(DIM):
        for b in range(DIM):
            total += (_permutation_sign((xi, eta_, a, b))
                      * _permutation_sign((a, b, lam, sigma)))
    return total


def pair_encode(mu, nu) -> tuple[int, int]:
    """Return ``(code, sign)`` for the unordered pair ``{mu, nu}``.

    ``sign`` is +1 when ``mu < nu`` and -1 otherwise.
    """
    mu, nu = check_index(mu), check_index(nu)
    if mu == nu:
        raise ValueError("degenerate pair")
    if mu < nu:
        return _PAIR_CODES[(mu, nu)], 1
    return _PAIR_CODES[(nu, mu)], -1


def pair_decode(code) -> tuple[int, int]:
    code = int(code)
    if not 0 <= code < NPAIRS:
        raise ValueError(f"pair code {code} out of range 0..{NPAIRS - 1}")
    return PAIRS[code]


def _pair_embedding() -> np.ndarray:
    emb = np.zeros((NPAIRS, DIM, DIM))
    for code, (a, b) in enumerate(PAIRS):
        emb[code, a, b] = 1.0
        emb[code, b, a] = -1.0
    return emb


#: ``PAIR_EMBEDDING[c, a, b]`` is +1 / -1 when ``(a, b)`` / ``(b, a)`` is pair ``c``.
PAIR_EMBEDDING = _readonly(_pair_embedding())
_FIRST = np.array([a for a, _ in PAIRS])
_SECOND = np.array([b for _, b in PAIRS])


def expand_pairs(stored: np.ndarray, axis: int) -> np.ndarray:
    """Expand a length-6 pair axis into two antisymmetric length-4 axes.

    The two new axes take the place of ``axis``.
    """
    stored = np.asarray(stored, dtype=float)
    axis = axis % stored.ndim
    full = np.tensordot(np.moveaxis(stored, axis, -1), PAIR_EMBEDDING, axes=([-1], [0]))
    return np.moveaxis(full, (-2, -1), (axis, axis + 1))


def compress_pairs(full: np.ndarray, axis: int) -> np.ndarray:
    """Inverse of :func:`expand_pairs`: keep the ``a < b`` entries of axes ``axis, axis+1``."""
    full = np.asarray(full, dtype=float)
    axis = axis % full.ndim
    full = np.moveaxis(full, (axis, axis + 1), (-2, -1))
    return np.moveaxis(full[..., _FIRST, _SECOND], -1, axis)


def antisymmetrize(full: np.ndarray, axis: int) -> np.ndarray:
    """Antisymmetric part over the adjacent axes ``axis, axis + 1``."""
    return 0.5 * (full - np.swapaxes(full, axis, axis + 1))


def max_abs(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0


_PATHS: dict = {}


def contract(subscripts: str, *operands) -> np.ndarray:
    """``np.einsum`` with the contraction path computed once per signature and reused."""
    key = (subscripts,) + tuple(np.shape(op) for op in operands)
    path = _PATHS.get(key)
    if path is None:
        path = np.einsum_path(subscripts, *operands, optimize="optimal")[0]
        _PATHS[key] = path
    return np.einsum(subscripts, *operands, optimize=path)
