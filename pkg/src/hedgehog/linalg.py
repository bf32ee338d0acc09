"""Linear algebra over the exact rings and modulo word-size primes."""

from __future__ import annotations

import random
from typing import Sequence

import gmpy2
import numpy as np

from .rings import Ring


def rref_exact(rows: Sequence[Sequence], ring: Ring, ncols: int | None = None):
    """Reduced row echelon form over a field; returns ``(rows, pivot columns)``."""
    mat = [list(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    zero, is_zero = ring.zero, ring.is_zero
    mul, sub, inv = ring.mul, ring.sub, ring.inv
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not is_zero(mat[i][c])), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = inv(mat[r][c])
        prow = [mul(x, s) if not is_zero(x) else zero for x in mat[r]]
        mat[r] = prow
        nz = [j for j in range(c, ncols) if not is_zero(prow[j])]
        for i in range(len(mat)):
            if i != r and not is_zero(mat[i][c]):
                f = mat[i][c]
                row = mat[i]
                for j in nz:
                    row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def kernel_from_rref(R, pivots: list[int], ncols: int, ring: Ring) -> list[list]:
    """Canonical kernel basis: one vector per free column, free entry 1."""
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ring.zero] * ncols
        v[f] = ring.one
        for row, pc in zip(R, pivots):
            if not ring.is_zero(row[f]):
                v[pc] = ring.neg(row[f])
        basis.append(v)
    return basis


def solve_exact(A: Sequence[Sequence], b: Sequence, ring: Ring):
    """One solution of ``A x = b`` with all free unknowns 0, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref_exact(aug, ring, n + 1)
    if n in pivots:
        return None
    x = [ring.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


# --- modular ----------------------------------------------------------------


def random_primes(count: int, seed: int = 0, condition=None, bits: int = 31) -> list[int]:
    """Distinct primes in [2^(bits-1), 2^bits) drawn deterministically from ``seed``."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = int(gmpy2.next_prime(rng.randrange(1 << (bits - 1), 1 << bits)))
        if p >= 1 << bits or p in out:
            continue
        if condition is None or condition(p):
            out.append(p)
    return out


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` for entries in [0, p), p < 2^31, inner dimension <= 2^20.

    Both factors are split into 16-bit limbs so that every float64 product sum
    stays below 2^53 and is therefore exact.
    """
    if A.shape[1] > 1 << 20:
        raise ValueError("inner dimension too large for exact float accumulation")
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    a_lo, a_hi = (A & 0xFFFF).astype(np.float64), (A >> 16).astype(np.float64)
    b_lo, b_hi = (B & 0xFFFF).astype(np.float64), (B >> 16).astype(np.float64)

    def mm(x, y):
        return (x @ y).astype(np.int64) % p

    lo = mm(a_lo, b_lo)
    mid = (mm(a_lo, b_hi) + mm(a_hi, b_lo)) % p
    hi = mm(a_hi, b_hi)
    shift = (1 << 16) % p
    return (lo + mid * shift % p + hi * (shift * shift % p) % p) % p


def _rref_dense(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = M[r, c:] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            M[rows, c:] = (M[rows, c:] - np.outer(col[rows], M[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref_mod_p(M: np.ndarray, p: int, block: int | None = None) -> tuple[np.ndarray, list[int]]:
    """RREF of an integer matrix modulo a prime p < 2^31.

    Rows are processed in blocks: each block is first reduced against the
    echelon form found so far (one matrix product), so rows beyond the rank
    cost almost nothing.
    """
    M = np.array(M, dtype=np.int64) % p
    nrows, ncols = M.shape
    block = block or ncols + 32
    E = np.zeros((0, ncols), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, nrows, block):
        B = M[start : start + block]
        if pivots:
            B = (B - matmul_mod(B[:, pivots], E, p)) % p
            if not B.any():
                continue
        Eb, pb = _rref_dense(B, p)
        if not pb:
            continue
        if pivots:
            E = (E - matmul_mod(E[:, pb], Eb, p)) % p
        E = np.vstack([E, Eb])
        pivots = pivots + pb
        order = np.argsort(pivots, kind="stable")
        E = E[order]
        pivots = [pivots[i] for i in order]
    return E, pivots


def kernel_mod_p(R: np.ndarray, pivots: list[int], ncols: int, p: int) -> np.ndarray:
    """Kernel basis (rows) in the canonical free-column normalisation."""
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        if len(pivots):
            K[k, pivots] = (-R[:, f]) % p
    return K


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruction(a: int, m: int):
    """``(n, d)`` with ``n/d = a (mod m)`` and |n|, d <= sqrt(m/2), else None."""
    a %= m
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gmpy2.gcd(r1, s1) != 1:
        return None
    return int(r1), int(s1)
