"""Low-degree polynomial relations satisfied by a set of sample points.

The relations of degree <= D in chosen variables form the kernel of the
evaluation matrix (rows: samples, columns: monomials).  The dimension comes
from the rank modulo several random primes; the basis over Q is rebuilt by
Chinese remaindering and rational reconstruction of the canonical (RREF)
kernel basis, then checked at a fresh prime.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpq

from ..linalg import (
    crt_pair,
    kernel_from_rref,
    kernel_mod_p,
    matmul_mod,
    random_primes,
    rational_reconstruction,
    rref_exact,
    rref_mod_p,
)
from ..poly import Poly, varset
from ..rings import QQ, PrimeField, QuadraticField, Rationals, Ring, RingElem

log = logging.getLogger(__name__)

NINE_VARS = ("a14", "a16", "a17", "a18", "a19", "a20", "a21", "a22", "a23")
F_VARS = ("a14", "a17", "a21", "a22")

# dimensions observed for the good component; a mismatch is reported, not hidden
EXPECTED_DIMENSION = {(NINE_VARS, 4): 306}


class TooFewSamples(ValueError):
    pass


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= degree, grlex descending."""
    out = []
    for d in range(degree, -1, -1):
        level = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            level.append(tuple(e))
        out.extend(sorted(level, reverse=True))
    return out


@dataclass
class RelationBasis:
    degree: int
    variables: tuple[str, ...]
    dimension: int
    basis: list[Poly]
    exact: bool
    primes: list[int] = field(default_factory=list)
    dims_per_prime: list[int] = field(default_factory=list)
    samples: int = 0
    monomial_count: int = 0
    method: str = "modular"

    @property
    def consensus(self) -> bool:
        return len(set(self.dims_per_prime)) <= 1

    def to_json(self, with_basis: bool = True) -> dict:
        doc = {
            "degree": self.degree,
            "variables": list(self.variables),
            "dimension": self.dimension,
            "samples": self.samples,
            "monomials": self.monomial_count,
            "method": self.method,
            "primes": self.primes,
            "dims_per_prime": self.dims_per_prime,
            "consensus": self.consensus,
            "exact_basis": self.exact,
        }
        if with_basis:
            doc["ring"] = self.basis[0].ring.spec if self.basis else "Q"
            doc["basis"] = [str(p) for p in self.basis]
        return doc


def relation_status(rb: RelationBasis) -> str:
    """"pass", "fail" (dimension differs from the recorded one) or "inconclusive"."""
    if not rb.consensus:
        return "inconclusive"
    expected = EXPECTED_DIMENSION.get((tuple(rb.variables), rb.degree))
    if expected is not None and rb.dimension != expected:
        return "fail"
    return "pass"


def _rows(samples, variables) -> list[list[RingElem]]:
    rows = []
    for s in samples:
        if isinstance(s, Mapping) or hasattr(s, "as_dict"):
            d = s.as_dict() if hasattr(s, "as_dict") else s
            rows.append([d[v] for v in variables])
        else:
            row = list(s)
            if len(row) != len(variables):
                raise ValueError("sample length does not match the variables")
            rows.append(row)
    return rows


def _sample_ring(rows) -> Ring:
    rings = {x.ring for r in rows for x in r}
    if len(rings) != 1:
        raise ValueError(f"samples mix rings {sorted(r.spec for r in rings)}")
    return rings.pop()


def _prime_condition(ring: Ring):
    if isinstance(ring, QuadraticField):
        d = ring.discriminant
        return lambda p: gmpy2.legendre(d % p, p) == 1
    if isinstance(ring, Rationals):
        return None
    raise ValueError(f"modular kernels need samples over Q or a quadratic field, not {ring.spec}")


def _sqrt_mod(d: int, p: int) -> int:
    from sympy.ntheory import sqrt_mod

    return int(sqrt_mod(d % p, p))


def _reduce(ring: Ring, raw, p: int, root: int | None) -> int:
    if isinstance(ring, QuadraticField):
        a, b = raw
        return (_reduce_q(a, p) + _reduce_q(b, p) * root) % p
    return _reduce_q(raw, p)


def _reduce_q(x: mpq, p: int) -> int:
    den = int(x.denominator)
    if den % p == 0:
        raise ZeroDivisionError
    return int(x.numerator) * pow(den, -1, p) % p


def evaluation_matrix_mod_p(rows, ring: Ring, monos, p: int) -> np.ndarray:
    root = _sqrt_mod(ring.discriminant, p) if isinstance(ring, QuadraticField) else None
    nv = len(monos[0])
    degree = max(sum(e) for e in monos)
    vals = np.array([[_reduce(ring, x.value, p, root) for x in r] for r in rows], dtype=np.int64)
    powers = [[np.ones(len(rows), dtype=np.int64)] for _ in range(nv)]
    for i in range(nv):
        for _ in range(degree):
            powers[i].append(powers[i][-1] * vals[:, i] % p)
    M = np.empty((len(rows), len(monos)), dtype=np.int64)
    for j, e in enumerate(monos):
        col = np.ones(len(rows), dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                col = col * powers[i][k] % p
        M[:, j] = col
    return M


def _basis_to_polys(vectors, monos, ring: Ring, vars) -> list[Poly]:
    out = []
    for v in vectors:
        terms = {e: c for e, c in zip(monos, v) if not ring.is_zero(c)}
        out.append(Poly(ring, vars, terms))
    return out


def find_vanishing(
    samples,
    variables: Sequence[str],
    degree: int,
    *,
    primes: int = 3,
    seed: int = 0,
    exact: bool = False,
    reconstruct: bool = True,
    max_primes: int = 24,
) -> RelationBasis:
    """Basis of the polynomials of degree <= ``degree`` vanishing at every sample."""
    vars = varset(variables)
    rows = _rows(samples, vars)
    monos = monomials(len(vars), degree)
    if len(rows) < 2 * len(monos):
        raise TooFewSamples(f"{len(rows)} samples for {len(monos)} monomials; need >= {2 * len(monos)}")
    ring = _sample_ring(rows)
    if exact:
        return _exact(rows, ring, monos, vars, degree)

    cond = _prime_condition(ring)
    pool = iter(random_primes(10 * max_primes, seed, cond))
    results = []  # (p, R, pivots)
    while len(results) < primes:
        p = next(pool)
        try:
            M = evaluation_matrix_mod_p(rows, ring, monos, p)
        except ZeroDivisionError:
            continue
        R, piv = rref_mod_p(M, p)
        log.info("prime %d: rank %d of %d", p, len(piv), len(monos))
        results.append((p, R, piv))
    dims = [len(monos) - len(piv) for _, _, piv in results]
    if len(set(dims)) != 1:
        log.warning("modular kernel dimensions disagree (%s); recomputing exactly", dims)
        rb = _exact(rows, ring, monos, vars, degree)
        rb.primes, rb.dims_per_prime = [p for p, _, _ in results], dims
        return rb
    dim = dims[0]
    rb = RelationBasis(
        degree, vars, dim, [], False, [p for p, _, _ in results], dims, len(rows), len(monos)
    )
    if dim == 0:
        rb.exact = True
        return rb
    if reconstruct:
        basis = _reconstruct(rows, ring, monos, results, pool, max_primes)
        if basis is not None:
            rb.basis = _basis_to_polys(basis, monos, QQ, vars)
            rb.exact = True
            return rb
        log.warning("rational reconstruction did not stabilise; basis given modulo %d", results[0][0])
    p, R, piv = results[0]
    K = kernel_mod_p(R, piv, len(monos), p)
    F = PrimeField(p)
    rb.basis = _basis_to_polys([[int(x) for x in row] for row in K], monos, F, vars)
    return rb


def _reconstruct(rows, ring, monos, results, pool, max_primes):
    ncols = len(monos)
    piv = results[0][2]
    use = [(p, R) for p, R, pv in results if pv == piv]
    free = [c for c in range(ncols) if c not in set(piv)]

    def combine(use):
        m = 1
        acc = None
        for p, R in use:
            entries = [int(x) for x in (-R[:, free]).ravel() % p]
            if acc is None:
                acc, m = entries, p
            else:
                acc = [crt_pair(a, m, r, p)[0] for a, r in zip(acc, entries)]
                m *= p
        out = []
        for a in acc:
            rr = rational_reconstruction(a, m)
            if rr is None:
                return None
            out.append(mpq(*rr))
        return out

    prev = combine(use)
    while len(use) < max_primes:
        p = next(pool)
        try:
            M = evaluation_matrix_mod_p(rows, ring, monos, p)
        except ZeroDivisionError:
            continue
        R, pv = rref_mod_p(M, p)
        if pv != piv:
            continue
        use.append((p, R))
        cur = combine(use)
        if cur is not None and cur == prev:
            break
        prev = cur
    else:
        return None
    # cur is indexed [pivot row][free column]
    npiv = len(piv)
    vectors = []
    for k, f in enumerate(free):
        v = [QQ.zero] * ncols
        v[f] = QQ.one
        for r in range(npiv):
            v[piv[r]] = cur[r * len(free) + k]
        vectors.append(v)
    # independent check at a fresh prime
    while True:
        p = next(pool)
        try:
            M = evaluation_matrix_mod_p(rows, ring, monos, p)
        except ZeroDivisionError:
            continue
        V = np.array([[_reduce_q(x, p) for x in v] for v in vectors], dtype=np.int64)
        prod = matmul_mod(M, V.T, p)
        return vectors if not prod.any() else None


def _exact(rows, ring, monos, vars, degree) -> RelationBasis:
    mat = []
    for r in rows:
        vals = [x.value for x in r]
        mat.append([_eval_mono(ring, vals, e) for e in monos])
    R, piv = rref_exact(mat, ring, len(monos))
    K = kernel_from_rref(R, piv, len(monos), ring)
    basis_ring = ring
    if isinstance(ring, QuadraticField) and all(not x[1] for v in K for x in v):
        K = [[x[0] for x in v] for v in K]
        basis_ring = QQ
    return RelationBasis(
        degree, vars, len(K), _basis_to_polys(K, monos, basis_ring, vars), True,
        [], [len(monos) - len(piv)], len(rows), len(monos), "exact",
    )


def _eval_mono(ring, vals, e):
    t = ring.one
    for v, k in zip(vals, e):
        if k:
            t = ring.mul(t, ring.pow(v, k))
    return t


def basis_vanishes_mod_p(basis: list[Poly], samples, p: int, ring: Ring | None = None) -> bool:
    """Check every basis polynomial at every sample modulo ``p`` (held-out check)."""
    if not basis:
        return True
    vars = basis[0].vars
    rows = _rows(samples, vars)
    ring = ring or _sample_ring(rows)
    monos = sorted({e for q in basis for e in q.terms})
    M = evaluation_matrix_mod_p(rows, ring, monos, p)
    index = {e: i for i, e in enumerate(monos)}
    bring = basis[0].ring
    V = np.zeros((len(basis), len(monos)), dtype=np.int64)
    for k, q in enumerate(basis):
        for e, c in q.terms.items():
            V[k, index[e]] = _reduce_q(c, p) if bring == QQ else int(c) % p
    return not matmul_mod(M, V.T, p).any()


# --- the degree-10 relation in a14, a17, a21, a22 -------------------------


@dataclass
class RecoveredF:
    f: Poly
    degrees: tuple[int, ...]
    total_degree: int
    relations: RelationBasis


def normalize_integral(p: Poly) -> Poly:
    """Scale to integer coefficients with content 1 and positive leading coefficient."""
    dens = [int(c.denominator) for c in p.terms.values()]
    lcm = 1
    for d in dens:
        lcm = lcm * d // gmpy2.gcd(lcm, d)
    ints = [int(c * lcm) for c in p.terms.values()]
    g = 0
    for x in ints:
        g = gmpy2.gcd(g, x)
    scale = mpq(lcm, int(g))
    if p.leading()[1].value < 0:
        scale = -scale
    return p.scale(QQ.elem(scale))


def recover_f(samples, *, degree: int = 10, primes: int = 3, seed: int = 0) -> RecoveredF:
    """The minimal-degree relation among a14, a17, a21, a22 (expected degree 10)."""
    rb = find_vanishing(samples, F_VARS, degree, primes=primes, seed=seed)
    if rb.dimension == 0:
        raise ValueError("no relation found: sampling problem")
    if rb.dimension != 1:
        raise ValueError(
            f"expected a one-dimensional space of degree-{degree} relations, got {rb.dimension}"
        )
    if not rb.exact:
        raise ValueError("could not reconstruct the relation over Q")
    f = normalize_integral(rb.basis[0])
    return RecoveredF(f, f.degrees(), f.total_degree(), rb)
