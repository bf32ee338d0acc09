"""Tangent fields on the sphere and bounded-degree completion of unimodular rows."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .comb import XYZ
from .linalg import solve_exact
from .poly import Mat3, Poly, det3, evaluate, minors2, sphere_normal_form, sphere_relation
from .rings import QuadraticField, Ring, RingElem, make_ring

MAX_DEGREE_BOUND = 4


def _xyz(ring: Ring) -> tuple[Poly, Poly, Poly]:
    return Poly.gens(ring, XYZ)


def _row(row: Sequence[Poly]) -> tuple[Poly, Poly, Poly]:
    if len(row) != 3:
        raise ValueError("a row has three entries")
    return tuple(q.embed(XYZ) for q in row)


@dataclass(frozen=True)
class TangentField:
    v: tuple[Poly, Poly, Poly]
    source: tuple[Poly, Poly, Poly]

    def __post_init__(self):
        X, Y, Z = _xyz(self.v[0].ring)
        dot = X * self.v[0] + Y * self.v[1] + Z * self.v[2]
        if not sphere_normal_form(dot).is_zero():
            raise AssertionError("field is not tangent to the sphere")

    @property
    def ring(self) -> Ring:
        return self.v[0].ring

    def at(self, point) -> tuple[RingElem, RingElem, RingElem]:
        env = dict(zip(XYZ, point))
        return tuple(evaluate(q, env) for q in self.v)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.spec,
            "v": [str(q) for q in self.v],
            "source": [str(q) for q in self.source],
        }


def tangent_from_row(w_row: Sequence[Poly]) -> TangentField:
    """v = w - ((X,Y,Z).w)(X,Y,Z), reduced modulo the sphere."""
    w = _row(w_row)
    X, Y, Z = _xyz(w[0].ring)
    dot = X * w[0] + Y * w[1] + Z * w[2]
    v = tuple(sphere_normal_form(wi - dot * g) for wi, g in zip(w, (X, Y, Z)))
    return TangentField(v, w)


# --- sample points --------------------------------------------------------


def stereographic(ring: Ring, u, v) -> tuple[RingElem, RingElem, RingElem] | None:
    """(2u, 2v, u^2+v^2-1) / (u^2+v^2+1), or None when the denominator vanishes."""
    u, v = ring(u), ring(v)
    n = u * u + v * v
    den = n + 1
    if not den.is_unit():
        return None
    inv = den.inverse()
    return (2 * u * inv, 2 * v * inv, (n - 1) * inv)


def _random_scalar(ring: Ring, rng: random.Random, bound: int):
    def q():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    x = ring.from_rational(*_nd(q()))
    if isinstance(ring, QuadraticField):
        y = ring.from_rational(*_nd(q()))
        x = ring.add(x, ring.mul(y, ring.gen()))
    return ring.elem(x)


def _nd(f: Fraction) -> tuple[int, int]:
    return f.numerator, f.denominator


def sphere_points(n: int, ring: Ring | str = "Q", seed: int = 0, bound: int = 20):
    """``n`` distinct rational points on the sphere, deterministic in ``seed``."""
    if n <= 0:
        raise ValueError("need at least one point")
    if isinstance(ring, str):
        ring = make_ring(ring)
    rng = random.Random(seed)
    seen, out = set(), []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 100 * n:
            raise RuntimeError(f"only {len(out)} distinct points after {tries - 1} draws")
        pt = stereographic(ring, _random_scalar(ring, rng, bound), _random_scalar(ring, rng, bound))
        if pt is None:
            continue
        key = tuple(str(x) for x in pt)
        if key in seen:
            continue
        seen.add(key)
        out.append(pt)
    return out


def on_sphere(point) -> bool:
    x, y, z = point
    return (x * x + y * y + z * z - 1).is_zero()


@dataclass
class NonvanishingReport:
    zeros: list[tuple[int, tuple]] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.zeros

    def to_json(self) -> dict:
        return {
            "zeros": [{"point": [str(x) for x in p], "index": i} for i, p in self.zeros],
            "checked": self.checked,
        }


def check_nonvanishing(v: TangentField, points) -> NonvanishingReport:
    points = list(points)
    if not points:
        raise ValueError("empty point list")
    report = NonvanishingReport()
    for i, p in enumerate(points):
        p = tuple(v.ring(x) for x in p)
        if not on_sphere(p):
            raise ValueError(f"point {i} is not on the sphere")
        value = v.at(p)
        dot = sum((a * b for a, b in zip(value, p)), v.ring(0))
        if not dot.is_zero():
            raise AssertionError(f"field is not tangent at point {i}")
        if all(x.is_zero() for x in value):
            report.zeros.append((i, p))
        report.checked += 1
    return report


# --- completion -----------------------------------------------------------


@dataclass(frozen=True)
class CompletionCertificate:
    """Third row (m4, m5, m6) and multiplier m7 with det = 1 + m7*q1."""

    m4: Poly
    m5: Poly
    m6: Poly
    m7: Poly
    degree_bound: int = 1

    @property
    def third_row(self) -> tuple[Poly, Poly, Poly]:
        return (self.m4, self.m5, self.m6)

    def to_json(self) -> dict:
        return {
            "ring": self.m4.ring.spec,
            "third_row": [str(q) for q in self.third_row],
            "m7": str(self.m7),
            "degree_bound": self.degree_bound,
        }

    @classmethod
    def from_json(cls, doc: dict) -> CompletionCertificate:
        ring = make_ring(doc["ring"])
        m4, m5, m6 = (Poly.parse(s, ring, XYZ) for s in doc["third_row"])
        return cls(m4, m5, m6, Poly.parse(doc["m7"], ring, XYZ), doc.get("degree_bound", 1))


def _monomials(degree: int) -> list[tuple[int, int, int]]:
    out = [e for e in product(range(degree + 1), repeat=3) if sum(e) <= degree]
    return sorted(out, key=lambda e: (sum(e), e))


def complete_by_ansatz(
    m1: Poly, m2: Poly, m3: Poly, degree_bound: int = 1
) -> CompletionCertificate | None:
    """Solve m4*A - m5*B + m6*C - m7*q1 = 1 with bounded degrees, or None.

    A, B, C are the 2x2 minors of the rows (X, Y, Z) and (m1, m2, m3), so the
    left side is the determinant of the completed matrix minus m7*q1.
    """
    if not 0 <= degree_bound <= MAX_DEGREE_BOUND:
        raise ValueError(f"degree_bound must be between 0 and {MAX_DEGREE_BOUND}")
    row = _row((m1, m2, m3))
    ring = row[0].ring
    X, Y, Z = _xyz(ring)
    A, B, C = minors2((X, Y, Z), row)
    q1 = sphere_relation(ring, XYZ)
    factors = [A, -B, C, -q1]
    bounds = [degree_bound] * 3 + [degree_bound + 1]

    columns = []  # (which, monomial, product polynomial)
    for which, (f, bd) in enumerate(zip(factors, bounds)):
        for e in _monomials(bd):
            columns.append((which, e, f * Poly(ring, XYZ, {e: ring.one})))
    monos = sorted({e for _, _, p in columns for e in p.terms} | {(0, 0, 0)})
    index = {e: i for i, e in enumerate(monos)}
    Amat = [[ring.zero] * len(columns) for _ in monos]
    for j, (_, _, p) in enumerate(columns):
        for e, c in p.terms.items():
            Amat[index[e]][j] = c
    rhs = [ring.zero] * len(monos)
    rhs[index[(0, 0, 0)]] = ring.one
    x = solve_exact(Amat, rhs, ring)
    if x is None:
        return None
    parts = [{} for _ in range(4)]
    for (which, e, _), c in zip(columns, x):
        if not ring.is_zero(c):
            parts[which][e] = c
    m4, m5, m6, m7 = (Poly(ring, XYZ, t) for t in parts)
    cert = CompletionCertificate(m4, m5, m6, m7, degree_bound)
    if not verify_certificate(((X, Y, Z), row), cert):
        raise AssertionError("solved certificate does not verify")
    return cert


def verify_certificate(rows, cert: CompletionCertificate) -> bool:
    """True iff det(rows[0]; rows[1]; third row) - 1 - m7*q1 is the zero polynomial."""
    top, middle = (_row(r) for r in rows)
    m = Mat3([top, middle, cert.third_row])
    q1 = sphere_relation(m.ring, XYZ)
    return (det3(m) - 1 - cert.m7 * q1).is_zero()
