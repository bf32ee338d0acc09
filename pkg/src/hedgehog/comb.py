"""Explicit matrices with first row (X, Y, Z) and unit determinant on the sphere.

The four-square family below works over any field in which -1 is a sum of
four squares ``a^2+b^2+c^2+d^2 = -1``; its reduced determinant is the
constant ``s * 2a^2(a^2+d^2)(2abc-a^2+b^2)`` for a global sign ``s`` that
:func:`verify_theorem12` determines by exact division.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .poly import (
    Mat3,
    Poly,
    PolyError,
    det3,
    divide_monic,
    eval_raw,
    sphere_normal_form,
)
from .rings import QQ, QuadraticField, Ring, RingElem, RingError, make_ring

XYZ = ("X", "Y", "Z")
ABCD = ("a", "b", "c", "d")
GENERIC_VARS = ABCD + XYZ

ANSATZ_NAMES = tuple(f"a{i}" for i in range(24))
GAUGE = {"a0": 0, "a3": 0, "a12": 0, "a13": 0, "a15": 1}

_THEOREM12_ENTRIES = (
    ("X", "Y", "Z"),
    (
        "(-2*a*b*c + a^2 - b^2)*Y + (a^2*c - b^2*c + 2*a*b)*Z",
        "(a*b*c - a^2 + c^2 + 1)*X + (b*c^2 + a*c + 2*b)*Y + (-a*c^2 + b*c - 2*a)*Z - a*c*d",
        "(-a^2*c + c^3 - a*b + c)*X + (2*a*c^2 + b*c + a)*Y + (2*b*c^2 - a*c + b)*Z + a*d",
    ),
    (
        "(-a^2*b*d - b^3*d)*Z + 2*a^2*b*c - a^3 + a*b^2",
        "(a*b^2*d + b*c*d - a*d)*X + (b^2*c*d - 2*a*b*d)*Y + (-a*b*c*d + a^2*d + b^2*d)*Z"
        " - a^3*b + a*b^3 + a*b*c^2 - a^2*c",
        "(a^2*b*d + b*c^2*d - a*c*d)*X + (-a^2*d)*Y + (2*b^2*c*d - a*b*d)*Z"
        " + 2*a^2*b^2 - a*b*c + a^2",
    ),
)

CLOSED_FORM = "2*a^2*(a^2 + d^2)*(2*a*b*c - a^2 + b^2)"
Q2 = "a^2 + b^2 + c^2 + d^2 + 1"

_THEOREM13_ENTRIES = (
    ("X", "Y", "Z"),
    ("w*Y - 5*Z", "2*w*X - w*Y + 8*Z + 3", "-5*X + 5*Y + 4*w*Z + w"),
    ("-6*Z + 1", "3*w*X + w*Y + 9*Z + 1", "-7*X + Y + 5*w*Z"),
)

PROVENANCES = ("theorem12", "theorem13", "completed", "manual")


class VerificationError(AssertionError):
    """A claimed identity did not hold."""


class DegenerateWitness(ValueError):
    pass


def _parse_scalar(text: str, ring: Ring) -> RingElem:
    if isinstance(ring, QuadraticField) and ring.discriminant == -1:
        text = re.sub(r"\bi\b", "w", text)
    return Poly.parse(text, ring, ()).constant_coeff()


@dataclass(frozen=True)
class Witness:
    """``(a, b, c, d)`` with ``a^2 + b^2 + c^2 + d^2 = -1``."""

    ring: Ring
    a: RingElem
    b: RingElem
    c: RingElem
    d: RingElem

    def __post_init__(self):
        vals = []
        for name in ABCD:
            v = getattr(self, name)
            if not isinstance(v, RingElem):
                v = self.ring(v)
                object.__setattr__(self, name, v)
            elif v.ring != self.ring:
                raise RingError(f"witness entry {name} is not in {self.ring.spec}")
            vals.append(v)
        total = sum((v * v for v in vals), self.ring(0))
        if total != self.ring(-1):
            raise ValueError(f"not a witness: a^2+b^2+c^2+d^2 = {total}, expected -1")

    @classmethod
    def parse(cls, ring: Ring | str, abcd: Sequence[str] | str) -> Witness:
        """From expression strings; over Q(sqrt:-1) ``i`` may stand for ``w``."""
        if isinstance(ring, str):
            ring = make_ring(ring)
        if isinstance(abcd, str):
            abcd = abcd.split(",")
        if len(abcd) != 4:
            raise ValueError("a witness has exactly four entries")
        return cls(ring, *(_parse_scalar(s, ring) for s in abcd))

    @property
    def abcd(self) -> tuple[RingElem, RingElem, RingElem, RingElem]:
        return (self.a, self.b, self.c, self.d)

    def swapped(self) -> Witness:
        return Witness(self.ring, self.b, self.a, self.c, self.d)

    def to_json(self) -> dict:
        return {"ring": self.ring.spec, "abcd": [str(v) for v in self.abcd]}

    @classmethod
    def from_json(cls, doc: dict) -> Witness:
        return cls.parse(doc["ring"], doc["abcd"])


@dataclass(frozen=True)
class CombMatrix:
    matrix: Mat3
    provenance: str
    det_reduced: Poly
    witness: Witness | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        first = tuple(str(q) for q in self.matrix.rows[0])
        if first != XYZ:
            raise ValueError(f"first row must be (X, Y, Z), got {first}")

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def det(self) -> RingElem | None:
        """The determinant on the sphere if it is a constant, else None."""
        if self.det_reduced.is_constant():
            return self.det_reduced.constant_coeff()
        return None

    def to_json(self) -> dict:
        doc = {
            "ring": self.ring.spec,
            "vars": list(XYZ),
            "rows": self.matrix.to_strings(),
            "provenance": self.provenance,
            "det": str(self.det_reduced),
        }
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> CombMatrix:
        ring = make_ring(doc["ring"])
        if list(doc.get("vars", XYZ)) != list(XYZ):
            raise ValueError("matrix JSON must use variables X, Y, Z")
        m = Mat3.parse(doc["rows"], ring, XYZ)
        return from_matrix(m, doc.get("provenance", "manual"))


def from_matrix(m: Mat3, provenance: str = "manual", witness: Witness | None = None) -> CombMatrix:
    if m.vars != XYZ:
        m = Mat3([[q.embed(XYZ) for q in r] for r in m.rows])
    return CombMatrix(m, provenance, sphere_normal_form(det3(m)), witness)


# --- the generic four-square family -----------------------------------


@lru_cache(maxsize=None)
def generic_theorem12() -> Mat3:
    """The family over Q[a, b, c, d, X, Y, Z]."""
    return Mat3.parse(_THEOREM12_ENTRIES, QQ, GENERIC_VARS)


def _as_ring_poly(p: Poly, ring: Ring) -> Poly:
    if ring == QQ:
        return p
    return p.map_coeffs(ring, lambda c: ring.from_rational(int(c.numerator), int(c.denominator)))


@lru_cache(maxsize=32)
def _coefficient_table(ring: Ring):
    # per entry: [(XYZ exponents, coefficient polynomial in a, b, c, d over ring)]
    return [
        [[(k, _as_ring_poly(g, ring)) for k, g in q.collect(XYZ).items()] for q in row]
        for row in generic_theorem12().rows
    ]


def theorem12_entries(w: Witness) -> Mat3:
    """The family specialised at a witness, entries in X, Y, Z."""
    ring = w.ring
    vals = [v.value for v in w.abcd] + [ring.zero] * 3
    rows = []
    for trow in _coefficient_table(ring):
        out_row = []
        for groups in trow:
            terms = {}
            for key, g in groups:
                c = eval_raw(g, vals)
                if not ring.is_zero(c):
                    terms[key] = c
            out_row.append(Poly(ring, XYZ, terms))
        rows.append(out_row)
    return Mat3(rows)


def build_theorem12(w: Witness) -> CombMatrix:
    return from_matrix(theorem12_entries(w), "theorem12", w)


def det_closed_form(w: Witness) -> RingElem:
    """``2a^2(a^2+d^2)(2abc-a^2+b^2)`` evaluated at the witness, unsigned."""
    a, b, c, d = w.abcd
    return 2 * a * a * (a * a + d * d) * (2 * a * b * c - a * a + b * b)


def signed_det(w: Witness) -> RingElem:
    """The reduced determinant of :func:`build_theorem12` without building it."""
    return det_closed_form(w) * theorem12_sign()


def theorem12_residues(closed_form: str = CLOSED_FORM) -> dict[int, Poly]:
    """Remainder of ``det - s*closed_form`` modulo ``q2`` (in ``d``), per sign."""
    det = sphere_normal_form(det3(generic_theorem12()))
    closed = Poly.parse(closed_form, QQ, GENERIC_VARS)
    q2 = Poly.parse(Q2, QQ, GENERIC_VARS)
    return {s: divide_monic(det - closed.scale(s), q2, "d")[1] for s in (1, -1)}


def verify_theorem12(closed_form: str = CLOSED_FORM) -> int:
    """The unique sign ``s`` with ``det = s * closed_form`` modulo the sphere and q2."""
    res = theorem12_residues(closed_form)
    good = [s for s, r in res.items() if r.is_zero()]
    if len(good) != 1:
        raise VerificationError(
            f"expected exactly one sign to give a zero remainder, got {good or 'none'}"
        )
    return good[0]


@lru_cache(maxsize=None)
def theorem12_sign() -> int:
    return verify_theorem12()


# --- the Z[w] example, w^2 = -7 --------------------------------------


def theorem13_matrix() -> Mat3:
    return Mat3.parse(_THEOREM13_ENTRIES, make_ring("Q(sqrt:-7)"), XYZ)


def _integral(p: Poly) -> bool:
    return all(x.denominator == 1 for c in p.terms.values() for x in c)


def verify_theorem13(m: Mat3 | None = None) -> RingElem:
    """Reduced determinant of the Z[w] matrix; must be the constant 5."""
    m = theorem13_matrix() if m is None else m
    if not all(_integral(q) for r in m.rows for q in r):
        raise VerificationError("entries are not in Z[w]")
    det = sphere_normal_form(det3(m))
    if not det.is_constant():
        raise VerificationError(f"determinant is not constant: {det}")
    value = det.constant_coeff()
    if value != 5:
        raise VerificationError(f"determinant is {value}, expected 5")
    return value


def theorem13() -> CombMatrix:
    m = theorem13_matrix()
    verify_theorem13(m)
    return from_matrix(m, "theorem13")


# --- construction with the a<->b swap -------------------------------


def robust_construct(w: Witness) -> tuple[CombMatrix, RingElem, bool]:
    """A matrix with unit determinant, switching a and b if the first try vanishes."""
    for swapped, wit in ((False, w), (True, w.swapped())):
        if signed_det(wit).is_unit():
            cm = build_theorem12(wit)
            det = cm.det
            if det is None or not det.is_unit():
                raise VerificationError(f"closed form and determinant disagree at {wit.abcd}")
            return cm, det, swapped
    raise DegenerateWitness(
        f"determinant vanishes before and after swapping a, b at ({', '.join(map(str, w.abcd))})"
    )


def normalize_to_sl3(m: CombMatrix, row: int = 2) -> CombMatrix:
    """Divide row 2 or 3 (1-based) by the determinant so that it becomes 1."""
    if row not in (2, 3):
        raise ValueError("row must be 2 or 3")
    det = m.det
    if det is None or not det.is_unit():
        raise ValueError(f"determinant {m.det_reduced} is not a constant unit")
    inv = det.inverse()
    scaled = m.matrix.with_row(row - 1, [q.scale(inv) for q in m.matrix.rows[row - 1]])
    out = from_matrix(scaled, m.provenance, m.witness)
    if out.det != 1:
        raise VerificationError("normalisation did not reach determinant 1")
    return out


# --- the degree-one ansatz ------------------------------------------------


@dataclass(frozen=True)
class AnsatzPoint:
    """Coordinates ``a0..a23`` of a matrix with rows (X,Y,Z), row 2, row 3.

    Row 2 contributes a0..a11 and row 3 a12..a23, four per entry in the
    order (X, Y, Z, 1).  ``h`` is the slack value when present.
    """

    ring: Ring
    values: tuple[RingElem, ...]
    h: RingElem | None = None

    def __post_init__(self):
        if len(self.values) != 24:
            raise ValueError("an ansatz point has 24 coordinates")

    @property
    def gauge(self) -> bool:
        return all(self.values[int(k[1:])] == v for k, v in GAUGE.items())

    def __getitem__(self, name: str | int) -> RingElem:
        if isinstance(name, int):
            return self.values[name]
        if name == "h":
            if self.h is None:
                raise KeyError("no slack value")
            return self.h
        return self.values[int(name[1:])]

    def as_dict(self) -> dict[str, RingElem]:
        d = dict(zip(ANSATZ_NAMES, self.values))
        if self.h is not None:
            d["h"] = self.h
        return d

    def with_slack(self) -> AnsatzPoint:
        s = self.values[19] ** 2 + self.values[23] ** 2 + 1
        return AnsatzPoint(self.ring, self.values, s.inverse())

    def matrix(self) -> Mat3:
        rows = [[Poly.var(self.ring, XYZ, v) for v in XYZ]]
        for r in range(2):
            row = []
            for j in range(3):
                base = 12 * r + 4 * j
                cx, cy, cz, c1 = (self.values[base + t] for t in range(4))
                row.append(
                    Poly.from_dict(
                        self.ring,
                        XYZ,
                        {(1, 0, 0): cx, (0, 1, 0): cy, (0, 0, 1): cz, (0, 0, 0): c1},
                    )
                )
            rows.append(row)
        return Mat3(rows)

    def to_json(self) -> dict:
        doc = {"ring": self.ring.spec, "vars": list(ANSATZ_NAMES), "values": [str(v) for v in self.values]}
        if self.h is not None:
            doc["h"] = str(self.h)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> AnsatzPoint:
        ring = make_ring(doc["ring"])
        if list(doc.get("vars", ANSATZ_NAMES)) != list(ANSATZ_NAMES):
            raise ValueError("ansatz JSON must list a0..a23 in order")
        values = tuple(_parse_scalar(v, ring) for v in doc["values"])
        h = _parse_scalar(doc["h"], ring) if "h" in doc else None
        return cls(ring, values, h)


def ansatz_from_matrix(m: Mat3) -> AnsatzPoint:
    """Read off a0..a23 from a matrix whose lower rows have degree <= 1."""
    ring = m.ring
    vals = []
    for r in (1, 2):
        for q in m.rows[r]:
            q = q.embed(XYZ)
            if q.total_degree() > 1:
                raise PolyError(f"entry {q} has degree > 1")
            for mono in ({"X": 1}, {"Y": 1}, {"Z": 1}, {}):
                vals.append(q.coeff(mono))
    return AnsatzPoint(ring, tuple(vals))


def theorem12_to_ansatz(w: Witness) -> AnsatzPoint:
    """Scale row 2 by sigma/det and row 3 by 1/sigma, then read coordinates.

    ``sigma`` is the constant term of the (3,1) entry, so row 3 gets a15 = 1;
    the product of the two scalings is 1/det, giving determinant 1.
    """
    a, b, c, d = w.abcd
    sigma = 2 * a * a * b * c - a**3 + a * b * b
    det = signed_det(w)
    if not sigma.is_unit():
        raise DegenerateWitness("sigma = 2a^2bc - a^3 + ab^2 is not a unit")
    if not det.is_unit():
        raise DegenerateWitness("determinant is not a unit")
    m = theorem12_entries(w)
    r2 = [q.scale(sigma / det) for q in m.rows[1]]
    r3 = [q.scale(sigma.inverse()) for q in m.rows[2]]
    pt = ansatz_from_matrix(Mat3([m.rows[0], r2, r3]))
    if not pt.gauge:
        raise VerificationError("scaled matrix does not satisfy the gauge")
    return pt
