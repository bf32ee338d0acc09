"""The quadratic system for degree-one completions of (X, Y, Z).

Writing rows 2 and 3 of the matrix as ``a0 X + a1 Y + a2 Z + a3`` and so
on, the condition ``det = 1 + (b0 X + b1 Y + b2 Z + b3)(X^2 + Y^2 + Z^2 - 1)``
fixes ``b0, b1, b2`` by the X^3, Y^3, Z^3 coefficients and ``b3 = 1`` by the
constant term.  The other 16 coefficients give the system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from ..comb import ANSATZ_NAMES, GAUGE, XYZ, AnsatzPoint
from ..poly import Mat3, Poly, det3, eval_raw, substitute, varset
from ..rings import QQ, Ring, RingElem

ANCHOR = "a11*a13 + a9*a15 - a3*a21 - a1*a23 - 1"
SLACK = "h*(a19^2 + a23^2 + 1) - 1"

# every XYZ monomial of degree <= 3, grlex descending
XYZ_MONOMIALS = sorted(
    (e for e in product(range(4), repeat=3) if sum(e) <= 3),
    key=lambda e: (sum(e), e),
    reverse=True,
)
_B_MONOMIALS = {(3, 0, 0): 0, (0, 3, 0): 1, (0, 0, 3): 2}


@dataclass(frozen=True)
class CofactorLine:
    b0: Poly
    b1: Poly
    b2: Poly
    b3: Poly

    def as_tuple(self) -> tuple[Poly, Poly, Poly, Poly]:
        return (self.b0, self.b1, self.b2, self.b3)


@dataclass(frozen=True)
class QuadraticSystem:
    polys: tuple[Poly, ...]
    labels: tuple[tuple[int, int, int], ...]
    cofactor: CofactorLine
    gauge: bool
    fix_a13: bool
    slack: bool
    vars: tuple[str, ...]
    free_vars: tuple[str, ...]

    def __len__(self):
        return len(self.polys)

    def evaluate(self, point: AnsatzPoint | Mapping[str, RingElem]) -> list[RingElem]:
        """Values of every polynomial at a point (ring taken from the point)."""
        if isinstance(point, AnsatzPoint):
            if self.slack and point.h is None:
                point = point.with_slack()
            point = point.as_dict()
        ring = next(iter(point.values())).ring
        vals = [ring.coerce(point[v]) if v in point else ring.zero for v in self.vars]
        return [ring.elem(eval_raw(to_ring(p, ring), vals)) for p in self.polys]

    def vanishes_at(self, point) -> bool:
        return all(v.is_zero() for v in self.evaluate(point))


def to_ring(p: Poly, ring: Ring) -> Poly:
    if ring == p.ring:
        return p
    return p.map_coeffs(ring, lambda c: ring.from_rational(int(c.numerator), int(c.denominator)))


@lru_cache(maxsize=None)
def generic_ansatz_matrix() -> Mat3:
    vars = ANSATZ_NAMES + XYZ
    X, Y, Z = (Poly.var(QQ, vars, v) for v in XYZ)
    a = [Poly.var(QQ, vars, n) for n in ANSATZ_NAMES]
    rows = [[X, Y, Z]]
    for r in range(2):
        rows.append([a[12 * r + 4 * j] * X + a[12 * r + 4 * j + 1] * Y + a[12 * r + 4 * j + 2] * Z + a[12 * r + 4 * j + 3] for j in range(3)])
    return Mat3(rows)


@lru_cache(maxsize=None)
def _raw_system() -> tuple[tuple[Poly, ...], tuple, CofactorLine]:
    det = det3(generic_ansatz_matrix())
    coeffs = det.collect(XYZ)
    zero = Poly.zero(QQ, ANSATZ_NAMES)

    def c(mono):
        return coeffs[mono].embed(ANSATZ_NAMES) if mono in coeffs else zero

    one = Poly.const(QQ, ANSATZ_NAMES, 1)
    # 1 + (b0 X + b1 Y + b2 Z + b3)(X^2+Y^2+Z^2-1) has constant term 1 - b3, and
    # the determinant has none since row 1 is (X, Y, Z).
    b = [c((3, 0, 0)), c((0, 3, 0)), c((0, 0, 3)), one - c((0, 0, 0))]
    line = CofactorLine(*b)
    polys, labels = [], []
    for mono in XYZ_MONOMIALS:
        if mono in _B_MONOMIALS or mono == (0, 0, 0):
            continue
        polys.append(c(mono) - _rhs_coefficient(mono, b, one))
        labels.append(mono)
    return tuple(polys), tuple(labels), line


def _rhs_coefficient(mono, b, one) -> Poly:
    """Coefficient of ``mono`` in 1 + (b0 X + b1 Y + b2 Z + b3)(X^2+Y^2+Z^2-1)."""
    zero = one - one
    out = zero
    lin = [((1, 0, 0), b[0]), ((0, 1, 0), b[1]), ((0, 0, 1), b[2]), ((0, 0, 0), b[3])]
    quad = [((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), 1), ((0, 0, 0), -1)]
    for e1, bl in lin:
        for e2, s in quad:
            if tuple(x + y for x, y in zip(e1, e2)) == tuple(mono):
                out = out + bl.scale(s)
    if mono == (0, 0, 0):
        out = out + one
    return out


def build_system(gauge: bool = False, fix_a13: bool = False, slack: bool = False) -> QuadraticSystem:
    polys, labels, line = _raw_system()
    names = ANSATZ_NAMES + (("h",) if slack else ())
    vars = varset(names)
    fixed: dict[str, int] = {}
    if gauge:
        fixed = {k: v for k, v in GAUGE.items() if k != "a13"}
    if fix_a13:
        fixed["a13"] = 0

    def gauge_it(p: Poly) -> Poly:
        p = p.embed(vars)
        if not fixed:
            return p
        return substitute(p, {k: Poly.const(QQ, vars, v) for k, v in fixed.items()}, target=vars)

    out = [gauge_it(p) for p in polys]
    out_labels = list(labels)
    if slack:
        out.append(Poly.parse(SLACK, QQ, vars))
        out_labels.append(("slack",))
    line = CofactorLine(*(gauge_it(p) for p in line.as_tuple()))
    free = tuple(v for v in names if v not in fixed)
    return QuadraticSystem(tuple(out), tuple(out_labels), line, gauge, fix_a13, slack, vars, free)


def anchor_polynomial(vars: Sequence[str] = ANSATZ_NAMES) -> Poly:
    return Poly.parse(ANCHOR, QQ, vars)


def anchor_membership(sys: QuadraticSystem | None = None) -> str:
    """``literal``, ``negated`` or ``absent`` for the anchor in the ungauged system."""
    sys = build_system() if sys is None else sys
    anchor = anchor_polynomial(sys.vars)
    for p in sys.polys:
        if p == anchor:
            return "literal"
        if p == -anchor:
            return "negated"
    return "absent"


def cofactor_residual(point: AnsatzPoint) -> Poly:
    """``det(M) - 1 - (b0 X + b1 Y + b2 Z + b3) q1`` at a point, as a poly in X, Y, Z."""
    ring = point.ring
    m = point.matrix()
    line = _raw_system()[2]
    vals = [v.value for v in point.values]
    bs = [ring.elem(eval_raw(to_ring(b, ring), vals)) for b in line.as_tuple()]
    X, Y, Z = (Poly.var(ring, XYZ, v) for v in XYZ)
    q1 = X * X + Y * Y + Z * Z - 1
    lin = X.scale(bs[0]) + Y.scale(bs[1]) + Z.scale(bs[2]) + bs[3]
    return det3(m) - 1 - lin * q1
