"""The five-square certificate for F and the (r, s, t, u) parametrisation."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..comb import ABCD, DegenerateWitness, Witness
from ..poly import Poly, evaluate, substitute_rational
from ..rings import QQ, RingElem

RSTU = ("r", "s", "t", "u")

F_TEXT = (
    "36*r^2*s^2*t^4 - 36*r^2*s*t^4*u + 9*r^2*t^4*u^2 - 12*r^2*s*t^2*u^3"
    " + 6*r^2*t^2*u^4 + r^2*u^6 + 9*r^2*t^2*u^2 + 9*r^2*u^4 + 9*s^2*t^2"
    " - 12*s*t^2*u + 4*t^2*u^2 + u^4"
)
Q_TEXTS = (
    "u^2",
    "-3*s*t + 2*t*u",
    "3*r*t*u",
    "3*r*u^2",
    "6*r*s*t^2 - 3*r*t^2*u - r*u^3",
)

# (numerator, denominator) over Q[a, b, c, d]
RSTU_FORMS = {
    "r": ("c", "3"),
    "s": ("a*c^2*d - 2*b*c*d", "2*a*b^2*c - b^3 + b*c^2"),
    "t": ("-3*b*d", "2*a*b*c - b^2 + c^2"),
    "u": ("-3*c*d", "2*a*b*c - b^2 + c^2"),
}

# a14, a17, a21, a22 in terms of r, s, t, u
A_FROM_RSTU = {
    "a14": ("r*(4*s^2 + t^2 - 4*s*(2*s - u) + (2*s - u)^2)", "t"),
    "a17": ("s", "1"),
    "a21": ("t", "3"),
    "a22": ("2*s - u", "1"),
}


def F_poly() -> Poly:
    return Poly.parse(F_TEXT, QQ, RSTU)


def q_polys() -> list[Poly]:
    return [Poly.parse(q, QQ, RSTU) for q in Q_TEXTS]


@dataclass
class SosReport:
    matches: bool
    exponent: int
    leading_term: str
    value_at_0001: RingElem
    exponents_tried: dict[int, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "matches": self.matches,
            "q4_exponent": self.exponent,
            "leading_term": self.leading_term,
            "F(0,0,0,1)": str(self.value_at_0001),
            "exponents_tried": {str(k): v for k, v in self.exponents_tried.items()},
        }


def sos_expansion(qs: list[Poly], last_exponent: int = 2) -> Poly:
    total = Poly.zero(QQ, RSTU)
    for i, q in enumerate(qs):
        total = total + q ** (last_exponent if i == len(qs) - 1 else 2)
    return total


def sos_verify(qs: list[Poly] | None = None) -> SosReport:
    """Compare q0^2 + ... + q3^2 + q4^e with F for e in (2, 4), term by term."""
    qs = q_polys() if qs is None else qs
    F = F_poly()
    tried = {e: sos_expansion(qs, e) == F for e in (2, 4)}
    good = [e for e, ok in tried.items() if ok]
    e, c = F.leading()
    lead = str(Poly(QQ, RSTU, {e: c.value}))
    value = evaluate(F, dict(zip(RSTU, (0, 0, 0, 1))))
    return SosReport(bool(good), good[0] if good else 0, lead, value, tried)


def _form(num: str, den: str, vars=ABCD) -> tuple[Poly, Poly]:
    return Poly.parse(num, QQ, vars), Poly.parse(den, QQ, vars)


def rstu_forms() -> dict[str, tuple[Poly, Poly]]:
    return {k: _form(*v) for k, v in RSTU_FORMS.items()}


def rstu_from_witness(w: Witness) -> dict[str, RingElem]:
    """Values of r, s, t, u at a witness (its a, b, c, d used as given)."""
    point = dict(zip(ABCD, w.abcd))
    out = {}
    for k, (num, den) in rstu_forms().items():
        n = evaluate(num.map_coeffs(w.ring, _coerce(w.ring)), point)
        d = evaluate(den.map_coeffs(w.ring, _coerce(w.ring)), point)
        if not d.is_unit():
            raise DegenerateWitness(f"denominator of {k} vanishes at this witness")
        out[k] = n / d
    return out


def _coerce(ring):
    return lambda c: ring.from_rational(int(c.numerator), int(c.denominator))


def _same_fraction(n1: Poly, d1: Poly, n2: Poly, d2: Poly) -> bool:
    return n1 * d2 == n2 * d1


@dataclass
class ParametrizationReport:
    q_identities: dict[str, bool]
    f_identity: bool

    @property
    def ok(self) -> bool:
        return all(self.q_identities.values()) and self.f_identity

    def to_json(self) -> dict:
        return {"q_identities": self.q_identities, "F_identity": self.f_identity, "pass": self.ok}


def verify_parametrization() -> ParametrizationReport:
    """q_i(rstu) = {a,b,c,d} q0(rstu) and F(rstu) = q0(rstu)^2 (a^2+b^2+c^2+d^2+1)."""
    forms = rstu_forms()
    subs = [substitute_rational(q, forms) for q in q_polys()]
    n0, d0 = subs[0]
    ids = {}
    for name, (n, d) in zip(ABCD, subs[1:]):
        x = Poly.var(QQ, ABCD, name)
        ids[f"q{'abcd'.index(name) + 1} = {name}*q0"] = _same_fraction(n, d, x * n0, d0)
    nF, dF = substitute_rational(F_poly(), forms)
    q2 = Poly.parse("a^2 + b^2 + c^2 + d^2 + 1", QQ, ABCD)
    f_ok = _same_fraction(nF, dF, n0 * n0 * q2, d0 * d0)
    return ParametrizationReport(ids, f_ok)


def f_target() -> Poly:
    """(t^2 + u^2)^2 F(r, s, t, u)."""
    t, u = (Poly.var(QQ, RSTU, v) for v in "tu")
    return (t * t + u * u) ** 2 * F_poly()


def f_substitution_ratio(f: Poly) -> RingElem | None:
    """The constant c with f(a14, a17, a21, a22)(rstu) = c (t^2+u^2)^2 F, or None.

    ``f`` must be a polynomial in a14, a17, a21, a22 (in that variable order).
    """
    forms = {k: _form(n, d, RSTU) for k, (n, d) in A_FROM_RSTU.items()}
    num, den = substitute_rational(f, forms)
    target = f_target()
    lhs = num
    rhs = target * den
    if lhs.is_zero() or rhs.is_zero():
        return None
    e, c = rhs.leading()
    if e not in lhs.terms:
        return None
    ratio = QQ.elem(lhs.terms[e] / c.value)
    return ratio if lhs == rhs.scale(ratio) else None
