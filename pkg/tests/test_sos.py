from __future__ import annotations

import pytest

from hedgehog import QQ, Poly, evaluate
from hedgehog.comb import ABCD, DegenerateWitness, Witness
from hedgehog.search.sampling import sample_witnesses
from hedgehog.search.sos import (
    RSTU,
    F_poly,
    q_polys,
    rstu_from_witness,
    rstu_forms,
    sos_expansion,
    sos_verify,
    verify_parametrization,
)


def test_sos_exact():
    r = sos_verify()
    assert r.matches and r.exponent == 2
    assert r.leading_term == "36*r^2*s^2*t^4"
    assert r.value_at_0001 == 1


def test_displayed_fourth_power_fails():
    assert sos_expansion(q_polys(), 4) != F_poly()
    assert sos_verify().exponents_tried == {2: True, 4: False}


def test_sos_negative_control():
    qs = q_polys()
    qs[1] = Poly.parse("-3*s*t + t*u", QQ, RSTU)
    assert not sos_verify(qs).matches


def test_F_nonnegative_on_grid():
    F = F_poly()
    for r in (-2, 0, 1):
        for s in (-1, 0, 3):
            for t in (-1, 2):
                for u in (0, 1, -3):
                    assert evaluate(F, dict(zip(RSTU, (r, s, t, u)))).value >= 0


def test_rstu_example():
    w = Witness.parse("Q(sqrt:-7)", "w/7,1,3*w/7,2*w/7")
    vals = rstu_from_witness(w)
    K = w.ring
    assert vals["r"] == K.elem(K.gen()) / 7


def test_rstu_degenerate():
    with pytest.raises(DegenerateWitness):
        rstu_from_witness(Witness.parse("Q(sqrt:-1)", "i,0,0,0"))


def test_rstu_defining_identity():
    for w, _ in sample_witnesses(40, "Q(sqrt:-1)", seed=7):
        try:
            v = rstu_from_witness(w)
        except DegenerateWitness:
            continue
        a, b, c, d = w.abcd
        assert (v["t"] * (2 * a * b * c - b * b + c * c) + 3 * b * d).is_zero()


def test_parametrization_identities():
    rep = verify_parametrization()
    assert rep.ok
    assert len(rep.q_identities) == 4


def test_F_vanishes_at_witnesses():
    F = F_poly()
    checked = 0
    for w, _ in sample_witnesses(40, "Q(sqrt:-1)", seed=8):
        try:
            v = rstu_from_witness(w)
        except DegenerateWitness:
            continue
        K = w.ring
        FK = F.map_coeffs(K, lambda c: K.from_rational(int(c.numerator), int(c.denominator)))
        assert evaluate(FK, v).is_zero()
        checked += 1
    assert checked >= 30


def test_forms_are_over_abcd():
    forms = rstu_forms()
    assert set(forms) == set(RSTU)
    assert all(n.vars == ABCD and d.vars == ABCD for n, d in forms.values())
