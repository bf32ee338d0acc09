from __future__ import annotations

from fractions import Fraction

import pytest

from hedgehog import NonUnitError, QQ, RingError, finite_field_stufe, make_ring, ring_arith, ring_eval
from hedgehog.rings import ModPrimePower, PrimeField, QuadraticField


@pytest.mark.parametrize(
    "spec, expected",
    [
        ("Q", QQ),
        ("Q(sqrt:-7)", QuadraticField(-7)),
        ("Q(sqrt:-1)", QuadraticField(-1)),
        ("Fp:101", PrimeField(101)),
        ("Z2:50", ModPrimePower(2, 50)),
    ],
)
def test_make_ring(spec, expected):
    ring = make_ring(spec)
    assert ring == expected
    assert ring.spec == spec


@pytest.mark.parametrize("spec", ["Fp:4", "Q(sqrt:4)", "Q(sqrt:1)", "Q(sqrt:0)", "Z2:0", "R", "Q(sqrt:x)"])
def test_make_ring_rejects(spec):
    with pytest.raises(RingError):
        make_ring(spec)


def test_quadratic_kind():
    assert make_ring("Q(sqrt:-7)").kind == "quadratic-extension"
    assert make_ring("Q(sqrt:-7)").discriminant == -7


def test_element_parsing():
    assert ring_eval("3/7", QQ) == Fraction(3, 7)
    assert ring_eval("w^2", make_ring("Q(sqrt:-7)")) == -7
    z8 = make_ring("Z2:3")
    assert ring_eval("5", z8).value == 5
    assert ring_eval("13", z8).value == 5


def test_quadratic_inverse_example():
    K = make_ring("Q(sqrt:-7)")
    w = K.elem(K.gen())
    assert w * (-w / 7) == 1
    assert w.inverse() == -w / 7


def test_unit_in_z2k():
    R = make_ring("Z2:50")
    five = R(5)
    assert five * five.inverse() == 1
    with pytest.raises(NonUnitError):
        R(6).inverse()
    assert R(2**50 + 3) == 3
    assert R(-1).value == 2**50 - 1


def test_large_exponent_residues():
    R = make_ring("Z2:64")
    x = R(2**63 + 1)
    assert (x * x).value == 1  # (2^63+1)^2 = 2^126 + 2^64 + 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)
    with pytest.raises(ZeroDivisionError):
        make_ring("Fp:7")(3) / 7
    K = make_ring("Q(sqrt:-1)")
    with pytest.raises(NonUnitError):
        K(0).inverse()


def test_canonical_storage():
    assert QQ(Fraction(6, -4)).value.denominator == 2
    assert QQ(Fraction(6, -4)) == Fraction(-3, 2)
    assert make_ring("Fp:7")(-1).value == 6


def test_ring_mismatch():
    with pytest.raises(RingError):
        make_ring("Fp:7")(1) + make_ring("Fp:11")(1)
    with pytest.raises(RingError):
        ring_arith("add", QQ(1), make_ring("Q(sqrt:-1)")(1))


def test_ring_arith_ops():
    a, b = QQ(Fraction(1, 2)), QQ(3)
    assert ring_arith("add", a, b) == Fraction(7, 2)
    assert ring_arith("sub", a, b) == Fraction(-5, 2)
    assert ring_arith("mul", a, b) == Fraction(3, 2)
    assert ring_arith("div", a, b) == Fraction(1, 6)
    with pytest.raises(ValueError):
        ring_arith("pow", a, b)


def test_formatting():
    K = make_ring("Q(sqrt:-1)")
    w = K.elem(K.gen())
    assert str(1 - w) == "1-w"
    assert str(Fraction(1, 2) * w) == "1/2*w"
    assert str(K(3)) == "3"


@pytest.mark.parametrize(
    "p, stufe, witness", [(5, 1, [2]), (3, 2, [1, 1]), (7, 2, [2, 3]), (2, 1, [1])]
)
def test_finite_field_stufe(p, stufe, witness):
    s, wit = finite_field_stufe(p)
    assert s == stufe
    assert [x.value for x in wit] == witness
    assert sum(x * x for x in wit) == -1


@pytest.mark.parametrize("p", [q for q in range(3, 200) if all(q % d for d in range(2, q))])
def test_stufe_brute_force(p):
    s, wit = finite_field_stufe(p)
    assert s == (1 if p % 4 == 1 else 2)
    assert sum(x * x for x in wit) == -1


def test_stufe_rejects_composite():
    with pytest.raises(RingError):
        finite_field_stufe(9)
