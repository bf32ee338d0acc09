from __future__ import annotations

import json

import pytest

from hedgehog import Mat3, Poly, make_ring
from hedgehog.comb import (
    CombMatrix,
    DegenerateWitness,
    VerificationError,
    Witness,
    AnsatzPoint,
    build_theorem12,
    det_closed_form,
    from_matrix,
    normalize_to_sl3,
    robust_construct,
    signed_det,
    theorem12_residues,
    theorem12_sign,
    theorem12_to_ansatz,
    theorem13,
    theorem13_matrix,
    verify_theorem12,
    verify_theorem13,
)
from hedgehog.search.sampling import sample_witnesses
from hedgehog.search.system import build_system

QI = "Q(sqrt:-1)"
XYZ = ("X", "Y", "Z")


def test_witness_rejects_non_witness():
    with pytest.raises(ValueError):
        Witness.parse(QI, "1,0,0,0")
    with pytest.raises(ValueError):
        Witness.parse(QI, "i,0,0")


def test_witness_parse_i_alias():
    w = Witness.parse(QI, "i,0,0,0")
    assert w.a == make_ring(QI).elem(make_ring(QI).gen())
    assert Witness.from_json(w.to_json()) == w


def test_sign_is_unique():
    s = verify_theorem12()
    assert s in (1, -1)
    res = theorem12_residues()
    assert res[s].is_zero() and not res[-s].is_zero()


def test_sign_matches_listing_convention():
    # the statement's closed form 2a^2(a^2+d^2)(2abc-a^2+b^2) carries the opposite sign
    assert theorem12_sign() == -1


def test_sign_negative_control():
    with pytest.raises(VerificationError):
        verify_theorem12("a^2*(a^2 + d^2)*(2*a*b*c - a^2 + b^2)")


def test_theorem12_at_i000():
    w = Witness.parse(QI, "i,0,0,0")
    cm = build_theorem12(w)
    K = make_ring(QI)
    want = Mat3.parse([["X", "Y", "Z"], ["-Y", "2*X - 2*w*Z", "w*Y"], ["w", "0", "-1"]], K, XYZ)
    assert cm.matrix == want
    assert det_closed_form(w) == 2
    assert cm.det == 2 * theorem12_sign()


@pytest.mark.parametrize(
    "ring, abcd, unsigned",
    [
        ("Fp:3", "1,0,0,1", 2),
        ("Q(sqrt:-7)", "w/7,1,3*w/7,2*w/7", "20/343"),
        (QI, "i,i,0,1", 0),
        (QI, "1+i,1-i,i,0", 0),
    ],
)
def test_closed_form_values(ring, abcd, unsigned):
    w = Witness.parse(ring, abcd)
    K = w.ring
    assert det_closed_form(w) == Poly.parse(str(unsigned), K, ()).constant_coeff()
    cm = build_theorem12(w)
    assert cm.det == signed_det(w)


def test_closed_form_matches_matrix_on_random_witnesses():
    for w, _ in sample_witnesses(20, QI, seed=3):
        assert build_theorem12(w).det == theorem12_sign() * det_closed_form(w)


def test_theorem13():
    assert verify_theorem13() == 5
    m = theorem13()
    assert m.det == 5
    assert normalize_to_sl3(m, 2).det == 1
    assert normalize_to_sl3(m, 3).det == 1


def test_theorem13_tamper():
    m = theorem13_matrix()
    bumped = m.with_row(2, [m.rows[2][0] + 1, *m.rows[2][1:]])
    with pytest.raises(VerificationError):
        verify_theorem13(bumped)


def test_robust_construct_no_swap():
    cm, det, swapped = robust_construct(Witness.parse(QI, "i,0,0,0"))
    assert not swapped and det == 2 * theorem12_sign()
    cm, det, swapped = robust_construct(Witness.parse("Fp:3", "1,0,0,1"))
    assert not swapped and det.is_unit()


def test_robust_construct_swap():
    w = Witness.parse(QI, "1+i,1-i,i,0")
    cm, det, swapped = robust_construct(w)
    i = make_ring(QI).elem(make_ring(QI).gen())
    assert swapped
    assert det_closed_form(w.swapped()) == -64 * i
    assert det == theorem12_sign() * (-64 * i)
    assert cm.witness == w.swapped()


def test_robust_construct_degenerate():
    with pytest.raises(DegenerateWitness):
        robust_construct(Witness.parse(QI, "i,i,0,1"))


def _odd_primes(n):
    return [p for p in range(3, n) if all(p % q for q in range(2, p))]


@pytest.mark.parametrize("p", _odd_primes(100))
def test_robust_construct_prime_fields(p):
    F = make_ring(f"Fp:{p}")
    found = 0
    for a in range(p):
        for d in range(p):
            if (a * a + d * d + 1) % p:
                continue
            w = Witness(F, a, 0, 0, d)
            try:
                cm, det, _ = robust_construct(w)
            except DegenerateWitness:
                continue
            assert det.is_unit() and cm.det == det
            found += 1
    assert found > 0


def test_normalize_rejects_singular():
    X, Y, Z = Poly.gens(make_ring("Q"), XYZ)
    m = from_matrix(Mat3([[X, Y, Z], [X, Y, Z], [Y, Z, X]]))
    with pytest.raises(ValueError):
        normalize_to_sl3(m)
    with pytest.raises(ValueError):
        normalize_to_sl3(theorem13(), row=1)


def test_normalize_theorem12():
    cm = build_theorem12(Witness.parse(QI, "i,0,0,0"))
    assert normalize_to_sl3(cm, 2).det == 1


def test_ansatz_at_i000():
    pt = theorem12_to_ansatz(Witness.parse(QI, "i,0,0,0"))
    K = make_ring(QI)
    i = K.elem(K.gen())
    s = theorem12_sign()
    nonzero = {k: v for k, v in pt.as_dict().items() if not v.is_zero()}
    # row 2 is scaled by sigma/det, so its signs follow the determinant sign
    assert nonzero == {"a1": -s * i / 2, "a4": s * i, "a6": s, "a9": -s * K(1) / 2, "a15": 1, "a23": i}
    assert pt.gauge
    assert from_matrix(pt.matrix()).det == 1


def test_ansatz_annihilates_system():
    sys_ = build_system(gauge=True)
    for _, pt in sample_witnesses(30, QI, seed=11):
        assert sys_.vanishes_at(pt)
    assert sys_.vanishes_at(theorem12_to_ansatz(Witness.parse(QI, "i,0,0,0")))


def test_ansatz_degenerate():
    with pytest.raises(DegenerateWitness):
        theorem12_to_ansatz(Witness.parse(QI, "i,i,0,1"))


def test_json_roundtrips():
    cm = build_theorem12(Witness.parse(QI, "1+i,1-i,i,0").swapped())
    doc = json.loads(json.dumps(cm.to_json()))
    back = CombMatrix.from_json(doc)
    assert back.matrix == cm.matrix and back.det == cm.det
    pt = theorem12_to_ansatz(Witness.parse(QI, "i,0,0,0"))
    assert AnsatzPoint.from_json(json.loads(json.dumps(pt.to_json()))) == pt


def test_first_row_enforced():
    X, Y, Z = Poly.gens(make_ring("Q"), XYZ)
    with pytest.raises(ValueError):
        from_matrix(Mat3([[Y, X, Z], [X, Y, Z], [Y, Z, X]]))
