from __future__ import annotations

import json

import pytest

from hedgehog import Poly, make_ring
from hedgehog.comb import Witness, build_theorem12, normalize_to_sl3, theorem13
from hedgehog.poly import sphere_normal_form
from hedgehog.tangent import (
    CompletionCertificate,
    check_nonvanishing,
    complete_by_ansatz,
    on_sphere,
    sphere_points,
    stereographic,
    tangent_from_row,
    verify_certificate,
)

XYZ = ("X", "Y", "Z")
Q = make_ring("Q")
QI = make_ring("Q(sqrt:-1)")


def row(texts, ring=Q):
    return [Poly.parse(t, ring, XYZ) for t in texts]


def test_hedgehog_field_is_tangent():
    v = tangent_from_row(row(["Y+Z", "-X", "-X"]))
    assert list(v.v) == row(["Y+Z", "-X", "-X"])


def test_radial_field_vanishes():
    v = tangent_from_row(row(["X", "Y", "Z"]))
    assert all(q.is_zero() for q in v.v)


def test_theorem13_row_is_tangent_after_projection():
    m = theorem13().matrix
    v = tangent_from_row(m.rows[1])
    X, Y, Z = Poly.gens(m.ring, XYZ)
    assert sphere_normal_form(X * v.v[0] + Y * v.v[1] + Z * v.v[2]).is_zero()


def test_stereographic():
    assert stereographic(Q, 1, 0) == (1, 0, 0)
    assert stereographic(Q, 0, 0) == (0, 0, -1)
    i = QI.elem(QI.gen())
    assert stereographic(QI, i, 0) is None


@pytest.mark.parametrize("spec", ["Q", "Q(sqrt:-1)", "Q(sqrt:-7)"])
def test_sphere_points(spec):
    pts = sphere_points(200, spec, seed=1)
    assert len(pts) == 200 and len({tuple(map(str, p)) for p in pts}) == 200
    assert all(on_sphere(p) for p in pts)
    assert pts == sphere_points(200, spec, seed=1)


def test_sphere_points_rejects_zero():
    with pytest.raises(ValueError):
        sphere_points(0)


def test_hedgehog_field_no_zeros():
    v = tangent_from_row(row(["Y+Z", "-X", "-X"]))
    rep = check_nonvanishing(v, sphere_points(1000, "Q", seed=0))
    assert rep.ok and rep.checked == 1000


def test_zero_at_pole_reported():
    v = tangent_from_row(row(["Y", "-X", "0"]))
    rep = check_nonvanishing(v, [(1, 0, 0), (0, 0, 1), (0, 1, 0)])
    doc = rep.to_json()
    assert doc == {"zeros": [{"point": ["0", "0", "1"], "index": 1}], "checked": 3}


def test_check_errors():
    v = tangent_from_row(row(["Y", "-X", "0"]))
    with pytest.raises(ValueError):
        check_nonvanishing(v, [])
    with pytest.raises(ValueError):
        check_nonvanishing(v, [(1, 1, 0)])


def test_theorem12_row_no_zeros():
    cm = build_theorem12(Witness.parse("Q(sqrt:-1)", "i,0,0,0"))
    v = tangent_from_row(cm.matrix.rows[1])
    assert check_nonvanishing(v, sphere_points(1000, "Q(sqrt:-1)", seed=3)).ok


def test_theorem13_row_no_zeros():
    v = tangent_from_row(theorem13().matrix.rows[1])
    assert check_nonvanishing(v, sphere_points(300, "Q(sqrt:-7)", seed=3)).ok


def test_complete_stufe_two_row():
    m = row(["1", "w", "0"], QI)
    cert = complete_by_ansatz(*m, degree_bound=1)
    assert cert is not None
    assert verify_certificate([row(["X", "Y", "Z"], QI), m], cert)
    known = CompletionCertificate(*row(["0", "Z", "-w*X - Y"], QI), Poly.const(QI, XYZ, 1))
    assert verify_certificate([row(["X", "Y", "Z"], QI), m], known)


def test_wrong_multiplier_fails():
    m = row(["1", "w", "0"], QI)
    cert = complete_by_ansatz(*m, degree_bound=1)
    bad = CompletionCertificate(cert.m4, cert.m5, cert.m6, cert.m7 + 1)
    assert not verify_certificate([row(["X", "Y", "Z"], QI), m], bad)


@pytest.mark.parametrize("bound", [0, 1, 2])
def test_dependent_rows_infeasible(bound):
    assert complete_by_ansatz(*row(["X", "Y", "Z"]), degree_bound=bound) is None


def test_complete_theorem13_row():
    m = normalize_to_sl3(theorem13(), 2).matrix
    cert = complete_by_ansatz(*m.rows[1], degree_bound=1)
    assert cert is not None
    assert verify_certificate([m.rows[0], m.rows[1]], cert)


def test_degree_bound_guard():
    with pytest.raises(ValueError):
        complete_by_ansatz(*row(["1", "0", "0"]), degree_bound=5)


def test_certificate_json_roundtrip():
    cert = complete_by_ansatz(*row(["1", "w", "0"], QI), degree_bound=1)
    back = CompletionCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert back == cert
