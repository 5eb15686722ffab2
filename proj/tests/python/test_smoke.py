"""End-to-end smoke tests for the python bindings."""

import pytest

import coha

ARROWLESS = "vertices: v; build: as-is; torus: trivial"
JORDAN = "vertices: v; arrow a: v -> v @ u; build: as-is; torus: trivial"
TRIPLED_JORDAN = "vertices: v; arrow a: v -> v @ u; build: triple; torus: generic"


def test_session_and_document_roundtrip():
    s = coha.Session(TRIPLED_JORDAN)
    assert s.vertices == ["v"]
    again = coha.Session(s.document)
    assert again.document == s.document


def test_shuffle_product_examples():
    s = coha.Session(ARROWLESS)
    one = s.element("1")
    z = s.element("z[1,1]")
    assert str(s.product(one, z)) == "1"
    assert str(s.product(z, one)) == "-1"
    assert s.product(one, one).is_zero()

    j = coha.Session(JORDAN)
    assert str(j.product(j.element("1"), j.element("1"))) == "2"


def test_membership_and_euler_form():
    s = coha.Session(ARROWLESS)
    z = s.element("z[1,1]")
    assert s.member(z, 3)
    assert not s.member(z, 2)
    assert s.member_recursive(z, 3)
    assert s.euler_form([1], [1]) == 1

    with pytest.raises(coha.PreconditionError):
        s.member(z, 0)


def test_non_symmetric_rejection():
    s = coha.Session(JORDAN)
    with pytest.raises(coha.PreconditionError):
        s.element("z[1,1] - z[1,2]")
    with pytest.raises(coha.DocumentParseError):
        coha.Session("vertices: v; arrow a: v -> w")


def test_bps_and_subspace_dims():
    j = coha.Session(JORDAN)
    assert j.bps_dims([2], 6) == [0] * 7
    assert j.bps_dims([1], 3) == [1, 0, 0, 0]
    assert j.subspace_dim([2], 2, 0) == 1
    assert j.subspace_dim([2], 1, 0) == 0


def test_pbw_check():
    j = coha.Session(JORDAN)
    report = j.pbw_check([2], 2, 8)
    assert report["all_pass"]
    assert any(c["dim"] > 0 for c in report["cells"])


def test_wheel_and_spherical():
    t = coha.Session(TRIPLED_JORDAN)
    assert not t.wheel_member(t.element("[3] 1"))
    prod = t.spherical([(0, 0), (0, 0), (0, 1)])
    assert not prod.is_zero()
    assert t.wheel_member(prod)


def test_conjecture_report():
    t = coha.Session(TRIPLED_JORDAN)
    rows = t.conjecture_report([2], 4, seed=7)
    assert len(rows) == 2
    for row in rows:
        assert row["total_rank"] == 1
        assert row["kac_at_one"] == 1
        assert row["verdict"] == "consistent"


def test_kac_counts():
    j = coha.Session(JORDAN)
    c2 = j.kac_counts([2], 2)
    assert (c2["classes"], c2["indecomposable"], c2["absolutely_indecomposable"]) == (6, 3, 2)
    c3 = j.kac_counts([2], 3)
    assert c3["absolutely_indecomposable"] == 3


def test_u_and_act():
    s = coha.Session(ARROWLESS)
    one = s.element("1")
    assert str(s.u_op(one)) == "z[1,1]"
    assert s.act_shift(s.element("z[1,1]")) == "z[1,1] + y[1]"


def test_polynomial_roundtrip():
    text = "-2/5*z[1,1]^2 + 1"
    assert coha.parse_polynomial_roundtrip(text) == text
