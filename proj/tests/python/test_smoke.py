from fractions import Fraction
from pathlib import Path

import pytest

import diracspace as ds

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def test_parse_kinds():
    assert ds.parse("dx1^dx2 + 3/2*x1*dx2^dx3", dim=3)["kind"] == "2-form"
    sec = ds.parse("Dx1 + x2*dx1^dx3", dim=3, p=2)
    assert sec["kind"] == "section"
    assert sec["value"] == "Dx1 + x2*dx1^dx3"
    zero = ds.parse("dx1^dx1", dim=3)
    assert zero["value"] == "0*dx1^dx2"
    assert len(zero["warnings"]) == 1


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="unknown variable"):
        ds.parse("x7", dim=3)


def test_form_calculus():
    a = ds.Form.parse("x1*x2*dx3", 3, 1)
    assert str(a.d()) == "x2*dx1^dx3 + x1*dx2^dx3"
    assert a.d().d().is_zero()
    X = ds.VField.parse("Dx1", 3)
    assert str(a.d().interior(X)) == "x2*dx3"
    e = ds.Section.parse("Dx1 + x2*dx1^dx3", 3, 2)
    sq = e.dorfman(e)
    assert sq.X.is_zero()
    assert sq.alpha == ds.Form.parse("x2*dx3", 3, 1).d()


def test_coefficients():
    assert ds.getzler_coefficient(3) == 1
    assert ds.getzler_coefficient(5) == Fraction(1, 30)
    assert ds.getzler_twist_coefficient(3) == Fraction(-1, 2)


def test_nambu_nonmaximal_presentation():
    P = ds.Presentation.parse((FIXTURES / "nambu_nonmaximal.pres").read_text())
    assert (P.kind, P.dim, P.p) == ("regular", 4, 2)
    assert P.is_isotropic() and P.is_involutive()
    records = ds.run("check-dirac", presentation=(FIXTURES / "nambu_nonmaximal.pres").read_text())
    status = {r["check"]: r["status"] for r in records}
    assert status["isotropic"] == "pass"
    assert status["nambu-maximal"] == "fail"
    assert ds.passed(records)


def test_suites_are_deterministic():
    a = ds.run("check-linfty", r=2, dim=3, arity_max=4, trials=10, seed=7)
    b = ds.run("check-linfty", r=2, dim=3, arity_max=4, trials=10, seed=7)
    assert a == b
    assert ds.passed(a)
    assert [r["arity"] for r in a] == [1, 2, 3, 4]
    bad = ds.run("check-linfty", r=2, dim=4, H="x4*dx1^dx2^dx3", allow_nonclosed=True, trials=10, seed=1)
    assert not ds.passed(bad)
