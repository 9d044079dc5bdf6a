"""Catalog constructions: orders certified against closed-form formulas."""

import pytest

from fusionsys import catalog, numth
from fusionsys.errors import CatalogError, PreconditionError
from fusionsys.perm import PermGroup, Permutation


def test_permutation_families():
    assert catalog.build("A5").order() == 60
    assert catalog.build("A13").order() == 3113510400
    assert catalog.build("S6").order() == 720
    assert catalog.build("C7").order() == 7
    assert catalog.dihedral(4).order() == 8
    assert catalog.build("M11").order() == 7920
    assert catalog.build("M12").order() == 95040


def test_bounds_enforced():
    with pytest.raises(CatalogError):
        catalog.build("A14")
    with pytest.raises(CatalogError):
        catalog.build("GL5(2)")
    with pytest.raises(CatalogError):
        catalog.build("SL3(7)")
    with pytest.raises(CatalogError):
        catalog.build("Sp8(2)")
    with pytest.raises(CatalogError):
        catalog.mathieu(22)


def test_linear_groups():
    assert catalog.build("SL2(3)").order() == 24
    assert catalog.build("SL2(9)").order() == 720
    assert catalog.build("PSL2(9)").order() == 360
    assert catalog.build("GL3(2)").order() == 168
    assert catalog.build("PSL3(2)").order() == 168
    assert catalog.build("SL3(3)").order() == numth.order_sl(3, 3)


def test_symplectic_and_unitary():
    G = catalog.build("Sp6(2)")
    assert G.order() == 1451520
    assert G.degree == 63
    assert catalog.build("PSp4(3)").order() == 25920
    assert catalog.build("PSU4(2)").order() == 25920
    assert catalog.build("SU4(2)").order() == numth.order_su(4, 2)


def test_mathieu_file_certification(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("[M11]\ndegree = 11\norder = 7921\n"
                   "(0 1 2 3 4 5 6 7 8 9 10)\n(2 6 10 7)(3 9 4 5)\n")
    with pytest.raises(CatalogError):
        catalog.build_from_file("M11", str(bad))
    good = tmp_path / "good.txt"
    good.write_text("[X]\ndegree = 3\norder = 6\n(0 1 2)\n(0 1)\n")
    assert catalog.build_from_file("X", str(good)).order() == 6


def test_direct_product():
    G = catalog.build("S3xC2")
    assert G.order() == 12
    G = catalog.build("A4xA4")
    assert G.order() == 144
    A5 = catalog.build("A5")
    triv = PermGroup([], 1)
    prod = catalog.direct_product(A5, triv)
    assert prod.order() == 60


def test_central_quotient():
    sl23 = catalog.build("SL2(3)")
    Z = PermGroup([g for g in sl23.elements() if g.order() == 2], sl23.degree)
    assert Z.order() == 2
    assert catalog.central_quotient(sl23, Z).order() == 12
    # trivial center: identity case
    A5 = catalog.build("A5")
    assert catalog.central_quotient(A5, PermGroup([], 5)) is A5
    # C4 / C2 = C2
    C4 = catalog.build("C4")
    Z2 = C4.subgroup([Permutation.parse("(0 2)(1 3)", 4)])
    assert catalog.central_quotient(C4, Z2).order() == 2
    # non-central subgroup rejected
    S3 = catalog.build("S3")
    with pytest.raises(PreconditionError):
        catalog.central_quotient(S3, S3.subgroup([Permutation.parse("(0 1)", 3)]))


def test_psu42_psp43_same_order():
    assert catalog.build("PSU4(2)").order() == catalog.build("PSp4(3)").order() == 25920


def test_wreath():
    W = catalog.wreath_cyclic(3, 3)
    assert W.order() == 3**3 * 6
    assert catalog.wreath_cyclic(2, 1).order() == 2


def test_order_formula_cross_checks():
    # built groups match the closed-form order formulas of their family
    assert catalog.build("GL2(4)").order() == numth.order_gl(2, 4)
    assert catalog.build("SL2(5)").order() == numth.order_sl(2, 5)
    assert catalog.build("Sp4(2)").order() == numth.order_sp(4, 2)
    assert catalog.build("Sp2(3)").order() == numth.order_sp(2, 3)


def test_label_roundtrip():
    for label in ["A7", "S4", "C6", "M12", "Sp6(2)", "PSU4(2)", "SL2(9)", "A4xS3"]:
        spec = catalog.parse_label(label)
        assert spec.label() == label
    with pytest.raises(CatalogError):
        catalog.parse_label("Q8")
