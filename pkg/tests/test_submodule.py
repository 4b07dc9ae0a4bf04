"""Submodule lattice operations, with hand-checked closed forms frozen in."""

import pytest

from functorlab.errors import ContractViolation, HomogeneityError
from functorlab.poly import Vec, parse_poly, parse_vec, quotient_ring
from functorlab.rings import PolyRing
from functorlab.submodule import (
    IdealFamily,
    Submodule,
    ideal,
    is_unit_ideal,
    submodule,
    unit_ideal,
    zero_submodule,
)


def R2(char=32003):
    return PolyRing(("x", "y"), char=char)


def test_membership_and_normal_form():
    R = R2()
    I = ideal(R, ["x^2", "x*y"])
    assert I.contains(Vec.from_poly(parse_poly(R, "x^3 + x^2*y")))
    assert not I.contains(Vec.from_poly(parse_poly(R, "y^2")))
    nf = I.normal_form(Vec.from_poly(parse_poly(R, "x^2 + y^2")))
    assert nf.to_strings(1) == ["y^2"]


def test_intersection_of_coordinate_ideals():
    R = R2()
    meet = ideal(R, ["x"]).intersect(ideal(R, ["y"]))
    assert meet.equals(ideal(R, ["x*y"]))


def test_colon_square_by_variable():
    R = R2()
    I = ideal(R, ["x^2", "x*y", "y^2"])
    quot = I.colon(ideal(R, ["x"]))
    assert quot.equals(ideal(R, ["x", "y"]))


def test_colon_of_zero_by_x_over_quotient_base():
    P = R2()
    R = quotient_ring(P, ["x^2"])
    ann = zero_submodule(R, 1, (0,)).colon([Vec.from_poly(parse_poly(R, "x"))])
    assert ann.equals(ideal(R, ["x"]))


def test_equality_is_canonical_basis_equality():
    R = R2()
    assert ideal(R, ["x + y", "y"]).equals(ideal(R, ["x", "y"]))
    assert not ideal(R, ["x"]).equals(ideal(R, ["x", "y"]))


def test_syzygies_of_two_monomials():
    R = R2()
    I = ideal(R, ["x^2", "x*y"])
    syz = I.syzygies()
    assert syz.rank == 2 and syz.twists == (2, 2)
    assert len(syz.gens) == 1
    a, b = syz.gens[0].components(2)
    assert I.gens[0].mul_poly(a) + I.gens[1].mul_poly(b) == Vec.zero(R)


def test_minimal_generators_drops_redundant():
    R = R2()
    I = ideal(R, ["x", "x^2", "y", "x + y"])
    assert len(I.minimal_generators().gens) == 2


def test_product_and_powers_through_family():
    R = R2()
    fam = IdealFamily([ideal(R, ["x"]), ideal(R, ["y"])])
    assert fam.power_product((2, 1)).equals(ideal(R, ["x^2*y"]))
    assert fam.power_product((0, 0)).equals(unit_ideal(R))
    assert fam.is_proper == (True, True)
    m2 = IdealFamily([ideal(R, ["x", "y"])])
    sq = m2.power_product((2,))
    assert sq.equals(ideal(R, ["x^2", "x*y", "y^2"]))


def test_family_apply_multiplies_target():
    R = R2()
    fam = IdealFamily([ideal(R, ["x", "y"])])
    N = submodule(R, 2, (0, 0), [["x", "0"], ["0", "1"]])
    IN = fam.apply((1,), N)
    assert IN.contains(parse_vec(R, ["x^2", "0"]))
    assert IN.contains(parse_vec(R, ["0", "y"]))
    assert not IN.contains(parse_vec(R, ["x", "0"]))


def test_unit_ideal_detection():
    R = R2()
    gens = [Vec.from_poly(parse_poly(R, s)) for s in ("x", "x + 1")]
    affine = Submodule(R, 1, (0,), gens, check=False)
    assert is_unit_ideal(affine)
    assert is_unit_ideal(ideal(R, ["3"]))
    assert not is_unit_ideal(ideal(R, ["x", "y"]))


def test_homogeneity_enforced_for_twisted_ambient():
    R = R2()
    with pytest.raises(HomogeneityError):
        submodule(R, 2, (0, 1), [["x", "x"]])
    sub = submodule(R, 2, (0, 1), [["x^2", "x"]])
    assert sub.gens[0].degree((0, 1)) == 2


def test_ambient_mismatch_is_loud():
    R = R2()
    with pytest.raises(ContractViolation):
        ideal(R, ["x"]).plus(submodule(R, 2, (0, 0), [["x", "0"]]))


def test_membership_over_quotient_uses_base_relations():
    P = R2()
    R = quotient_ring(P, ["x*y"])
    I = ideal(R, ["x"])
    assert I.contains(Vec.from_poly(parse_poly(R, "x*y")))
    J = ideal(R, ["x + y"])
    # (x+y)^2 = x^2 + y^2 in R, and x*(x+y) = x^2, y*(x+y) = y^2
    assert J.contains(Vec.from_poly(parse_poly(R, "x^2 + y^2")))
