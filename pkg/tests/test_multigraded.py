"""Rees presentations, strand extraction, analytic spread, Artin-Rees.

Hand oracles: R((x,y)) has the single Koszul relation, its strand n is
(x,y)^n with n+1 generators; (x) cap (x,y)^n = x*(x,y)^(n-1) gives AR
exponent 1; (y^2) cap (x)^n = (x^n y^2) gives exponent 0; analytic spreads
of (x,y), (x), and the pair ((x),(x)) are 2, 1, 2.
"""

import pytest

from functorlab.errors import ContractViolation
from functorlab.fpmodule import FPModule
from functorlab.multigraded import (
    analytic_spread,
    artin_rees_exponent,
    graded_component,
    intersection_strand,
    rees_algebra,
    rees_module,
)
from functorlab.poly import parse_vec
from functorlab.rings import PolyRing
from functorlab.submodule import IdealFamily, ideal


R = PolyRing(("x", "y"))
MAX = IdealFamily([ideal(R, ["x", "y"])])
FREE = FPModule.free(R, (0,))


def test_rees_algebra_of_maximal_ideal():
    alg = rees_algebra(MAX)
    assert alg.r == 1
    assert alg.ay.names == ("x", "y", "y1_1", "y1_2")
    assert [alg.ay.weights[i] for i in (2, 3)] == [2, 2]
    # single Koszul relation y*Y1 - x*Y2, multidegree (1,)
    assert len(alg.q_gens) == 1
    assert alg.mdeg(next(iter(alg.q_gens[0].terms))) == (1,)


def test_rees_module_of_free_is_algebra():
    mg = rees_module(MAX, FREE)
    assert mg.gen_mdegs == ((0,),)
    assert mg.gen_adegs == (0,)
    # relations of R(R) are exactly Q
    assert len(mg.rels) == 1


def test_strands_are_ideal_powers():
    mg = rees_module(MAX, FREE)
    for n in range(5):
        comp = graded_component(mg, (n,))
        # Hilbert agrees with the honest ideal power (x,y)^n in R
        idl = MAX.power_product((n,))
        direct = FPModule(R, 1, (0,), list(idl.gens), [])
        assert comp.hilbert_equal(direct)
        assert len(comp.gens) == n + 1


def test_strand_of_principal_family():
    fam = IdealFamily([ideal(R, ["x"])])
    mg = rees_module(fam, FREE)
    comp = graded_component(mg, (2,))
    direct = FPModule(R, 1, (0,), [parse_vec(R, ["x^2"])], [])
    assert comp.hilbert_equal(direct)


def test_two_ideal_strands():
    fam = IdealFamily([ideal(R, ["x", "y^2"]), ideal(R, ["x^2", "y"])])
    mg = rees_module(fam, FREE)
    comp = graded_component(mg, (1, 1))
    prod = fam.power_product((1, 1))
    direct = FPModule(R, 1, (0,), list(prod.gens), [])
    assert comp.hilbert_equal(direct)


def test_component_of_presented_module():
    # M = R/(x): strand n of R(M) is (x,y)^n (R/(x)) = (x,y)^n/(x-part)
    m = FPModule.cyclic(R, ("x",))
    mg = rees_module(MAX, m)
    comp = graded_component(mg, (2,))
    idl = MAX.power_product((2,)).plus(ideal(R, ["x"]))
    direct = FPModule(
        R, 1, (0,), list(idl.gens), [parse_vec(R, ["x"])],
    )
    # (x,y)^2 + (x) over (x) has Hilbert function of (y^2) in k[y]
    assert comp.hilbert_equal(FPModule.subquotient(R, 1, (0,), list(idl.gens), [parse_vec(R, ["x"])]))
    assert comp.hilbert_function([0, 1, 2, 3]) == direct.hilbert_function([0, 1, 2, 3])


def test_analytic_spreads():
    assert analytic_spread(FREE, MAX) == 2
    assert analytic_spread(FREE, IdealFamily([ideal(R, ["x"])])) == 1
    two = IdealFamily([ideal(R, ["x"]), ideal(R, ["x"])])
    assert analytic_spread(FREE, two) == 2
    # spread only sees R/ann: torsion module over the line
    m = FPModule.cyclic(R, ("x^2", "x*y"))
    assert analytic_spread(m, MAX) == analytic_spread(
        FPModule.cyclic(R, ("x^2", "x*y")), MAX
    )


def test_certified_artin_rees_embedded_line():
    # N = (x) inside M = R, I = (x,y): I^n cap (x) = x I^(n-1), exponent 1
    d, verdict = artin_rees_exponent(MAX, FREE, [parse_vec(R, ["x"])])
    assert verdict == "certified"
    assert d == (1,)


def test_certified_artin_rees_transverse():
    fam = IdealFamily([ideal(R, ["x"])])
    d, verdict = artin_rees_exponent(fam, FREE, [parse_vec(R, ["y^2"])])
    assert verdict == "certified"
    assert d == (0,)


def test_certified_exponent_validates_on_window():
    sub = [parse_vec(R, ["x"])]
    d, _ = artin_rees_exponent(MAX, FREE, sub)
    w = FREE.rels_sub()
    for n in range(d[0], d[0] + 9):
        left = intersection_strand(MAX, FREE, sub, (n,))
        base = intersection_strand(MAX, FREE, sub, d)
        gap = (n - d[0],)
        assert left.equals(MAX.apply(gap, base).plus(w))


def test_empirical_matches_certified():
    sub = [parse_vec(R, ["x"])]
    d_emp, verdict = artin_rees_exponent(MAX, FREE, sub, mode="empirical", box=((1,), (6,)))
    assert verdict == "empirical"
    assert d_emp == (1,)


def test_two_ideal_artin_rees():
    fam = IdealFamily([ideal(R, ["x"]), ideal(R, ["y"])])
    d, verdict = artin_rees_exponent(fam, FREE, [parse_vec(R, ["x*y"])])
    assert verdict == "certified"
    # I1^a I2^b cap (xy) = x^a y^b ... cap (xy) needs one step in each slot
    assert d == (1, 1)
    d_emp, _ = artin_rees_exponent(
        fam, FREE, [parse_vec(R, ["x*y"])], mode="empirical", box=((0, 0), (3, 3))
    )
    assert d_emp == (1, 1)


def test_ar_pair_containment_guard():
    with pytest.raises(ContractViolation):
        artin_rees_exponent(
            MAX,
            FPModule(R, 1, (0,), [parse_vec(R, ["x"])], []),
            [parse_vec(R, ["y"])],
        )
