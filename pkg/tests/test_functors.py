"""Coherent functor builders, both evaluation routes, and expressions.

Length oracles, hand computed: Hom(R/(x), R/(x,y)^2) = ((x,y)^2:x)/(x,y)^2
= (x,y)/(x,y)^2 of length 2; R/(x) (x) R/(x,y)^3 = R/((x,y)^3+(x)) with
basis 1, y, y^2; Tor_1(R/(x), R/(x)) = (0:x) = R/(x); Tor_1(k,k) has
length 2 (first Koszul rank); the socle of R/(x,y)^2 is (x,y)/(x,y)^2.
"""

import pytest

from functorlab.errors import ConfigurationError
from functorlab.fpmodule import FPModule, hom_ext_tor
from functorlab.functors import (
    CoherentFunctor,
    FunctorExpression,
    evaluate,
    evaluate_expression,
    evaluate_via_diagram,
    functor_from_ext,
    functor_from_hom,
    functor_from_tensor,
    functor_from_tor,
    induced_map,
)
from functorlab.poly import parse_vec
from functorlab.rings import PolyRing


R = PolyRing(("x", "y"))
FREE = FPModule.free(R, (0,))
K_MOD = FPModule.cyclic(R, ("x", "y"))


def quotient(*polys):
    return FPModule.cyclic(R, polys)


def test_identity_functor_returns_argument():
    ident = functor_from_hom(FREE)
    x = quotient("x^2", "x*y", "y^2")
    out = evaluate(ident, x)
    assert out.hilbert_equal(x)
    assert out.length() == 3


def test_hom_functor_lengths():
    f = functor_from_hom(quotient("x"))
    assert evaluate(f, FREE).is_zero()
    out = evaluate(f, quotient("x^2", "x*y", "y^2"))
    assert out.length() == 2


def test_hom_of_cyclic_at_itself():
    f = functor_from_hom(quotient("x"))
    out = evaluate(f, quotient("x"))
    assert out.hilbert_function([0, 1, 2, 3]) == [1, 1, 1, 1]


def test_tensor_functor_lengths():
    f = functor_from_tensor(quotient("x"))
    out = evaluate(f, quotient("x^3", "x^2*y", "x*y^2", "y^3"))
    assert out.length() == 3
    g = functor_from_tensor(K_MOD)
    assert evaluate(g, quotient("x^2", "x*y", "y^2")).length() == 1
    assert evaluate(functor_from_tensor(FREE), quotient("x")).hilbert_equal(quotient("x"))


def test_tensor_matches_tor_zero():
    for m in (quotient("x"), K_MOD, quotient("x^2", "x*y")):
        f = functor_from_tensor(m)
        for x in (quotient("x^2", "x*y", "y^2"), quotient("y")):
            assert evaluate(f, x).hilbert_equal(hom_ext_tor(m, x, 0, "tor"))


def test_ext_functor_against_direct():
    m = quotient("x")
    f = functor_from_ext(m, 1)
    out = evaluate(f, quotient("x^3", "x^2*y", "x*y^2", "y^3"))
    assert out.length() == 3
    for x in (quotient("x^2", "x*y", "y^2"), FREE):
        assert evaluate(f, x).hilbert_equal(hom_ext_tor(m, x, 1, "ext"))


def test_tor_functor_against_direct():
    m = quotient("x")
    f = functor_from_tor(m, 1)
    out = evaluate(f, quotient("x"))
    # (0:x) in R/(x) carries the syzygy twist, so the window starts at 1
    assert out.hilbert_function([0, 1, 2, 3]) == [0, 1, 1, 1]
    assert out.hilbert_equal(quotient("x").twisted(1))
    k1 = functor_from_tor(K_MOD, 1)
    assert evaluate(k1, K_MOD).length() == 2
    for x in (quotient("x^2", "x*y", "y^2"), quotient("y")):
        assert evaluate(k1, x).hilbert_equal(hom_ext_tor(K_MOD, x, 1, "tor"))


def test_vanishing_beyond_resolution():
    # pd(R/(x)) = 1, so Ext^2 and Tor_2 must be the zero functor
    m = quotient("x")
    assert evaluate(functor_from_ext(m, 2), K_MOD).is_zero()
    assert evaluate(functor_from_tor(m, 2), K_MOD).is_zero()


def test_index_guards():
    with pytest.raises(ConfigurationError):
        functor_from_ext(K_MOD, 0)
    with pytest.raises(ConfigurationError):
        functor_from_tor(K_MOD, 0)


def corpus_functors():
    return [
        functor_from_hom(FREE),
        functor_from_hom(quotient("x")),
        functor_from_tensor(quotient("x")),
        functor_from_tensor(K_MOD),
        functor_from_ext(quotient("x"), 1),
        functor_from_ext(K_MOD, 1),
        functor_from_tor(K_MOD, 1),
        functor_from_tor(quotient("x"), 1),
    ]


def corpus_arguments():
    sub = FPModule.subquotient(
        R, 1, (0,), [parse_vec(R, ["x"]), parse_vec(R, ["y"])],
        [parse_vec(R, ["x^2"]), parse_vec(R, ["x*y"]), parse_vec(R, ["y^2"])],
    )
    return [quotient("x^2", "x*y", "y^2"), quotient("x^2", "x*y"), sub]


def test_route_equivalence_on_corpus():
    pairs = 0
    for f in corpus_functors():
        for x in corpus_arguments():
            direct = evaluate(f, x)
            diagram = evaluate_via_diagram(f, x)
            assert direct.hilbert_equal(diagram), (f.label, pairs)
            pairs += 1
    assert pairs == 24


def test_route_equivalence_ass_sets():
    from functorlab.invariants import associated_primes

    f = functor_from_hom(quotient("x"))
    x = quotient("x^2", "x*y")
    a = associated_primes(evaluate(f, x))
    b = associated_primes(evaluate_via_diagram(f, x))
    names = lambda ps: sorted(tuple(sorted(str(q) for q in p.gens)) for p in ps)
    assert names(a) == names(b)


def test_expression_socle():
    expr = FunctorExpression.compose(
        FunctorExpression.ext(K_MOD, 0), FunctorExpression.hom(FREE)
    )
    out = evaluate_expression(expr, quotient("x^2", "x*y", "y^2"))
    assert out.length() == 2


def test_expression_residue_tensor():
    expr = FunctorExpression.compose(
        FunctorExpression.tor(K_MOD, 0), FunctorExpression.hom(FREE)
    )
    for n in (2, 3):
        powers = ["x^%d" % n] + [
            "x^%d*y^%d" % (n - j, j) for j in range(1, n)
        ] + ["y^%d" % n]
        out = evaluate_expression(expr, quotient(*powers))
        assert out.length() == 1


def test_expression_identity_composition():
    ident = FunctorExpression.hom(FREE)
    inner = FunctorExpression.tensor(quotient("x"))
    x = quotient("x^2", "x*y", "y^2")
    plain = evaluate_expression(inner, x)
    wrapped = evaluate_expression(FunctorExpression.compose(ident, inner), x)
    assert plain.hilbert_equal(wrapped)
    assert evaluate_expression(inner, x, route="diagram").hilbert_equal(plain)


def test_expression_guards():
    with pytest.raises(ConfigurationError):
        FunctorExpression.compose()
    with pytest.raises(ConfigurationError):
        FunctorExpression("weird")


def test_induced_maps_compose_along_surjections():
    f = functor_from_hom(quotient("x"))
    x = quotient("x^3", "x^2*y", "x*y^2", "y^3")
    y = quotient("x^2", "x*y", "y^2")
    z = K_MOD
    fx, fy, fz = evaluate(f, x), evaluate(f, y), evaluate(f, z)
    xy = induced_map(f, fx, fy)
    yz = induced_map(f, fy, fz)
    xz = induced_map(f, fx, fz)
    two_step = yz.compose(xy)
    for j in range(len(fx.gens)):
        gap = xz.image_vec(j) - two_step.image_vec(j)
        assert fz.annihilates(gap)


def test_diagram_is_cached_and_commutes():
    f = functor_from_ext(K_MOD, 1)
    d1 = f.diagram()
    d2 = f.diagram()
    assert d1 is d2
    assert len(d1.beta) == len(d1.pres_k.columns)


def test_functor_label_and_repr():
    f = functor_from_hom(FREE, label="identity")
    assert "identity" in repr(f)
    assert isinstance(f, CoherentFunctor)
