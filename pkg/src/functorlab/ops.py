"""Flat operation layer over the kernel objects.

These are the stable call points other layers and external drivers use;
everything dispatches to Submodule / FPModule methods. normal_form insists
on a basis that was actually canonicalized: feeding it raw generators is a
contract violation, not a silent wrong answer.
"""

from __future__ import annotations

from .errors import ConfigurationError, ContractViolation
from .fpmodule import free_resolution, hom_ext_tor, minimalize
from .invariants import (
    annihilator,
    associated_primes,
    bass_number,
    betti_number,
    depth,
    depth_betti_bass,
    grade,
    injective_dimension,
    projective_dimension,
)
from .submodule import IdealFamily, Submodule


def groebner_basis(gens, order=None):
    """Canonical Groebner basis of a Submodule, flagged as such."""
    if not isinstance(gens, Submodule):
        raise ContractViolation("groebner_basis expects a Submodule")
    sub = gens
    if order is not None and order.signature() != sub.order.signature():
        sub = Submodule(sub.ring, sub.rank, sub.twists, sub.gens, order, check=False)
    return sub.canonical()


def normal_form(v, basis):
    if not isinstance(basis, Submodule) or not basis.is_groebner:
        raise ContractViolation("normal_form needs a canonicalized Groebner basis")
    return basis.normal_form(v)


def syzygies(gens):
    if not isinstance(gens, Submodule):
        raise ContractViolation("syzygies expects a Submodule")
    return gens.syzygies()


def submodule_algebra(op, *args):
    """sum | intersect | colon | product | multi_power on submodules."""
    if op == "sum":
        acc = args[0]
        for other in args[1:]:
            acc = acc.plus(other)
        return acc
    if op == "intersect":
        acc = args[0]
        for other in args[1:]:
            acc = acc.intersect(other)
        return acc
    if op == "colon":
        sub, divisor = args
        return sub.colon(divisor)
    if op == "product":
        sub, multiplier = args
        return sub.multiply_ideal(multiplier)
    if op == "multi_power":
        ideals, exponents = args
        family = ideals if isinstance(ideals, IdealFamily) else IdealFamily(ideals)
        return family.power_product(tuple(exponents))
    raise ConfigurationError("unknown submodule operation %r" % (op,))


def hilbert_function(module, degree_range):
    return module.hilbert_function(degree_range)


def length(module):
    return module.length()


def krull_dim(module):
    return module.dim()


__all__ = [
    "annihilator",
    "associated_primes",
    "bass_number",
    "betti_number",
    "depth",
    "depth_betti_bass",
    "free_resolution",
    "grade",
    "groebner_basis",
    "hilbert_function",
    "hom_ext_tor",
    "injective_dimension",
    "krull_dim",
    "length",
    "minimalize",
    "normal_form",
    "projective_dimension",
    "submodule_algebra",
    "syzygies",
]
