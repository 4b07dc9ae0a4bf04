"""Invariant corpus run by the selftest subcommand.

Every suite checks an identity the engine has no freedom about: S-vectors
of returned bases reduce to zero, syzygies annihilate their generators and
absorb brute-force strand kernels, resolutions respect the Euler identity,
Tor is balanced, the two evaluation routes agree on a seeded corpus,
Artin-Rees certificates hold on a window, and the fitter is exact. The
fault hook flips one length in the route-equivalence suite so the tripwire
itself can be demonstrated.
"""

import random
import tempfile

from .cache import Cache
from .fitting import fit_polynomial
from .fpmodule import FPModule, free_resolution, hom_ext_tor
from .functors import (
    evaluate,
    evaluate_via_diagram,
    functor_from_ext,
    functor_from_hom,
    functor_from_tensor,
    functor_from_tor,
)
from .grid import GridBox
from .groebner import make_lead_index, reduce_vec, s_vector
from .multigraded import artin_rees_exponent, intersection_strand
from .oracles import brute_kernel
from .poly import parse_poly, parse_vec
from .rings import PolyRing
from .submodule import IdealFamily, Submodule, ideal


def _ring():
    return PolyRing(("x", "y"))


def _ideal_corpus(ring):
    texts = [
        ["x", "y"],
        ["x^2", "x*y", "y^2"],
        ["x^2", "x*y"],
        ["x^3 - x*y^2", "y^3"],
        ["x^2 + y^2", "x*y"],
    ]
    return [ideal(ring, [parse_poly(ring, t) for t in batch]) for batch in texts]


def _module_corpus(ring):
    out = [FPModule.free(ring, (0,))]
    for batch in (("x",), ("x", "y"), ("x^2", "x*y", "y^2"), ("x^2", "y^3"), ("x*y",)):
        out.append(FPModule.cyclic(ring, batch))
    out.append(FPModule.from_cokernel(ring, (0, 1), [parse_vec(ring, ["x", "-1"])]))
    return out


def suite_buchberger():
    ring = _ring()
    for sub in _ideal_corpus(ring):
        gb = sub.canonical()
        bound = gb.bound
        basis = list(gb.gens)
        lead = make_lead_index(basis, bound)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                s = s_vector(basis[i], basis[j], bound, ring)
                if s is None:
                    continue
                remainder, _ = reduce_vec(s, basis, bound, lead)
                if remainder:
                    return False, "S-vector (%d, %d) did not reduce to zero" % (i, j)
    return True, "%d bases checked" % len(_ideal_corpus(ring))


def suite_syzygy():
    ring = _ring()
    cases = [
        ((0,), ["x", "y"]),
        ((0,), ["x^2", "x*y", "y^2"]),
        ((0, 0), None),
    ]
    checked = 0
    for twists, texts in cases:
        if texts is None:
            gens = [parse_vec(ring, ["x", "y"]), parse_vec(ring, ["y", "x"])]
            sub = Submodule(ring, 2, twists, gens)
        else:
            sub = Submodule(ring, 1, twists, [parse_vec(ring, [t]) for t in texts])
        syz = sub.syzygies()
        gens = list(sub.gens)
        # soundness: every syzygy column kills the generators
        for s in syz.gens:
            parts = s.components(len(gens))
            acc = None
            for g, c in zip(gens, parts):
                term = g.mul_poly(c)
                acc = term if acc is None else acc + term
            if acc:
                return False, "syzygy fails to annihilate its generators"
        # completeness: brute strand kernels reduce to zero against the basis
        src_twists = tuple(g.degree(sub.twists) for g in gens)
        degrees = range(min(src_twists), max(src_twists) + 4)
        for v in brute_kernel(ring, src_twists, gens, sub.twists, degrees):
            if not syz.contains(v):
                return False, "brute kernel vector escapes the syzygy module"
            checked += 1
    return True, "%d brute kernel vectors absorbed" % checked


def suite_euler():
    ring = _ring()
    window = range(-1, 7)
    for module in _module_corpus(ring):
        res = free_resolution(module, 6)
        acc = [0] * len(window)
        for k, frees in enumerate(res.modules):
            values = frees.hilbert_function(window)
            sign = 1 if k % 2 == 0 else -1
            acc = [a + sign * v for a, v in zip(acc, values)]
        direct = module.hilbert_function(window)
        if acc != list(direct):
            return False, "Euler identity fails for %r" % (module,)
    return True, "%d resolutions balanced" % len(_module_corpus(ring))


def suite_tor_balance():
    ring = _ring()
    corpus = _module_corpus(ring)
    rng = random.Random(20260815)
    pairs = [(rng.choice(corpus), rng.choice(corpus)) for _ in range(6)]
    for m, n in pairs:
        for i in (0, 1):
            left = hom_ext_tor(m, n, i, "tor")
            right = hom_ext_tor(n, m, i, "tor")
            if not left.hilbert_equal(right):
                return False, "Tor_%d balance fails" % i
    return True, "%d pairs balanced" % len(pairs)


def route_corpus(ring, count=25, seed=20260401):
    """Seeded (functor, argument) pairs; deterministic across runs."""
    rng = random.Random(seed)
    modules = _module_corpus(ring)
    builders = []
    for m in modules[1:4]:
        builders.append(functor_from_hom(m))
        builders.append(functor_from_tensor(m))
        builders.append(functor_from_ext(m, 1))
        builders.append(functor_from_tor(m, 1))
    pairs = []
    while len(pairs) < count:
        pairs.append((rng.choice(builders), rng.choice(modules)))
    return pairs


def suite_route_equivalence(inject_fault=False):
    ring = _ring()
    pairs = route_corpus(ring)
    lo, hi = -2, 8
    for index, (functor, argument) in enumerate(pairs):
        direct = evaluate(functor, argument)
        diagram = evaluate_via_diagram(functor, argument)
        left = list(direct.hilbert_function(range(lo, hi)))
        right = list(diagram.hilbert_function(range(lo, hi)))
        if inject_fault and index == 7:
            left[3] += 1
        if left != right:
            return False, "routes disagree on pair %d" % index
    return True, "%d pairs agree on [%d, %d)" % (len(pairs), lo, hi)


def suite_artin_rees():
    ring = _ring()
    free = FPModule.free(ring, (0,))
    cases = [
        (IdealFamily([ideal(ring, ["x", "y"])]), [parse_vec(ring, ["x"])], (1,)),
        (IdealFamily([ideal(ring, ["x"])]), [parse_vec(ring, ["y^2"])], (0,)),
    ]
    for family, sub, expected in cases:
        d, verdict = artin_rees_exponent(family, free, sub)
        if verdict != "certified" or d != expected:
            return False, "certificate %r, expected %r" % (d, expected)
        w = free.rels_sub()
        base = intersection_strand(family, free, sub, d)
        for step in range(0, 9):
            n = tuple(a + step for a in d)
            gap = tuple(a - b for a, b in zip(n, d))
            left = intersection_strand(family, free, sub, n)
            if not left.equals(family.apply(gap, base).plus(w)):
                return False, "window equality fails at %r" % (n,)
    return True, "2 certificates verified on 9-point windows"


def suite_fit_exactness():
    box = GridBox((1,), (10,), shell=2)
    table = {(n,): n * (n + 1) // 2 for n in range(1, 11)}
    fit = fit_polynomial(table, box, 2)
    if fit is None or fit.total_degree != 2:
        return False, "exact quadratic was not recovered"
    if any(fit.evaluate((n,)) != table[(n,)] for n in range(1, 11)):
        return False, "fit has nonzero residuals"
    drift = {(n,): 2 ** n for n in range(1, 11)}
    if fit_polynomial(drift, box, 3) is not None:
        return False, "non-polynomial table was not refused"
    return True, "quadratic exact, exponential refused"


def suite_cache_robustness():
    with tempfile.TemporaryDirectory() as scratch:
        cache = Cache(directory=scratch, enabled=True)
        key = cache.key("selftest", "entry")
        cache.put(key, {"value": 42})
        cache.memory.clear()
        path = cache._path(key)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("{corrupted")
        if cache.get(key) is not None:
            return False, "corrupted entry was trusted"
        if cache.corrupt != 1:
            return False, "corruption not recorded"
        cache.put(key, {"value": 42})
        cache.memory.clear()
        if cache.get(key) != {"value": 42}:
            return False, "recomputed entry not readable"
    return True, "corrupted entries recomputed, never trusted"


SUITES = (
    ("buchberger_s_vectors", suite_buchberger),
    ("syzygy_vs_brute_kernels", suite_syzygy),
    ("euler_characteristic", suite_euler),
    ("tor_balance", suite_tor_balance),
    ("route_equivalence", suite_route_equivalence),
    ("artin_rees_certificates", suite_artin_rees),
    ("fit_exactness", suite_fit_exactness),
    ("cache_robustness", suite_cache_robustness),
)


def run_selftest(inject_fault=False, emit=print):
    """Pass/fail matrix; returns 0 when green, 1 with the first failure named."""
    failures = []
    for name, suite in SUITES:
        if name == "route_equivalence":
            ok, detail = suite(inject_fault=inject_fault)
        else:
            ok, detail = suite()
        emit("%-28s %s  %s" % (name, "ok " if ok else "FAIL", detail))
        if not ok and not failures:
            failures.append((name, detail))
    if failures:
        emit("first failing invariant: %s (%s)" % failures[0])
        return 1
    emit("all suites green")
    return 0
