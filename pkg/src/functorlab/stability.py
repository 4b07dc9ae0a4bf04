"""The asymptotic-stability laboratory.

Families are either quotient families M/I^n N or strands of a multigraded
module. The lab evaluates functor expressions over integer boxes, detects
stabilization of Ass/grade/pd/id on the held-out shell, fits length tables
exactly, checks the degree bounds, and builds the (T, U, V, W, c, d)
normal form whose members must reproduce F(M/I^n N) degreewise. A normal
form that fails validation raises immediately naming the offending point;
nothing is ever refitted or patched to make a family look stable.
"""

import math
from concurrent.futures import ThreadPoolExecutor

from .errors import CapExceeded, ConfigurationError, ContractViolation, StrategyExhausted
from .fitting import fit_polynomial
from .fpmodule import FPModule, block_module
from .functors import _push_through, evaluate, evaluate_expression
from .groebner import LiftSolver
from .invariants import (
    associated_primes,
    bass_number,
    betti_number,
    depth,
    grade,
    injective_dimension,
    projective_dimension,
)
from .multigraded import analytic_spread, artin_rees_exponent, graded_component
from .poly import Vec
from .submodule import Submodule


INF = float("inf")

OBSERVABLE_NAMES = ("lambda", "ass", "grade", "betti", "bass", "pd", "id")


class FamilySpec:
    """A family of modules indexed by N^r.

    Quotient kind: members M/I^n N for a verified submodule N of M and an
    ideal family I. Component kind: members are the strands of a
    multigraded module.
    """

    __slots__ = ("kind", "module", "sub_vectors", "family", "mgmodule", "label")

    def __init__(self, kind, module=None, sub_vectors=(), family=None, mgmodule=None, label=""):
        self.kind = kind
        self.module = module
        self.sub_vectors = tuple(sub_vectors)
        self.family = family
        self.mgmodule = mgmodule
        self.label = label

    @classmethod
    def quotient(cls, module, sub_vectors, family, label=""):
        inside = module.gens_sub()
        for v in sub_vectors:
            if not inside.contains(v):
                raise ContractViolation("family submodule is not contained in the module")
        if not all(family.is_proper):
            raise ConfigurationError("family ideals must be proper")
        return cls("quotient", module=module, sub_vectors=sub_vectors, family=family, label=label)

    @classmethod
    def component(cls, mgmodule, label=""):
        return cls("component", mgmodule=mgmodule, label=label)

    @property
    def r(self):
        if self.kind == "quotient":
            return len(self.family.ideals)
        return self.mgmodule.algebra.r

    def member(self, nvec):
        if self.kind == "component":
            return graded_component(self.mgmodule, nvec)
        m = self.module
        scaled = self.family.apply(
            tuple(nvec),
            Submodule(m.ring, m.rank, m.twists, list(self.sub_vectors), m.order, check=False),
        )
        rels = list(m.rels) + [v for v in scaled.gens if v]
        return FPModule(m.ring, m.rank, m.twists, m.gens, rels, m.order, check=False)


def quotient_member(spec, nvec):
    """The family member at one exponent."""
    return spec.member(nvec)


# -- grid evaluation ---------------------------------------------------------------


def _prime_key(sub):
    return tuple(sorted(str(v.components(1)[0]) for v in sub.gens))


def _observe(module, observables, grade_ideal, i_max):
    out = {}
    if "lambda" in observables:
        out["lambda"] = module.length()
    if "ass" in observables:
        try:
            out["ass"] = sorted(_prime_key(p) for p in associated_primes(module))
        except StrategyExhausted as exc:
            out["ass"] = {"error": "strategy exhausted: %s" % exc}
    if "grade" in observables:
        if grade_ideal is None:
            raise ConfigurationError("grade observable needs an ideal")
        out["grade"] = grade(grade_ideal, module)
    if "betti" in observables or "bass" in observables:
        for i in range(i_max + 1):
            if "betti" in observables:
                out["betti_%d" % i] = betti_number(module, i)
            if "bass" in observables:
                out["bass_%d" % i] = bass_number(module, i)
    if "pd" in observables:
        try:
            out["pd"] = projective_dimension(module)
        except CapExceeded:
            out["pd"] = "cap exceeded"
    if "id" in observables:
        try:
            out["id"] = injective_dimension(module)
        except CapExceeded:
            out["id"] = "cap exceeded"
    return out


def grid_evaluate(expr, spec, box, observables, grade_ideal=None, i_max=2, jobs=1):
    """Exact per-point observable table over the box.

    expr may be None for the identity (observe the member itself). Points
    are independent; jobs > 1 fans them out to threads and the fold is by
    ascending point order either way.
    """
    bad = [o for o in observables if o not in OBSERVABLE_NAMES]
    if bad:
        raise ConfigurationError("unknown observables: %s" % ", ".join(bad))
    if box.r != spec.r:
        raise ConfigurationError("box dimension does not match the family")
    points = box.points()

    def work(p):
        member = spec.member(p)
        module = member if expr is None else evaluate_expression(expr, member)
        return p, _observe(module, observables, grade_ideal, i_max)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(work, points))
    else:
        results = dict(work(p) for p in points)
    return {p: results[p] for p in sorted(points)}


def detect_stabilization(table, box):
    """Constant-on-shell verdict; explicitly evidence-level, never a claim."""
    shell = box.shell_points()
    vals = [table.get(p) for p in shell]
    stable = bool(vals) and all(v is not None and v == vals[0] for v in vals)
    return {
        "stable": stable,
        "value": vals[0] if stable else None,
        "shell_floor": box.shell_floor(),
        "witness": shell if stable else [],
        "evidence": "evidence-level on box",
    }


def degree_bound_check(functor, module, family, fitted):
    """deg P <= max(dim F(M), spread - r), equality when dim wins strictly."""
    fm = evaluate(functor, module)
    dim_fm = fm.dim()
    spread = analytic_spread(module, family)
    r = len(family.ideals)
    bound = max(dim_fm, spread - r)
    deg = fitted.total_degree
    equality_required = dim_fm > spread - r
    holds = deg <= bound and (not equality_required or deg == bound)
    return {
        "degree": deg,
        "dim_fm": dim_fm,
        "spread": spread,
        "r": r,
        "bound": bound,
        "equality_required": equality_required,
        "verdict": "PASS" if holds else "FAIL",
    }


def grade_asymptotics(grade_ideal, expr, spec, box, jobs=1):
    """Per-point grade through the functor plus the shell verdict."""
    obs = grid_evaluate(expr, spec, box, ("grade",), grade_ideal=grade_ideal, jobs=jobs)
    table = {p: row["grade"] for p, row in obs.items()}
    return {"table": table, "verdict": detect_stabilization(table, box)}


def betti_bass_asymptotics(expr, spec, box, i_max, jobs=1):
    """Polynomial fits for each beta_i, mu^i plus pd/id shell verdicts."""
    obs = grid_evaluate(
        expr, spec, box, ("betti", "bass", "pd", "id"), i_max=i_max, jobs=jobs
    )
    if spec.kind == "quotient":
        spread = analytic_spread(spec.module, spec.family)
        bound = max(0, spread - spec.r)
    else:
        bound = None
    fits = {}
    bounds = {}
    for kind in ("betti", "bass"):
        for i in range(i_max + 1):
            name = "%s_%d" % (kind, i)
            table = {p: row[name] for p, row in obs.items()}
            fit = fit_polynomial(table, box, (bound if bound is not None else 2) + 1)
            fits[name] = fit
            if bound is not None and fit is not None:
                bounds[name] = {
                    "degree": fit.total_degree,
                    "bound": bound,
                    "verdict": "PASS" if fit.total_degree <= bound else "FAIL",
                }
    verdicts = {}
    for name, profile in (("pd", "betti"), ("id", "bass")):
        table = {p: row[name] for p, row in obs.items()}
        verdicts[name] = detect_stabilization(table, box)
        if verdicts[name]["value"] == "cap exceeded":
            base = spec.module.ring if spec.kind == "quotient" else spec.mgmodule.algebra.base
            d = depth(FPModule.free(base, (0,)))
            shell_ok = d + 1 <= i_max and all(
                obs[p].get("%s_%d" % (profile, d + 1), 0) != 0 for p in box.shell_points()
            )
            if shell_ok:
                verdicts[name]["value"] = "infinite (evidence: %s_%d != 0 on shell)" % (
                    profile, d + 1,
                )
    return {"observations": obs, "fits": fits, "bounds": bounds, "verdicts": verdicts}


def component_track(mgmodule, expr, box, observables=("lambda", "ass"), grade_ideal=None, jobs=1):
    """Strand-family track: observables, shell verdicts, and a length fit."""
    spec = FamilySpec.component(mgmodule)
    obs = grid_evaluate(expr, spec, box, observables, grade_ideal=grade_ideal, jobs=jobs)
    verdicts = {}
    fits = {}
    notes = []
    for name in observables:
        if name in ("lambda",):
            table = {p: row["lambda"] for p, row in obs.items()}
            try:
                fits["lambda"] = fit_polynomial(table, box, _component_cap(mgmodule, box))
            except ContractViolation as exc:
                fits["lambda"] = {"error": str(exc)}
                notes.append("lambda fit refused: %s" % exc)
        elif name in ("ass", "grade", "pd", "id"):
            table = {p: row[name] for p, row in obs.items()}
            verdicts[name] = detect_stabilization(table, box)
    return {"observations": obs, "verdicts": verdicts, "fits": fits, "notes": notes}


def _component_cap(mgmodule, box):
    room = min(h - box.shell - a for h, a in zip(box.hi, box.lo))
    dim_total = mgmodule.algebra.aq.nvars
    return max(0, min(dim_total, room))


# -- the eventual normal form of a functor along a family ---------------------------


class NormalForm:
    """(T, U, V, W, c, d) with member formula (U + I^{n-d}V)/I^{n-d}W.

    U, V, W are ambient generator tuples for submodules of T; provenance
    records the A_1/A_2 generators and the Artin-Rees verdicts that made
    c and d. Members are exact FPModules, validated at construction.
    """

    __slots__ = (
        "t", "u", "v", "w", "c", "d", "family", "provenance", "validated",
    )

    def __init__(self, t, u, v, w, c, d, family, provenance, validated=()):
        self.t = t
        self.u = tuple(u)
        self.v = tuple(v)
        self.w = tuple(w)
        self.c = tuple(c)
        self.d = tuple(d)
        self.family = family
        self.provenance = provenance
        self.validated = tuple(validated)

    def member_value(self, nvec):
        if any(n < e for n, e in zip(nvec, self.d)):
            raise ContractViolation("normal form only covers n >= d = %r" % (self.d,))
        gap = tuple(n - e for n, e in zip(nvec, self.d))
        ring, rank, twists = self.t.ring, self.t.rank, self.t.twists
        order = self.t.order
        iv = self.family.apply(
            gap, Submodule(ring, rank, twists, list(self.v), order, check=False)
        )
        iw = self.family.apply(
            gap, Submodule(ring, rank, twists, list(self.w), order, check=False)
        )
        gens = list(self.u) + [g for g in iv.gens if g]
        rels = list(self.t.rels) + [g for g in iw.gens if g]
        return FPModule.subquotient(ring, rank, twists, gens, rels, order)

    def u_module(self):
        return FPModule.subquotient(
            self.t.ring, self.t.rank, self.t.twists, list(self.u), list(self.t.rels),
            self.t.order,
        )


def _to_cokernel_coords(module, pres, vectors):
    helper = FPModule(
        module.ring, module.rank, module.twists, list(pres.gens), list(module.rels),
        module.order, check=False,
    )
    out = []
    for v in vectors:
        coeffs = helper.coeffs_of(v)
        if coeffs is None:
            raise ContractViolation("submodule vector lies outside the module")
        vec = Vec.from_polys(coeffs) if any(coeffs) else None
        if vec:
            out.append(vec)
    return out


def _block_vectors(vectors, blocks, width, ring):
    out = []
    for i in range(blocks):
        off = i * width
        for v in vectors:
            if v:
                out.append(Vec(ring, {(c + off, m): cf for (c, m), cf in v.terms.items()}))
    return out


def _sub(amb, gens, extra=()):
    ring = amb.ring
    vecs = [v for v in list(gens) + list(extra) if v]
    return Submodule(ring, amb.rank, amb.twists, vecs, amb.order, check=False)


def _preimage(mat, src_amb, tgt_amb, width, modulo):
    """Generators of the preimage of span(modulo) under the block push."""
    ring = src_amb.ring
    targets = []
    for idx in range(src_amb.rank):
        unit = Vec.unit(ring, idx)
        targets.append(_push_through(unit, mat, width, ring))
    solver = LiftSolver(
        ring, tgt_amb.rank, tgt_amb.twists, targets, [v for v in modulo if v]
    )
    return [v for v in solver.kernel_vectors() if v]


def normal_form(functor, module, sub_vectors, family, box, ar_mode="certified"):
    """Build and validate the stable shape of n -> F(M/I^n N).

    Follows the kernel/image bookkeeping of the lifted diagram: c comes
    from Artin-Rees on gamma*(A) meeting I^n N^{l1}, d from psi(B) meeting
    I^n N^{k1} (then raised to c componentwise), and U, V, W live in
    T = M^{k0}/phi(A_1). Every box point n >= d is checked against the
    functor value; a mismatch raises naming the point.
    """
    ring = module.ring
    r = len(family.ideals)
    diag = functor.diagram()
    pres_k, pres_l, alpha = diag.pres_k, diag.pres_l, diag.alpha
    mp = module.presentation()
    mc = FPModule.from_cokernel(ring, mp.gen_twists, list(mp.columns), module.order)
    width = mc.rank
    n_vecs = _to_cokernel_coords(module, mp, sub_vectors)
    k0, k1 = len(pres_k.gens), len(pres_k.columns)
    l0, l1 = len(pres_l.gens), len(pres_l.columns)
    if k0 == 0:
        raise ConfigurationError("zero functor has no normal form to build")
    amb_b = block_module(mc, [-t for t in pres_k.gen_twists])
    provenance = {}

    # A-side: c, A1 = ker(gamma*), A2 = preimage of I^c N^{l1}
    zero_exp = (0,) * r
    if l0 == 0:
        c = zero_exp
        provenance["c_verdict"] = "trivial: L needs no presentation"
        a1_gens, a2_gens = [], []
    else:
        amb_a = block_module(mc, [-t for t in pres_l.gen_twists])
        if l1 == 0:
            c = zero_exp
            provenance["c_verdict"] = "trivial: L is free"
            a1_gens = list(amb_a.gens)
            a2_gens = list(amb_a.gens)
        else:
            mat_l = [list(col.components(l0)) for col in pres_l.columns]
            amb_d = block_module(mc, [-s for s in pres_l.column_twists()])
            ga = _sub(amb_d, [_push_through(g, mat_l, width, ring) for g in amb_a.gens],
                      amb_d.rels)
            dprime_blocks = _block_vectors(n_vecs, l1, width, ring)
            dprime = _sub(amb_d, dprime_blocks, amb_d.rels)
            dprime_fp = FPModule.subquotient(
                ring, amb_d.rank, amb_d.twists, dprime_blocks, list(amb_d.rels), mc.order
            )
            meet = ga.intersect(dprime)
            c, cv = artin_rees_exponent(
                family, dprime_fp, list(meet.gens), mode=ar_mode, box=(box.lo, box.hi)
            )
            provenance["c_verdict"] = cv
            a1_gens = _preimage(mat_l, amb_a, amb_d, width, list(amb_d.rels))
            icd = family.apply(c, dprime)
            a2_gens = _preimage(mat_l, amb_a, amb_d, width, list(icd.gens) + list(amb_d.rels))
    phi_a1 = [w for w in (_push_through(v, alpha, width, ring) for v in a1_gens) if w]
    phi_a2 = [w for w in (_push_through(v, alpha, width, ring) for v in a2_gens) if w]

    # B-side: d from psi(B) meeting the filtration of N^{k1}
    if k1 == 0:
        d_raw = zero_exp
        provenance["d_verdict"] = "trivial: K is free"
        ker_psi = list(amb_b.gens)
        v_pre = list(amb_b.gens)
        mat_k = None
    else:
        mat_k = [list(col.components(k0)) for col in pres_k.columns]
        amb_c = block_module(mc, [-s for s in pres_k.column_twists()])
        psib = _sub(amb_c, [_push_through(g, mat_k, width, ring) for g in amb_b.gens],
                    amb_c.rels)
        cprime_blocks = _block_vectors(n_vecs, k1, width, ring)
        cprime = _sub(amb_c, cprime_blocks, amb_c.rels)
        cprime_fp = FPModule.subquotient(
            ring, amb_c.rank, amb_c.twists, cprime_blocks, list(amb_c.rels), mc.order
        )
        meet = psib.intersect(cprime)
        d_raw, dv = artin_rees_exponent(
            family, cprime_fp, list(meet.gens), mode=ar_mode, box=(box.lo, box.hi)
        )
        provenance["d_verdict"] = dv
        ker_psi = _preimage(mat_k, amb_b, amb_c, width, list(amb_c.rels))
    d = tuple(max(a, b) for a, b in zip(d_raw, c))
    if mat_k is not None:
        idc = family.apply(d, cprime)
        v_pre = _preimage(mat_k, amb_b, amb_c, width, list(idc.gens) + list(amb_c.rels))

    gap_dc = tuple(a - b for a, b in zip(d, c))
    bprime = _sub(amb_b, _block_vectors(n_vecs, k0, width, ring))
    w_parts = []
    if phi_a2:
        w_parts.extend(family.apply(gap_dc, _sub(amb_b, phi_a2)).gens)
    w_parts.extend(family.apply(d, bprime).gens)
    w_parts.extend(phi_a1)

    t_rels = list(amb_b.rels) + phi_a1
    t = FPModule.subquotient(ring, amb_b.rank, amb_b.twists, list(amb_b.gens), t_rels, mc.order)
    u_gens = [v for v in ker_psi if v]
    v_gens = [v for v in v_pre if v] + phi_a1
    w_gens = [v for v in w_parts if v]

    v_span = _sub(amb_b, v_gens, t_rels)
    for g in w_gens:
        if not v_span.contains(g):
            raise ContractViolation("W escaped V: normal form construction is wrong")

    provenance["a1_generators"] = len(a1_gens)
    provenance["a2_generators"] = len(a2_gens)

    nf = NormalForm(t, u_gens, v_gens, w_gens, c, d, family, provenance)
    if not nf.u_module().hilbert_equal(evaluate(functor, module)):
        raise ContractViolation("U does not reproduce F(M)")
    spec = FamilySpec.quotient(module, sub_vectors, family)
    checked = []
    for p in box.points():
        if any(x < e for x, e in zip(p, d)):
            continue
        direct = evaluate(functor, spec.member(p))
        shaped = nf.member_value(p)
        if not shaped.hilbert_equal(direct):
            raise ContractViolation(
                "normal form mismatch at %r: family value disagrees degreewise" % (p,)
            )
        checked.append(p)
    nf.validated = tuple(checked)
    return nf


# -- reports -------------------------------------------------------------------------


class StabilityReport:
    """Machine-readable bundle of observations, verdicts, fits and bounds."""

    __slots__ = ("label", "box", "observations", "verdicts", "fits", "bounds", "notes")

    def __init__(self, label, box, observations=None, verdicts=None, fits=None,
                 bounds=None, notes=()):
        self.label = label
        self.box = box
        self.observations = observations or {}
        self.verdicts = verdicts or {}
        self.fits = fits or {}
        self.bounds = bounds or {}
        self.notes = list(notes)

    def as_dict(self):
        def clean(v):
            if v == INF:
                return "inf"
            if v == -INF:
                return "-inf"
            if isinstance(v, float) and math.isnan(v):
                return "nan"
            if isinstance(v, dict):
                return {str(k): clean(val) for k, val in v.items()}
            if isinstance(v, (list, tuple)):
                return [clean(x) for x in v]
            return v

        fits = {}
        for name, fit in self.fits.items():
            if fit is None:
                fits[name] = {"status": "no polynomial fit on box"}
            elif isinstance(fit, dict):
                fits[name] = fit
            else:
                fits[name] = fit.as_dict()
        return {
            "label": self.label,
            "box": {"lo": list(self.box.lo), "hi": list(self.box.hi), "shell": self.box.shell},
            "observations": {
                ",".join(str(x) for x in p): clean(row)
                for p, row in sorted(self.observations.items())
            },
            "verdicts": {k: clean(v) for k, v in self.verdicts.items()},
            "fits": fits,
            "bounds": {k: clean(v) for k, v in self.bounds.items()},
            "notes": list(self.notes),
        }
