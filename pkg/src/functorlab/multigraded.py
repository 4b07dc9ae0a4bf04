"""Multi-Rees algebras, multigraded modules, and Artin-Rees exponents.

The blowup algebra S = R[I_1 t_1, ..., I_r t_r] is presented as R[y]/Q with
one variable y_(j,k) per chosen generator f_(j,k) of I_j, carrying
multidegree e_j and internal weight deg(f) + 1 (the +1 balances the hidden
t_j, so everything stays honestly graded after t is eliminated). Q comes
from eliminating t out of the ideal (y_(j,k) - f_(j,k) t_j).

Module-level kernels are computed one level up, in R[y, t]: the coefficient
kernel of A^s -> R(M) is cut out by an elimination order pushing t first, and
the top-position module order guarantees that a kernel element whose lead is
t-free is entirely t-free, so the t-free part of the Groebner kernel is a
complete set of relations over R[y].

The certified Artin-Rees exponent of N inside M is the componentwise maximum
multidegree of a minimal generating set of ker(R(M) -> R(M/N)); the graded
Nakayama argument makes that a valid uniform exponent, with no sampling
involved. The empirical mode checks the defining equalities on a finite box
instead and is flagged as such.
"""

from __future__ import annotations

import itertools

from .errors import ConfigurationError, ContractViolation
from .fpmodule import FPModule
from .groebner import LiftSolver, eliminate_module
from .poly import (
    Poly,
    Vec,
    extend_ring,
    inject_poly,
    inject_vec,
    project_vec,
)
from .rings import PolyRing
from .submodule import Submodule


_REES_MEMO = {}


def _family_key(family):
    base = family.ideals[0].ring
    parts = [base.signature()]
    for idl in family.ideals:
        parts.append("|".join(sorted(",".join(g.to_strings(1)) for g in idl.gens)))
    return tuple(parts)


class MultigradedAlgebraPresentation:
    """S = R[It] as R[y]/Q; degree-0 strand is R itself."""

    __slots__ = (
        "family",
        "base",
        "r",
        "ay",
        "aq",
        "b_ring",
        "y_start",
        "t_start",
        "y_block",
        "y_mdegs",
        "q_gens",
        "j_gens",
    )

    def __init__(self, family, base, r, ay, aq, b_ring, y_start, t_start, y_block, q_gens, j_gens):
        self.family = family
        self.base = base
        self.r = r
        self.ay = ay
        self.aq = aq
        self.b_ring = b_ring
        self.y_start = y_start
        self.t_start = t_start
        self.y_block = y_block
        self.y_mdegs = tuple(
            tuple(1 if jj == b else 0 for jj in range(r)) for b in y_block
        )
        self.q_gens = q_gens
        self.j_gens = j_gens

    def q_ideal(self):
        return Submodule(self.aq, 1, (0,), [Vec.from_poly(q) for q in self.q_gens], check=False)

    def mdeg(self, mono):
        """Multidegree of a monomial of R[y] (x-variables count zero)."""
        out = [0] * self.r
        for v, b in enumerate(self.y_block):
            e = mono[self.y_start + v]
            if e:
                out[b] += e
        return tuple(out)

    def vec_mdeg(self, vec, gen_mdegs):
        """Common multidegree of a multihomogeneous vector."""
        seen = None
        for (c, mono) in vec.terms:
            d = tuple(
                a + b for a, b in zip(self.mdeg(mono), gen_mdegs[c])
            )
            if seen is None:
                seen = d
            elif seen != d:
                raise ContractViolation("vector is not multihomogeneous")
        return seen

    def y_monomials(self, mvec):
        """All y-monomials of the given multidegree, as full exponent tuples."""
        if any(c < 0 for c in mvec):
            return []
        block_vars = [[] for _ in range(self.r)]
        for v, b in enumerate(self.y_block):
            block_vars[b].append(v)
        choices = []
        for j in range(self.r):
            opts = []
            for combo in itertools.combinations_with_replacement(block_vars[j], mvec[j]):
                e = {}
                for v in combo:
                    e[v] = e.get(v, 0) + 1
                opts.append(e)
            if not opts:
                return []
            choices.append(opts)
        out = []
        width = self.aq.nvars
        for pick in itertools.product(*choices):
            e = [0] * width
            for part in pick:
                for v, k in part.items():
                    e[self.y_start + v] += k
            out.append(tuple(e))
        return sorted(out)

    def t_free(self, vec):
        for (_c, mono) in vec.terms:
            if any(mono[self.t_start + j] for j in range(self.r)):
                return False
        return True


def rees_algebra(family):
    """Present the multi-Rees algebra of an ideal family; memoized."""
    key = _family_key(family)
    hit = _REES_MEMO.get(key)
    if hit is not None:
        return hit
    base = family.ideals[0].ring
    if not all(family.is_proper):
        raise ContractViolation("Rees presentation needs proper ideals")
    r = len(family.ideals)
    y_names, y_weights, y_block, f_polys = [], [], [], []
    for j, idl in enumerate(family.ideals):
        for k, g in enumerate(idl.minimal_generators().gens):
            p = g.component(0)
            y_names.append("y%d_%d" % (j + 1, k + 1))
            y_weights.append(p.degree() + 1)
            y_block.append(j)
            f_polys.append(p)
    t_names = ["t%d" % (j + 1) for j in range(r)]
    clash = (set(y_names) | set(t_names)) & set(base.names)
    if clash:
        raise ConfigurationError("ring variables %s collide with Rees bookkeeping" % sorted(clash))
    ay = extend_ring(base, y_names, y_weights)
    b_ring = extend_ring(base, y_names + t_names, y_weights + [1] * r)
    y_start = base.nvars
    t_start = base.nvars + len(y_names)
    xmap = list(range(base.nvars))
    j_gens = []
    for v, p in enumerate(f_polys):
        y_var = Poly.variable(b_ring, y_names[v])
        t_var = Poly.variable(b_ring, t_names[y_block[v]])
        j_gens.append(y_var - inject_poly(p, b_ring, xmap) * t_var)
    vecs = [Vec.from_poly(g) for g in j_gens]
    _full, free = eliminate_module(
        vecs,
        ring=b_ring,
        rank=1,
        twists=(0,),
        elim_vars=list(range(t_start, t_start + r)),
    )
    bare_ay = PolyRing(ay.names, ay.char, ay.weights)
    q_gens = []
    for w in free:
        poly = w.component(0)
        kept = {m[:t_start]: c for m, c in poly.terms.items()}
        q_gens.append(Poly(bare_ay, kept))
    aq = PolyRing(ay.names, ay.char, ay.weights, tuple(ay.relations) + tuple(q_gens))
    q_over_aq = [Poly(aq, dict(q.terms)) for q in q_gens]
    alg = MultigradedAlgebraPresentation(
        family, base, r, ay, aq, b_ring, y_start, t_start, tuple(y_block), q_over_aq, j_gens
    )
    _REES_MEMO[key] = alg
    return alg


class MultigradedModule:
    """Module over the Rees presentation: generators with Z^r-degrees plus
    a relation matrix over R[y]/Q. gen_adegs carry the internal grading
    (intrinsic degree inflated by one per hidden t factor)."""

    __slots__ = ("algebra", "gen_mdegs", "gen_adegs", "rels", "label")

    def __init__(self, algebra, gen_mdegs, gen_adegs, rels, label=""):
        self.algebra = algebra
        self.gen_mdegs = tuple(tuple(m) for m in gen_mdegs)
        self.gen_adegs = tuple(gen_adegs)
        self.rels = tuple(rels)
        self.label = label
        for rel in self.rels:
            algebra.vec_mdeg(rel, self.gen_mdegs)  # multihomogeneity tripwire

    def relation_submodule(self):
        return Submodule(
            self.algebra.aq,
            len(self.gen_adegs),
            self.gen_adegs,
            list(self.rels),
            check=False,
        )

    def component(self, nvec):
        return graded_component(self, nvec)


def rees_module(family, module, label=""):
    """R(M) = sum of I^n M as a module over the Rees presentation."""
    alg = rees_algebra(family)
    if module.ring.signature() != alg.base.signature():
        raise ContractViolation("module and family live over different rings")
    b = alg.b_ring
    xmap = list(range(alg.base.nvars))
    targets = [inject_vec(g, b, xmap) for g in module.gens]
    modulo = [inject_vec(w, b, xmap) for w in module.rels]
    for q in alg.j_gens:
        for c in range(module.rank):
            modulo.append(Vec(b, {(c, m): cf for m, cf in q.terms.items()}))
    solver = LiftSolver(
        b,
        module.rank,
        module.twists,
        targets,
        modulo,
        ring_order_kind="elim",
        elim=tuple(range(alg.t_start, alg.t_start + alg.r)),
    )
    rels = [
        project_vec(k, alg.aq, list(range(alg.t_start)))
        for k in solver.kernel_vectors()
        if alg.t_free(k)
    ]
    zero = tuple(0 for _ in range(alg.r))
    return MultigradedModule(
        alg,
        [zero] * len(module.gens),
        module.gen_degrees(),
        rels,
        label=label or "rees(%s)" % (module,),
    )


def graded_component(mgmod, nvec):
    """Strand n as a finitely presented module over the base ring.

    Basis: generator i times each y-monomial of multidegree n - mdeg(i).
    Relations: all y-monomial multiples of the relation matrix and of Q
    landing in the strand. Twists are de-inflated by |n|_1, recovering the
    intrinsic grading of I^n M inside M.
    """
    alg = mgmod.algebra
    nvec = tuple(nvec)
    if len(nvec) != alg.r:
        raise ContractViolation("component index has wrong arity")
    base = alg.base
    nb = base.nvars
    total = sum(nvec)
    strand = []
    index = {}
    twists = []
    for i, mdeg_i in enumerate(mgmod.gen_mdegs):
        diff = tuple(nvec[j] - mdeg_i[j] for j in range(alg.r))
        for ym in alg.y_monomials(diff):
            index[(i, ym)] = len(strand)
            strand.append((i, ym))
            twists.append(mgmod.gen_adegs[i] + alg.aq.mono_degree(ym) - total)
    if not strand:
        return FPModule.zero(base)

    def expand(vec_terms, gen_comp=None):
        """One relation column: multiply and re-read in the strand basis."""
        cols = {}
        for (c, mono), coeff in vec_terms:
            comp = c if gen_comp is None else gen_comp
            xm = mono[:nb]
            ym = (0,) * nb + mono[nb:]
            row = index.get((comp, ym))
            if row is None:
                raise ContractViolation("strand expansion fell outside the basis")
            cols.setdefault(row, {})
            acc = cols[row]
            acc[xm] = base.add(acc.get(xm, base.zero), coeff)
        terms = {}
        for row, polyterms in cols.items():
            for xm, cf in polyterms.items():
                if cf:
                    terms[(row, xm)] = cf
        return Vec(base, terms)

    columns = []
    for rel in mgmod.rels:
        pdeg = alg.vec_mdeg(rel, mgmod.gen_mdegs)
        gap = tuple(nvec[j] - pdeg[j] for j in range(alg.r))
        for gamma in alg.y_monomials(gap):
            shifted = [
                ((c, tuple(a + b for a, b in zip(mono, gamma))), coeff)
                for (c, mono), coeff in rel.terms.items()
            ]
            col = expand(shifted)
            if col:
                columns.append(col)
    for q in alg.q_gens:
        qdeg = alg.mdeg(next(iter(q.terms)))
        for i, mdeg_i in enumerate(mgmod.gen_mdegs):
            gap = tuple(nvec[j] - mdeg_i[j] - qdeg[j] for j in range(alg.r))
            for delta in alg.y_monomials(gap):
                shifted = [
                    ((i, tuple(a + b for a, b in zip(mono, delta))), coeff)
                    for mono, coeff in q.terms.items()
                ]
                col = expand(shifted)
                if col:
                    columns.append(col)
    return FPModule.from_cokernel(base, tuple(twists), columns)


def analytic_spread(module, family):
    """Krull dimension of R(M) tensor k: the special fiber of the blowup."""
    mg = rees_module(family, module)
    alg = mg.algebra
    ycount = alg.t_start - alg.y_start
    ky = PolyRing(
        alg.aq.names[alg.y_start : alg.t_start],
        alg.base.char,
        alg.aq.weights[alg.y_start : alg.t_start],
    )
    nb = alg.base.nvars

    def kill_x(terms):
        out = {}
        for (c, mono), cf in terms:
            if any(mono[:nb]):
                continue
            out[(c, mono[nb:])] = ky.coeff(cf)
        return out

    s = len(mg.gen_adegs)
    rels = []
    for rel in mg.rels:
        v = Vec(ky, kill_x(rel.terms.items()))
        if v:
            rels.append(v)
    for q in alg.q_gens:
        for c in range(s):
            v = Vec(ky, kill_x(((c, m), cf) for m, cf in q.terms.items()))
            if v:
                rels.append(v)
    if s == 0:
        return float("-inf")
    gens = [Vec.unit(ky, c) for c in range(s)]
    fiber = FPModule(ky, s, mg.gen_adegs, gens, rels, check=False)
    return fiber.dim()


# -- Artin-Rees exponents --------------------------------------------------


def intersection_strand(family, module, sub_vectors, nvec):
    """(I^n U + W) cap (N + W) as an ambient submodule."""
    u = module.gens_sub()
    w = module.rels_sub()
    pow_u = family.apply(tuple(nvec), u).plus(w)
    n_side = Submodule(
        module.ring, module.rank, module.twists, list(sub_vectors), module.order
    ).plus(w)
    return pow_u.intersect(n_side)


def _box_points(lo, hi):
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [tuple(p) for p in itertools.product(*ranges)]


def artin_rees_exponent(family, module, sub_vectors, mode="certified", box=None):
    """Uniform d with I^n M cap N = I^(n-d) (I^d M cap N) for all n >= d.

    Returns (d, verdict). Certified mode reads d off a minimal generating
    set of ker(R(M) -> R(M/N)); empirical mode verifies the equalities on
    the supplied box and reports the smallest exponent that works there.
    """
    for v in sub_vectors:
        if not module.gens_sub().contains(v):
            raise ContractViolation("Artin-Rees pair needs N inside M")
    if mode == "certified":
        return _certified_ar(family, module, sub_vectors), "certified"
    if mode == "empirical":
        if box is None:
            raise ContractViolation("empirical mode needs a box")
        return _empirical_ar(family, module, sub_vectors, box), "empirical"
    raise ConfigurationError("unknown Artin-Rees mode %r" % (mode,))


def _certified_ar(family, module, sub_vectors):
    alg = rees_algebra(family)
    b = alg.b_ring
    xmap = list(range(alg.base.nvars))
    targets = [inject_vec(g, b, xmap) for g in module.gens]
    j_blocks = []
    for q in alg.j_gens:
        for c in range(module.rank):
            j_blocks.append(Vec(b, {(c, m): cf for m, cf in q.terms.items()}))
    w_inj = [inject_vec(w, b, xmap) for w in module.rels]
    n_inj = [inject_vec(v, b, xmap) for v in sub_vectors]
    elim = tuple(range(alg.t_start, alg.t_start + alg.r))

    def t_free_kernel(modulo):
        solver = LiftSolver(
            b, module.rank, module.twists, targets, modulo,
            ring_order_kind="elim", elim=elim,
        )
        return [
            project_vec(k, alg.aq, list(range(alg.t_start)))
            for k in solver.kernel_vectors()
            if alg.t_free(k)
        ]

    kernel_gens = t_free_kernel(w_inj + n_inj + j_blocks)
    base_rels = t_free_kernel(w_inj + j_blocks)
    s = len(module.gens)
    adegs = module.gen_degrees()
    zero = tuple(0 for _ in range(alg.r))
    candidates = sorted(
        kernel_gens,
        key=lambda v: (v.degree(adegs), sorted(str(t) for t in v.terms)),
    )
    kept = list(candidates)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1 :]
        span = Submodule(alg.aq, s, adegs, rest + base_rels, check=False)
        if span.contains(kept[i]):
            kept = rest
        else:
            i += 1
    mdegs = [alg.vec_mdeg(k, (zero,) * s) for k in kept]
    if not mdegs:
        return zero
    return tuple(max(m[j] for m in mdegs) for j in range(alg.r))


def _empirical_ar(family, module, sub_vectors, box):
    lo, hi = (tuple(box[0]), tuple(box[1]))
    r = len(family.ideals)
    if len(lo) != r or len(hi) != r:
        raise ContractViolation("box arity does not match the family")
    points = _box_points(lo, hi)
    strands = {n: intersection_strand(family, module, sub_vectors, n) for n in points}
    w = module.rels_sub()
    for d in sorted(_box_points(tuple(0 for _ in lo), hi), key=lambda t: (sum(t), t)):
        base_strand = intersection_strand(family, module, sub_vectors, d)
        good = True
        for n in points:
            if any(a < b for a, b in zip(n, d)):
                continue
            gap = tuple(a - b for a, b in zip(n, d))
            rebuilt = family.apply(gap, base_strand).plus(w)
            if not strands[n].equals(rebuilt):
                good = False
                break
        if good:
            return d
    raise ContractViolation("no exponent valid on the box; enlarge it")
