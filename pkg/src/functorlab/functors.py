"""Coherent functors presented by a module map f: K -> L.

A functor here is the cokernel F(X) = coker(Hom(L, X) -> Hom(K, X)) where
the arrow precomposes with f. Hom, tensor, Tor_i and Ext^i all arise this
way from presentation data of a fixed module, and compositions are kept as
evaluation trees rather than flattened to a single (K, L, f).

Two evaluation routes are provided. evaluate() works with the argument's
own subquotient presentation and does all bookkeeping at the level of
generator coefficients. evaluate_via_diagram() re-presents the argument as
a cokernel, lifts f to free presentations of K and L once, and computes
ker/im inside the ambient block modules. The two must agree degreewise on
every input; the lab treats a mismatch as a hard failure.
"""

import threading

from .errors import ConfigurationError, ContractViolation
from .fpmodule import (
    FPModule,
    ModuleMap,
    block_module,
    cokernel,
    free_resolution,
    kernel,
    transpose_columns,
)
from .groebner import LiftSolver
from .poly import Poly, Vec


BUILDER_NAMES = ("hom", "tensor", "tor", "ext", "compose")


class CoherentFunctor:
    """coker(h_L -> h_K) for a homogeneous map f: K -> L."""

    __slots__ = ("k", "l", "f", "label", "_diagram", "_lock")

    def __init__(self, k, l, f, label=""):
        if f.source is not k or f.target is not l:
            raise ContractViolation("presentation map must run K -> L")
        self.k = k
        self.l = l
        self.f = f
        self.label = label or "coker(h_L -> h_K)"
        self._diagram = None
        self._lock = threading.Lock()

    def diagram(self):
        # single-flight: concurrent evaluations share one lift
        if self._diagram is None:
            with self._lock:
                if self._diagram is None:
                    self._diagram = _lift_diagram(self)
        return self._diagram

    def evaluate(self, x):
        return evaluate(self, x)

    def __repr__(self):
        return "CoherentFunctor(%s)" % self.label


class LiftedDiagram:
    """Free presentations of K and L with f lifted to both levels.

    alpha is the matrix of f on presentation generators (one column per
    K-generator, entries over L-generators); beta lifts it to the relation
    level so that the presentation square commutes.
    """

    __slots__ = ("pres_k", "pres_l", "alpha", "beta")

    def __init__(self, pres_k, pres_l, alpha, beta):
        self.pres_k = pres_k
        self.pres_l = pres_l
        self.alpha = alpha
        self.beta = beta


# -- builders -------------------------------------------------------------------


def functor_from_hom(m, label=""):
    """Hom(M, -) as the coherent functor with K = M, L = 0."""
    zero = FPModule.zero(m.ring, m.order)
    return CoherentFunctor(m, zero, ModuleMap.zero_map(m, zero), label or "Hom(M,-)")


def functor_from_tensor(m, label=""):
    """M (x) - built from a cokernel presentation of M.

    With M = coker(phi: R^a -> R^b) the functor is coker applied to the
    induced X^a -> X^b, which is Hom-precomposition along the transpose of
    phi between free modules with negated twists.
    """
    ring = m.ring
    pres = m.presentation()
    k = FPModule.free(ring, tuple(-t for t in pres.gen_twists), m.order)
    l = FPModule.free(ring, tuple(-s for s in pres.column_twists()), m.order)
    mat = [list(col.components(len(pres.gens))) for col in pres.columns]
    f = ModuleMap(k, l, transpose_columns(mat, len(pres.gens)), check=False)
    return CoherentFunctor(k, l, f, label or "M(x)-")


def functor_from_ext(m, i, length_cap=None, label=""):
    """Ext^i(M, -) for i >= 1: K = coker(d_{i+1}), L = F_{i-1}, f from d_i."""
    if i < 1:
        raise ConfigurationError("ext builder needs i >= 1; use the hom builder for i = 0")
    ring = m.ring
    res = free_resolution(m, length_cap if length_cap is not None else i + 1)
    twist = res.twist_table()
    if i >= len(twist):
        return _zero_functor(ring, m.order, label or "Ext^%d(M,-)" % i)
    rels = res.maps[i].image_vecs() if i < len(res.maps) else []
    k = FPModule(ring, len(twist[i]), twist[i], _units(ring, len(twist[i])), rels, m.order, check=False)
    l = FPModule.free(ring, twist[i - 1], m.order)
    f = ModuleMap(k, l, res.maps[i - 1].columns, check=False)
    return CoherentFunctor(k, l, f, label or "Ext^%d(M,-)" % i)


def functor_from_tor(m, i, length_cap=None, label=""):
    """Tor_i(M, -) for i >= 1 via the transposed resolution.

    K = coker of the transpose of d_i over the dual of F_i, L = dual of
    F_{i+1}, f = transpose of d_{i+1}; Hom(K, X) is then ker(d_i (x) X)
    and the image of Hom(L, X) is im(d_{i+1} (x) X).
    """
    if i < 1:
        raise ConfigurationError("tor builder needs i >= 1; use the tensor builder for i = 0")
    ring = m.ring
    res = free_resolution(m, length_cap if length_cap is not None else i + 1)
    twist = res.twist_table()
    ranks = res.ranks()
    if i >= len(twist):
        return _zero_functor(ring, m.order, label or "Tor_%d(M,-)" % i)
    k_twists = tuple(-t for t in twist[i])
    d_i = [list(col) for col in res.maps[i - 1].columns]
    rel_cols = transpose_columns(d_i, ranks[i - 1])
    rels = [Vec.from_polys(col) for col in rel_cols if any(col)]
    k = FPModule(ring, ranks[i], k_twists, _units(ring, ranks[i]), rels, m.order, check=False)
    if i < len(res.maps):
        l = FPModule.free(ring, tuple(-t for t in twist[i + 1]), m.order)
        d_next = [list(col) for col in res.maps[i].columns]
        f = ModuleMap(k, l, transpose_columns(d_next, ranks[i]), check=False)
    else:
        l = FPModule.zero(ring, m.order)
        f = ModuleMap.zero_map(k, l)
    return CoherentFunctor(k, l, f, label or "Tor_%d(M,-)" % i)


def _zero_functor(ring, order, label):
    z1 = FPModule.zero(ring, order)
    z2 = FPModule.zero(ring, order)
    return CoherentFunctor(z1, z2, ModuleMap.zero_map(z1, z2), label)


def _units(ring, n):
    return [Vec.unit(ring, c) for c in range(n)]


# -- evaluation: direct route ----------------------------------------------------


def evaluate(functor, x):
    """F(X) as coker(Hom(L, X) -> Hom(K, X)), coefficient-level route."""
    hk = _hom_module(functor.k, x)
    hl = _hom_module(functor.l, x)
    if not hl.gens or not hk.gens:
        return cokernel(ModuleMap.zero_map(hl, hk))
    alpha = _alpha_matrix(functor)
    width = x.rank
    cols = []
    for u in hl.gens:
        pushed = _push_through(u, alpha, width, hk.ring)
        coeffs = hk.coeffs_of(pushed)
        if coeffs is None:
            raise ContractViolation("induced image left the Hom module")
        cols.append(coeffs)
    induced = ModuleMap(hl, hk, cols, check=False)
    return cokernel(induced)


def _hom_module(m, x):
    """Hom(M, X) as the kernel of X^{gens} -> X^{rels} over M's presentation."""
    pres = m.presentation()
    if not pres.gens:
        return FPModule.zero(x.ring, x.order)
    amb = block_module(x, [-t for t in pres.gen_twists])
    if not pres.columns:
        return amb
    tgt = block_module(x, [-s for s in pres.column_twists()])
    mat = [list(col.components(len(pres.gens))) for col in pres.columns]
    bmap = _block_map_transposed(mat, x, amb, tgt, len(pres.columns))
    return kernel(bmap)


def _block_map_transposed(mat, x, src, tgt, tgt_blocks):
    """Block map whose (j, i) block multiplies by mat[j][i] (relation j, gen i)."""
    zero = Poly.zero(x.ring)
    gcount = len(x.gens)
    cols = []
    for i in range(len(mat[0]) if mat else 0):
        for g in range(gcount):
            col = [zero] * (tgt_blocks * gcount)
            for j in range(tgt_blocks):
                entry = mat[j][i]
                if entry:
                    col[j * gcount + g] = entry
            cols.append(col)
    return ModuleMap(src, tgt, cols, check=False)


def _alpha_matrix(functor):
    """Matrix of f on presentation generators: columns over K-gens, rows over L-gens."""
    pres_k = functor.k.presentation()
    pres_l = functor.l.presentation()
    lookup = {id(g): j for j, g in enumerate(functor.k.gens)}
    lp = FPModule(
        functor.l.ring,
        functor.l.rank,
        functor.l.twists,
        list(pres_l.gens),
        list(functor.l.rels),
        functor.l.order,
        check=False,
    )
    cols = []
    for g in pres_k.gens:
        img = functor.f.image_vec(lookup[id(g)])
        if not img:
            cols.append([Poly.zero(functor.l.ring) for _ in pres_l.gens])
            continue
        coeffs = lp.coeffs_of(img)
        if coeffs is None:
            raise ContractViolation("map image is not expressible in the presentation")
        cols.append(coeffs)
    return cols


def _push_through(u, alpha, width, ring):
    """Push a block vector over L-gens to one over K-gens along alpha transposed."""
    nblocks = len(alpha[0]) if alpha else 0
    parts = [dict() for _ in range(nblocks)]
    for (row, mono), cf in u.terms.items():
        i, r = divmod(row, width)
        parts[i][(r, mono)] = cf
    slices = [Vec(ring, d) for d in parts]
    acc = {}
    for j, col in enumerate(alpha):
        off = j * width
        for i, entry in enumerate(col):
            if not entry or not slices[i]:
                continue
            for (r, mono), cf in slices[i].mul_poly(entry).terms.items():
                key = (r + off, mono)
                val = (acc.get(key, 0) + cf) % ring.char
                if val:
                    acc[key] = val
                else:
                    acc.pop(key, None)
    return Vec(ring, acc)


def induced_map(functor, fx, fy):
    """F applied to a canonical surjection X -> Y = X/extra.

    fx and fy must come from evaluate() on modules sharing one ambient,
    with Y's relations containing X's; the Hom blocks then coincide and
    the induced map just re-expresses the F(X) generators inside F(Y).
    """
    if fx.rank != fy.rank or fx.twists != fy.twists:
        raise ContractViolation("induced map needs a shared Hom ambient")
    cols = []
    for g in fx.gens:
        coeffs = fy.coeffs_of(g)
        if coeffs is None:
            raise ContractViolation("generator image lies outside the target value")
        cols.append(coeffs)
    return ModuleMap(fx, fy, cols, check=False)


# -- evaluation: lifted-diagram route ---------------------------------------------


def _lift_diagram(functor):
    pres_k = functor.k.presentation()
    pres_l = functor.l.presentation()
    alpha = _alpha_matrix(functor)
    beta = []
    if pres_k.columns:
        gl = len(pres_l.gens)
        solver = None
        for ck in pres_k.columns:
            pushed = _apply_matrix(alpha, ck, len(pres_k.gens), gl, functor.l.ring)
            if not pushed:
                beta.append([Poly.zero(functor.l.ring) for _ in pres_l.columns])
                continue
            if solver is None:
                # zero targets still absorb base-ring relations: lift stays exact
                solver = LiftSolver(
                    functor.l.ring, gl, pres_l.gen_twists, list(pres_l.columns)
                )
            coeffs = solver.lift(pushed)
            if coeffs is None:
                raise ContractViolation("presentation square does not commute")
            beta.append(coeffs)
    return LiftedDiagram(pres_k, pres_l, alpha, beta)


def _apply_matrix(alpha, coeff_vec, src_rank, tgt_rank, ring):
    comps = coeff_vec.components(src_rank)
    out = Vec.zero(ring)
    for j, c in enumerate(comps):
        if not c:
            continue
        for i, entry in enumerate(alpha[j]):
            if entry:
                out = out + Vec.from_poly(entry * c, i)
    return out


def evaluate_via_diagram(functor, x):
    """F(X) = ker(gamma*)/alpha*(ker delta*) inside ambient block modules.

    The argument is first re-presented as a cokernel so block vectors are
    honest coefficient tuples; kernels are computed as raw solution
    submodules and the quotient is assembled ambient-level. Must agree
    degreewise with evaluate().
    """
    diag = functor.diagram()
    ring = x.ring
    xp = x.presentation()
    xc = FPModule.from_cokernel(ring, xp.gen_twists, list(xp.columns), x.order)
    if not diag.pres_k.gens:
        return FPModule.zero(ring, x.order)
    amb_k = block_module(xc, [-t for t in diag.pres_k.gen_twists])
    u_gens = _kernel_vectors(diag.pres_k, xc, amb_k)
    v_gens = list(amb_k.rels)
    if diag.pres_l.gens:
        amb_l = block_module(xc, [-t for t in diag.pres_l.gen_twists])
        for w in _kernel_vectors(diag.pres_l, xc, amb_l):
            pushed = _push_through(w, diag.alpha, xc.rank, ring)
            if pushed:
                v_gens.append(pushed)
    return FPModule(ring, amb_k.rank, amb_k.twists, u_gens, v_gens, x.order, check=True)


def _kernel_vectors(pres, xc, amb):
    """Ambient generators of ker(X^{gens} -> X^{rels}) for a presentation."""
    ring = xc.ring
    if not pres.columns:
        return list(amb.gens)
    width = xc.rank
    mat = [list(col.components(len(pres.gens))) for col in pres.columns]
    tgt = block_module(xc, [-s for s in pres.column_twists()])
    targets = []
    for i in range(len(pres.gens)):
        for r in range(width):
            terms = {}
            for j in range(len(pres.columns)):
                entry = mat[j][i]
                if entry:
                    for mono, cf in entry.terms.items():
                        terms[(j * width + r, mono)] = cf
            targets.append(Vec(ring, terms))
    solver = LiftSolver(ring, tgt.rank, tgt.twists, targets, list(tgt.rels))
    return [v for v in solver.kernel_vectors() if v]


# -- expressions -----------------------------------------------------------------


class FunctorExpression:
    """Evaluation tree over the built-in constructors.

    Leaves hold a CoherentFunctor; compose nodes evaluate right-to-left,
    so compose(G, F) means G(F(X)). Composites are never flattened to a
    single presentation.
    """

    __slots__ = ("kind", "functor", "parts", "label")

    def __init__(self, kind, functor=None, parts=(), label=""):
        if kind == "compose":
            if len(parts) < 1:
                raise ConfigurationError("compose needs at least one operand")
            for p in parts:
                if not isinstance(p, FunctorExpression):
                    raise ConfigurationError("compose operands must be expressions")
        elif kind in ("hom", "tensor", "tor", "ext"):
            if functor is None:
                raise ConfigurationError("leaf expressions wrap a functor")
        else:
            raise ConfigurationError("unknown expression kind %r" % kind)
        self.kind = kind
        self.functor = functor
        self.parts = tuple(parts)
        self.label = label or kind

    @classmethod
    def hom(cls, m, label=""):
        return cls("hom", functor_from_hom(m, label), label=label or "hom")

    @classmethod
    def tensor(cls, m, label=""):
        return cls("tensor", functor_from_tensor(m, label), label=label or "tensor")

    @classmethod
    def tor(cls, m, i, label=""):
        if i == 0:
            return cls.tensor(m, label or "tor_0")
        return cls("tor", functor_from_tor(m, i, label=label), label=label or "tor_%d" % i)

    @classmethod
    def ext(cls, m, i, label=""):
        if i == 0:
            return cls.hom(m, label or "ext^0")
        return cls("ext", functor_from_ext(m, i, label=label), label=label or "ext^%d" % i)

    @classmethod
    def compose(cls, *parts, **kw):
        return cls("compose", parts=parts, label=kw.get("label", ""))

    def evaluate(self, x, route="direct"):
        if self.kind == "compose":
            val = x
            for part in reversed(self.parts):
                val = part.evaluate(val, route)
            return val
        if route == "direct":
            return evaluate(self.functor, x)
        if route == "diagram":
            return evaluate_via_diagram(self.functor, x)
        raise ConfigurationError("route must be 'direct' or 'diagram'")

    def leaves(self):
        if self.kind == "compose":
            out = []
            for p in self.parts:
                out.extend(p.leaves())
            return out
        return [self.functor]

    def __repr__(self):
        if self.kind == "compose":
            return " o ".join(repr(p) for p in self.parts)
        return self.label


def evaluate_expression(expr, x, route="direct"):
    """Evaluate an expression tree at a module, right-to-left."""
    return expr.evaluate(x, route)
