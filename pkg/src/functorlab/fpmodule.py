"""Finitely presented graded modules in subquotient form.

An FPModule is U/W for submodules W <= U of a twisted free module; every
module the engine touches (kernels, cokernels, homology, Hom/Ext/Tor values,
graded strands) is carried in this shape. The relation span is required to
lie inside the generator span at construction, so U/W is meaningful on the
nose; constructors that naturally produce an exterior W (images, homology)
augment the generators first, which changes nothing up to canonical
isomorphism.

Numeric questions (Hilbert function, length, dimension) go through the
module's Hilbert numerator: numer(F/W) - numer(F/U). Structural questions
(coefficients, presentations, kernels) go through LiftSolver. Free
resolutions prune to minimal generators at every stage, which over a
graded-local base makes the differentials unit-free, so Betti numbers are
literal ranks; minimalize() exists for complexes produced any other way.
"""

from __future__ import annotations

from .errors import CapExceeded, ContractViolation
from .groebner import LiftSolver
from .hilbert import (
    krull_dim as numer_krull_dim,
    length_value,
    module_numerator,
    numer_add,
    series_window,
)
from .poly import Poly, Vec
from .rings import GREVLEX
from .submodule import Submodule


class FPModule:
    __slots__ = (
        "ring",
        "rank",
        "twists",
        "order",
        "gens",
        "rels",
        "_gens_sub",
        "_rels_sub",
        "_numer",
        "_solver",
        "_presentation",
    )

    def __init__(self, ring, rank, twists, gens, rels, order=GREVLEX, check=True):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists)
        self.order = order
        gens_sub = Submodule(ring, rank, self.twists, gens, order, check=check)
        rels_sub = Submodule(ring, rank, self.twists, rels, order, check=check)
        self.gens = gens_sub.gens
        self.rels = rels_sub.gens
        self._gens_sub = gens_sub
        self._rels_sub = rels_sub
        if check and self.rels and not gens_sub.contains_all(self.rels):
            raise ContractViolation("relations do not lie in the generator span")
        self._numer = None
        self._solver = None
        self._presentation = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def free(cls, ring, twists, order=GREVLEX):
        gens = [Vec.unit(ring, c) for c in range(len(twists))]
        return cls(ring, len(twists), twists, gens, [], order, check=False)

    @classmethod
    def cyclic(cls, ring, relation_polys=(), order=GREVLEX):
        """R/(relation_polys) presented on one generator of degree 0."""
        from .poly import parse_poly

        rels = [Vec.from_poly(parse_poly(ring, p)) for p in relation_polys]
        return cls(ring, 1, (0,), [Vec.unit(ring, 0)], rels, order)

    @classmethod
    def from_cokernel(cls, ring, twists, columns, order=GREVLEX):
        """coker of the map with the given columns into the free module."""
        gens = [Vec.unit(ring, c) for c in range(len(twists))]
        return cls(ring, len(twists), twists, gens, columns, order)

    @classmethod
    def subquotient(cls, ring, rank, twists, gens, rels, order=GREVLEX):
        """U/W for arbitrary U, W: relations outside U are adjoined to U."""
        probe = Submodule(ring, rank, tuple(twists), gens, order)
        extra = [w for w in rels if w and not probe.contains(w)]
        return cls(ring, rank, tuple(twists), list(gens) + extra, rels, order, check=False)

    @classmethod
    def zero(cls, ring, order=GREVLEX):
        return cls(ring, 1, (0,), [], [], order, check=False)

    # -- structure ---------------------------------------------------------

    def gens_sub(self):
        return self._gens_sub

    def rels_sub(self):
        return self._rels_sub

    def gen_degrees(self):
        return tuple(g.degree(self.twists) for g in self.gens)

    def numerator(self):
        if self._numer is None:
            below = module_numerator(self.ring, self._rels_sub.lead_monomials(), self.twists)
            above = module_numerator(self.ring, self._gens_sub.lead_monomials(), self.twists)
            self._numer = numer_add(below, above, sign=-1)
        return self._numer

    def hilbert_function(self, degrees):
        degrees = list(degrees)
        if not degrees:
            return []
        lo, hi = min(degrees), max(degrees)
        window = series_window(self.ring, self.numerator(), lo, hi)
        return [window[d - lo] for d in degrees]

    def length(self):
        return length_value(self.ring, self.numerator())

    def dim(self):
        return numer_krull_dim(self.ring, self.numerator())

    def is_zero(self):
        return not self.numerator()

    def support_window(self):
        """Degree interval outside which a finite-length module vanishes."""
        numer = self.numerator()
        if not numer:
            return (0, 0)
        return (min(numer), max(numer) + 1)

    def hilbert_equal(self, other):
        """Exact equality of Hilbert functions in every degree."""
        return self.numerator() == other.numerator()

    # -- elements ----------------------------------------------------------

    def solver(self):
        if self._solver is None:
            self._solver = LiftSolver(
                self.ring, self.rank, self.twists, list(self.gens), list(self.rels)
            )
        return self._solver

    def coeffs_of(self, v):
        """Generator coefficients of an ambient vector, or None if outside."""
        return self.solver().lift(v)

    def element(self, coeffs):
        acc = Vec.zero(self.ring)
        for c, g in zip(coeffs, self.gens):
            if c:
                acc = acc + g.mul_poly(c)
        return acc

    def contains_ambient(self, v):
        return self._gens_sub.contains(v)

    def annihilates(self, v):
        """True when v is zero in the module (lies in the relation span)."""
        return self._rels_sub.contains(v)

    # -- presentations -------------------------------------------------------

    def presentation(self):
        """Minimal cokernel presentation (gens pruned, relations minimal)."""
        if self._presentation is not None:
            return self._presentation
        pruned = sorted(
            self.gens, key=lambda g: (g.degree(self.twists), str(g.to_strings(self.rank)))
        )
        i = 0
        while i < len(pruned):
            rest = pruned[:i] + pruned[i + 1 :]
            other = Submodule(
                self.ring, self.rank, self.twists, rest + list(self.rels), self.order, check=False
            )
            if other.contains(pruned[i]):
                pruned = rest
            else:
                i += 1
        gen_twists = tuple(g.degree(self.twists) for g in pruned)
        solver = LiftSolver(self.ring, self.rank, self.twists, pruned, list(self.rels))
        columns = Submodule(
            self.ring, len(pruned), gen_twists, solver.kernel_vectors(), self.order, check=False
        ).minimal_generators()
        self._presentation = Presentation(
            module=self, gens=tuple(pruned), gen_twists=gen_twists, columns=columns.gens
        )
        return self._presentation

    def twisted(self, shift):
        """Same module with all degrees raised by shift (ambient retwist)."""
        return FPModule(
            self.ring,
            self.rank,
            tuple(t + shift for t in self.twists),
            self.gens,
            self.rels,
            self.order,
            check=False,
        )

    def __repr__(self):
        return "FPModule(rank=%d, gens=%d, rels=%d)" % (
            self.rank,
            len(self.gens),
            len(self.rels),
        )


class Presentation:
    """Data of a minimal presentation R^s1 -> R^s0 -> M -> 0.

    columns are coefficient vectors in R^s0 (one per relation); matrix()
    renders them as a column-major Poly matrix.
    """

    __slots__ = ("module", "gens", "gen_twists", "columns")

    def __init__(self, module, gens, gen_twists, columns):
        self.module = module
        self.gens = gens
        self.gen_twists = gen_twists
        self.columns = columns

    def matrix(self):
        s0 = len(self.gens)
        return tuple(tuple(col.components(s0)) for col in self.columns)

    def column_twists(self):
        return tuple(col.degree(self.gen_twists) for col in self.columns)


class ModuleMap:
    """Homogeneous map of FPModules, stored column-major on generators.

    columns[j][i] is the coefficient of target generator i in the image of
    source generator j; shift is the uniform degree the map adds.
    """

    __slots__ = ("source", "target", "columns", "shift")

    def __init__(self, source, target, columns, shift=0, check=True):
        self.source = source
        self.target = target
        self.columns = tuple(tuple(row) for row in columns)
        self.shift = shift
        if check:
            sdeg = source.gen_degrees()
            tdeg = target.gen_degrees()
            if len(self.columns) != len(source.gens):
                raise ContractViolation("need one column per source generator")
            for j, col in enumerate(self.columns):
                if len(col) != len(target.gens):
                    raise ContractViolation("column %d has wrong height" % j)
                for i, entry in enumerate(col):
                    if entry and entry.degree() != sdeg[j] + shift - tdeg[i]:
                        raise ContractViolation(
                            "entry (%d,%d) is not homogeneous of the right degree" % (i, j)
                        )

    @classmethod
    def identity(cls, module):
        n = len(module.gens)
        one, zero = module.ring.one, Poly.zero(module.ring)
        cols = [
            [Poly.constant(module.ring, one) if i == j else zero for i in range(n)]
            for j in range(n)
        ]
        return cls(module, module, cols, check=False)

    @classmethod
    def zero_map(cls, source, target):
        zero = Poly.zero(source.ring)
        cols = [[zero for _ in target.gens] for _ in source.gens]
        return cls(source, target, cols, check=False)

    def image_vec(self, j):
        acc = Vec.zero(self.target.ring)
        for i, entry in enumerate(self.columns[j]):
            if entry:
                acc = acc + self.target.gens[i].mul_poly(entry)
        return acc

    def image_vecs(self):
        return [self.image_vec(j) for j in range(len(self.columns))]

    def apply_coeffs(self, coeffs):
        out = [Poly.zero(self.target.ring) for _ in self.target.gens]
        for j, c in enumerate(coeffs):
            if not c:
                continue
            for i, entry in enumerate(self.columns[j]):
                if entry:
                    out[i] = out[i] + entry * c
        return out

    def apply(self, v):
        coeffs = self.source.coeffs_of(v)
        if coeffs is None:
            raise ContractViolation("vector lies outside the map's source")
        return self.target.element(self.apply_coeffs(coeffs))

    def compose(self, inner):
        """self o inner (inner feeds into self)."""
        if inner.target is not self.source and inner.target.gens != self.source.gens:
            raise ContractViolation("composition targets do not line up")
        cols = [self.apply_coeffs(col) for col in inner.columns]
        return ModuleMap(
            inner.source, self.target, cols, shift=self.shift + inner.shift, check=False
        )

    def is_zero_map(self):
        return all(self.target.annihilates(self.image_vec(j)) for j in range(len(self.columns)))

    def is_well_defined(self):
        """Presentation relations of the source land in the target relations."""
        pres = self.source.presentation()
        lookup = {id(g): k for k, g in enumerate(self.source.gens)}
        # presentation gens are a subset of source gens; map columns through it
        index = [lookup[id(g)] for g in pres.gens]
        for col in pres.columns:
            coeffs = [Poly.zero(self.source.ring) for _ in self.source.gens]
            for pos, c in enumerate(col.components(len(pres.gens))):
                coeffs[index[pos]] = c
            img = self.target.element(self.apply_coeffs(coeffs))
            if not self.target.annihilates(img):
                return False
        return True


# -- exactness toolkit ---------------------------------------------------------


def kernel_with_coeffs(f):
    """(K, coeff_vectors): K = ker f as a subquotient of f's source."""
    tgt = f.target
    targets = f.image_vecs()
    solver = LiftSolver(tgt.ring, tgt.rank, tgt.twists, targets, list(tgt.rels))
    coeff_vecs = solver.kernel_vectors()
    src = f.source
    gens = []
    kept = []
    for k in coeff_vecs:
        v = src.element(k.components(len(src.gens)))
        if v:
            gens.append(v)
            kept.append(k)
    module = FPModule(src.ring, src.rank, src.twists, gens, src.rels, src.order, check=True)
    return module, kept


def kernel(f):
    return kernel_with_coeffs(f)[0]


def image(f):
    tgt = f.target
    vecs = [v for v in f.image_vecs() if v]
    return FPModule(
        tgt.ring, tgt.rank, tgt.twists, vecs + list(tgt.rels), tgt.rels, tgt.order, check=False
    )


def cokernel(f):
    tgt = f.target
    vecs = [v for v in f.image_vecs() if v]
    return FPModule(
        tgt.ring, tgt.rank, tgt.twists, tgt.gens, list(tgt.rels) + vecs, tgt.order, check=False
    )


def quotient_by(module, sub_vectors):
    """module / (span of ambient vectors); vectors must lie in the module."""
    extra = [v for v in sub_vectors if v]
    for v in extra:
        if not module.gens_sub().contains(v):
            raise ContractViolation("quotient vector lies outside the module")
    return FPModule(
        module.ring,
        module.rank,
        module.twists,
        module.gens,
        list(module.rels) + extra,
        module.order,
        check=False,
    )


def homology(f, g):
    """ker(g)/im(f) for composable f: A -> B, g: B -> C with g o f = 0."""
    if g is None:
        return cokernel(f)
    if f is None:
        return kernel(g)
    composite = g.compose(f)
    if not composite.is_zero_map():
        raise ContractViolation("maps do not compose to zero")
    ker_mod, _ = kernel_with_coeffs(g)
    imgs = [v for v in f.image_vecs() if v]
    b = f.target
    return FPModule(
        b.ring,
        b.rank,
        b.twists,
        ker_mod.gens,
        list(b.rels) + imgs,
        b.order,
        check=True,
    )


# -- graded complexes and resolutions ----------------------------------------


class GradedComplex:
    """Chain of FPModules with differentials maps[k]: modules[k+1] -> modules[k]."""

    def __init__(self, modules, maps, exhausted=True, check=True):
        self.modules = list(modules)
        self.maps = list(maps)
        self.exhausted = exhausted
        if check:
            for k in range(len(self.maps) - 1):
                comp = self.maps[k].compose(self.maps[k + 1])
                if not comp.is_zero_map():
                    raise ContractViolation("differentials at %d do not square to zero" % k)

    def ranks(self):
        return [len(m.gens) for m in self.modules]

    def twist_table(self):
        return [m.twists for m in self.modules]

    def differential_columns(self, k):
        """Columns of maps[k] as vectors in the free module modules[k]."""
        return [Vec.from_polys(list(col)) for col in self.maps[k].columns]


def free_resolution(module, length_cap):
    """Free resolution with minimal generators at every stage.

    Over the graded-local base this makes every differential unit-free, so
    ranks are Betti numbers. Stops early when the syzygies run out; the
    exhausted flag records whether the end was reached before the cap.
    """
    if length_cap < 0:
        raise ContractViolation("length_cap must be nonnegative")
    ring = module.ring
    pres = module.presentation()
    twists = pres.gen_twists
    modules = [FPModule.free(ring, twists, module.order)]
    maps = []
    columns = list(pres.columns)
    exhausted = not columns
    for _stage in range(1, length_cap + 1):
        if not columns:
            break
        col_twists = tuple(c.degree(twists) for c in columns)
        nxt = FPModule.free(ring, col_twists, module.order)
        mat = [list(c.components(len(twists))) for c in columns]
        maps.append(ModuleMap(nxt, modules[-1], mat, check=False))
        modules.append(nxt)
        kern = Submodule(
            ring, len(twists), twists, columns, module.order, check=False
        ).syzygies()
        columns = list(kern.minimal_generators().gens)
        twists = col_twists
        exhausted = not columns
    return GradedComplex(modules, maps, exhausted=exhausted, check=False)


def minimalize(complex_):
    """Remove unit entries by exact change of basis; homotopy type preserved."""
    ring = complex_.modules[0].ring
    order = complex_.modules[0].order
    twist_lists = [list(m.twists) for m in complex_.modules]
    mats = []
    for k in range(len(complex_.maps)):
        mats.append([list(col) for col in complex_.maps[k].columns])

    def find_unit():
        for k, mat in enumerate(mats):
            for j, col in enumerate(mat):
                for i, entry in enumerate(col):
                    if entry and entry.is_constant():
                        return k, i, j
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        k, i, j = hit
        mat = mats[k]
        u = mat[j][i].constant_value()
        inv_u = ring.inv(u)
        row_coeffs = {
            jp: col[i] for jp, col in enumerate(mat) if jp != j and col[i]
        }
        # clear row i in the other columns (basis change in the source)
        pivot_col = mat[j]
        for jp, c in row_coeffs.items():
            factor = c.scale(inv_u)
            mat[jp] = [
                mat[jp][ip] - pivot_col[ip] * factor for ip in range(len(pivot_col))
            ]
        # propagate the source basis change into the next differential
        if k + 1 < len(mats):
            for col in mats[k + 1]:
                acc = col[j]
                for jp, c in row_coeffs.items():
                    if col[jp]:
                        acc = acc + col[jp] * c.scale(inv_u)
                col[j] = acc
        # propagate the target basis change into the previous differential:
        # column i of d_(k-1) picks up (b/u)-multiples of the other columns
        if k - 1 >= 0:
            prev = mats[k - 1]
            target_col = prev[i]
            for ip in range(len(pivot_col)):
                if ip != i and pivot_col[ip]:
                    factor = pivot_col[ip].scale(inv_u)
                    src_col = prev[ip]
                    for r in range(len(target_col)):
                        if src_col[r]:
                            target_col[r] = target_col[r] + src_col[r] * factor
        # delete generator j of stage k+1 and generator i of stage k
        for col in mats[k]:
            del col[i]
        del mats[k][j]
        del twist_lists[k + 1][j]
        del twist_lists[k][i]
        if k + 1 < len(mats):
            for col in mats[k + 1]:
                del col[j]
        if k - 1 >= 0:
            del mats[k - 1][i]

    modules = [FPModule.free(ring, tuple(tw), order) for tw in twist_lists]
    maps = []
    for k, mat in enumerate(mats):
        maps.append(ModuleMap(modules[k + 1], modules[k], mat, check=False))
    return GradedComplex(modules, maps, exhausted=complex_.exhausted, check=True)


# -- Hom / Ext / Tor -----------------------------------------------------------


def block_module(x, block_twists):
    """X^b with the i-th copy twisted by block_twists[i]."""
    ring = x.ring
    b = len(block_twists)
    twists = []
    for s in block_twists:
        twists.extend(t + s for t in x.twists)
    gens = []
    rels = []
    for i in range(b):
        off = i * x.rank
        for g in x.gens:
            gens.append(Vec(ring, {(c + off, m): cf for (c, m), cf in g.terms.items()}))
        for w in x.rels:
            rels.append(Vec(ring, {(c + off, m): cf for (c, m), cf in w.terms.items()}))
    return FPModule(ring, b * x.rank, twists, gens, rels, x.order, check=False)


def block_map(psi_columns, x, src, tgt, tgt_blocks, shift=0):
    """The map X^a -> X^b induced by a Poly matrix psi: R^a -> R^b.

    psi_columns[j][i] sends source block j to target block i; src and tgt
    must be block modules over x (sharing them between maps keeps
    compositions well-typed).
    """
    zero = Poly.zero(x.ring)
    gcount = len(x.gens)
    cols = []
    for j in range(len(psi_columns)):
        for g in range(gcount):
            col = [zero] * (tgt_blocks * gcount)
            for i in range(tgt_blocks):
                entry = psi_columns[j][i]
                if entry:
                    col[i * gcount + g] = entry
            cols.append(col)
    return ModuleMap(src, tgt, cols, shift=shift, check=False)


def transpose_columns(columns, height):
    """Column-major transpose: returns the matrix of the dual map."""
    width = len(columns)
    return [[columns[j][i] for j in range(width)] for i in range(height)]


def hom_ext_tor(module, x, i, which, length_cap=None, resolution=None):
    """H^i(Hom(F_., X)), H_i(F_. (x) X), or Hom(M, X) for i = 0 / which='Hom'."""
    which = which.lower()
    if which not in ("hom", "ext", "tor"):
        raise ContractViolation("which must be one of Hom, Ext, Tor")
    if which == "hom":
        i = 0
        which = "ext"
    if i < 0:
        raise ContractViolation("homological index must be nonnegative")
    need = i + 1
    if length_cap is not None and length_cap < need:
        raise CapExceeded(
            "resolution cap %d too small: increase cap to at least %d" % (length_cap, need)
        )
    if resolution is not None:
        if not resolution.exhausted and len(resolution.maps) < need:
            raise CapExceeded("supplied resolution is too short for stage %d" % i)
        res = resolution
    else:
        res = free_resolution(module, need)
    ranks = res.ranks()
    twist = res.twist_table()

    def stage_cols(k):
        """Columns of d_k: F_k -> F_(k-1) as a Poly matrix, or None."""
        if k - 1 >= len(res.maps):
            return None
        return [list(col) for col in res.maps[k - 1].columns]

    if which == "ext":
        # X^(r_(i-1)) -> X^(r_i) -> X^(r_(i+1)) with transposed differentials
        blocks_i = [-t for t in twist[i]] if i < len(twist) else []
        if not blocks_i:
            return FPModule.zero(module.ring, module.order)
        middle = block_module(x, blocks_i)
        f = None
        if i >= 1:
            d_i = stage_cols(i)
            blocks_prev = [-t for t in twist[i - 1]]
            prev_mod = block_module(x, blocks_prev)
            f = block_map(
                transpose_columns(d_i, ranks[i - 1]), x, prev_mod, middle, len(blocks_i)
            )
        g = None
        d_next = stage_cols(i + 1)
        if d_next is not None:
            blocks_next = [-t for t in twist[i + 1]]
            next_mod = block_module(x, blocks_next)
            g = block_map(
                transpose_columns(d_next, ranks[i]), x, middle, next_mod, len(blocks_next)
            )
        if f is None and g is None:
            return middle
        return homology(f, g)

    # Tor: X^(r_(i+1)) -> X^(r_i) -> X^(r_(i-1)) with the original differentials
    blocks_i = list(twist[i]) if i < len(twist) else []
    if not blocks_i:
        return FPModule.zero(module.ring, module.order)
    middle = block_module(x, blocks_i)
    f = None
    d_next = stage_cols(i + 1)
    if d_next is not None:
        blocks_next = list(twist[i + 1])
        next_mod = block_module(x, blocks_next)
        f = block_map(d_next, x, next_mod, middle, len(blocks_i))
    g = None
    if i >= 1:
        d_i = stage_cols(i)
        blocks_prev = list(twist[i - 1])
        prev_mod = block_module(x, blocks_prev)
        g = block_map(d_i, x, middle, prev_mod, len(blocks_prev))
    if f is None and g is None:
        return middle
    return homology(f, g)
