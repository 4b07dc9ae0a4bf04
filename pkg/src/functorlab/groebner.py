"""Groebner machinery for submodules of graded free modules.

Everything runs over the ambient polynomial ring. Quotient-ring base
relations are adjoined as generators (relation times each basis vector), so
normal forms and syzygies over R = P/I0 come out of the same Buchberger loop
that serves the polynomial case.

The engine is deliberately plain: normal-pair selection ordered by sugar
degree (true degree, since all input is homogeneous), the coprime-lead
criterion for ideals, full tail reduction, and a final interreduction that
makes output canonical (monic, auto-reduced, sorted by lead). No F4/F5.

LiftSolver is the workhorse behind syzygies, kernels, preimages, and lifts:
it tags each target with a fresh component that sorts below every main
component, so basis elements supported purely on tags spell out coefficient
relations, and division remainders spell out lifts.
"""

from __future__ import annotations

from heapq import heappush, heappop

from .poly import Poly, Vec
from .rings import TermOrder


def base_relation_vectors(ring, rank):
    out = []
    for rel in ring.relations:
        for c in range(rank):
            out.append(Vec.from_poly(rel, c))
    return out


def monic(vec, bound, ring):
    _, c = vec.lead(bound)
    if c == ring.one:
        return vec
    return vec.scale(ring.inv(c))


def make_lead_index(vectors, bound):
    idx = {}
    for i, g in enumerate(vectors):
        (c, m), _ = g.lead(bound)
        idx.setdefault(c, []).append((m, i))
    return idx


def reduce_vec(v, basis, bound, lead_index=None, track=False):
    """Full normal form of v against monic basis vectors.

    Returns (remainder, quotients); quotients is None unless track is set, in
    which case v == sum(quotients[i] * basis[i]) + remainder.
    """
    ring = v.ring
    if lead_index is None:
        lead_index = make_lead_index(basis, bound)
    work = dict(v.terms)
    rem = {}
    quots = [dict() for _ in basis] if track else None
    mono_divides = ring.mono_divides
    mono_div = ring.mono_div
    mul, sub, neg, add = ring.mul, ring.sub, ring.neg, ring.add
    while work:
        t = max(work, key=bound.term_key)
        comp, m = t
        coeff = work[t]
        hit = None
        for gm, gi in lead_index.get(comp, ()):
            if mono_divides(gm, m):
                hit = (gm, gi)
                break
        if hit is None:
            del work[t]
            rem[t] = coeff
            continue
        gm, gi = hit
        shift = mono_div(m, gm)
        for (gc, gmono), gcf in basis[gi].terms.items():
            key = (gc, tuple(a + b for a, b in zip(gmono, shift)))
            delta = mul(gcf, coeff)
            cur = work.get(key)
            val = sub(cur, delta) if cur is not None else neg(delta)
            if val:
                work[key] = val
            else:
                work.pop(key, None)
        if track:
            qd = quots[gi]
            prev = qd.get(shift)
            val = add(prev, coeff) if prev is not None else coeff
            if val:
                qd[shift] = val
            else:
                qd.pop(shift, None)
    remainder = Vec(ring, rem)
    if track:
        return remainder, [Poly(ring, q) for q in quots]
    return remainder, None


def interreduce(vectors, bound, ring):
    """Monic auto-reduced canonical form of a generating set."""
    vs = [monic(v, bound, ring) for v in vectors if v]
    vs.sort(key=lambda v: bound.term_key(v.lead(bound)[0]))
    changed = True
    while changed:
        changed = False
        for i in range(len(vs)):
            others = vs[:i] + vs[i + 1 :]
            if not others:
                continue
            r, _ = reduce_vec(vs[i], others, bound)
            if r != vs[i]:
                changed = True
                if r:
                    vs[i] = monic(r, bound, ring)
                else:
                    del vs[i]
                break
    vs.sort(key=lambda v: bound.term_key(v.lead(bound)[0]))
    return vs


def s_vector(f, g, bound, ring):
    (cf, mf), _ = f.lead(bound)
    (cg, mg), _ = g.lead(bound)
    if cf != cg:
        return None
    lcm = ring.mono_lcm(mf, mg)
    return f.mul_term(ring.one, ring.mono_div(lcm, mf)) - g.mul_term(
        ring.one, ring.mono_div(lcm, mg)
    )


def buchberger(vectors, *, ring, rank, twists, bound):
    """Canonical Groebner basis of span(vectors) + I0 * R^rank."""
    G = interreduce(list(vectors) + base_relation_vectors(ring, rank), bound, ring)
    if not G:
        return []
    leads = [g.lead(bound)[0] for g in G]
    lead_index = make_lead_index(G, bound)
    pairs = []

    def push_pairs(j):
        cj, mj = leads[j]
        for i in range(j):
            ci, mi = leads[i]
            if ci != cj:
                continue
            lcm = ring.mono_lcm(mi, mj)
            sugar = ring.mono_degree(lcm) + twists[cj]
            heappush(pairs, (sugar, i, j))

    for j in range(len(G)):
        push_pairs(j)

    while pairs:
        _, i, j = heappop(pairs)
        ci, mi = leads[i]
        _, mj = leads[j]
        if rank == 1 and all(x == 0 for x in ring.mono_gcd(mi, mj)):
            continue  # coprime leads: S-vector reduces to zero (ideal case)
        s = s_vector(G[i], G[j], bound, ring)
        if not s:
            continue
        r, _ = reduce_vec(s, G, bound, lead_index)
        if not r:
            continue
        r = monic(r, bound, ring)
        G.append(r)
        lead = r.lead(bound)[0]
        leads.append(lead)
        lead_index.setdefault(lead[0], []).append((lead[1], len(G) - 1))
        push_pairs(len(G) - 1)

    return interreduce(G, bound, ring)


def default_bound(ring, twists, order=None):
    return (order or TermOrder()).bind(ring, twists)


class LiftSolver:
    """Coefficient kernels and lifts for a fixed target list.

    targets are vectors in R^rank (ambient twists given); modulo is a list of
    vectors whose span (plus base relations) is treated as zero. The solver
    answers two questions about the map R^s -> R^rank / span(modulo) sending
    e_i to targets[i]:

    - kernel_vectors(): generators of the kernel (coefficient vectors in R^s);
    - lift(v): coefficients a with v == sum a_i targets[i] modulo span, else
      None.

    Tag components sort strictly below main components (block order), so the
    tagged basis answers both by construction.
    """

    def __init__(self, ring, rank, twists, targets, modulo=(), ring_order_kind="grevlex", elim=()):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists)
        self.targets = list(targets)
        s = len(self.targets)
        tag_twists = []
        for t in self.targets:
            d = t.degree(self.twists) if t else None
            tag_twists.append(d if d is not None else 0)
        self.aug_twists = self.twists + tuple(tag_twists)
        blocks = (1,) * rank + (0,) * s
        order = TermOrder(kind=ring_order_kind, elim=elim, module_kind="top")
        self.bound = order.bind(ring, self.aug_twists, blocks)
        aug = []
        for i, t in enumerate(self.targets):
            terms = dict(t.terms)
            terms[(rank + i, ring.unit_mono())] = ring.one
            aug.append(Vec(ring, terms))
        aug.extend(modulo)
        self.basis = buchberger(
            aug, ring=ring, rank=rank + s, twists=self.aug_twists, bound=self.bound
        )

    def kernel_vectors(self):
        """Coefficient vectors generating {a : sum a_i t_i in span(modulo)}."""
        rank = self.rank
        out = []
        for g in self.basis:
            if any(c < rank for (c, _m) in g.terms):
                continue
            out.append(Vec(self.ring, {(c - rank, m): cf for (c, m), cf in g.terms.items()}))
        return out

    def lift(self, v):
        """Coefficients of v over the targets, or None if not in the span."""
        r, _ = reduce_vec(v, self.basis, self.bound)
        if any(c < self.rank for (c, _m) in r.terms):
            return None
        coeff_vec = Vec(self.ring, {(c - self.rank, m): cf for (c, m), cf in r.terms.items()})
        s = len(self.targets)
        return [-p for p in coeff_vec.components(s)]

    def contains(self, v):
        return self.lift(v) is not None


def eliminate_module(vectors, *, ring, rank, twists, elim_vars):
    """Groebner basis of span(vectors) intersected with the elim-free part.

    Returns (full_basis, free_basis) where free_basis are the elements with no
    occurrence of the eliminated variables; they generate the intersection
    with the subring's free module.
    """
    order = TermOrder(kind="elim", elim=tuple(elim_vars), module_kind="top")
    bound = order.bind(ring, twists)
    gb = buchberger(vectors, ring=ring, rank=rank, twists=twists, bound=bound)
    elim_set = set(elim_vars)
    free = []
    for g in gb:
        if all(all(m[i] == 0 for i in elim_set) for (_c, m) in g.terms):
            free.append(g)
    return gb, free
