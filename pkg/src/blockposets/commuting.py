"""Commuting graphs and the commuting poset of a block.

The commuting poset of a block has elements (kappa, e): kappa a nonempty set
of pairwise commuting order-p subgroups whose product has nonvanishing Brauer
image, and e a block of the centralizer of that product making the product a
pair of the block.  It maps back and forth to the poset of pairs with
nontrivial elementary abelian first component:

    expand:   (Q, e) -> (order-p subgroups of Q, e)
    collapse: (kappa, e) -> (product of kappa, e)

Cliques are enumerated depth-first in vertex order with the Brauer filter
applied as a prune: once the product of a clique has zero Brauer image, every
superset does too (truncations compose), so the cut is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimitExceeded, TheoryViolation
from .perms import PermGroup, order_p_subgroups, subgroup_orbit_transversal
from .topology import GPoset

MAX_POSET_ELEMENTS = 100_000


@dataclass
class CommutingGraph:
    vertices: list        # order-p subgroups, canonically sorted
    adjacency: list       # bitmask per vertex

    def edges(self):
        out = []
        for i, mask in enumerate(self.adjacency):
            m = mask >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def num_edges(self):
        return len(self.edges())


def commuting_graph(G, p):
    """All order-p subgroups of G, joined when they commute elementwise.

    Two order-p subgroups commute elementwise iff their generators commute.
    """
    vertices = order_p_subgroups(G, p)
    n = len(vertices)
    adjacency = [0] * n
    for i in range(n):
        gi = vertices[i].generators[0]
        for j in range(i + 1, n):
            gj = vertices[j].generators[0]
            if gi * gj == gj * gi:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return CommutingGraph(list(vertices), adjacency)


def product_subgroup(members, label=""):
    """The subgroup generated by a pairwise commuting family."""
    members = list(members)
    if not members:
        raise ValueError("empty family has no product")
    degree = members[0].degree
    gens = []
    for Q in members:
        gens.extend(Q.generators)
    for a in gens:
        for b in gens:
            if a * b != b * a:
                raise ValueError("family members do not commute")
    return PermGroup.from_generators(degree, gens, label=label)


def order_p_subgroups_of(Q, p):
    """The order-p subgroups of an abelian p-group."""
    if not Q.is_abelian():
        raise ValueError("expected an abelian group")
    return order_p_subgroups(Q, p)


def elementary_abelian_family(ctx):
    """Every nontrivial elementary abelian subgroup with nonzero Brauer image."""
    family = []
    for rep in ctx.subgroup_classes():
        if rep.order == 1:
            continue
        flag, _rank = rep.is_elementary_abelian(ctx.p)
        if not flag or not ctx.brauer_nonzero(rep):
            continue
        orbit = subgroup_orbit_transversal(ctx.G, rep)
        for g in orbit.values():
            family.append(rep.conjugate_subgroup(g))
    return family


def elementary_abelian_poset(ctx):
    """The pair poset over all nontrivial elementary abelian subgroups."""
    return ctx.pair_poset(elementary_abelian_family(ctx))


class BlockGeometry:
    """The pair poset with abelian tops, the commuting poset, and their maps."""

    def __init__(self, ctx, apairs, vertices, vertex_adj, elements, kposet,
                 expand_map, collapse_map):
        self.ctx = ctx
        self.apairs = apairs          # BrauerPairPoset (elementary abelian)
        self.vertices = vertices      # order-p subgroups with Br != 0
        self.vertex_adj = vertex_adj
        self.elements = elements      # list of (frozenset vertex ids, apair idx)
        self.kposet = kposet          # GPoset on the elements
        self.expand_map = expand_map  # apairs index -> kposet index
        self.collapse_map = collapse_map  # kposet index -> apairs index

    @property
    def aposet(self):
        return self.apairs.poset


def block_geometry(ctx, max_elements=MAX_POSET_ELEMENTS):
    """Build the pair poset, the commuting poset, and the two maps."""
    apairs = elementary_abelian_poset(ctx)
    aposet = apairs.poset
    # subgroup -> indices of pairs sitting at it
    pairs_by_subgroup = {}
    family_sets = set()
    for i, pr in enumerate(apairs.pairs):
        key = pr.subgroup.element_set
        pairs_by_subgroup.setdefault(key, []).append(i)
        family_sets.add(key)
    # vertices: the order-p members of the family
    vertices = sorted(
        {pr.subgroup.element_set: pr.subgroup for pr in apairs.pairs
         if pr.subgroup.order == ctx.p}.values(),
        key=PermGroup.key)
    vindex = {Q.element_set: i for i, Q in enumerate(vertices)}
    n = len(vertices)
    adj = [0] * n
    for i in range(n):
        gi = vertices[i].generators[0]
        for j in range(i + 1, n):
            gj = vertices[j].generators[0]
            if gi * gj == gj * gi:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    # clique enumeration with the Brauer prune
    elements = []

    def extend(kappa, prod, candidates):
        m = candidates
        v = 0
        while m:
            if m & 1:
                new_prod_gens = tuple(prod.generators) + vertices[v].generators \
                    if prod is not None else vertices[v].generators
                new_prod = PermGroup.from_generators(ctx.G.degree, new_prod_gens)
                if new_prod.element_set in family_sets:
                    kappa2 = kappa + (v,)
                    for pid in pairs_by_subgroup[new_prod.element_set]:
                        elements.append((frozenset(kappa2), pid))
                        if len(elements) > max_elements:
                            raise SizeLimitExceeded(
                                f"commuting poset exceeded {max_elements} elements")
                    higher = candidates & ~((1 << (v + 1)) - 1)
                    extend(kappa2, new_prod, higher & adj[v])
            m >>= 1
            v += 1

    extend((), None, (1 << n) - 1)
    elements.sort(key=lambda ke: (sorted(ke[0]), ke[1]))
    kindex = {ke: i for i, ke in enumerate(elements)}
    # order: subset on kappa, pair containment on the decorations
    nk = len(elements)
    up = [0] * nk
    for i, (ki, pi) in enumerate(elements):
        for j, (kj, pj) in enumerate(elements):
            if ki <= kj and aposet.leq(pi, pj):
                up[i] |= 1 << j
    # action of the generators
    action = []
    apair_action = aposet.action if isinstance(aposet, GPoset) else None
    for gi, g in enumerate(ctx.G.generators):
        vperm = [vindex[v.conjugate_subgroup(g).element_set] for v in vertices]
        perm = []
        for ki, pi in elements:
            kimg = frozenset(vperm[v] for v in ki)
            pimg = apair_action[gi][pi]
            perm.append(kindex[(kimg, pimg)])
        action.append(perm)

    def label_of(i):
        vids, pid = elements[i]
        names = sorted(vertices[v].generators[0].cycle_string() for v in vids)
        return "{" + ",".join(names) + "}|" + apairs.pairs[pid].label()

    kposet = GPoset([label_of(i) for i in range(nk)], up, action)
    # expand: (Q, e) -> (order-p subgroups of Q, e); collapse: drop kappa
    expand_map = []
    for pid, pr in enumerate(apairs.pairs):
        cq = order_p_subgroups(pr.subgroup, ctx.p)
        vids = frozenset(vindex[c.element_set] for c in cq)
        expand_map.append(kindex[(vids, pid)])
    collapse_map = [pi for _k, pi in elements]
    return BlockGeometry(ctx, apairs, vertices, adj, elements, kposet,
                         expand_map, collapse_map)


@dataclass
class Obstruction:
    """A clique of minimal elements not covered by any single poset element."""

    minimal_indices: tuple
    pair_labels: tuple
    subgroups: tuple              # the singleton subgroups
    generated_subgroup: PermGroup
    brauer_vanishes: bool


def clique_witness(geom):
    """Search for a clique of minimal elements with no common upper bound cover.

    Vertices of the candidate graph are the minimal elements of the commuting
    poset; two are joined when some element lies above both.  An uncovered
    clique of size >= 3 shows the poset is not the face poset of any graph's
    clique complex; the witness carries whether the Brauer image of the
    subgroup generated by the clique vanishes.  Returns None when every
    clique is covered.
    """
    kposet = geom.kposet
    if kposet.n == 0:
        return None
    minimal = kposet.minimal_elements()
    down = kposet.down_masks()
    pos = {m: t for t, m in enumerate(minimal)}
    min_sets = []
    for i in range(kposet.n):
        mins = frozenset(pos[m] for m in minimal if (down[i] >> m) & 1)
        min_sets.append(mins)
    nv = len(minimal)
    gadj = [0] * nv
    for ms in min_sets:
        for a in ms:
            for b in ms:
                if a != b:
                    gadj[a] |= 1 << b

    def covered(clique_set):
        return any(clique_set <= ms for ms in min_sets)

    found = None

    def extend(clique, candidates):
        nonlocal found
        if found is not None:
            return
        m = candidates
        v = 0
        while m:
            if m & 1:
                new_clique = clique + (v,)
                if len(new_clique) >= 3 and not covered(frozenset(new_clique)):
                    found = new_clique
                    return
                higher = candidates & ~((1 << (v + 1)) - 1)
                extend(new_clique, higher & gadj[v])
                if found is not None:
                    return
            m >>= 1
            v += 1

    extend((), (1 << nv) - 1)
    if found is None:
        return None
    kidx = [minimal[t] for t in found]
    subgroups = []
    for i in kidx:
        vids, _pid = geom.elements[i]
        (vid,) = tuple(vids)
        subgroups.append(geom.vertices[vid])
    generated = product_subgroup(subgroups, label="<obstruction>")
    return Obstruction(
        minimal_indices=tuple(kidx),
        pair_labels=tuple(kposet.labels[i] for i in kidx),
        subgroups=tuple(subgroups),
        generated_subgroup=generated,
        brauer_vanishes=not geom.ctx.brauer_nonzero(generated),
    )
