"""The Brauer homomorphism, Brauer pairs, containment, and defect groups.

For a p-subgroup Q the Brauer homomorphism truncates a Q-fixed element of kG
to its support inside C_G(Q); on Q-fixed points it is multiplicative, so the
image of a block b is a sum of blocks of kC_G(Q).  A pair (Q, e) belongs to b
when e appears in that sum.

Containment of pairs is generated by one-step normal containment:
(Q, e) is normal in (R, f) iff Q is normal in R, e is R-stable, and the
truncation of e to C_G(R) multiplies f to itself.  The full order is the
transitive closure along subnormal chains; existence and uniqueness of the
pair below a given one at each subgroup is asserted on the computed data
rather than assumed.

A BlockContext caches, per block: centralizers, centralizer blocks (computed
once per conjugacy representative and transported along an orbit
transversal), Brauer images, and the pairs at each subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import GroupAlgebraElement, blocks
from .errors import TheoryViolation
from .perms import (
    PermGroup,
    centralizer,
    p_subgroups_up_to_conjugacy,
    subgroup_orbit_transversal,
)
from .topology import GPoset, Poset


def brauer_hom(Q, a):
    """Truncate the Q-fixed element a of kG to kC_G(Q).

    Raises ValueError when a is not fixed by Q-conjugation.
    """
    if not a.is_fixed_by(Q.generators):
        raise ValueError("element is not Q-stable")
    C = centralizer(a.group, Q)
    return a.truncate(C.element_set)


class BrauerPair:
    """(Q, e): a p-subgroup with a block e of kC_G(Q)."""

    __slots__ = ("subgroup", "idempotent", "centralizer", "_key")

    def __init__(self, subgroup, idempotent, centralizer_group):
        self.subgroup = subgroup
        self.idempotent = idempotent
        self.centralizer = centralizer_group
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.subgroup.key(), self.idempotent.key())
        return self._key

    def ident(self):
        """Hashable identity (subgroup elements, idempotent support)."""
        return (self.subgroup.element_set, self.idempotent.key())

    def conjugate(self, g):
        return BrauerPair(self.subgroup.conjugate_subgroup(g),
                          self.idempotent.conjugate(g),
                          self.centralizer.conjugate_subgroup(g))

    def label(self):
        gens = ",".join(x.cycle_string() for x in self.subgroup.generators) or "1"
        return f"(<{gens}>, e[{len(self.idempotent.support)}])"

    def __eq__(self, other):
        return isinstance(other, BrauerPair) and self.ident() == other.ident()

    def __hash__(self):
        return hash(self.ident())

    def __repr__(self):
        return f"BrauerPair{self.label()}"


class _Site:
    """Everything attached to one subgroup Q: C_G(Q) and the blocks of kC_G(Q)."""

    __slots__ = ("subgroup", "centralizer", "blocks")

    def __init__(self, subgroup, centralizer_group, block_elements):
        self.subgroup = subgroup
        self.centralizer = centralizer_group
        self.blocks = block_elements

    def conjugate(self, g, subgroup=None):
        return _Site(subgroup if subgroup is not None
                     else self.subgroup.conjugate_subgroup(g),
                     self.centralizer.conjugate_subgroup(g),
                     [e.conjugate(g) for e in self.blocks])


@dataclass
class DefectData:
    """The defect groups of a block: one conjugacy class of p-subgroups."""

    block: object
    representative: PermGroup
    order: int
    fingerprint: dict
    num_conjugates: int

    def is_dihedral_order_8(self):
        fp = self.fingerprint
        return (fp["order"] == 8 and fp["exponent"] == 4
                and not fp["abelian"] and not fp["cyclic"])


class BrauerPairPoset:
    """All pairs over a family of subgroups, with the containment order."""

    def __init__(self, pairs, normal_edges, poset):
        self.pairs = pairs
        self.normal_edges = normal_edges
        self.poset = poset  # GPoset when the family is conjugation closed

    @property
    def n(self):
        return len(self.pairs)


class BlockContext:
    """Per-block machinery with caching and conjugation transport."""

    def __init__(self, block, subgroup_classes=None, all_blocks=None):
        self.block = block
        self.G = block.group
        self.F = block.field
        self.p = self.F.p
        self._sites = {}
        self._rep_orbits = []  # list of (site-of-representative, orbit transversal)
        self._brauer = {}
        self._pairs = {}
        self._subgroup_classes = subgroup_classes
        self._defect = None
        if all_blocks is not None:
            # seed the trivial site so kG blocks are not recomputed per context
            trivial = PermGroup.trivial(self.G.degree)
            site = _Site(trivial, self.G, [b.element for b in all_blocks])
            self._sites[trivial.element_set] = site
            self._rep_orbits.append(
                (site, {trivial.element_set: self.G.identity()}))

    # -- sites ----------------------------------------------------------

    def site(self, Q):
        key = Q.element_set
        hit = self._sites.get(key)
        if hit is not None:
            return hit
        for rep_site, orbit in self._rep_orbits:
            g = orbit.get(key)
            if g is not None:
                site = rep_site.conjugate(g, subgroup=Q)
                self._sites[key] = site
                return site
        C = centralizer(self.G, Q, label=f"C({Q.label})")
        site = _Site(Q, C, [b.element for b in blocks(C, self.F)])
        orbit = subgroup_orbit_transversal(self.G, Q)
        self._rep_orbits.append((site, orbit))
        self._sites[key] = site
        return site

    def centralizer_of(self, Q):
        return self.site(Q).centralizer

    def blocks_at(self, Q):
        return self.site(Q).blocks

    def brauer_image(self, Q):
        """Br_Q(b); the block is central hence fixed by every subgroup."""
        key = Q.element_set
        hit = self._brauer.get(key)
        if hit is None:
            hit = self.block.element.truncate(self.site(Q).centralizer.element_set)
            self._brauer[key] = hit
        return hit

    def brauer_nonzero(self, Q):
        return bool(self.brauer_image(Q))

    def pairs_at(self, Q):
        """The pairs (Q, e); empty exactly when Br_Q(b) = 0."""
        key = Q.element_set
        hit = self._pairs.get(key)
        if hit is not None:
            return hit
        site = self.site(Q)
        br = self.brauer_image(Q)
        out = []
        if br:
            total = GroupAlgebraElement.zero(self.G, self.F)
            for e in site.blocks:
                if e * br == e:
                    out.append(BrauerPair(Q, e, site.centralizer))
                    total = total + e
            if total != br:
                raise TheoryViolation(
                    "Brauer image of the block is not the sum of its pair blocks",
                    witness=Q.label)
        self._pairs[key] = out
        return out

    # -- containment ------------------------------------------------------

    def normal_containment(self, lo, hi):
        """One-step containment (Q, e) normal-in (R, f)."""
        Q, R = lo.subgroup, hi.subgroup
        if not Q.element_set <= R.element_set:
            return False
        rgens = R.generators
        for g in rgens:
            ginv = g.inverse()
            if any(ginv * x * g not in Q.element_set for x in Q.generators):
                return False  # Q not normal in R
        e = lo.idempotent
        if not e.is_fixed_by(rgens):
            return False
        br = e.truncate(hi.centralizer.element_set)
        return br * hi.idempotent == hi.idempotent

    def pair_poset(self, family, check_uniqueness=True):
        """Pairs over the family with the closure of normal containment.

        The G-action is attached only when the family is closed under
        conjugation (every conjugated pair must land back in the poset).
        """
        subgroups = _dedup_subgroups(family)
        pairs = []
        for Q in subgroups:
            pairs.extend(self.pairs_at(Q))
        pairs.sort(key=BrauerPair.key)
        index = {pr.ident(): i for i, pr in enumerate(pairs)}
        edges = []
        for i, lo in enumerate(pairs):
            for j, hi in enumerate(pairs):
                if i == j:
                    continue
                if lo.subgroup.order >= hi.subgroup.order:
                    continue
                if self.normal_containment(lo, hi):
                    edges.append((i, j))
        labels = [pr.label() for pr in pairs]
        base = Poset.from_edges_closure(labels, edges)
        action = []
        closed = True
        for g in self.G.generators:
            perm = []
            for pr in pairs:
                target = index.get(pr.conjugate(g).ident())
                if target is None:
                    closed = False
                    break
                perm.append(target)
            if not closed:
                break
            action.append(perm)
        poset = GPoset(labels, base.up, action) if closed else base
        if check_uniqueness:
            self._assert_unique_subpairs(pairs, poset, subgroups)
        return BrauerPairPoset(pairs, edges, poset)

    def _assert_unique_subpairs(self, pairs, poset, subgroups):
        by_subgroup = {}
        for i, pr in enumerate(pairs):
            by_subgroup.setdefault(pr.subgroup.element_set, []).append(i)
        for j, hi in enumerate(pairs):
            for Q in subgroups:
                if not Q.element_set <= hi.subgroup.element_set:
                    continue
                below = [i for i in by_subgroup.get(Q.element_set, ())
                         if poset.leq(i, j)]
                if len(below) != 1:
                    raise TheoryViolation(
                        "subpair existence/uniqueness failed",
                        witness=(hi.label(), Q.label, len(below)))

    # -- defect groups ----------------------------------------------------

    def subgroup_classes(self):
        if self._subgroup_classes is None:
            self._subgroup_classes = p_subgroups_up_to_conjugacy(self.G, self.p)
        return self._subgroup_classes

    def defect_data(self):
        """Maximal p-subgroups with nonzero Brauer image; one class asserted."""
        if self._defect is not None:
            return self._defect
        survivors = [Q for Q in self.subgroup_classes() if self.brauer_nonzero(Q)]
        maximal = []
        for Q in survivors:
            if any(R.order > Q.order and _conjugate_into(self, Q, R)
                   for R in survivors):
                continue
            maximal.append(Q)
        if len(maximal) != 1:
            raise TheoryViolation(
                "defect groups do not form a single conjugacy class",
                witness=[Q.label for Q in maximal])
        rep = maximal[0]
        # nonzero Brauer image must be exactly "conjugate into the defect class"
        for Q in self.subgroup_classes():
            embeds = _conjugate_into(self, Q, rep)
            if self.brauer_nonzero(Q) != embeds:
                raise TheoryViolation(
                    "Brauer image vanishing disagrees with defect containment",
                    witness=Q.label)
        orbit = subgroup_orbit_transversal(self.G, rep)
        self._defect = DefectData(self.block, rep, rep.order,
                                  rep.fingerprint(), len(orbit))
        return self._defect

    def principal_type(self):
        """(flag, per-class outcomes): every Brauer image zero or one block."""
        witnesses = []
        ok = True
        first_failure = None
        for Q in self.subgroup_classes():
            br = self.brauer_image(Q)
            if not br:
                witnesses.append((Q, "zero"))
                continue
            hits = [e for e in self.blocks_at(Q) if e * br == e]
            if len(hits) == 1 and hits[0] == br:
                witnesses.append((Q, "block"))
            else:
                witnesses.append((Q, f"sum-of-{len(hits)}"))
                ok = False
                if first_failure is None:
                    first_failure = Q
        return ok, witnesses, first_failure

    # -- subpairs ---------------------------------------------------------

    def unique_subpair(self, top, Q):
        """The unique pair at Q below top, walked down a subnormal chain.

        The primary chain is Q = S_0 normal-in S_1 = N_R(S_0) normal-in ...
        up to R; at each step the normally contained block is required to be
        unique.  When the chain through Q Z(R) (also subnormal, since the
        center normalizes everything) differs from the primary one, the walk
        is repeated along it and the results compared, as a genuine
        chain-independence probe.
        """
        R = top.subgroup
        if not Q.element_set <= R.element_set:
            raise ValueError("subgroup is not contained in the top pair")
        if Q.element_set == R.element_set:
            return top
        chain = _normalizer_chain(R, Q)
        pair = self._walk_chain(top, chain)
        alt = _center_seeded_chain(R, Q)
        if alt is not None and [S.element_set for S in alt] != \
                [S.element_set for S in chain]:
            other = self._walk_chain(top, alt)
            if other != pair:
                raise TheoryViolation("chain-dependent subpair detected",
                                      witness=(Q.label, R.label))
        if pair not in self.pairs_at(Q):
            raise TheoryViolation("subpair is not a pair of the block",
                                  witness=pair.label())
        return pair

    def _walk_chain(self, top, chain):
        pair = top
        for S in reversed(chain[:-1]):
            candidates = [e for e in self.blocks_at(S)
                          if self.normal_containment(
                              BrauerPair(S, e, self.centralizer_of(S)), pair)]
            if len(candidates) != 1:
                raise TheoryViolation(
                    "normally contained block not unique along chain",
                    witness=(S.label, pair.label(), len(candidates)))
            pair = BrauerPair(S, candidates[0], self.centralizer_of(S))
        return pair


def _dedup_subgroups(family):
    seen = {}
    for Q in family:
        seen.setdefault(Q.element_set, Q)
    return sorted(seen.values(), key=PermGroup.key)


def _conjugate_into(ctx, S, T):
    """Is some G-conjugate of S contained in T?"""
    if S.order > T.order:
        return False
    orbit = subgroup_orbit_transversal(ctx.G, S)
    return any(elems <= T.element_set for elems in orbit)


def _normalizer_in(R, H):
    """N_R(H) for small R, by scanning the elements of R."""
    elems = []
    hset = H.element_set
    for g in R.elements:
        ginv = g.inverse()
        if all(ginv * x * g in hset for x in H.generators):
            elems.append(g)
    return PermGroup.from_elements(R.degree, elems, label=f"N_{R.label}")


def _normalizer_chain(R, Q):
    """Q normal-in N_R(Q) normal-in ... up to R (p-groups never stall)."""
    chain = [Q]
    current = Q
    while current.element_set != R.element_set:
        nxt = _normalizer_in(R, current)
        if nxt.order == current.order:
            raise TheoryViolation("normalizer chain stalled inside a p-group",
                                  witness=(R.label, current.label))
        chain.append(nxt)
        current = nxt
    return chain


def _center_seeded_chain(R, Q):
    """Alternative subnormal chain Q normal-in Q Z(R) normal-in ... or None.

    Z(R) centralizes Q, so Q is normal in Q Z(R); from there the chain
    continues through normalizers.  Returns None when the seed step brings
    nothing new (Z(R) already inside Q).
    """
    centre = [x for x in R.elements
              if all(x * y == y * x for y in R.generators)]
    if all(x in Q.element_set for x in centre):
        return None
    seed = PermGroup.from_generators(
        R.degree, tuple(Q.generators) + tuple(centre), max_elements=R.order)
    return [Q] + _normalizer_chain(R, seed)


# ---------------------------------------------------------------------------
# spec-level convenience wrappers


def brauer_pairs_for(block, Q, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.pairs_at(Q)


def normal_containment(lo, hi, block, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.normal_containment(lo, hi)


def containment_poset(block, family, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.pair_poset(family)


def defect_groups(block, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.defect_data()


def is_principal_type(block, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.principal_type()


def unique_subpair(top, Q, block, ctx=None):
    ctx = ctx or BlockContext(block)
    return ctx.unique_subpair(top, Q)
