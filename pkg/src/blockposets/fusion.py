"""Block fusion systems, commuting categories, and isomorphism-class posets.

Fixing a maximal pair (P, e_P) of a block, the fusion system on P has as
morphisms Q -> R the conjugation maps x -> x^g whose action transports the
unique pair below (P, e_P) at Q to the one at the image subgroup.  The
commuting category has as objects the nonempty pairwise-commuting sets of
order-p subgroups of P, with morphisms the fusion maps of the products that
send members to members.  Every endomorphism is required to be invertible
(checked, not assumed), which makes the hom-nonempty relation on isomorphism
classes a partial order.
"""

from __future__ import annotations

from .commuting import product_subgroup
from .errors import TheoryViolation
from .perms import all_subgroups, order_p_subgroups
from .topology import Poset


class FusionMorphism:
    """An injective map between subgroups of P induced by conjugation."""

    __slots__ = ("domain", "codomain", "mapping", "witness_g", "_key")

    def __init__(self, domain, codomain, mapping, witness_g):
        self.domain = domain
        self.codomain = codomain
        self.mapping = mapping
        self.witness_g = witness_g
        self._key = None

    def key(self):
        """Image tuple over the sorted domain elements: the set-map identity."""
        if self._key is None:
            self._key = tuple(self.mapping[x].images for x in self.domain.elements)
        return self._key

    def image_of(self, S):
        """Image of a subgroup of the domain, as an element frozenset."""
        return frozenset(self.mapping[x] for x in S.elements)

    def is_bijective(self):
        return self.image_of(self.domain) == self.codomain.element_set

    def inverse(self):
        inv = {y: x for x, y in self.mapping.items()}
        return FusionMorphism(self.codomain, self.domain, inv,
                              self.witness_g.inverse())

    def then(self, other):
        """Composite: self followed by other (domains must chain)."""
        mapping = {x: other.mapping[y] for x, y in self.mapping.items()}
        return FusionMorphism(self.domain, other.codomain, mapping,
                              self.witness_g * other.witness_g)

    def __eq__(self, other):
        return (isinstance(other, FusionMorphism)
                and self.domain == other.domain
                and self.codomain == other.codomain
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.domain.element_set, self.codomain.element_set,
                     self.key()))

    def __repr__(self):
        return f"FusionMorphism({self.domain.label} -> {self.codomain.label})"


def max_brauer_pair(ctx):
    """A maximal pair: the canonical defect representative with its least block."""
    dd = ctx.defect_data()
    P = dd.representative
    pairs = sorted(ctx.pairs_at(P), key=lambda pr: pr.idempotent.key())
    if not pairs:
        raise TheoryViolation("defect group carries no pair", witness=P.label)
    return pairs[0]


class FusionSystem:
    """The block fusion system on a fixed maximal pair."""

    def __init__(self, ctx, top_pair):
        self.ctx = ctx
        self.top = top_pair
        self.P = top_pair.subgroup
        self.family = all_subgroups(self.P)
        self.sub_pair = {}
        for S in self.family:
            self.sub_pair[S.element_set] = ctx.unique_subpair(top_pair, S)
        self._homs = {}

    @classmethod
    def from_block_context(cls, ctx):
        return cls(ctx, max_brauer_pair(ctx))

    def hom(self, Q, R):
        """All fusion maps Q -> R, deduplicated as set maps, in key order."""
        key = (Q.element_set, R.element_set)
        hit = self._homs.get(key)
        if hit is not None:
            return hit
        if Q.element_set not in self.sub_pair or R.element_set not in self.sub_pair:
            raise ValueError("hom requested outside the subgroup family of P")
        eQ = self.sub_pair[Q.element_set].idempotent
        found = {}
        for g in self.ctx.G.elements:
            ginv = g.inverse()
            if any(ginv * x * g not in R.element_set for x in Q.generators):
                continue
            mapping = {x: ginv * x * g for x in Q.elements}
            mkey = tuple(mapping[x].images for x in Q.elements)
            if mkey in found:
                continue
            image = frozenset(mapping.values())
            target = self.sub_pair.get(image)
            if target is None:
                raise TheoryViolation("image subgroup missing from family",
                                      witness=(Q.label, R.label))
            if eQ.conjugate(g) == target.idempotent:
                found[mkey] = FusionMorphism(Q, R, mapping, g)
        out = [found[k] for k in sorted(found)]
        self._homs[key] = out
        return out


class CommutingCategory:
    """Objects: nonempty commuting sets of order-p subgroups of P."""

    def __init__(self, fusion):
        self.fusion = fusion
        self.ctx = fusion.ctx
        p = self.ctx.p
        self.vertices = order_p_subgroups(fusion.P, p)
        n = len(self.vertices)
        adj = [0] * n
        for i in range(n):
            gi = self.vertices[i].generators[0]
            for j in range(i + 1, n):
                gj = self.vertices[j].generators[0]
                if gi * gj == gj * gi:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        objects = []

        def extend(kappa, candidates):
            m = candidates
            v = 0
            while m:
                if m & 1:
                    kappa2 = kappa + (v,)
                    objects.append(frozenset(kappa2))
                    higher = candidates & ~((1 << (v + 1)) - 1)
                    extend(kappa2, higher & adj[v])
                m >>= 1
                v += 1

        extend((), (1 << n) - 1)
        objects.sort(key=sorted)
        self.objects = objects
        self.products = [product_subgroup([self.vertices[v] for v in obj])
                         for obj in objects]
        self.member_sets = [frozenset(self.vertices[v].element_set for v in obj)
                            for obj in objects]
        self._homs = {}
        self._check_category()

    def object_label(self, i):
        names = sorted(self.vertices[v].generators[0].cycle_string()
                       for v in self.objects[i])
        return "{" + ",".join(names) + "}"

    def hom(self, i, j):
        key = (i, j)
        hit = self._homs.get(key)
        if hit is not None:
            return hit
        candidates = self.fusion.hom(self.products[i], self.products[j])
        members_i = [self.vertices[v] for v in self.objects[i]]
        targets = self.member_sets[j]
        out = [psi for psi in candidates
               if all(psi.image_of(Q) in targets for Q in members_i)]
        self._homs[key] = out
        return out

    def _check_category(self):
        n = len(self.objects)
        # identities present and endomorphisms invertible (EI)
        for i in range(n):
            endos = self.hom(i, i)
            keys = {psi.key() for psi in endos}
            identity_key = tuple(x.images for x in self.products[i].elements)
            if identity_key not in keys:
                raise TheoryViolation("identity morphism missing",
                                      witness=self.object_label(i))
            for psi in endos:
                if not psi.is_bijective() or psi.inverse().key() not in keys:
                    raise TheoryViolation(
                        "endomorphism is not invertible (EI failure)",
                        witness=(self.object_label(i), psi.key()))
        # closure under composition
        for i in range(n):
            for j in range(n):
                if not self.hom(i, j):
                    continue
                for k in range(n):
                    if not self.hom(j, k):
                        continue
                    target_keys = {psi.key() for psi in self.hom(i, k)}
                    for psi in self.hom(i, j):
                        for chi in self.hom(j, k):
                            if psi.then(chi).key() not in target_keys:
                                raise TheoryViolation(
                                    "composite escapes its hom set",
                                    witness=(self.object_label(i),
                                             self.object_label(k)))


class IsoClassPoset:
    """Isomorphism classes of objects, ordered by hom-nonemptiness."""

    def __init__(self, category):
        self.category = category
        n = len(category.objects)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            for j in range(i + 1, n):
                back_keys = {chi.key() for chi in category.hom(j, i)}
                for psi in category.hom(i, j):
                    if psi.is_bijective() and psi.inverse().key() in back_keys:
                        parent[find(i)] = find(j)
                        break
        roots = sorted({find(i) for i in range(n)})
        self.class_of = [roots.index(find(i)) for i in range(n)]
        self.classes = [[i for i in range(n) if self.class_of[i] == c]
                        for c in range(len(roots))]
        m = len(roots)
        up = [1 << c for c in range(m)]
        for i in range(n):
            for j in range(n):
                if category.hom(i, j):
                    up[self.class_of[i]] |= 1 << self.class_of[j]
        labels = [f"[{category.object_label(members[0])}] x{len(members)}"
                  for members in self.classes]
        self.poset = Poset(labels, up)  # raises on antisymmetry failure

    @property
    def n(self):
        return self.poset.n


def commuting_category(fusion):
    return CommutingCategory(fusion)


def iso_class_poset(category):
    return IsoClassPoset(category)
