"""Finite permutation groups by full element enumeration.

Conventions, fixed once and used everywhere:

* Points are 0-based internally; cycle notation in input/output is 1-based.
* Products compose left-to-right: ``(a * b)(x) = b(a(x))``, i.e. apply ``a``
  first.
* Conjugation is ``x ** g = g^-1 * x * g``, so a cycle ``(i j)`` conjugated
  by ``g`` is the cycle ``(g(i) g(j))``.
* Element enumeration is closed under products and inverses and is sorted
  lexicographically by image tuple, which makes every downstream ordering
  (classes, subgroup lists, reports) reproducible.

Target scale is groups of order up to a few thousand (the largest shipped
corpus group has order 5040), so everything here scans elements instead of
using stabilizer chains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SizeLimitExceeded

MAX_GROUP_ORDER = 100_000


class Permutation:
    """A bijection of {0..degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Build from 1-based disjoint-or-not cycles, applied left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            images = list(range(degree))
            m = len(cycle)
            for k, point in enumerate(cycle):
                if not 1 <= point <= degree:
                    raise ValueError(f"cycle point {point} outside 1..{degree}")
                images[point - 1] = cycle[(k + 1) % m] - 1
            result = result * cls(images)
        return result

    def __mul__(self, other):
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def conjugate(self, g):
        """self ** g = g^-1 * self * g."""
        return g.inverse() * self * g

    def __call__(self, point):
        return self.images[point]

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        n = 1
        power = self
        while not power.is_identity():
            power = power * self
            n += 1
        return n

    def cycles(self):
        """Nontrivial cycles as 0-based tuples, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cyc.append(point)
                seen[point] = True
                point = self.images[point]
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation[{self.cycle_string()}]"


def _closure(degree, gens, max_elements):
    identity = Permutation.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elements:
                    elements.add(y)
                    new.append(y)
                    if len(elements) > max_elements:
                        raise SizeLimitExceeded(
                            f"group enumeration exceeded {max_elements} elements"
                        )
        frontier = new
    return elements


class PermGroup:
    """A finite permutation group with its full, sorted element list."""

    __slots__ = ("degree", "generators", "elements", "label", "element_set",
                 "_index", "_key")

    def __init__(self, degree, generators, elements, label=""):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.label = label
        self.element_set = frozenset(self.elements)
        self._index = None
        self._key = None

    @classmethod
    def from_generators(cls, degree, gens, label="", max_elements=MAX_GROUP_ORDER):
        gens = tuple(gens)
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        elements = _closure(degree, gens, max_elements)
        return cls(degree, gens, elements, label)

    @classmethod
    def from_elements(cls, degree, elements, label=""):
        """Wrap an already-closed element set, with a reduced generating set."""
        elements = set(elements)
        gens = []
        closed = {Permutation.identity(degree)}
        for x in sorted(elements):
            if x not in closed:
                gens.append(x)
                closed = _closure(degree, gens, len(elements))
                if len(closed) == len(elements):
                    break
        return cls(degree, gens, elements, label)

    @classmethod
    def trivial(cls, degree, label="1"):
        e = Permutation.identity(degree)
        return cls(degree, (), {e}, label)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, perm):
        return perm in self.element_set

    def __le__(self, other):
        return self.element_set <= other.element_set

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.element_set == other.element_set

    def __hash__(self):
        return hash(self.element_set)

    def __repr__(self):
        return f"PermGroup({self.label or '?'}, degree={self.degree}, order={self.order})"

    def key(self):
        """Canonical sort key: (order, sorted element image tuples)."""
        if self._key is None:
            self._key = (self.order, tuple(x.images for x in self.elements))
        return self._key

    def index_of(self, perm):
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index[perm]

    def identity(self):
        return Permutation.identity(self.degree)

    def is_abelian(self):
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def exponent(self):
        exp = 1
        for x in self.elements:
            exp = _lcm(exp, x.order())
        return exp

    def is_cyclic(self):
        return any(x.order() == self.order for x in self.elements)

    def is_elementary_abelian(self, p):
        """(flag, rank): abelian of exponent dividing p; trivial group has rank 0."""
        if self.order == 1:
            return True, 0
        if not self.is_abelian():
            return False, None
        if any(x.order() not in (1, p) for x in self.elements):
            return False, None
        rank = 0
        n = self.order
        while n > 1:
            if n % p:
                return False, None
            n //= p
            rank += 1
        return True, rank

    def conjugate_subgroup(self, g, label=""):
        ginv = g.inverse()
        elems = {ginv * x * g for x in self.elements}
        gens = tuple(ginv * x * g for x in self.generators)
        return PermGroup(self.degree, gens, elems, label or self.label)

    def fingerprint(self):
        """Conjugation-invariant summary (order, exponent, abelian, cyclic)."""
        return {
            "order": self.order,
            "exponent": self.exponent(),
            "abelian": self.is_abelian(),
            "cyclic": self.is_cyclic(),
        }


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def compose(a, b):
    """Apply a first, then b."""
    return a * b


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: tuple


def conjugacy_classes(G):
    """Classes ordered by their minimal member under the fixed element order."""
    seen = set()
    classes = []
    for x in G.elements:  # already sorted, so representatives are minimal
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for g in G.generators:
                    z = y.conjugate(g)
                    if z not in orbit:
                        orbit.add(z)
                        new.append(z)
            frontier = new
        seen |= orbit
        classes.append(ConjugacyClass(x, tuple(sorted(orbit))))
    return classes


def centralizer(G, S, label=""):
    """Elements of G commuting with every member of S.

    S may be a PermGroup (its generators suffice) or an iterable of
    permutations.
    """
    if isinstance(S, PermGroup):
        pins = S.generators if S.generators else (S.identity(),)
    else:
        pins = tuple(S)
    if all(s.is_identity() for s in pins):
        return G
    elems = [g for g in G.elements if all(g * s == s * g for s in pins)]
    return PermGroup.from_elements(G.degree, elems, label or f"C({G.label})")


def normalizer(G, H, label=""):
    elems = []
    for g in G.elements:
        ginv = g.inverse()
        if all(ginv * h * g in H.element_set for h in H.generators):
            elems.append(g)
    return PermGroup.from_elements(G.degree, elems, label or f"N({G.label})")


def sylow_p(G, p):
    """A Sylow p-subgroup, grown by extension inside successive normalizers."""
    target = 1
    n = G.order
    while n % p == 0:
        target *= p
        n //= p
    H = PermGroup.trivial(G.degree)
    while H.order < target:
        N = normalizer(G, H)
        ext = None
        # any x in N(H)\H whose coset has order p extends H to a p-group
        for x in N.elements:
            if x not in H.element_set and _power(x, p) in H.element_set:
                ext = x
                break
        if ext is None:
            raise RuntimeError("Sylow extension step found no element; |G| not divisible as expected")
        H = PermGroup.from_generators(G.degree, tuple(H.generators) + (ext,),
                                      max_elements=target)
    return PermGroup(H.degree, H.generators, H.elements, label=f"Sylow_{p}({G.label})")


def _power(x, n):
    y = Permutation.identity(x.degree)
    for _ in range(n):
        y = y * x
    return y


def order_p_subgroups(G, p):
    """All subgroups of order p, sorted canonically."""
    found = {}
    for x in G.elements:
        if x.order() == p:
            members = frozenset(_power(x, k) for k in range(p))
            if members not in found:
                found[members] = PermGroup.from_elements(G.degree, members,
                                                         label=f"<{x.cycle_string()}>")
    return sorted(found.values(), key=PermGroup.key)


def all_subgroups(P, max_count=10_000):
    """Every subgroup of a small group P, by iterative one-element extensions."""
    trivial = PermGroup.trivial(P.degree)
    found = {trivial.element_set: trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            for x in P.elements:
                if x in H.element_set:
                    continue
                K = PermGroup.from_generators(P.degree, tuple(H.generators) + (x,),
                                              max_elements=P.order)
                if K.element_set not in found:
                    found[K.element_set] = K
                    new.append(K)
                    if len(found) > max_count:
                        raise SizeLimitExceeded("subgroup enumeration bound hit")
        frontier = new
    return sorted(found.values(), key=PermGroup.key)


def subgroup_orbit_transversal(G, H):
    """Map each G-conjugate of H (as an element frozenset) to one g with H^g = it."""
    identity = G.identity()
    orbit = {H.element_set: identity}
    frontier = [(H.element_set, identity)]
    while frontier:
        new = []
        for elems, g in frontier:
            for s in G.generators:
                sinv = s.inverse()
                conj = frozenset(sinv * x * s for x in elems)
                if conj not in orbit:
                    gs = g * s
                    orbit[conj] = gs
                    new.append((conj, gs))
        frontier = new
    return orbit


def are_conjugate(G, A, B):
    """g with A^g = B, or None. Uses the orbit of A, so cost is one orbit scan."""
    if A.order != B.order:
        return None
    orbit = subgroup_orbit_transversal(G, A)
    return orbit.get(B.element_set)


def p_subgroups_up_to_conjugacy(G, p):
    """Representatives of G-classes of p-subgroups (trivial group included).

    Every p-subgroup is conjugate into a fixed Sylow p-subgroup, so the class
    list is the subgroup list of one Sylow, deduplicated by G-conjugacy via
    orbit scans.
    """
    P = sylow_p(G, p)
    reps = []
    seen = set()
    for H in all_subgroups(P):
        if H.element_set in seen:
            continue
        reps.append(H)
        seen |= set(subgroup_orbit_transversal(G, H).keys())
    return reps


def symmetric_group(n, label=None):
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return PermGroup.trivial(1, label or "S1")
    gens = [Permutation.from_cycles(n, [[1, 2]])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [list(range(1, n + 1))]))
    return PermGroup.from_generators(n, gens, label or f"S{n}")


def dihedral_group(order, label=None):
    """Dihedral group of the given (even, >= 4) order, on order/2 points."""
    if order < 4 or order % 2:
        raise ValueError("dihedral order must be an even integer >= 4")
    n = order // 2
    if n == 2:
        # degenerate: Klein four group on 4 points
        gens = [Permutation.from_cycles(4, [[1, 2]]), Permutation.from_cycles(4, [[3, 4]])]
        return PermGroup.from_generators(4, gens, label or "D4")
    rot = Permutation.from_cycles(n, [list(range(1, n + 1))])
    refl = Permutation(tuple(n - 1 - i for i in range(n)))
    return PermGroup.from_generators(n, [rot, refl], label or f"D{order}")


def cyclic_group(n, label=None):
    if n == 1:
        return PermGroup.trivial(1, label or "C1")
    g = Permutation.from_cycles(n, [list(range(1, n + 1))])
    return PermGroup.from_generators(n, [g], label or f"C{n}")


def exponent_p_part_complement(G, p):
    """p'-part of the exponent of G (lcm of element orders with p stripped)."""
    e = G.exponent()
    while e % p == 0:
        e //= p
    return e
