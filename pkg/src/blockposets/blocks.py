"""Group algebras, their centers, and block idempotents.

The center of kG is computed in the class-sum basis: structure constants
``a[i][j][k]`` count pairs (x, y) in C_i x C_j with x*y equal to a fixed
representative of C_k, reduced into the field.  Blocks (primitive central
idempotents) are found by passing to the maximal semisimple subalgebra (the
stable image of the q-power map, q = |field|) and recursively splitting it
with partial-fraction idempotents from factored minimal polynomials.

An independent brute-force oracle enumerates every central element, filters
idempotents, and picks out the primitive ones; the two routes are required to
agree on everything the oracle can reach.

Sparse group-algebra elements are keyed directly by Permutation objects, so
an element computed inside a centralizer algebra can be multiplied, conjugated
or truncated in the ambient group without any re-indexing.
"""

from __future__ import annotations

import itertools

from . import gf
from .errors import SizeLimitExceeded, TheoryViolation
from .perms import conjugacy_classes

ORACLE_BOUND = 1 << 20


class GroupAlgebraElement:
    """A sparse field-linear combination of group elements."""

    __slots__ = ("group", "field", "support", "_key")

    def __init__(self, group, field, support):
        self.group = group
        self.field = field
        # never store zero coefficients
        self.support = {x: c for x, c in support.items() if c != field.zero}
        self._key = None

    @classmethod
    def zero(cls, group, field):
        return cls(group, field, {})

    @classmethod
    def one(cls, group, field):
        return cls(group, field, {group.identity(): field.one})

    def key(self):
        if self._key is None:
            self._key = tuple(sorted((x.images, self.field.encode(c))
                                     for x, c in self.support.items()))
        return self._key

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement)
                and self.support == other.support)

    def __hash__(self):
        return hash(self.key())

    def __bool__(self):
        return bool(self.support)

    def __add__(self, other):
        F = self.field
        out = dict(self.support)
        for x, c in other.support.items():
            out[x] = F.add(out.get(x, F.zero), c)
        return GroupAlgebraElement(self.group, F, out)

    def __mul__(self, other):
        F = self.field
        out = {}
        zero = F.zero
        for x, cx in self.support.items():
            for y, cy in other.support.items():
                z = x * y
                prev = out.get(z, zero)
                out[z] = F.add(prev, F.mul(cx, cy))
        return GroupAlgebraElement(self.group, F, out)

    def conjugate(self, g):
        """Support-wise x -> g^-1 x g."""
        ginv = g.inverse()
        return GroupAlgebraElement(self.group, self.field,
                                   {ginv * x * g: c for x, c in self.support.items()})

    def is_fixed_by(self, gens):
        return all(self.conjugate(g) == self for g in gens)

    def truncate(self, member_set):
        """Keep only the support inside member_set (a frozenset of permutations)."""
        return GroupAlgebraElement(self.group, self.field,
                                   {x: c for x, c in self.support.items()
                                    if x in member_set})

    def augmentation(self):
        F = self.field
        s = F.zero
        for c in self.support.values():
            s = F.add(s, c)
        return s

    def is_idempotent(self):
        return bool(self) and self * self == self

    def __repr__(self):
        n = len(self.support)
        return f"GroupAlgebraElement(<{self.group.label}>, {n} terms)"


class CentralAlgebra:
    """Z(kG) in the class-sum basis, with dense structure constants."""

    def __init__(self, group, field, classes, const):
        self.group = group
        self.field = field
        self.classes = classes          # list of ConjugacyClass
        self.const = const              # const[i][j][k], field values
        self.dim = len(classes)
        self.class_of = {}
        for idx, cls in enumerate(classes):
            for x in cls.members:
                self.class_of[x] = idx
        self.identity_class = self.class_of[group.identity()]
        self._check_axioms()

    def _check_axioms(self):
        F = self.field
        for i in range(self.dim):
            for j in range(i):
                if self.const[i][j] != self.const[j][i]:
                    raise TheoryViolation("class multiplication not commutative",
                                          witness=(i, j))
        e = self.identity_class
        for j in range(self.dim):
            col = self.const[e][j]
            expect = [F.one if k == j else F.zero for k in range(self.dim)]
            if col != expect:
                raise TheoryViolation("identity class does not act as identity",
                                      witness=j)

    def identity_coords(self):
        F = self.field
        return [F.one if k == self.identity_class else F.zero
                for k in range(self.dim)]

    def mult(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, ci in enumerate(u):
            if ci == F.zero:
                continue
            for j, cj in enumerate(v):
                if cj == F.zero:
                    continue
                coeff = F.mul(ci, cj)
                row = self.const[i][j]
                for k in range(self.dim):
                    if row[k] != F.zero:
                        out[k] = F.add(out[k], F.mul(coeff, row[k]))
        return out

    def power(self, u, n):
        result = self.identity_coords()
        base = list(u)
        while n:
            if n & 1:
                result = self.mult(result, base)
            base = self.mult(base, base)
            n >>= 1
        return result

    def scale(self, c, u):
        F = self.field
        return [F.mul(c, x) for x in u]

    def add(self, u, v):
        F = self.field
        return [F.add(a, b) for a, b in zip(u, v)]

    def q_power_matrix(self):
        """Matrix (columns = images of basis vectors) of u -> u^q, q = |field|.

        The q-power map is field-linear on a commutative algebra in
        characteristic p, which is what makes the stable-image computation of
        the semisimple part valid for d > 1 as well.
        """
        F = self.field
        cols = []
        for i in range(self.dim):
            basis_vec = [F.one if k == i else F.zero for k in range(self.dim)]
            cols.append(self.power(basis_vec, F.q))
        # transpose: entry [k][i] = k-th coordinate of z_i^q
        return [[cols[i][k] for i in range(self.dim)] for k in range(self.dim)]

    def eval_poly(self, poly, a, identity=None):
        """Horner evaluation of a field polynomial at coordinates a.

        identity is the multiplicative unit to use (defaults to the class of
        1); passing a component idempotent evaluates inside that component.
        """
        F = self.field
        if identity is None:
            identity = self.identity_coords()
        acc = [F.zero] * self.dim
        for c in reversed(poly):
            acc = self.mult(acc, a)
            acc = self.add(acc, self.scale(c, identity))
        return acc

    def min_poly(self, a, identity=None):
        """Least-degree monic m with m(a) = 0, relative to the given unit."""
        F = self.field
        if identity is None:
            identity = self.identity_coords()
        powers = [list(identity)]
        while True:
            nxt = self.mult(powers[-1], a)
            if gf.in_span(powers, nxt, F):
                # solve sum c_i a^i = a^m for the dependency coefficients
                mat = [[powers[i][k] for i in range(len(powers))]
                       for k in range(self.dim)]
                coeffs = gf.solve(mat, nxt, F)
                return [F.neg(c) for c in coeffs] + [F.one]
            powers.append(nxt)
            if len(powers) > self.dim + 1:
                raise TheoryViolation("minimal polynomial search exceeded dimension")

    def expand(self, coords):
        """Coordinates -> sparse group-algebra element with full support."""
        F = self.field
        support = {}
        for k, c in enumerate(coords):
            if c != F.zero:
                for x in self.classes[k].members:
                    support[x] = c
        return GroupAlgebraElement(self.group, F, support)

def class_sum_algebra(G, field, cached=None):
    """Structure constants of Z(kG) by the fixed-representative count.

    a[i][j][k] = #{x in C_i : x^-1 z in C_j} for the fixed representative z of
    C_k, so the total cost is (#classes) * |G| products.

    cached, when given, is a dict with keys 'classes' and 'const' produced by
    a previous run (see cache.py); it is trusted only after its checksum was
    verified by the caller.
    """
    classes = conjugacy_classes(G)
    F = field
    if cached is not None:
        reps = [tuple(r) for r in cached["class_reps"]]
        if reps != [cls.representative.images for cls in classes]:
            raise ValueError("cached class list does not match the group")
        const = [[[F.decode(v) for v in row] for row in plane]
                 for plane in cached["const"]]
        if len(const) != len(classes):
            raise ValueError("cached structure constants have wrong shape")
        return CentralAlgebra(G, F, classes, const)
    class_of = {}
    for idx, cls in enumerate(classes):
        for x in cls.members:
            class_of[x] = idx
    dim = len(classes)
    counts = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for k, cls in enumerate(classes):
        z = cls.representative
        for i, ci in enumerate(classes):
            row = counts[i]
            for x in ci.members:
                j = class_of[x.inverse() * z]
                row[j][k] += 1
    const = [[[F.from_int(counts[i][j][k]) for k in range(dim)]
              for j in range(dim)] for i in range(dim)]
    return CentralAlgebra(G, F, classes, const)


def semisimple_part(A):
    """Basis (coordinate vectors) of the maximal semisimple subalgebra."""
    M = A.q_power_matrix()
    return gf.stable_image(M, A.field)


def primitive_idempotents(A):
    """All primitive idempotents of A, canonically ordered.

    Components are split recursively: factor the minimal polynomial of a
    basis element over the component and evaluate the partial-fraction
    idempotents.  A component is certified primitive when every basis element
    has irreducible minimal polynomial (the component is then a field).
    """
    F = A.field
    ss = semisimple_part(A)
    if not ss:
        raise TheoryViolation("semisimple part of a unital algebra is zero")
    stack = [(A.identity_coords(), [list(v) for v in ss])]
    prims = []
    while stack:
        unit, basis = stack.pop()
        if len(basis) == 1:
            prims.append(tuple(unit))
            continue
        split = None
        for a in basis:
            m = A.min_poly(a, identity=unit)
            factors = gf.poly_factor(m, F)
            if any(mult > 1 for _g, mult in factors):
                raise TheoryViolation(
                    "minimal polynomial not squarefree inside semisimple part",
                    witness=(a, m))
            if len(factors) >= 2:
                split = (a, m, factors)
                break
        if split is None:
            prims.append(tuple(unit))  # every basis element generates a field
            continue
        a, m, factors = split
        for g, _mult in factors:
            h, _ = gf.poly_divmod(m, g, F)
            s = gf.poly_invmod(h, g, F)
            idem_poly = gf.poly_mod(gf.poly_mul(h, s, F), m, F)
            e = A.eval_poly(idem_poly, a, identity=unit)
            sub_basis = _row_space([A.mult(e, b) for b in basis], F)
            if not sub_basis:
                raise TheoryViolation("partial-fraction idempotent vanished",
                                      witness=(g, m))
            stack.append((e, sub_basis))
    prims.sort(key=lambda u: tuple(F.encode(c) for c in u))
    return prims


def _row_space(rows, F):
    reduced, pivots = gf.rref(rows, F)
    return [reduced[r] for r in range(len(pivots))]


def brute_force_central_idempotents(A, bound=ORACLE_BOUND):
    """Primitive idempotents by exhaustive enumeration of central elements.

    This is the independent oracle for the recursive splitter: filter all
    |field|^dim central elements down to nonzero idempotents, then keep e
    primitive iff no idempotent f outside {0, e} satisfies e f = f.
    """
    F = A.field
    total = F.q ** A.dim
    if total > bound:
        raise SizeLimitExceeded(
            f"oracle space {F.q}^{A.dim} exceeds bound {bound}")
    idems = []
    if F.p == 2 and F.d == 1:
        # char-2 prime field: squaring is linear, so e^2 follows from the
        # squares of the basis vectors; coordinates live in an int bitmask
        sq_mask = []
        for i in range(A.dim):
            basis_vec = [1 if k == i else 0 for k in range(A.dim)]
            sq = A.mult(basis_vec, basis_vec)
            sq_mask.append(sum(c << k for k, c in enumerate(sq)))
        square = [0] * total
        for e in range(1, total):
            low = e & (-e)
            square[e] = square[e ^ low] ^ sq_mask[low.bit_length() - 1]
        idems = [tuple((e >> k) & 1 for k in range(A.dim))
                 for e in range(1, total) if square[e] == e]
    else:
        for combo in itertools.product(list(F.elements()), repeat=A.dim):
            v = list(combo)
            if all(c == F.zero for c in v):
                continue
            if A.mult(v, v) == v:
                idems.append(tuple(v))
    prims = []
    for e in idems:
        primitive = True
        for f in idems:
            if f == e:
                continue
            if tuple(A.mult(list(e), list(f))) == f:
                primitive = False
                break
        if primitive:
            prims.append(e)
    prims.sort(key=lambda u: tuple(F.encode(c) for c in u))
    return prims


class Block:
    """A primitive idempotent of Z(kG), expanded to full group support."""

    __slots__ = ("group", "field", "coords", "element", "augment", "principal",
                 "index", "_key")

    def __init__(self, group, field, coords, element, augment, principal, index):
        self.group = group
        self.field = field
        self.coords = tuple(coords)
        self.element = element
        self.augment = augment
        self.principal = principal
        self.index = index
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.group.key(), self.element.key())
        return self._key

    def __eq__(self, other):
        return isinstance(other, Block) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        tag = "principal" if self.principal else f"#{self.index}"
        return f"Block({self.group.label}, {tag}, {len(self.element.support)} terms)"


def blocks(G, field, algebra=None, coords=None):
    """All blocks of kG, with structural assertions and the principal flag.

    coords, when given (e.g. from a verified cache), replaces the recursive
    splitter; all structural assertions still run, so a wrong list cannot
    silently pass.
    """
    A = algebra if algebra is not None else class_sum_algebra(G, field)
    F = field
    prims = coords if coords is not None else primitive_idempotents(A)
    # orthogonality, idempotency, sum to 1, centrality is built into the basis
    total = [F.zero] * A.dim
    for u in prims:
        if A.mult(list(u), list(u)) != list(u):
            raise TheoryViolation("non-idempotent block candidate", witness=u)
        total = A.add(total, list(u))
    for u, v in itertools.combinations(prims, 2):
        prod = A.mult(list(u), list(v))
        if any(c != F.zero for c in prod):
            raise TheoryViolation("blocks not orthogonal", witness=(u, v))
    if total != A.identity_coords():
        raise TheoryViolation("blocks do not sum to 1", witness=total)
    out = []
    principal_count = 0
    for idx, u in enumerate(prims):
        element = A.expand(u)
        aug = element.augmentation()
        principal = aug == F.one
        if principal:
            principal_count += 1
        elif aug != F.zero:
            raise TheoryViolation("block augmentation neither 0 nor 1", witness=u)
        out.append(Block(G, F, u, element, aug, principal, idx))
    if principal_count != 1:
        raise TheoryViolation(f"{principal_count} principal blocks found")
    return out


def augmentation(a):
    return a.augmentation()
