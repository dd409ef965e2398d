"""Finite posets with group actions, order complexes, and integral homology.

Posets keep their relation as per-element up-set bitmasks, so the axioms and
transitive closures are cheap int operations.  Homology of a simplicial
complex is unreduced integral homology computed from Smith normal forms of
the boundary matrices; the Smith reduction is a sparse elimination over
Python ints (no overflow), with pivots chosen by least absolute value and
least fill.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SizeLimitExceeded, TheoryViolation

MAX_SIMPLICES = 1_000_000


class Poset:
    """A finite poset on elements 0..n-1 with printable labels."""

    def __init__(self, labels, up_masks, check=True):
        self.n = len(labels)
        self.labels = list(labels)
        self.up = list(up_masks)  # bit j of up[i] set iff i <= j
        if check:
            self._check_axioms()

    def _check_axioms(self):
        for i in range(self.n):
            if not (self.up[i] >> i) & 1:
                raise TheoryViolation("relation not reflexive", witness=i)
        for i in range(self.n):
            mask = self.up[i]
            j = 0
            m = mask
            while m:
                if m & 1:
                    if j != i and (self.up[j] >> i) & 1:
                        raise TheoryViolation("relation not antisymmetric",
                                              witness=(self.labels[i], self.labels[j]))
                    if self.up[j] & ~mask:
                        raise TheoryViolation("relation not transitive",
                                              witness=(self.labels[i], self.labels[j]))
                m >>= 1
                j += 1

    @classmethod
    def from_leq_pairs(cls, labels, pairs, check=True):
        """Build from the full relation given as (i, j) pairs; reflexivity added."""
        n = len(labels)
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            up[i] |= 1 << j
        return cls(labels, up, check=check)

    @classmethod
    def from_edges_closure(cls, labels, edges, check=True):
        """Reflexive-transitive closure of the given (i, j) arcs."""
        n = len(labels)
        up = [1 << i for i in range(n)]
        for i, j in edges:
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                mask = up[i]
                acc = mask
                j = 0
                m = mask
                while m:
                    if m & 1:
                        acc |= up[j]
                    m >>= 1
                    j += 1
                if acc != mask:
                    up[i] = acc
                    changed = True
        return cls(labels, up, check=check)

    def leq(self, i, j):
        return (self.up[i] >> j) & 1 == 1

    def leq_pairs(self):
        out = []
        for i in range(self.n):
            m = self.up[i]
            j = 0
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def down_masks(self):
        down = [0] * self.n
        for i in range(self.n):
            m = self.up[i]
            j = 0
            while m:
                if m & 1:
                    down[j] |= 1 << i
                m >>= 1
                j += 1
        return down

    def covering_pairs(self):
        """(i, j) with i < j and nothing strictly between."""
        down = self.down_masks()
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            m = strict
            j = 0
            while m:
                if m & 1 and not (strict & down[j] & ~(1 << j)):
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def minimal_elements(self):
        down = self.down_masks()
        return [i for i in range(self.n) if down[i] == (1 << i)]

    def maximal_elements(self):
        return [i for i in range(self.n) if self.up[i] == (1 << i)]

    def is_empty(self):
        return self.n == 0

    def to_json_dict(self, orbit_of=None):
        elements = [{"id": i, "label": str(self.labels[i]),
                     "orbit": (orbit_of[i] if orbit_of is not None else i)}
                    for i in range(self.n)]
        return {
            "empty": self.n == 0,
            "elements": elements,
            "leq": [[i, j] for i, j in self.leq_pairs()],
            "covering": [[i, j] for i, j in self.covering_pairs()],
        }

    def to_dot(self, orbit_of=None, name="poset"):
        palette = ["#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
                   "#ffff99", "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00"]
        lines = [f"digraph {name} {{", "  rankdir=BT;",
                 "  node [shape=box, style=filled];"]
        if self.n == 0:
            lines.append("  // empty poset")
        for i in range(self.n):
            orbit = orbit_of[i] if orbit_of is not None else i
            color = palette[orbit % len(palette)]
            label = str(self.labels[i]).replace('"', "'")
            lines.append(f'  n{i} [label="{label}", fillcolor="{color}"];')
        for i, j in self.covering_pairs():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class GPoset(Poset):
    """A poset with a group acting by order-automorphisms.

    The action is stored as one permutation of the elements per group
    generator; each generator's image is checked to be an order-automorphism
    at construction.
    """

    def __init__(self, labels, up_masks, action, check=True):
        super().__init__(labels, up_masks, check=check)
        self.action = [list(a) for a in action]
        if check:
            self._check_action()

    def _check_action(self):
        for a in self.action:
            if sorted(a) != list(range(self.n)):
                raise TheoryViolation("generator does not permute poset elements")
            for i in range(self.n):
                m = self.up[i]
                j = 0
                while m:
                    if m & 1 and not self.leq(a[i], a[j]):
                        raise TheoryViolation(
                            "generator action is not an order-automorphism",
                            witness=(self.labels[i], self.labels[j]))
                    m >>= 1
                    j += 1

    def orbits(self):
        """Orbits of the generated group, each a sorted tuple, in order of min."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                new = []
                for x in frontier:
                    for a in self.action:
                        y = a[x]
                        if y not in orbit:
                            orbit.add(y)
                            new.append(y)
                frontier = new
            for x in orbit:
                seen[x] = True
            out.append(tuple(sorted(orbit)))
        return out


def orbit_poset(X):
    """The quotient poset of orbits; [x] <= [y] iff some representatives compare.

    Returns (poset, orbit_of).  Reflexivity and transitivity of the orbit
    relation are automatic for a group acting by order-automorphisms;
    antisymmetry is asserted by the Poset constructor and failure raises
    with a witness.
    """
    orbits = X.orbits()
    orbit_of = [0] * X.n
    for idx, orb in enumerate(orbits):
        for x in orb:
            orbit_of[x] = idx
    m = len(orbits)
    up = [1 << i for i in range(m)]
    for i in range(X.n):
        mask = X.up[i]
        j = 0
        while mask:
            if mask & 1:
                up[orbit_of[i]] |= 1 << orbit_of[j]
            mask >>= 1
            j += 1
    labels = [f"[{X.labels[orb[0]]}] x{len(orb)}" for orb in orbits]
    return Poset(labels, up), orbit_of


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """Faces stored by dimension as sorted tuples of vertex ids."""

    def __init__(self, faces_by_dim):
        self.faces_by_dim = [sorted(set(fs)) for fs in faces_by_dim]
        while self.faces_by_dim and not self.faces_by_dim[-1]:
            self.faces_by_dim.pop()
        self._check_closed()

    @classmethod
    def from_faces(cls, faces):
        """Downward closure of the given faces."""
        by_dim = {}
        stack = [tuple(sorted(set(f))) for f in faces]
        seen = set(stack)
        while stack:
            f = stack.pop()
            by_dim.setdefault(len(f) - 1, set()).add(f)
            if len(f) > 1:
                for k in range(len(f)):
                    sub = f[:k] + f[k + 1:]
                    if sub not in seen:
                        seen.add(sub)
                        stack.append(sub)
        if not by_dim:
            return cls([])
        top = max(by_dim)
        return cls([sorted(by_dim.get(n, ())) for n in range(top + 1)])

    def _check_closed(self):
        for n in range(1, len(self.faces_by_dim)):
            lower = set(self.faces_by_dim[n - 1])
            for f in self.faces_by_dim[n]:
                for k in range(len(f)):
                    if f[:k] + f[k + 1:] not in lower:
                        raise ValueError(f"face {f} missing a boundary facet")

    @property
    def dim(self):
        return len(self.faces_by_dim) - 1

    def face_counts(self):
        return [len(fs) for fs in self.faces_by_dim]

    def num_simplices(self):
        return sum(self.face_counts())

    def euler_characteristic(self):
        return sum((-1) ** n * len(fs) for n, fs in enumerate(self.faces_by_dim))

    def is_empty(self):
        return not self.faces_by_dim


def order_complex(X, max_simplices=MAX_SIMPLICES):
    """Chains of the poset X as simplices (x_0 < ... < x_n)."""
    strict_up = [X.up[i] & ~(1 << i) for i in range(X.n)]
    by_dim = []
    count = 0
    frontier = [((i,), strict_up[i]) for i in range(X.n)]
    while frontier:
        by_dim.append(sorted(chain for chain, _m in frontier))
        count += len(frontier)
        if count > max_simplices:
            raise SizeLimitExceeded(
                f"order complex exceeded {max_simplices} simplices")
        new = []
        for chain, mask in frontier:
            m = mask
            j = 0
            while m:
                if m & 1:
                    new.append((chain + (j,), mask & strict_up[j]))
                m >>= 1
                j += 1
        frontier = new
    return SimplicialComplex(by_dim)


def face_poset(C):
    """Nonempty faces of a complex, ordered by inclusion."""
    faces = [f for fs in C.faces_by_dim for f in fs]
    sets = [frozenset(f) for f in faces]
    n = len(faces)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if sets[i] <= sets[j]:
                up[i] |= 1 << j
    return Poset([str(tuple(v for v in f)) for f in faces], up)


# ---------------------------------------------------------------------------
# Smith normal form over the integers (sparse, arbitrary precision)


@dataclass
class SNFResult:
    diagonal: list        # invariant factors d_1 | d_2 | ..., all > 0
    rows: int
    cols: int
    U: list | None = None  # unimodular row transform, U M V = diag
    V: list | None = None

    @property
    def rank(self):
        return len(self.diagonal)

    def torsion(self):
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(entries, rows, cols, need_transforms=False):
    """Smith normal form of a sparse integer matrix {(i, j): value}.

    Pivots are the least-|value| entries with least fill-in, so entry growth
    stays tame; all arithmetic is plain Python int (arbitrary precision).
    When need_transforms is set, dense unimodular U (rows x rows) and
    V (cols x cols) with U M V diagonal are returned as well.
    """
    row = {}
    col = {}
    for (i, j), v in entries.items():
        if v:
            row.setdefault(i, {})[j] = v
            col.setdefault(j, set()).add(i)
    U = [[1 if a == b else 0 for b in range(rows)] for a in range(rows)] \
        if need_transforms else None
    V = [[1 if a == b else 0 for b in range(cols)] for a in range(cols)] \
        if need_transforms else None

    def row_addmul(dst, src, c):
        """row[dst] += c * row[src]"""
        if c == 0:
            return
        dst_row = row.setdefault(dst, {})
        for j, v in list(row.get(src, {}).items()):
            nv = dst_row.get(j, 0) + c * v
            if nv:
                dst_row[j] = nv
                col.setdefault(j, set()).add(dst)
            elif j in dst_row:
                del dst_row[j]
                col[j].discard(dst)
        if U is not None:
            for b in range(rows):
                U[dst][b] += c * U[src][b]

    def row_combine(i0, i1, x, y, z, w):
        """(row[i0], row[i1]) <- (x row[i0] + y row[i1], z row[i0] + w row[i1])"""
        r0 = dict(row.get(i0, {}))
        r1 = dict(row.get(i1, {}))
        new0, new1 = {}, {}
        for j in set(r0) | set(r1):
            a, b = r0.get(j, 0), r1.get(j, 0)
            n0, n1 = x * a + y * b, z * a + w * b
            if n0:
                new0[j] = n0
            if n1:
                new1[j] = n1
            members = col.setdefault(j, set())
            members.discard(i0)
            members.discard(i1)
            if n0:
                members.add(i0)
            if n1:
                members.add(i1)
        row[i0], row[i1] = new0, new1
        if U is not None:
            for b in range(rows):
                a0, a1 = U[i0][b], U[i1][b]
                U[i0][b] = x * a0 + y * a1
                U[i1][b] = z * a0 + w * a1

    def col_addmul(dst, src, c):
        if c == 0:
            return
        for i in list(col.get(src, set())):
            v = row[i].get(src, 0)
            nv = row[i].get(dst, 0) + c * v
            if nv:
                row[i][dst] = nv
                col.setdefault(dst, set()).add(i)
            elif dst in row[i]:
                del row[i][dst]
                col[dst].discard(i)
        if V is not None:
            for a in range(cols):
                V[a][dst] += c * V[a][src]

    def col_combine(j0, j1, x, y, z, w):
        touched = col.get(j0, set()) | col.get(j1, set())
        for i in list(touched):
            a = row[i].get(j0, 0)
            b = row[i].get(j1, 0)
            n0, n1 = x * a + y * b, z * a + w * b
            for j, nv in ((j0, n0), (j1, n1)):
                if nv:
                    row[i][j] = nv
                    col.setdefault(j, set()).add(i)
                elif j in row[i]:
                    del row[i][j]
                    col[j].discard(i)
        if V is not None:
            for a in range(cols):
                a0, a1 = V[a][j0], V[a][j1]
                V[a][j0] = x * a0 + y * a1
                V[a][j1] = z * a0 + w * a1

    diagonal = []
    done_rows = set()
    done_cols = set()
    while True:
        pivot = None
        best = None
        for i, r in row.items():
            if i in done_rows or not r:
                continue
            for j, v in r.items():
                if j in done_cols:
                    continue
                score = (abs(v), (len(r) - 1) * (len(col[j]) - 1), i, j)
                if best is None or score < best:
                    best = score
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        while True:
            # clear the pivot column
            cleared = False
            while True:
                others = [i for i in col.get(j0, set()) if i != i0 and i not in done_rows]
                if not others:
                    break
                for i in others:
                    p = row[i0][j0]
                    a = row[i].get(j0, 0)
                    if a == 0:
                        continue
                    if a % p == 0:
                        row_addmul(i, i0, -(a // p))
                    else:
                        g = math.gcd(p, a)
                        # x p + y a = g (extended euclid)
                        x, y = _bezout(p, a)
                        row_combine(i0, i, x, y, -(a // g), p // g)
            # clear the pivot row
            while True:
                others = [j for j in row.get(i0, {}) if j != j0 and j not in done_cols]
                if not others:
                    break
                for j in others:
                    p = row[i0][j0]
                    a = row[i0].get(j, 0)
                    if a == 0:
                        continue
                    if a % p == 0:
                        col_addmul(j, j0, -(a // p))
                    else:
                        g = math.gcd(p, a)
                        x, y = _bezout(p, a)
                        col_combine(j0, j, x, y, -(a // g), p // g)
            # both clean?
            col_dirty = any(i != i0 and i not in done_rows
                            for i in col.get(j0, set()))
            row_dirty = any(j != j0 and j not in done_cols
                            for j in row.get(i0, {}))
            if col_dirty or row_dirty:
                continue
            # divisibility: pivot must divide every remaining entry
            p = row[i0][j0]
            offender = None
            for i, r in row.items():
                if i in done_rows or i == i0:
                    continue
                for j, v in r.items():
                    if j in done_cols or j == j0:
                        continue
                    if v % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(i0, offender, 1)
        p = row[i0][j0]
        if p < 0:
            row_addmul(i0, i0, -2)  # negate the row: r += -2r
        diagonal.append(abs(p))
        done_rows.add(i0)
        done_cols.add(j0)
    return SNFResult(diagonal, rows, cols, U, V)


def _bezout(a, b):
    """(x, y) with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_x, -old_y
    return old_x, old_y


def rank_over_rationals(entries, rows, cols):
    """Rank by dense Gaussian elimination with Fractions (independent of SNF)."""
    M = [[Fraction(0)] * cols for _ in range(rows)]
    for (i, j), v in entries.items():
        M[i][j] = Fraction(v)
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if M[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def boundary_matrices(C):
    """Sparse boundary maps; entry ((row=face index in dim n-1), (col=dim n)).

    The composite of consecutive boundaries is asserted to vanish.
    """
    index = [
        {f: i for i, f in enumerate(fs)} for fs in C.faces_by_dim
    ]
    mats = []
    for n in range(1, len(C.faces_by_dim)):
        entries = {}
        for j, f in enumerate(C.faces_by_dim[n]):
            for k in range(len(f)):
                sub = f[:k] + f[k + 1:]
                entries[(index[n - 1][sub], j)] = (-1) ** k
        mats.append(entries)
    for n in range(len(mats) - 1):
        _assert_composite_zero(mats[n], mats[n + 1])
    return mats


def _assert_composite_zero(d_low, d_high):
    by_col_high = defaultdict(list)
    for (i, j), v in d_high.items():
        by_col_high[j].append((i, v))
    by_col_low = defaultdict(list)
    for (i, j), v in d_low.items():
        by_col_low[j].append((i, v))
    for j, col in by_col_high.items():
        acc = defaultdict(int)
        for mid, v in col:
            for i, w in by_col_low.get(mid, ()):
                acc[i] += v * w
        if any(acc.values()):
            raise TheoryViolation("boundary composite nonzero", witness=j)


class HomologyResult:
    """Unreduced integral homology: per degree a (betti, torsion-tuple) pair."""

    def __init__(self, groups, empty=False):
        self.groups = [(b, tuple(t)) for b, t in groups]
        self.empty = empty
        while self.groups and self.groups[-1] == (0, ()):
            self.groups.pop()

    def betti(self, n):
        return self.groups[n][0] if n < len(self.groups) else 0

    def torsion(self, n):
        return self.groups[n][1] if n < len(self.groups) else ()

    def euler_characteristic(self):
        return sum((-1) ** n * b for n, (b, _t) in enumerate(self.groups))

    def __eq__(self, other):
        return isinstance(other, HomologyResult) and self.groups == other.groups

    def __repr__(self):
        if self.empty:
            return "HomologyResult(empty complex)"
        parts = []
        for n, (b, tor) in enumerate(self.groups):
            term = f"Z^{b}" if b else ""
            if tor:
                term += ("+" if term else "") + "+".join(f"Z/{d}" for d in tor)
            parts.append(f"H{n}={term or '0'}")
        return "HomologyResult(" + ", ".join(parts) + ")"


def homology(C, snf=smith_normal_form):
    """Unreduced integral homology of a simplicial complex via Smith forms."""
    if C.is_empty():
        return HomologyResult([], empty=True)
    mats = boundary_matrices(C)
    counts = C.face_counts()
    snf_results = [snf(m, counts[n], counts[n + 1])
                   for n, m in enumerate(mats)]
    groups = []
    for n in range(len(counts)):
        rank_dn = snf_results[n - 1].rank if n >= 1 else 0
        rank_dn1 = snf_results[n].rank if n < len(snf_results) else 0
        betti = counts[n] - rank_dn - rank_dn1
        torsion = snf_results[n].torsion() if n < len(snf_results) else []
        groups.append((betti, tuple(torsion)))
    return HomologyResult(groups)


def homology_betti_rational(C):
    """Betti numbers by rational ranks only (oracle for the SNF route)."""
    if C.is_empty():
        return []
    mats = boundary_matrices(C)
    counts = C.face_counts()
    ranks = [rank_over_rationals(m, counts[n], counts[n + 1])
             for n, m in enumerate(mats)]
    out = []
    for n in range(len(counts)):
        rank_dn = ranks[n - 1] if n >= 1 else 0
        rank_dn1 = ranks[n] if n < len(ranks) else 0
        out.append(counts[n] - rank_dn - rank_dn1)
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# certificates


@dataclass
class EquivalenceCertificate:
    """Checkable sufficient conditions for an equivariant homotopy equivalence.

    For poset maps F: X -> Y and H: Y -> X the conditions are: both maps
    order-preserving and equivariant on generators, and each round trip
    comparable to the identity pointwise in one uniform direction.
    """

    ok: bool
    forward_order_preserving: bool
    backward_order_preserving: bool
    forward_equivariant: bool
    backward_equivariant: bool
    roundtrip_x: str | None   # "id<=HF", "HF<=id", "id=HF", or None on failure
    roundtrip_y: str | None
    failures: list = field(default_factory=list)


def _order_preserving(X, Y, fmap, failures, tag):
    ok = True
    for i in range(X.n):
        m = X.up[i]
        j = 0
        while m:
            if m & 1 and not Y.leq(fmap[i], fmap[j]):
                failures.append((tag, "order", X.labels[i], X.labels[j]))
                ok = False
            m >>= 1
            j += 1
    return ok


def _equivariant(X, Y, fmap, failures, tag):
    ok = True
    for a_x, a_y in zip(X.action, Y.action):
        for i in range(X.n):
            if fmap[a_x[i]] != a_y[fmap[i]]:
                failures.append((tag, "equivariance", X.labels[i]))
                ok = False
    return ok


def _uniform_direction(X, roundtrip, failures, tag):
    """Compare x with roundtrip(x) pointwise; require one uniform direction."""
    saw_up = saw_down = False
    for i in range(X.n):
        j = roundtrip[i]
        if i == j:
            continue
        up = X.leq(i, j)
        down = X.leq(j, i)
        if up:
            saw_up = True
        elif down:
            saw_down = True
        else:
            failures.append((tag, "incomparable", X.labels[i]))
            return None
    if saw_up and saw_down:
        failures.append((tag, "mixed directions"))
        return None
    if saw_up:
        return "id<=" + tag
    if saw_down:
        return tag + "<=id"
    return "id=" + tag


def quillen_pair_check(X, Y, fmap, hmap):
    """Certificate for an inverse pair of equivariant poset maps.

    fmap: X -> Y and hmap: Y -> X as index lists.  Passing means: both maps
    order-preserving, both equivariant on generators, and both round trips
    uniformly comparable with the identity.
    """
    failures = []
    f_ord = _order_preserving(X, Y, fmap, failures, "F")
    h_ord = _order_preserving(Y, X, hmap, failures, "H")
    f_eq = _equivariant(X, Y, fmap, failures, "F")
    h_eq = _equivariant(Y, X, hmap, failures, "H")
    rt_x = _uniform_direction(X, [hmap[fmap[i]] for i in range(X.n)],
                              failures, "HF")
    rt_y = _uniform_direction(Y, [fmap[hmap[i]] for i in range(Y.n)],
                              failures, "FH")
    ok = all([f_ord, h_ord, f_eq, h_eq, rt_x is not None, rt_y is not None])
    return EquivalenceCertificate(ok, f_ord, h_ord, f_eq, h_eq, rt_x, rt_y,
                                  failures)


def poset_iso_check(X, Y, fmap):
    """Is fmap an isomorphism of posets? Returns (flag, witness-or-None)."""
    if X.n != Y.n:
        return False, ("size", X.n, Y.n)
    if sorted(fmap) != list(range(Y.n)):
        return False, ("not a bijection",)
    for i in range(X.n):
        for j in range(X.n):
            if X.leq(i, j) != Y.leq(fmap[i], fmap[j]):
                return False, ("order", X.labels[i], X.labels[j])
    return True, None
