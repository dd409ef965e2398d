"""Arithmetic over GF(p^d), univariate polynomials, and exact linear algebra.

Field elements are plain Python values so they stay cheap to hash and store
in sparse supports: residues (ints) for prime fields, coefficient tuples of
length d for extensions.  A field object carries the operations.

Polynomials are coefficient lists over a field, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  The integer encoding of a
polynomial over GF(p) is ``sum(c_i * p^i)``; "least" irreducible always means
least under this encoding, which puts low-degree coefficients in low
positions.

Matrices are lists of rows of field values.  Everything is exact; there is no
floating point anywhere in this module.
"""

from __future__ import annotations

import random


class PrimeField:
    """GF(p) with elements the ints 0..p-1."""

    def __init__(self, p):
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.d = 1
        self.q = p
        self.zero = 0
        self.one = 1
        self.modulus = None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return self.inv(self.pow(a, -n))
        return pow(a, n, self.p)

    def frobenius(self, a):
        return a  # a^p = a in GF(p)

    def from_int(self, n):
        return n % self.p

    def to_int(self, a):
        return a

    def elements(self):
        return range(self.p)

    def rand(self, rng):
        return rng.randrange(self.p)

    def encode(self, a):
        return a

    def decode(self, obj):
        return obj % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p, 1))


class ExtensionField:
    """GF(p^d), d >= 2, as GF(p)[x] modulo the least irreducible of degree d.

    Elements are tuples of d residues, lowest degree first.
    """

    def __init__(self, p, d, modulus=None):
        if d < 2:
            raise ValueError("use PrimeField for d = 1")
        self.base = PrimeField(p)
        self.p = p
        self.d = d
        self.q = p ** d
        if modulus is None:
            modulus = least_irreducible(p, d)
        self.modulus = tuple(modulus)  # ints, length d+1, monic
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)

    def _reduce(self, coeffs):
        # coeffs: list of ints, any length; reduce mod modulus, return length-d tuple
        p, d = self.p, self.d
        coeffs = [c % p for c in coeffs]
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d + 1):
                    coeffs[i - d + j] = (coeffs[i - d + j] - c * self.modulus[j]) % p
        coeffs = coeffs[:d]
        coeffs += [0] * (d - len(coeffs))
        return tuple(coeffs)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        d = self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def pow(self, a, n):
        if n < 0:
            return self.inv(self.pow(a, -n))
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero field element")
        return self.pow(a, self.q - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.d - 1)

    def to_int(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a))

    def elements(self):
        # enumerate in increasing integer encoding
        for n in range(self.q):
            yield self.decode(n)

    def rand(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.d))

    def encode(self, a):
        return self.to_int(a)

    def decode(self, obj):
        if isinstance(obj, int):
            coeffs = []
            for _ in range(self.d):
                coeffs.append(obj % self.p)
                obj //= self.p
            return tuple(coeffs)
        return tuple(int(c) % self.p for c in obj)

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and other.p == self.p and other.d == self.d)

    def __hash__(self):
        return hash(("GF", self.p, self.d))


def field_context(p, d=1):
    return PrimeField(p) if d == 1 else ExtensionField(p, d)


# ---------------------------------------------------------------------------
# polynomials over GF(p) with int coefficients (used for moduli)


def _int_poly_trim(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _int_poly_mod(f, g, p):
    f = _int_poly_trim(f, p)
    g = _int_poly_trim(g, p)
    if not g:
        raise ZeroDivisionError("mod by zero polynomial")
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg:
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        while f and f[-1] == 0:
            f.pop()
    return f


def _int_poly_gcd(f, g, p):
    f = _int_poly_trim(f, p)
    g = _int_poly_trim(g, p)
    while g:
        f, g = g, _int_poly_mod(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(c * inv) % p for c in f]
    return f


def _int_poly_powmod(base, n, mod, p):
    result = [1]
    base = _int_poly_mod(base, mod, p)
    while n:
        if n & 1:
            result = _int_poly_mod(_int_poly_mul(result, base, p), mod, p)
        base = _int_poly_mod(_int_poly_mul(base, base, p), mod, p)
        n >>= 1
    return result


def _int_poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def _is_irreducible_int(f, p):
    """Rabin test for a monic polynomial over GF(p) with int coefficients."""
    n = len(f) - 1
    if n <= 0:
        return False
    # x^(p^n) = x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for prime r | n
    x = [0, 1]
    xq = _int_poly_powmod(x, p ** n, f, p)
    diff = _int_poly_sub(xq, x, p)
    if any(c % p for c in diff):
        return False
    for r in _prime_divisors(n):
        xq = _int_poly_powmod(x, p ** (n // r), f, p)
        g = _int_poly_gcd(f, _int_poly_sub(xq, x, p), p)
        if len(g) - 1 != 0:
            return False
    return True


def _int_poly_sub(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return out


def _prime_divisors(n):
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def least_irreducible(p, d):
    """The monic irreducible of degree d over GF(p) least under integer encoding."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    # monic: leading coefficient 1; scan lower coefficients by encoding order
    for n in range(p ** d):
        coeffs = []
        m = n
        for _ in range(d):
            coeffs.append(m % p)
            m //= p
        f = coeffs + [1]
        if _is_irreducible_int(f, p):
            return tuple(f)
    raise RuntimeError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# polynomials over an arbitrary field object


def poly_trim(f, F):
    while f and f[-1] == F.zero:
        f.pop()
    return f


def poly_add(f, g, F):
    out = [F.zero] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return poly_trim(out, F)


def poly_sub(f, g, F):
    out = [F.zero] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = F.sub(out[i], c)
    return poly_trim(out, F)


def poly_mul(f, g, F):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != F.zero:
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out, F)


def poly_scale(f, c, F):
    return poly_trim([F.mul(a, c) for a in f], F)


def poly_divmod(f, g, F):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    quot = [F.zero] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = F.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dg
        quot[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] = F.sub(f[shift + i], F.mul(c, gc))
        poly_trim(f, F)
    return poly_trim(quot, F), f


def poly_mod(f, g, F):
    return poly_divmod(f, g, F)[1]


def poly_gcd(f, g, F):
    f, g = list(f), list(g)
    while g:
        f, g = g, poly_mod(f, g, F)
    return poly_monic(f, F)


def poly_monic(f, F):
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def poly_invmod(f, m, F):
    """s with s*f = 1 mod m, by the extended Euclidean algorithm."""
    r0, r1 = list(m), poly_mod(f, m, F)
    s0, s1 = [], [F.one]
    while r1:
        q, r = poly_divmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, F), F)
    if len(r0) - 1 != 0:
        raise ValueError("polynomial not invertible modulo m")
    return poly_mod(poly_scale(s0, F.inv(r0[0]), F), m, F)


def poly_powmod(base, n, mod, F):
    result = [F.one]
    base = poly_mod(base, mod, F)
    while n:
        if n & 1:
            result = poly_mod(poly_mul(result, base, F), mod, F)
        base = poly_mod(poly_mul(base, base, F), mod, F)
        n >>= 1
    return result


def poly_eval(f, x, F):
    """Horner evaluation at a field point."""
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_deriv(f, F):
    out = []
    for i in range(1, len(f)):
        # i * f[i] in the field: add f[i] to itself i mod p times
        s = F.zero
        for _ in range(i % F.p):
            s = F.add(s, f[i])
        out.append(s)
    return poly_trim(out, F)


def poly_encode(f, F):
    """Canonical integer for ordering factor lists."""
    n = 0
    for c in reversed(f):
        n = n * F.q + F.encode(c)
    return n


def _squarefree_decomposition(f, F):
    """[(g_i, m_i)] with f = prod g_i^{m_i} (up to the unit), g_i squarefree, m_i distinct."""
    out = []
    f = poly_monic(f, F)

    def rec(f, mult):
        if len(f) <= 1:
            return
        df = poly_deriv(f, F)
        if not df:
            # f = h(x^p); take p-th roots of coefficients (Frobenius inverse)
            root = []
            for i in range(0, len(f), F.p):
                c = f[i]
                # c^(q/p) is the p-th root in GF(q)
                root.append(F.pow(c, F.q // F.p))
            rec(poly_trim(root, F), mult * F.p)
            return
        g = poly_gcd(f, df, F)
        w, _ = poly_divmod(f, g, F)  # squarefree part
        m = 1
        while len(w) > 1:
            y = poly_gcd(w, g, F)
            part, _ = poly_divmod(w, y, F)
            if len(part) > 1:
                out.append((poly_monic(part, F), mult * m))
            w = y
            g, _ = poly_divmod(g, y, F)
            m += 1
        if len(g) > 1:
            rec(g, mult)

    rec(f, 1)
    return out


def _distinct_degree(f, F):
    """[(product-of-irreducibles-of-degree-k, k)] for squarefree monic f."""
    out = []
    x = [F.zero, F.one]
    h = x
    k = 0
    f = list(f)
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = poly_powmod(h, F.q, f, F)
        g = poly_gcd(poly_sub(h, x, F), f, F)
        if len(g) > 1:
            out.append((g, k))
            f, _ = poly_divmod(f, g, F)
            h = poly_mod(h, f, F)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree_split(f, k, F, rng):
    """All degree-k irreducible factors of f (Cantor-Zassenhaus, seeded rng)."""
    n = len(f) - 1
    if n == k:
        return [f]
    while True:
        a = [F.rand(rng) for _ in range(n)]
        a = poly_trim(a, F)
        if len(a) <= 1:
            continue
        if F.p == 2:
            # trace map over GF(2): a + a^2 + a^4 + ... (q^k = 2^(d*k) summands)
            t = a
            acc = a
            steps = F.d * k
            for _ in range(steps - 1):
                t = poly_mod(poly_mul(t, t, F), f, F)
                acc = poly_add(acc, t, F)
            g = poly_gcd(acc, f, F)
        else:
            e = (F.q ** k - 1) // 2
            b = poly_powmod(a, e, f, F)
            g = poly_gcd(poly_sub(b, [F.one], F), f, F)
        if 0 < len(g) - 1 < n:
            left, _ = poly_divmod(f, g, F)
            return (_equal_degree_split(poly_monic(g, F), k, F, rng)
                    + _equal_degree_split(poly_monic(left, F), k, F, rng))


def poly_factor(f, F, seed=0x5EED):
    """Monic irreducible factors with multiplicities, deterministically ordered.

    The product of the factors times the leading coefficient of f reproduces f
    exactly; the rng for equal-degree splitting is seeded so output is stable.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    factors = []
    for g, mult in _squarefree_decomposition(f, F):
        for h, k in _distinct_degree(g, F):
            for irr in _equal_degree_split(poly_monic(h, F), k, F, rng):
                factors.append((poly_monic(irr, F), mult))
    factors.sort(key=lambda fm: (len(fm[0]), poly_encode(fm[0], F), fm[1]))
    return factors


def poly_is_irreducible(f, F):
    if len(f) - 1 <= 0:
        return False
    fac = poly_factor(f, F)
    return len(fac) == 1 and fac[0][1] == 1


# ---------------------------------------------------------------------------
# exact linear algebra over a field object


def identity_matrix(n, F):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_mul(A, B, F):
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    out = [[F.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a != F.zero:
                Bt = B[t]
                Oi = out[i]
                for j in range(m):
                    if Bt[j] != F.zero:
                        Oi[j] = F.add(Oi[j], F.mul(a, Bt[j]))
    return out


def mat_vec(A, v, F):
    out = []
    for row in A:
        s = F.zero
        for a, x in zip(row, v):
            if a != F.zero and x != F.zero:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def mat_pow(A, n, F):
    size = len(A)
    result = identity_matrix(size, F)
    base = [row[:] for row in A]
    while n:
        if n & 1:
            result = mat_mul(result, base, F)
        base = mat_mul(base, base, F)
        n >>= 1
    return result


def rref(A, F):
    """(reduced matrix, pivot column list); A is not modified."""
    M = [row[:] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if M[i][c] != F.zero:
                pivot = i
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != F.zero:
                factor = M[i][c]
                M[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A, F):
    return len(rref(A, F)[1])


def solve(A, b, F):
    """One solution x of A x = b, or raise ValueError if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [A[i][:] + [b[i]] for i in range(rows)]
    M, pivots = rref(aug, F)
    for i in range(rows):
        if all(x == F.zero for x in M[i][:cols]) and M[i][cols] != F.zero:
            raise ValueError("inconsistent linear system")
    x = [F.zero] * cols
    for r, c in enumerate(pivots):
        if c < cols:
            x[c] = M[r][cols]
    return x


def nullspace_basis(A, F):
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M, pivots = rref(A, F)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [F.zero] * cols
        v[free] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(M[r][free])
        basis.append(v)
    return basis


def image_basis(A, F):
    """Basis of the column space, as column vectors."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    transposed = [[A[i][j] for i in range(rows)] for j in range(cols)]
    M, pivots = rref(transposed, F)
    return [M[r] for r in range(len(pivots))]


def stable_image(A, F):
    """Basis of the image of A^n, n = dimension (the Fitting/eventual image)."""
    n = len(A)
    if n == 0:
        return []
    An = mat_pow(A, n, F)
    return image_basis(An, F)


def in_span(basis, v, F):
    """Is v in the row span of basis? (basis rows assumed, not necessarily reduced)"""
    if not basis:
        return all(x == F.zero for x in v)
    M = [row[:] for row in basis] + [list(v)]
    return rank(M, F) == rank(basis, F)
