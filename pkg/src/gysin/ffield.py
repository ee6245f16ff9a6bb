"""Finite fields F_{p^d} of odd characteristic.

Elements are tuples ``(c_0, ..., c_{d-1})`` of integers mod p standing for
``c_0 + c_1 x + ... + c_{d-1} x^{d-1}`` modulo the field's monic modulus.
The enumeration index of an element is ``sum(c_i p^i)``; "least" always
refers to this index.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from gysin.errors import DegenerateFormError, InvalidArgument


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p (low degree first, no trailing zeros) -------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(c % p for c in a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _monic_polys(p, deg):
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for q in _monic_polys(p, k):
            if not poly_mod(m, q, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p, d):
    """Least monic irreducible of degree d, comparing coefficient lists low degree first."""
    for coeffs in itertools.product(range(p), repeat=d):
        m = list(coeffs) + [1]
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FqField:
    """The field F_p[x]/(modulus) together with a chosen non-square."""

    def __init__(self, p, d, modulus=None):
        self.p = p
        self.d = d
        self.q = p ** d
        self.modulus = tuple(modulus) if modulus is not None else least_irreducible(p, d)
        if len(self.modulus) != d + 1 or self.modulus[-1] != 1:
            raise InvalidArgument("modulus must be monic of degree d")
        # x^k mod modulus for k in [d, 2d-2]
        self._red = {}
        for k in range(d, 2 * d - 1):
            r = poly_mod([0] * k + [1], self.modulus, p)
            self._red[k] = tuple(r + [0] * (d - len(r)))
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        self.nonsquare = self._least_nonsquare()

    def __repr__(self):
        return f"F_{self.p}^{self.d}"

    def __eq__(self, other):
        return (isinstance(other, FqField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- enumeration
    def from_int(self, k):
        out = []
        for _ in range(self.d):
            k, r = divmod(k, self.p)
            out.append(r)
        return tuple(out)

    def to_int(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a))

    def elements(self):
        return (self.from_int(k) for k in range(self.q))

    def scalar(self, c):
        return (c % self.p,) + (0,) * (self.d - 1)

    @property
    def gen(self):
        """The class of x."""
        return self.from_int(self.p) if self.d > 1 else self.zero

    # -- arithmetic
    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._red[k]):
                    out[i] += c * r
        return tuple(c % p for c in out)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def is_square(self, a):
        """Euler's criterion; 0 counts as a square."""
        if a == self.zero:
            return True
        return self.pow(a, (self.q - 1) // 2) == self.one

    def _least_nonsquare(self):
        for k in range(1, self.q):
            a = self.from_int(k)
            if not self.is_square(a):
                return a
        raise AssertionError("no non-square")  # pragma: no cover

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def trace_frobenius(self, a, sub_degree=1):
        """Relative trace to the degree-``sub_degree`` subfield: sum of Frobenius iterates."""
        if self.d % sub_degree:
            raise InvalidArgument("subfield degree must divide field degree")
        qs = self.p ** sub_degree
        total, t = self.zero, a
        for _ in range(self.d // sub_degree):
            total = self.add(total, t)
            t = self.pow(t, qs)
        return total

    @lru_cache(maxsize=None)
    def primitive_element(self):
        primes = prime_factors(self.q - 1)
        for k in range(1, self.q):
            w = self.from_int(k)
            if all(self.pow(w, (self.q - 1) // r) != self.one for r in primes):
                return w
        raise AssertionError("no primitive element")  # pragma: no cover

    def subfield_elements(self, sub_degree):
        """Elements of the unique subfield of degree ``sub_degree``."""
        if self.d % sub_degree:
            raise InvalidArgument("subfield degree must divide field degree")
        qs = self.p ** sub_degree
        u = self.pow(self.primitive_element(), (self.q - 1) // (qs - 1))
        out, t = [self.zero], self.one
        for _ in range(qs - 1):
            out.append(t)
            t = self.mul(t, u)
        return out

    def eval_poly(self, coeffs, a):
        """Evaluate a polynomial with F_p coefficients at a."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), self.scalar(c))
        return acc


@lru_cache(maxsize=None)
def build_field(p, d):
    """F_{p^d} with the least monic irreducible modulus and least non-square."""
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise InvalidArgument(f"p must be an odd prime (characteristic 2 unsupported), got {p!r}")
    if not isinstance(d, int) or d < 1:
        raise InvalidArgument(f"degree must be >= 1, got {d!r}")
    return FqField(p, d)


# -- embeddings ----------------------------------------------------------------

class Embedding:
    """A field homomorphism sub -> sup fixed by the image of sub's generator."""

    def __init__(self, sub, sup, root):
        self.sub, self.sup, self.root = sub, sup, root
        powers, t = [], sup.one
        for _ in range(sub.d):
            powers.append(t)
            t = sup.mul(t, root)
        self._powers = powers
        self._pre = None

    def __call__(self, a):
        sup = self.sup
        out = sup.zero
        for c, r in zip(a, self._powers):
            if c:
                out = sup.add(out, sup.mul(sup.scalar(c), r))
        return out

    def preimage(self, b):
        if self._pre is None:
            self._pre = {self(a): a for a in self.sub.elements()}
        try:
            return self._pre[b]
        except KeyError:
            raise InvalidArgument(f"{b} is not in the image of {self.sub}") from None

    def __matmul__(self, other):
        """Composite ``self o other``."""
        if other.sup != self.sub:
            raise InvalidArgument("embeddings are not composable")
        return Embedding(other.sub, self.sup, self(other.root))

    def table(self):
        return [self(a) for a in self.sub.elements()]

    def check(self):
        """Brute-force additivity and multiplicativity over all pairs."""
        elems = list(self.sub.elements())
        for a in elems:
            for b in elems:
                if self(self.sub.add(a, b)) != self.sup.add(self(a), self(b)):
                    return False
                if self(self.sub.mul(a, b)) != self.sup.mul(self(a), self(b)):
                    return False
        return self(self.sub.one) == self.sup.one


def roots_in(sub, sup):
    """Roots of sub.modulus inside sup, least first."""
    if sub.p != sup.p or sup.d % sub.d:
        raise InvalidArgument(f"{sub} does not embed in {sup}")
    cands = sup.subfield_elements(sub.d)
    roots = [r for r in cands if sup.eval_poly(sub.modulus, r) == sup.zero]
    return sorted(roots, key=sup.to_int)


def embed_field(sub, sup):
    """The embedding sending sub's generator to the least root of its modulus in sup."""
    if sub.p != sup.p or sup.d % sub.d:
        raise InvalidArgument(f"{sub} does not embed in {sup}: degree {sub.d} does not divide {sup.d}")
    if sub == sup:
        return Embedding(sub, sup, sup.gen)
    return Embedding(sub, sup, roots_in(sub, sup)[0])


def relative_trace_matrix(emb, a):
    """Relative trace of a in sup over sub, as the trace of multiplication by a.

    Uses the sub-basis 1, x, ..., x^{e-1} of sup (x generates sup over F_p,
    hence over sub) and returns an element of sub.
    """
    sub, sup = emb.sub, emb.sup
    e = sup.d // sub.d
    p = sup.p
    xs, t = [], sup.one
    for _ in range(e):
        xs.append(t)
        t = sup.mul(t, sup.gen)
    ys = [emb(sub.from_int(sub.p ** k)) if sub.d > 1 else sup.one for k in range(sub.d)]
    # F_p basis of sup: y_k * x^j, flattened with index j*sub.d + k
    basis = [sup.mul(y, x) for x in xs for y in ys]
    inv = _inverse_mod_p([list(col) for col in zip(*basis)], p)
    total = [0] * sub.d
    for j, x in enumerate(xs):
        z = sup.mul(a, x)
        coords = [sum(inv[r][c] * z[c] for c in range(sup.d)) % p for r in range(sup.d)]
        for k in range(sub.d):
            total[k] = (total[k] + coords[j * sub.d + k]) % p
    return tuple(total)


def _inverse_mod_p(M, p):
    n = len(M)
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] % p), None)
        if piv is None:
            raise InvalidArgument("basis is linearly dependent")
        A[col], A[piv] = A[piv], A[col]
        iv = pow(A[col][col], p - 2, p)
        A[col] = [v * iv % p for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                c = A[r][col]
                A[r] = [(v - c * w) % p for v, w in zip(A[r], A[col])]
    return [row[n:] for row in A]


def determinant(F, M):
    """Determinant of a square matrix over F by Gaussian elimination."""
    n = len(M)
    A = [list(row) for row in M]
    det = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = F.neg(det)
        det = F.mul(det, A[col][col])
        iv = F.inv(A[col][col])
        for r in range(col + 1, n):
            if A[r][col] != F.zero:
                c = F.mul(A[r][col], iv)
                A[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(A[r], A[col])]
    return det


def diagonalize(F, M):
    """Diagonal entries of a congruent diagonal form of the symmetric matrix M.

    Uses symmetric row/column operations; a zero pivot is repaired with
    e_i <- e_i + e_j, which works because the characteristic is odd.
    """
    A = [list(row) for row in M]
    n = len(A)
    diag = []
    for i in range(n):
        if A[i][i] == F.zero:
            j = next((j for j in range(i + 1, n) if A[j][j] != F.zero), None)
            if j is not None:
                A[i], A[j] = A[j], A[i]
                for row in A:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if A[i][j] != F.zero), None)
                if j is None:
                    raise DegenerateFormError("form is degenerate")
                A[i] = [F.add(a, b) for a, b in zip(A[i], A[j])]
                for row in A:
                    row[i] = F.add(row[i], row[j])
        piv = A[i][i]
        iv = F.inv(piv)
        for r in range(i + 1, n):
            c = F.mul(A[r][i], iv)
            if c != F.zero:
                A[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(A[r], A[i])]
                for row in A:
                    row[r] = F.sub(row[r], F.mul(c, row[i]))
        diag.append(piv)
    return diag
