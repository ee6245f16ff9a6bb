"""Grothendieck-Witt groups of finite fields, R and C, and their Gysin functors.

Over F_q (q odd) a class is stored as ``(rank, eps)`` meaning
``rank*<1> + eps*alpha`` with ``alpha = <g> - <1>`` for the field's chosen
non-square g.  The relations ``2 alpha = 0`` and ``alpha^2 = 0`` make the
additive group Z + Z/2 and fix the product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gysin import gset
from gysin.errors import DegenerateFormError, InvalidArgument, UnsupportedBaseError
from gysin.ffield import build_field, determinant, diagonalize, embed_field
from gysin.functor import GysinFunctor


class GWClass:
    """Base for the three concrete GW class types."""

    variant = None

    def __rmul__(self, n):
        if isinstance(n, int):
            return self.scale(n)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)


class FFClass(GWClass):
    """rank*<1> + eps*alpha in GW(F_{p^d})."""

    __slots__ = ("rank", "eps", "p", "d")
    variant = "ff"

    def __init__(self, rank, eps, p, d):
        self.rank = rank
        self.eps = eps % 2
        self.p = p
        self.d = d

    def _same(self, other):
        if not isinstance(other, FFClass):
            raise InvalidArgument(f"GW variant mismatch: ff vs {getattr(other, 'variant', other)}")
        if self.p != other.p or self.d != other.d:
            raise InvalidArgument(f"classes over F_{self.p}^{self.d} and F_{other.p}^{other.d}")

    def __add__(self, other):
        self._same(other)
        return FFClass(self.rank + other.rank, self.eps + other.eps, self.p, self.d)

    def __neg__(self):
        return FFClass(-self.rank, self.eps, self.p, self.d)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        return FFClass(self.rank * other.rank,
                       self.rank * other.eps + other.rank * self.eps, self.p, self.d)

    def scale(self, n):
        return FFClass(n * self.rank, n * self.eps, self.p, self.d)

    def __eq__(self, other):
        if not isinstance(other, FFClass):
            return NotImplemented
        return (self.rank == other.rank and self.eps == other.eps
                and self.p == other.p and self.d == other.d)

    def __hash__(self):
        return hash((self.rank, self.eps, self.p, self.d))

    def __repr__(self):
        return f"FFClass(rank={self.rank}, eps={self.eps}, p={self.p}, d={self.d})"

    def to_json(self):
        return {"variant": "ff", "rank": self.rank, "eps": self.eps, "p": self.p, "d": self.d}


@dataclass(frozen=True)
class RealClass(GWClass):
    """plus*<1> + minus*<-1> in GW(R)."""

    plus: int
    minus: int

    variant = "r"

    def _same(self, other):
        if not isinstance(other, RealClass):
            raise InvalidArgument("GW variant mismatch: r")

    def __add__(self, other):
        self._same(other)
        return RealClass(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self):
        return RealClass(-self.plus, -self.minus)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        a, b, c, d = self.plus, self.minus, other.plus, other.minus
        return RealClass(a * c + b * d, a * d + b * c)

    def scale(self, n):
        return RealClass(n * self.plus, n * self.minus)

    def to_json(self):
        return {"variant": "r", "plus": self.plus, "minus": self.minus}


@dataclass(frozen=True)
class ComplexClass(GWClass):
    rank: int

    variant = "c"

    def _same(self, other):
        if not isinstance(other, ComplexClass):
            raise InvalidArgument("GW variant mismatch: c")

    def __add__(self, other):
        self._same(other)
        return ComplexClass(self.rank + other.rank)

    def __neg__(self):
        return ComplexClass(-self.rank)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        return ComplexClass(self.rank * other.rank)

    def scale(self, n):
        return ComplexClass(n * self.rank)

    def to_json(self):
        return {"variant": "c", "rank": self.rank}


def gw_from_json(data):
    v = data.get("variant")
    if v == "ff":
        return FFClass(data["rank"], data["eps"], data["p"], data["d"])
    if v == "r":
        return RealClass(data["plus"], data["minus"])
    if v == "c":
        return ComplexClass(data["rank"])
    raise InvalidArgument(f"unknown GW variant {v!r}")


def gw_mul(a, b):
    if type(a) is not type(b):
        raise InvalidArgument(f"GW variant mismatch: {a.variant} vs {b.variant}")
    return a * b


def ff_unit(p, d=1):
    return FFClass(1, 0, p, d)


def ff_g(p, d=1):
    """<g> = <1> + alpha."""
    return FFClass(1, 1, p, d)


def ff_alpha(p, d=1):
    return FFClass(0, 1, p, d)


def format_ff(c, style="alpha", ascii=False):
    """Render an FF class; ``style`` is "alpha" (n<1>+alpha) or "diag" ((n-1)<1>+<g>)."""
    one = "<1>" if ascii else "⟨1⟩"
    g = "<g>" if ascii else "⟨g⟩"
    alpha = "alpha" if ascii else "α"

    def mult(n, sym):
        return sym if n == 1 else f"{n}{sym}"

    n, eps = c.rank, c.eps
    if style == "diag" and n >= 1:
        if not eps:
            return mult(n, one)
        return g if n == 1 else f"{mult(n - 1, one)}+{g}"
    if n == 0:
        return alpha if eps else "0"
    return f"{mult(n, one)}+{alpha}" if eps else mult(n, one)


def format_real(c, ascii=False):
    one, mone = ("<1>", "<-1>") if ascii else ("⟨1⟩", "⟨−1⟩")
    parts = []
    for n, sym in ((c.plus, one), (c.minus, mone)):
        if n:
            parts.append(sym if n == 1 else f"{n}{sym}")
    return "+".join(parts) or "0"


def format_class(c, ascii=False):
    if isinstance(c, FFClass):
        return format_ff(c, ascii=ascii)
    if isinstance(c, RealClass):
        return format_real(c, ascii=ascii)
    return str(c.rank)


# -- quadratic spaces ------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticSpace:
    field: object
    gram: tuple

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise InvalidArgument("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise InvalidArgument("Gram matrix must be symmetric")

    @property
    def dim(self):
        return len(self.gram)

    @classmethod
    def diagonal(cls, F, entries):
        n = len(entries)
        return cls(F, [[entries[i] if i == j else F.zero for j in range(n)] for i in range(n)])

    def to_json(self):
        """Row-major Gram matrix of coefficient vectors (low degree first)."""
        F = self.field
        return {"p": F.p, "d": F.d, "modulus": list(F.modulus),
                "gram": [[list(v) for v in row] for row in self.gram]}

    @classmethod
    def from_json(cls, data):
        F = build_field(data["p"], data.get("d", 1))
        if "modulus" in data and tuple(data["modulus"]) != F.modulus:
            raise InvalidArgument("Gram matrix was written over a different modulus")
        gram = [[tuple(int(c) % F.p for c in v) for v in row] for row in data["gram"]]
        if any(len(v) != F.d for row in gram for v in row):
            raise InvalidArgument(f"entries must have {F.d} coefficients")
        return cls(F, gram)

    def __add__(self, other):
        F, n, m = self.field, self.dim, other.dim
        rows = [list(r) + [F.zero] * m for r in self.gram]
        rows += [[F.zero] * n + list(r) for r in other.gram]
        return QuadraticSpace(F, rows)

    def __mul__(self, other):
        """Tensor product: Kronecker product of Gram matrices."""
        F = self.field
        rows = [[F.mul(a, b) for a in ra for b in rb] for ra in self.gram for rb in other.gram]
        return QuadraticSpace(F, rows)


def classify_gram(Q):
    """(rank, eps) with eps = 0 iff the determinant is a square."""
    F = Q.field
    det = determinant(F, Q.gram)
    if det == F.zero:
        raise DegenerateFormError("Gram matrix is degenerate")
    return FFClass(Q.dim, 0 if F.is_square(det) else 1, F.p, F.d)


def classify_by_diagonalization(Q):
    """Second route: diagonalize, then count non-square diagonal entries."""
    F = Q.field
    diag = diagonalize(F, Q.gram)
    return FFClass(Q.dim, sum(not F.is_square(u) for u in diag), F.p, F.d)


def realize(c, F):
    """A diagonal quadratic space over F in the class c (rank must be >= 0)."""
    if c.rank < 0 or (c.rank == 0 and c.eps):
        raise InvalidArgument("only effective classes have a Gram realization")
    entries = [F.one] * c.rank
    if c.eps:
        entries[-1] = F.nonsquare
    return QuadraticSpace.diagonal(F, entries)


# -- closed forms for F_q -> F_{q^e} ---------------------------------------------

def _check_e(e):
    if not isinstance(e, int) or e < 1:
        raise InvalidArgument(f"extension degree must be >= 1, got {e!r}")


def j_star(a, e):
    """Extension of scalars along F_q -> F_{q^e}: alpha survives only for odd e."""
    _check_e(e)
    return FFClass(a.rank, a.eps if e % 2 else 0, a.p, a.d * e)


def j_shriek(a, e):
    """Trace transfer F_{q^e} -> F_q: <1> |-> e<1> (+alpha if e even), alpha |-> alpha."""
    _check_e(e)
    if a.d % e:
        raise InvalidArgument(f"degree {a.d} is not divisible by {e}")
    even = 1 if e % 2 == 0 else 0
    return FFClass(a.rank * e, a.rank * even + a.eps, a.p, a.d // e)


def euler_characteristic(p, e):
    """chi(F_{q^e}) = e<1> + eps_e alpha in GW(F_q), with eps_e = 1 iff e is even."""
    if p % 2 == 0:
        raise InvalidArgument("p must be odd")
    _check_e(e)
    return FFClass(e, 1 if e % 2 == 0 else 0, p, 1)


# -- independent oracles (never call j_star / j_shriek) ------------------------

def trace_transfer_oracle(entries, sub, sup):
    """Scharlau transfer of the diagonal form <u_1, ..., u_n> over sup down to sub.

    Builds the Gram matrix tr(u x^i x^j) over sub on the basis
    1, x, ..., x^{e-1}, computing the trace as a sum of Frobenius iterates,
    and classifies it.
    """
    emb = embed_field(sub, sup)
    e = sup.d // sub.d
    xs, t = [], sup.one
    for _ in range(e):
        xs.append(t)
        t = sup.mul(t, sup.gen)
    total = None
    for u in entries:
        gram = [[emb.preimage(sup.trace_frobenius(sup.mul(u, sup.mul(xi, xj)), sub.d))
                 for xj in xs] for xi in xs]
        c = classify_gram(QuadraticSpace(sub, gram))
        total = c if total is None else total + c
    return total if total is not None else FFClass(0, 0, sub.p, sub.d)


def transfer_oracle_class(c, sub, sup):
    """Oracle transfer of a class over sup, realized as <1,...,1[,h]>."""
    return trace_transfer_oracle(list(realize(c, sup).gram[i][i] for i in range(c.rank)), sub, sup)


def extension_oracle(c, sub, sup):
    """Oracle for scalar extension: embed a diagonal realization and classify over sup."""
    emb = embed_field(sub, sup)
    Q = realize(c, sub)
    return classify_gram(QuadraticSpace(sup, [[emb(v) for v in row] for row in Q.gram]))


# -- Gysin functors ---------------------------------------------------------------

class GWAlgebraElem:
    """Element of GW of a product of fields: one class per orbit of ``base``."""

    __slots__ = ("base", "components")

    def __init__(self, base, components):
        self.base = base
        self.components = tuple(components)
        if len(self.components) != len(base.orbits):
            raise InvalidArgument("need one component per orbit")

    def _zip(self, other, op):
        if isinstance(other, int):
            other = other * one_like(self)
        if not isinstance(other, GWAlgebraElem) or other.base != self.base:
            raise InvalidArgument("GW elements over different bases")
        return GWAlgebraElem(self.base, [op(a, b) for a, b in zip(self.components, other.components)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return GWAlgebraElem(self.base, [-a for a in self.components])

    def __mul__(self, other):
        if isinstance(other, int):
            return GWAlgebraElem(self.base, [a.scale(other) for a in self.components])
        return self._zip(other, lambda a, b: a * b)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self == other * one_like(self)
        if not isinstance(other, GWAlgebraElem):
            return NotImplemented
        return self.base == other.base and self.components == other.components

    def __hash__(self):
        return hash((self.base, self.components))

    def is_zero(self):
        return all(c == c.scale(0) for c in self.components)

    def __repr__(self):
        return "(" + ", ".join(format_class(c, ascii=True) for c in self.components) + ")"


def one_like(a):
    return GWAlgebraElem(a.base, [_unit_like(c) for c in a.components])


def _unit_like(c):
    if isinstance(c, FFClass):
        return FFClass(1, 0, c.p, c.d)
    if isinstance(c, RealClass):
        return RealClass(1, 0)
    return ComplexClass(1)


@lru_cache(maxsize=4096)
def _orbit_map(f):
    """For each source orbit: (target orbit index, source size, target size)."""
    yidx, yorbs = f.dst.orbit_index, f.dst.orbits
    out = []
    for orb in f.src.orbits:
        j = yidx[f.table[orb[0]]]
        out.append((j, len(orb), len(yorbs[j])))
    return tuple(out)


class _OrbitwiseGW(GysinFunctor):
    """Shared machinery: E(X) = prod over orbits, maps determined orbit by orbit."""

    def unit_class(self, size):
        raise NotImplementedError

    def restrict(self, b, src_size, dst_size):
        """Pullback of a class along an orbit map of sizes src_size -> dst_size."""
        raise NotImplementedError

    def transfer(self, a, src_size, dst_size):
        raise NotImplementedError

    def random_class(self, size, rng):
        raise NotImplementedError

    def class_generators(self, size):
        raise NotImplementedError

    def one(self, X):
        return GWAlgebraElem(X, [self.unit_class(len(o)) for o in X.orbits])

    def zero(self, X):
        return GWAlgebraElem(X, [self.unit_class(len(o)).scale(0) for o in X.orbits])

    def pullback(self, f, b):
        if b.base != f.dst:
            raise InvalidArgument("element does not live over the target of f")
        bc = b.components
        return GWAlgebraElem(f.src, [self.restrict(bc[j], m, n) for j, m, n in _orbit_map(f)])

    def pushforward(self, f, a):
        if a.base != f.src:
            raise InvalidArgument("element does not live over the source of f")
        comps = list(self.zero(f.dst).components)
        for c, (j, m, n) in zip(a.components, _orbit_map(f)):
            comps[j] = comps[j] + self.transfer(c, m, n)
        return GWAlgebraElem(f.dst, comps)

    def additive_generators(self, X):
        zero = self.zero(X)
        gens = []
        for i, orb in enumerate(X.orbits):
            for c in self.class_generators(len(orb)):
                comps = list(zero.components)
                comps[i] = c
                gens.append(GWAlgebraElem(X, comps))
        return gens

    def random_element(self, X, rng):
        return GWAlgebraElem(X, [self.random_class(len(o), rng) for o in X.orbits])

    def element_to_json(self, a, base_id=None):
        return {"base": base_id, "components": [c.to_json() for c in a.components]}

    def element_from_json(self, X, data, resolve=None):
        if isinstance(data, int):
            return data * self.one(X)
        comps = [gw_from_json(c) for c in data["components"]]
        expected = self.one(X).components
        for c, u in zip(comps, expected):
            if type(c) is not type(u) or (isinstance(c, FFClass) and (c.p, c.d) != (u.p, u.d)):
                raise InvalidArgument("component does not match the orbit's field")
        return GWAlgebraElem(X, comps)

    def format_element(self, a, ascii=False):
        return "(" + ", ".join(format_class(c, ascii=ascii) for c in a.components) + ")"


class FiniteFieldGW(_OrbitwiseGW):
    """GW_L on finite Z/n-sets for L = F_{p^n}: an orbit of size d is F_{p^d}.

    Field automorphisms act trivially on GW(F_q), so pullback and transfer
    along an orbit map only depend on the degree ratio.
    """

    def __init__(self, p, n):
        if not isinstance(p, int) or p % 2 == 0:
            raise InvalidArgument(f"p must be odd, got {p!r}")
        build_field(p, 1)  # rejects non-primes
        super().__init__(gset.cyclic_group(n))
        self.p = p
        self.n = n
        self.name = f"gw:{p}"

    def unit_class(self, size):
        return FFClass(1, 0, self.p, size)

    def restrict(self, b, src_size, dst_size):
        if src_size == dst_size:
            return b
        return j_star(b, src_size // dst_size)

    def transfer(self, a, src_size, dst_size):
        if src_size == dst_size:
            return a
        return j_shriek(a, src_size // dst_size)

    def random_class(self, size, rng):
        return FFClass(rng.randint(-2, 3), rng.randint(0, 1), self.p, size)

    def class_generators(self, size):
        return [FFClass(1, 0, self.p, size), FFClass(0, 1, self.p, size)]


def gw_gysin_on_cyclic_gsets(p, n):
    return FiniteFieldGW(p, n)


class RealComplexGW(_OrbitwiseGW):
    """GW on finite Z/2-sets via Gal(C/R): fixed points are R, free orbits are C."""

    name = "rc"

    def __init__(self):
        super().__init__(gset.cyclic_group(2))

    def unit_class(self, size):
        return RealClass(1, 0) if size == 1 else ComplexClass(1)

    def restrict(self, b, src_size, dst_size):
        if src_size == 2 and dst_size == 1:
            return ComplexClass(b.plus + b.minus)
        return b

    def transfer(self, a, src_size, dst_size):
        if src_size == 2 and dst_size == 1:
            return RealClass(a.rank, a.rank)
        return a

    def random_class(self, size, rng):
        if size == 1:
            return RealClass(rng.randint(-2, 2), rng.randint(-2, 2))
        return ComplexClass(rng.randint(-2, 2))

    def class_generators(self, size):
        if size == 1:
            return [RealClass(1, 0), RealClass(0, 1)]
        return [ComplexClass(1)]


def gw_real_complex_instance():
    return RealComplexGW()


def gw_over(base, n=None):
    """GW functor for a named base: "F_p" (Gal(F_{p^n}/F_p)-sets) or "R"."""
    name = str(base).strip()
    if name.upper() == "R":
        return RealComplexGW()
    if name.upper().startswith("F_") or name.upper().startswith("F"):
        p = int(name.lstrip("Ff_"))
        return FiniteFieldGW(p, n or 1)
    raise UnsupportedBaseError(f"no GW model for base {base!r} (only F_p and R are supported)")


def chi_generates(classes):
    """Whether FF classes generate GW(F_p) = Z + Z/2 as an abelian group.

    The subgroup generated lifts to the lattice spanned by the (rank, eps)
    vectors together with (0, 2); it is everything iff the gcd of all 2x2
    minors is 1.
    """
    from math import gcd
    vecs = [(c.rank, c.eps) for c in classes] + [(0, 2)]
    g = 0
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            (a, b), (c, d) = vecs[i], vecs[j]
            g = gcd(g, a * d - b * c)
    return g == 1
