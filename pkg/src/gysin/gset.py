"""Finite groups, finite G-sets and equivariant maps.

Everything is stored as dense integer tables.  Group elements are indices
``0..order-1`` with the identity at 0; a G-set of size ``m`` is the table
``act[g][x]``.  Products and pullbacks order their points lexicographically
(first factor major), so every construction is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from gysin.errors import InvalidArgument


class FiniteGroup:
    """A finite group given by its multiplication table."""

    __slots__ = ("mul", "inv", "name", "_hash")

    def __init__(self, mul, name=None, check=True):
        self.mul = tuple(tuple(row) for row in mul)
        n = len(self.mul)
        if n == 0:
            raise InvalidArgument("a group has at least one element")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == 0:
                    inv[a] = b
                    break
        if None in inv:
            raise InvalidArgument("multiplication table has no inverses")
        self.inv = tuple(inv)
        self.name = name
        self._hash = hash(self.mul)
        if check:
            self.check()

    @property
    def order(self):
        return len(self.mul)

    def check(self):
        n, m = self.order, self.mul
        for row in m:
            if len(row) != n or sorted(row) != list(range(n)):
                raise InvalidArgument("rows of a group table must be permutations")
        for x in range(n):
            if m[0][x] != x or m[x][0] != x:
                raise InvalidArgument("element 0 must be the identity")
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise InvalidArgument("multiplication is not associative")

    def conjugate(self, H, g):
        """The subgroup g H g^-1 as a sorted tuple."""
        m, gi = self.mul, self.inv[g]
        return tuple(sorted(m[m[g][h]][gi] for h in H))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._hash == other._hash and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def to_json(self):
        return {"order": self.order, "mul": [list(r) for r in self.mul]}

    @classmethod
    def from_json(cls, data, name=None):
        mul = data["mul"]
        if len(mul) != data["order"]:
            raise InvalidArgument("order does not match table size")
        return cls(mul, name=name)


def cyclic_group(n):
    """Z/n with a*b = (a+b) mod n."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"cyclic group needs n >= 1, got {n!r}")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       name=f"Z/{n}", check=False)


def symmetric_group(n):
    """S_n on permutations listed lexicographically (identity first).

    Composition is (s*t)(i) = s(t(i)).
    """
    if n < 1:
        raise InvalidArgument("symmetric group needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    return FiniteGroup(mul, name=f"S{n}", check=False)


def closure(G, gens):
    """Subgroup generated by ``gens``, as a sorted tuple."""
    seen = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def subgroups(G):
    """All subgroups of G, sorted by (order, elements)."""
    found = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for H in frontier:
            hs = set(H)
            for g in range(G.order):
                if g not in hs:
                    K = closure(G, H + (g,))
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), H))


class GSet:
    """A finite set with a left action of a finite group."""

    __slots__ = ("group", "act", "_hash", "_cache")

    def __init__(self, group, act, check=True):
        self.group = group
        self.act = tuple(tuple(row) for row in act)
        if len(self.act) != group.order:
            raise InvalidArgument("action table needs one row per group element")
        self._hash = hash((group._hash, self.act))
        self._cache = {}
        if check:
            self.check()

    @property
    def size(self):
        return len(self.act[0])

    def __len__(self):
        return len(self.act[0])

    def check(self):
        G, act, m = self.group, self.act, self.size
        for row in act:
            if len(row) != m or sorted(row) != list(range(m)):
                raise InvalidArgument("each group element must act by a permutation")
        if any(act[0][x] != x for x in range(m)):
            raise InvalidArgument("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul[g][h]
                ag, ah, agh = act[g], act[h], act[gh]
                for x in range(m):
                    if ag[ah[x]] != agh[x]:
                        raise InvalidArgument("action is not compatible with multiplication")

    def stabilizer(self, x):
        stabs = self._cache.get("stab")
        if stabs is None:
            act = self.act
            stabs = tuple(
                tuple(g for g in range(self.group.order) if act[g][y] == y)
                for y in range(self.size))
            self._cache["stab"] = stabs
        return stabs[x]

    @property
    def orbit_index(self):
        """Tuple giving, for each point, the index of its orbit."""
        idx = self._cache.get("orbit_index")
        if idx is None:
            idx = [-1] * self.size
            count = 0
            for x in range(self.size):
                if idx[x] < 0:
                    for g in range(self.group.order):
                        idx[self.act[g][x]] = count
                    count += 1
            idx = tuple(idx)
            self._cache["orbit_index"] = idx
        return idx

    @property
    def orbits(self):
        """Orbits as sorted tuples of points, ordered by minimal element."""
        orbs = self._cache.get("orbits")
        if orbs is None:
            buckets = {}
            for x, i in enumerate(self.orbit_index):
                buckets.setdefault(i, []).append(x)
            orbs = tuple(tuple(buckets[i]) for i in range(len(buckets)))
            self._cache["orbits"] = orbs
        return orbs

    def is_transitive(self):
        return self.size > 0 and len(self.orbits) == 1

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GSet):
            return NotImplemented
        return self._hash == other._hash and self.group == other.group and self.act == other.act

    def __hash__(self):
        return self._hash

    def __repr__(self):
        sizes = [len(o) for o in self.orbits]
        return f"GSet({self.group!r}, size={self.size}, orbits={sizes})"

    def to_json(self, group_id=None):
        return {"group": group_id, "size": self.size, "act": [list(r) for r in self.act]}

    @classmethod
    def from_json(cls, data, group):
        act = data["act"]
        if any(len(row) != data["size"] for row in act):
            raise InvalidArgument("size does not match action table")
        if data["size"] == 0:
            act = [[] for _ in range(group.order)]
        return cls(group, act)


class GMap:
    """An equivariant map between G-sets."""

    __slots__ = ("src", "dst", "table", "_hash")

    def __init__(self, src, dst, table, check=True):
        self.src = src
        self.dst = dst
        self.table = tuple(table)
        self._hash = hash((src._hash, dst._hash, self.table))
        if check:
            self.check()

    def check(self):
        if self.src.group != self.dst.group:
            raise InvalidArgument("source and target have different groups")
        if len(self.table) != self.src.size:
            raise InvalidArgument("table length must equal source size")
        if any(not 0 <= y < self.dst.size for y in self.table):
            raise InvalidArgument("table entry out of range")
        t, a, b = self.table, self.src.act, self.dst.act
        for g in range(self.src.group.order):
            ag, bg = a[g], b[g]
            for x in range(self.src.size):
                if t[ag[x]] != bg[t[x]]:
                    raise InvalidArgument("map is not equivariant")

    def __call__(self, x):
        return self.table[x]

    def __matmul__(self, other):
        """Composition: ``(g @ f)(x) == g(f(x))``."""
        if other.dst != self.src:
            raise InvalidArgument("maps are not composable")
        t = self.table
        return GMap(other.src, self.dst, [t[y] for y in other.table], check=False)

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_bijective(self):
        return self.src.size == self.dst.size and self.is_injective()

    def inverse(self):
        if not self.is_bijective():
            raise InvalidArgument("map is not invertible")
        inv = [0] * len(self.table)
        for x, y in enumerate(self.table):
            inv[y] = x
        return GMap(self.dst, self.src, inv, check=False)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GMap):
            return NotImplemented
        return (self._hash == other._hash and self.table == other.table
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GMap({list(self.table)})"

    def to_json(self, src_id=None, dst_id=None):
        return {"src": src_id, "dst": dst_id, "table": list(self.table)}

    @classmethod
    def from_json(cls, data, src, dst):
        return cls(src, dst, data["table"])


# -- basic objects ---------------------------------------------------------

def terminal(G):
    """The one-point G-set *."""
    return GSet(G, [[0]] * G.order, check=False)


def empty(G):
    return GSet(G, [[] for _ in range(G.order)], check=False)


def identity_map(X):
    return GMap(X, X, range(X.size), check=False)


def to_terminal(X):
    return GMap(X, terminal(X.group), [0] * X.size, check=False)


@lru_cache(maxsize=None)
def coset_gset(G, H):
    """G/H with cosets ordered by their minimal element (so H itself is 0)."""
    H = tuple(sorted(H))
    index = {}
    reps = []
    for g in range(G.order):
        if g in index:
            continue
        k = len(reps)
        reps.append(g)
        for h in H:
            index[G.mul[g][h]] = k
    act = [[index[G.mul[g][r]] for r in reps] for g in range(G.order)]
    return GSet(G, act, check=False)


def regular_gset(G):
    return coset_gset(G, (0,))


def _same_group(X, Y):
    if X.group != Y.group:
        raise InvalidArgument("G-sets over different groups")


# -- limits and colimits ---------------------------------------------------

@lru_cache(maxsize=4096)
def product_gset(X, Y):
    """X x Y with the diagonal action; point (x, y) has index x*|Y| + y."""
    _same_group(X, Y)
    m, n = X.size, Y.size
    act = [[ax[x] * n + ay[y] for x in range(m) for y in range(n)]
           for ax, ay in zip(X.act, Y.act)]
    P = GSet(X.group, act, check=False)
    p1 = GMap(P, X, [x for x in range(m) for _ in range(n)], check=False)
    p2 = GMap(P, Y, [y for _ in range(m) for y in range(n)], check=False)
    return P, p1, p2


@lru_cache(maxsize=4096)
def coproduct_gset(X, Y):
    """X + Y with the X-block first."""
    _same_group(X, Y)
    m = X.size
    act = [list(ax) + [m + y for y in ay] for ax, ay in zip(X.act, Y.act)]
    S = GSet(X.group, act, check=False)
    i0 = GMap(X, S, range(m), check=False)
    i1 = GMap(Y, S, range(m, m + Y.size), check=False)
    return S, i0, i1


@lru_cache(maxsize=4096)
def pullback_gset(f, g):
    """Pullback of A -f-> C <-g- B: pairs (a, b) with f(a) = g(b), lexicographic."""
    if f.dst != g.dst:
        raise InvalidArgument("pullback needs maps with a common codomain")
    A, B = f.src, g.src
    fibres = {}
    for b, c in enumerate(g.table):
        fibres.setdefault(c, []).append(b)
    pairs = [(a, b) for a, c in enumerate(f.table) for b in fibres.get(c, ())]
    index = {pq: i for i, pq in enumerate(pairs)}
    act = [[index[(aa[a], ab[b])] for a, b in pairs] for aa, ab in zip(A.act, B.act)]
    P = GSet(A.group, act, check=False)
    p = GMap(P, A, [a for a, _ in pairs], check=False)
    q = GMap(P, B, [b for _, b in pairs], check=False)
    return P, p, q


def pairing(f, g):
    """The map A -> X x Y induced by f: A -> X and g: A -> Y."""
    if f.src != g.src:
        raise InvalidArgument("pairing needs maps with a common source")
    P, _, _ = product_gset(f.dst, g.dst)
    n = g.dst.size
    return GMap(f.src, P, [x * n + y for x, y in zip(f.table, g.table)], check=False)


def product_map(f, g):
    """f x g : A x B -> X x Y."""
    A, _, _ = product_gset(f.src, g.src)
    P, _, _ = product_gset(f.dst, g.dst)
    n = g.dst.size
    return GMap(A, P, [x * n + y for x in f.table for y in g.table], check=False)


def coproduct_map(f, g):
    """f + g : A + B -> X + Y."""
    S, _, _ = coproduct_gset(f.src, g.src)
    T, _, _ = coproduct_gset(f.dst, g.dst)
    m = f.dst.size
    return GMap(S, T, list(f.table) + [m + y for y in g.table], check=False)


def swap_map(X, Y):
    """t : X x Y -> Y x X."""
    P, _, _ = product_gset(X, Y)
    Q, _, _ = product_gset(Y, X)
    m, n = X.size, Y.size
    return GMap(P, Q, [y * m + x for x in range(m) for y in range(n)], check=False)


def diagonal(X):
    P, _, _ = product_gset(X, X)
    n = X.size
    return GMap(X, P, [x * n + x for x in range(n)], check=False)


def orbit_decompose(X):
    """List of (transitive G-set, inclusion) pairs, one per orbit."""
    out = []
    for orb in X.orbits:
        pos = {x: i for i, x in enumerate(orb)}
        act = [[pos[row[x]] for x in orb] for row in X.act]
        O = GSet(X.group, act, check=False)
        out.append((O, GMap(O, X, orb, check=False)))
    return out


# -- hom sets ----------------------------------------------------------------

def _orbit_images(X, Y, r):
    """Points y of Y that the orbit representative r may be sent to."""
    st = X.stabilizer(r)
    return [y for y in range(Y.size) if all(Y.act[g][y] == y for g in st)]


def _extend(X, Y, r, y, table):
    for g in range(X.group.order):
        table[X.act[g][r]] = Y.act[g][y]


def hom_set(X, Y):
    """All equivariant maps X -> Y, sorted by table."""
    _same_group(X, Y)
    reps = [orb[0] for orb in X.orbits]
    choices = [_orbit_images(X, Y, r) for r in reps]
    maps = []
    for pick in itertools.product(*choices):
        table = [0] * X.size
        for r, y in zip(reps, pick):
            _extend(X, Y, r, y, table)
        maps.append(GMap(X, Y, table, check=False))
    maps.sort(key=lambda f: f.table)
    return maps


def aut_group(X):
    """Equivariant bijections X -> X."""
    return [f for f in hom_set(X, X) if f.is_bijective()]


def is_galois(X):
    """Whether the transitive G-set X satisfies  coprod_{s in Aut X} X = X x X."""
    if not X.is_transitive():
        return False
    auts = aut_group(X)
    n = X.size
    if len(auts) * n != n * n:
        return False
    image = {(x, s.table[x]) for s in auts for x in range(n)}
    return len(image) == n * n


def iso_test(X, Y):
    """An equivariant bijection X -> Y, or None."""
    _same_group(X, Y)
    if X.size != Y.size:
        return None
    xo, yo = X.orbits, Y.orbits
    if sorted(map(len, xo)) != sorted(map(len, yo)):
        return None
    used = [False] * len(yo)
    picks = [None] * len(xo)

    def search(i):
        if i == len(xo):
            return True
        r = xo[i][0]
        st = X.stabilizer(r)
        for j, orb in enumerate(yo):
            if used[j] or len(orb) != len(xo[i]):
                continue
            for y in orb:
                if Y.stabilizer(y) == st:
                    used[j] = True
                    picks[i] = y
                    if search(i + 1):
                        return True
                    used[j] = False
                    break  # any point with the right stabilizer gives the same matching
        return False

    if not search(0):
        return None
    table = [0] * X.size
    for orb, y in zip(xo, picks):
        _extend(X, Y, orb[0], y, table)
    return GMap(X, Y, table, check=False)


# -- random instances (for property suites) --------------------------------

def random_gset(G, rng, max_orbits=3, max_size=12, allow_empty=False):
    """A coproduct of random coset spaces."""
    subs = [H for H in subgroups(G)]
    lo = 0 if allow_empty else 1
    while True:
        k = rng.randint(lo, max_orbits)
        X = empty(G)
        for _ in range(k):
            H = rng.choice(subs)
            X, _, _ = coproduct_gset(X, coset_gset(G, H))
        if X.size <= max_size:
            return X


def random_gmap(X, Y, rng):
    """A random equivariant map X -> Y, or None when none exists."""
    table = [0] * X.size
    for orb in X.orbits:
        cands = _orbit_images(X, Y, orb[0])
        if not cands:
            return None
        _extend(X, Y, orb[0], rng.choice(cands), table)
    return GMap(X, Y, table, check=False)
