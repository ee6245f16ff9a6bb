"""The Burnside functor A(X): integer combinations of classes [S -> X].

A transitive ``S -> X`` is determined up to isomorphism over X by the
G-orbit of the pair (image point, stabilizer) of any point of S, where G
acts on pairs by ``g.(x, H) = (g x, g H g^-1)``.  The basis key of the
class is the lexicographically least pair in that orbit; ``as_map``
rebuilds the canonical transitive G-set ``G/H`` and its map to X.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import NamedTuple

from gysin import gset
from gysin.errors import InvalidArgument
from gysin.functor import GysinFunctor


class BasisKey(NamedTuple):
    point: int
    stab: tuple

    def as_map(self, base):
        """The canonical map G/stab -> base sending the coset H to ``point``."""
        G = base.group
        S = gset.coset_gset(G, self.stab)
        table = [0] * S.size
        for g in range(G.order):
            table[S.act[g][0]] = base.act[g][self.point]
        return gset.GMap(S, base, table, check=False)


def canonical_key(base, x, H):
    G = base.group
    return min(BasisKey(base.act[g][x], G.conjugate(H, g)) for g in range(G.order))


def _orbit_keys(f):
    S = f.src
    for orb in S.orbits:
        yield min(BasisKey(f.table[s], S.stabilizer(s)) for s in orb)


class BurnsideElem:
    """An element of A(base) as a finitely supported map key -> integer."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs=None):
        self.base = base
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}

    def _check(self, other):
        if not isinstance(other, BurnsideElem):
            raise InvalidArgument("expected a Burnside element")
        if other.base != self.base:
            raise InvalidArgument("Burnside elements over different bases")

    def __add__(self, other):
        if isinstance(other, int):
            return self + other * burnside_one(self.base)
        self._check(other)
        out = Counter(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] += c
        return BurnsideElem(self.base, out)

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElem(self.base, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElem(self.base, {k: other * c for k, c in self.coeffs.items()})
        self._check(other)
        out = Counter()
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                a, b = (k1, k2) if k1 <= k2 else (k2, k1)
                for k, c in _mul_keys(self.base, a, b).items():
                    out[k] += c1 * c2 * c
        return BurnsideElem(self.base, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self == burnside_one(self.base) * other
        if not isinstance(other, BurnsideElem):
            return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def terms(self):
        """(key, coeff) pairs in key order."""
        return sorted(self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*[{k.point}|{list(k.stab)}]" for k, c in self.terms()]
        return " + ".join(parts)


def burnside_canonicalize(f):
    """The class [f: S -> X] written in the canonical basis."""
    return BurnsideElem(f.dst, Counter(_orbit_keys(f)))


@lru_cache(maxsize=None)
def burnside_one(X):
    return burnside_canonicalize(gset.identity_map(X))


@lru_cache(maxsize=None)
def _mul_keys(base, k1, k2):
    f1, f2 = k1.as_map(base), k2.as_map(base)
    _, p, _ = gset.pullback_gset(f1, f2)
    return dict(Counter(_orbit_keys(f1 @ p)))


@lru_cache(maxsize=None)
def _pull_key(f, key):
    g = key.as_map(f.dst)
    _, p, _ = gset.pullback_gset(f, g)
    return dict(Counter(_orbit_keys(p)))


@lru_cache(maxsize=None)
def _push_key(f, key):
    return canonical_key(f.dst, f.table[key.point], key.stab)


def burnside_mul(a, b):
    return a * b


def burnside_pullback(f, b):
    """f^*(b): pull every basis class back along f and re-canonicalize."""
    if b.base != f.dst:
        raise InvalidArgument("element does not live over the target of f")
    out = Counter()
    for key, c in b.coeffs.items():
        for k, m in _pull_key(f, key).items():
            out[k] += c * m
    return BurnsideElem(f.src, out)


def burnside_pushforward(f, a):
    """f_!(a): post-compose every basis class with f."""
    if a.base != f.src:
        raise InvalidArgument("element does not live over the source of f")
    out = Counter()
    for key, c in a.coeffs.items():
        out[_push_key(f, key)] += c
    return BurnsideElem(f.dst, out)


@lru_cache(maxsize=None)
def burnside_basis(X):
    """Canonical keys of all transitive classes over X."""
    keys = set()
    G = X.group
    for orb in X.orbits:
        x = orb[0]
        st = set(X.stabilizer(x))
        for H in gset.subgroups(G):
            if st.issuperset(H):
                keys.add(canonical_key(X, x, H))
    return tuple(sorted(keys))


class BurnsideFunctor(GysinFunctor):
    """The universal Gysin functor on finite G-sets."""

    name = "burnside"

    def one(self, X):
        return burnside_one(X)

    def zero(self, X):
        return BurnsideElem(X)

    def pullback(self, f, b):
        return burnside_pullback(f, b)

    def pushforward(self, f, a):
        return burnside_pushforward(f, a)

    def additive_generators(self, X):
        return [BurnsideElem(X, {k: 1}) for k in burnside_basis(X)]

    def random_element(self, X, rng):
        basis = burnside_basis(X)
        if not basis:
            return self.zero(X)
        coeffs = Counter()
        for _ in range(rng.randint(1, 3)):
            coeffs[rng.choice(basis)] += rng.randint(-2, 2)
        return BurnsideElem(X, coeffs)

    def element_to_json(self, a, base_id=None):
        terms = []
        for k, c in a.terms():
            f = k.as_map(a.base)
            terms.append({"orbit": f.src.to_json(), "map": list(f.table), "coeff": c})
        return {"base": base_id, "terms": terms}

    def element_from_json(self, X, data, resolve=None):
        """Accepts an integer n (n * 1) or {"terms": [{"orbit", "map", "coeff"}]}.

        ``orbit`` is either an inline G-set object or an id looked up
        through ``resolve``.
        """
        if isinstance(data, int):
            return data * self.one(X)
        total = self.zero(X)
        for term in data["terms"]:
            orbit = term["orbit"]
            if isinstance(orbit, dict):
                S = gset.GSet.from_json(orbit, X.group)
            elif resolve is not None:
                S = resolve(orbit)
            else:
                raise InvalidArgument(f"cannot resolve orbit {orbit!r}")
            f = gset.GMap(S, X, term["map"])
            total = total + term.get("coeff", 1) * burnside_canonicalize(f)
        return total

    def format_element(self, a, ascii=False):
        if a.is_zero():
            return "0"
        G = a.base.group
        parts = []
        for k, c in a.terms():
            index = G.order // len(k.stab)
            label = f"[{index}->{k.point}]"
            parts.append(label if c == 1 else f"{c}{label}")
        return " + ".join(parts)
