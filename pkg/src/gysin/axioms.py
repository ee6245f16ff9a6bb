"""Randomized verification of the Gysin functor axioms on finite instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from gysin import gset

DEFAULT_SEED = 0xC0FFEE


@dataclass
class AxiomResult:
    axiom: str
    status: str = "pass"
    checked: int = 0
    seed: int = DEFAULT_SEED
    counterexample: dict | None = None

    @property
    def passed(self):
        return self.status == "pass"

    def fail(self, **data):
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = {k: repr(v) for k, v in data.items()}

    def to_json(self):
        return {"axiom": self.axiom, "status": self.status,
                "counterexample": self.counterexample,
                "checked": self.checked, "seed": self.seed}


@dataclass
class InstanceSampler:
    """Random G-sets, maps and elements for one functor."""

    E: object
    rng: random.Random
    max_orbits: int = 2
    max_size: int = 8

    def gset(self, allow_empty=False):
        return gset.random_gset(self.E.group, self.rng, self.max_orbits,
                                self.max_size, allow_empty=allow_empty)

    def gmap(self, Y=None):
        """A random map X -> Y (Y random unless given)."""
        if Y is None:
            Y = self.gset()
        for _ in range(20):
            X = self.gset()
            f = gset.random_gmap(X, Y, self.rng)
            if f is not None:
                return f
        # an orbit inclusion always exists
        _, inc = gset.orbit_decompose(Y)[self.rng.randrange(len(Y.orbits))]
        return inc

    def iso(self, X):
        perm = list(range(X.size))
        self.rng.shuffle(perm)
        act = [[0] * X.size for _ in range(X.group.order)]
        for g, row in enumerate(X.act):
            for x in range(X.size):
                act[g][perm[x]] = perm[row[x]]
        Y = gset.GSet(X.group, act, check=False)
        return gset.GMap(X, Y, perm, check=False)

    def elem(self, X):
        return self.E.random_element(X, self.rng)


def verify_gysin_axioms(E, budget=100, seed=DEFAULT_SEED, max_size=8, max_orbits=2):
    """Check the Gysin axioms and their standard consequences on random instances.

    Returns a list of :class:`AxiomResult`, one per named property.
    """
    rng = random.Random(seed)
    s = InstanceSampler(E, rng, max_orbits=max_orbits, max_size=max_size)
    G = E.group
    results = {}

    def res(name):
        if name not in results:
            results[name] = AxiomResult(name, seed=seed)
        return results[name]

    r = res("zero")
    Z = gset.empty(G)
    r.checked += 1
    if E.one(Z) != E.zero(Z):
        r.fail(one=E.one(Z))

    for _ in range(budget):
        # behaviour on sums, and the round trip through (i0)_! + (i1)_!
        X, Y = s.gset(allow_empty=True), s.gset(allow_empty=True)
        S, i0, i1 = gset.coproduct_gset(X, Y)
        a, b = s.elem(S), s.elem(S)
        r = res("sum")
        r.checked += 1
        if a != E.pushforward(i0, E.pullback(i0, a)) + E.pushforward(i1, E.pullback(i1, a)):
            r.fail(X=X, Y=Y, a=a)
        for i in (i0, i1):
            if E.pullback(i, a * b) != E.pullback(i, a) * E.pullback(i, b):
                r.fail(X=X, Y=Y, a=a, b=b, note="restriction not multiplicative")
        x, y = s.elem(X), s.elem(Y)
        r = res("gysin-sum")
        r.checked += 1
        z = E.pushforward(i0, x) + E.pushforward(i1, y)
        if E.pullback(i0, z) != x or E.pullback(i1, z) != y:
            r.fail(X=X, Y=Y, x=x, y=y)

        # push-product
        f, g = s.gmap(), s.gmap()
        a, b = s.elem(f.src), s.elem(g.src)
        r = res("push-product")
        r.checked += 1
        lhs = E.pushforward(gset.product_map(f, g), E.external(a, b))
        rhs = E.external(E.pushforward(f, a), E.pushforward(g, b))
        if lhs != rhs:
            r.fail(f=f, g=g, a=a, b=b)

        # push-pull on a random pullback square
        q = s.gmap()
        g = s.gmap(q.dst)
        P, p, f = gset.pullback_gset(g, q)
        c = s.elem(g.src)
        r = res("push-pull")
        r.checked += 1
        if E.pushforward(f, E.pullback(p, c)) != E.pullback(q, E.pushforward(g, c)):
            r.fail(g=g, q=q, c=c)

        # projection formula
        f = s.gmap()
        alpha, beta = s.elem(f.src), s.elem(f.dst)
        r = res("projection")
        r.checked += 1
        if E.pushforward(f, alpha * E.pullback(f, beta)) != E.pushforward(f, alpha) * beta:
            r.fail(f=f, alpha=alpha, beta=beta)

        # (f x_X g)_!(1) = f_!(1) g_!(1)
        f = s.gmap()
        g = s.gmap(f.dst)
        P, p, _ = gset.pullback_gset(f, g)
        r = res("gysin-product")
        r.checked += 1
        lhs = E.pushforward(f @ p, E.one(P))
        rhs = E.pushforward(f, E.one(f.src)) * E.pushforward(g, E.one(g.src))
        if lhs != rhs:
            r.fail(f=f, g=g)

        # functoriality of both variances, and pullback as a ring map
        g = s.gmap()
        f = s.gmap(g.src)
        a, b = s.elem(g.dst), s.elem(f.src)
        r = res("functoriality")
        r.checked += 1
        gf = g @ f
        if E.pullback(gf, a) != E.pullback(f, E.pullback(g, a)):
            r.fail(f=f, g=g, a=a, note="pullback")
        if E.pushforward(gf, b) != E.pushforward(g, E.pushforward(f, b)):
            r.fail(f=f, g=g, b=b, note="pushforward")
        idX = gset.identity_map(f.src)
        if E.pullback(idX, b) != b or E.pushforward(idX, b) != b:
            r.fail(b=b, note="identity")
        a2 = s.elem(g.dst)
        if (E.pullback(g, a * a2) != E.pullback(g, a) * E.pullback(g, a2)
                or E.pullback(g, E.one(g.dst)) != E.one(g.src)):
            r.fail(g=g, a=a, a2=a2, note="ring map")

        # isomorphisms: f_! = (f^*)^-1
        X = s.gset()
        f = s.iso(X)
        a = s.elem(X)
        r = res("iso-shriek")
        r.checked += 1
        if E.pushforward(f, a) != E.pullback(f.inverse(), a):
            r.fail(f=f, a=a)

    return list(results.values())
