"""The Gysin functor interface.

A Gysin functor E on finite G-sets assigns a commutative ring E(X) to each
G-set, a ring map ``f^*: E(Y) -> E(X)`` and an additive map
``f_!: E(X) -> E(Y)`` to each equivariant ``f: X -> Y``.  Elements are
value objects supporting ``+``, ``-``, ``*`` (ring product), integer
scaling and ``==``; they remember the object they live over as ``.base``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from gysin import gset


class GysinFunctor(ABC):
    """Abstract Gysin functor on the category of finite G-sets for one group."""

    name = "abstract"

    def __init__(self, group):
        self.group = group

    @abstractmethod
    def one(self, X):
        """Unit of the ring E(X)."""

    @abstractmethod
    def zero(self, X):
        """Zero of E(X)."""

    @abstractmethod
    def pullback(self, f, b):
        """f^*(b) for f: X -> Y and b in E(Y)."""

    @abstractmethod
    def pushforward(self, f, a):
        """f_!(a) for f: X -> Y and a in E(X)."""

    @abstractmethod
    def additive_generators(self, X):
        """A finite list of elements generating E(X) as an abelian group."""

    @abstractmethod
    def random_element(self, X, rng):
        """A random element of E(X) with small coefficients."""

    def external(self, a, b):
        """a (x) b = pr1^*(a) . pr2^*(b) in E(X x Y)."""
        _, p1, p2 = gset.product_gset(a.base, b.base)
        return self.pullback(p1, a) * self.pullback(p2, b)

    def element_to_json(self, a):
        raise NotImplementedError

    def element_from_json(self, X, data):
        raise NotImplementedError

    def format_element(self, a, ascii=False):
        return repr(a)

    def __repr__(self):
        return f"{type(self).__name__}({self.group!r})"


def chi(E, a):
    """The universal map from the Burnside ring: [f: S -> X] |-> f_!(1)."""
    total = E.zero(a.base)
    for key, c in a.coeffs.items():
        f = key.as_map(a.base)
        total = total + c * E.pushforward(f, E.one(f.src))
    return total
