"""The category of E-correspondences.

A morphism A -> B is an element of E(B x A) (codomain first, maps read
right to left).  For g: B -> C and f: A -> B the composite lives on the
triple product T = C x (B x A):

    g o f = (pi_CA)_!( pi_CB^*(g) . pi_BA^*(f) )

The products are the memoized canonical ones from :mod:`gysin.gset`, so two
correspondences with the same endpoints can be compared elementwise.
"""

from __future__ import annotations

from functools import lru_cache

from gysin import gset
from gysin.errors import InvalidArgument, PreconditionError


class Correspondence:
    __slots__ = ("functor", "dom", "cod", "elem")

    def __init__(self, functor, dom, cod, elem):
        self.functor = functor
        self.dom = dom
        self.cod = cod
        if elem.base != self.prod_obj:
            raise InvalidArgument("element does not live over cod x dom")
        self.elem = elem

    @property
    def prod_obj(self):
        return gset.product_gset(self.cod, self.dom)[0]

    def _same_hom(self, other):
        if not isinstance(other, Correspondence):
            raise InvalidArgument("expected a correspondence")
        if other.functor is not self.functor:
            raise InvalidArgument("correspondences for different functors")
        if other.dom != self.dom or other.cod != self.cod:
            raise InvalidArgument("correspondences between different objects")

    def __add__(self, other):
        self._same_hom(other)
        return Correspondence(self.functor, self.dom, self.cod, self.elem + other.elem)

    def __neg__(self):
        return Correspondence(self.functor, self.dom, self.cod, -self.elem)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Correspondence(self.functor, self.dom, self.cod, self.elem * n)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (self.functor is other.functor and self.dom == other.dom
                and self.cod == other.cod and self.elem == other.elem)

    def __hash__(self):
        return hash((self.dom, self.cod, self.elem))

    def __repr__(self):
        return f"Correspondence({self.dom.size} -> {self.cod.size}: {self.elem!r})"

    def to_json(self, dom_id, cod_id):
        return {"functor": self.functor.name, "dom": dom_id, "cod": cod_id,
                "elem": self.functor.element_to_json(self.elem)}


def zero_corr(E, X, Y):
    return Correspondence(E, X, Y, E.zero(gset.product_gset(Y, X)[0]))


@lru_cache(maxsize=None)
def triple_product(C, B, A):
    """T = C x (B x A) with its projections to C x B, B x A and C x A."""
    CB, _, _ = gset.product_gset(C, B)
    BA, _, _ = gset.product_gset(B, A)
    CA, _, _ = gset.product_gset(C, A)
    T, pc, pba = gset.product_gset(C, BA)
    nb, na = B.size, A.size
    to_cb, to_ca = [], []
    for t in range(T.size):
        c, ba = pc.table[t], pba.table[t]
        b, a = divmod(ba, na)
        to_cb.append(c * nb + b)
        to_ca.append(c * na + a)
    return (T, gset.GMap(T, CB, to_cb, check=False), pba,
            gset.GMap(T, CA, to_ca, check=False))


def compose(g, f):
    """g o f for f: A -> B and g: B -> C."""
    if not isinstance(g, Correspondence) or not isinstance(f, Correspondence):
        raise InvalidArgument("compose expects correspondences")
    if g.functor is not f.functor:
        raise InvalidArgument("correspondences for different functors")
    if g.dom != f.cod:
        raise InvalidArgument(f"cannot compose: dom of left ({g.dom.size} points) "
                              f"!= cod of right ({f.cod.size} points)")
    E = g.functor
    _, p_cb, p_ba, p_ca = triple_product(g.cod, g.dom, f.dom)
    elem = E.pushforward(p_ca, E.pullback(p_cb, g.elem) * E.pullback(p_ba, f.elem))
    return Correspondence(E, f.dom, g.cod, elem)


def identity(E, X):
    """i_X = Delta_!(1) in E(X x X)."""
    return Correspondence(E, X, X, E.pushforward(gset.diagonal(X), E.one(X)))


@lru_cache(maxsize=None)
def _swap(X, Y):
    return gset.swap_map(X, Y)


def dual_star(f):
    """f^* = t^*(f) for t: A x B -> B x A; a correspondence B -> A."""
    E = f.functor
    t = _swap(f.dom, f.cod)  # dom x cod -> cod x dom
    return Correspondence(E, f.cod, f.dom, E.pullback(t, f.elem))


def _graph(f, left):
    """x |-> (f x, x) if left, else x |-> (x, f x)."""
    X = f.src
    if left:
        return gset.pairing(f, gset.identity_map(X))
    return gset.pairing(gset.identity_map(X), f)


def lift_r(E, f):
    """R_f = ((f, id): A -> B x A)_!(1), a correspondence A -> B."""
    return Correspondence(E, f.src, f.dst, E.pushforward(_graph(f, True), E.one(f.src)))


def lift_i(E, f):
    """I_f = ((id, f): A -> A x B)_!(1), a correspondence B -> A."""
    return Correspondence(E, f.dst, f.src, E.pushforward(_graph(f, False), E.one(f.src)))


def lift_d(E, a):
    """D_a = Delta_!(a), an endomorphism of a.base."""
    X = a.base
    return Correspondence(E, X, X, E.pushforward(gset.diagonal(X), a))


@lru_cache(maxsize=None)
def _shuffle(Y, Y2, X, X2):
    """(Y x Y2) x (X x X2) -> (Y x X) x (Y2 x X2)."""
    YY, _, _ = gset.product_gset(Y, Y2)
    XX, _, _ = gset.product_gset(X, X2)
    src, _, _ = gset.product_gset(YY, XX)
    YX, _, _ = gset.product_gset(Y, X)
    Y2X2, _, _ = gset.product_gset(Y2, X2)
    dst, _, _ = gset.product_gset(YX, Y2X2)
    table = []
    for s in range(src.size):
        yy, xx = divmod(s, XX.size)
        y, y2 = divmod(yy, Y2.size)
        x, x2 = divmod(xx, X2.size)
        table.append((y * X.size + x) * Y2X2.size + (y2 * X2.size + x2))
    return gset.GMap(src, dst, table, check=False)


def tensor_corr(f, g):
    """f (x) g: X x X2 -> Y x Y2 for f: X -> Y, g: X2 -> Y2."""
    if f.functor is not g.functor:
        raise InvalidArgument("correspondences for different functors")
    E = f.functor
    t = _shuffle(f.cod, g.cod, f.dom, g.dom)
    dom = gset.product_gset(f.dom, g.dom)[0]
    cod = gset.product_gset(f.cod, g.cod)[0]
    return Correspondence(E, dom, cod, E.pullback(t, E.external(f.elem, g.elem)))


def apply_eprime(g, x):
    """E'(g)(x) = (pi_A)_![(pi_B)^*(x) . g] for g: A -> B, x in E(B)."""
    E = g.functor
    if x.base != g.cod:
        raise InvalidArgument("element does not live over the codomain")
    _, p_b, p_a = gset.product_gset(g.cod, g.dom)
    return E.pushforward(p_a, E.pullback(p_b, x) * g.elem)


def random_corr(E, X, Y, rng):
    return Correspondence(E, X, Y, E.random_element(gset.product_gset(Y, X)[0], rng))


# -- canonical isomorphisms ---------------------------------------------------------

def canonical_iso(E, X, Y):
    """R of the canonical bijection X -> Y between two encodings of one product.

    Products are stored x-major, so ``X x *``, ``* x X`` and both
    bracketings of a triple product have literally the same action table
    as ``X`` resp. each other; the canonical iso is then the identity.
    """
    if X.size != Y.size:
        raise InvalidArgument("not a canonical isomorphism")
    return lift_r(E, gset.GMap(X, Y, range(X.size)))


def _transport(f, iso_src, iso_dst):
    """Compose f with the canonical isos on either side, skipping literal identities."""
    E = f.functor
    if iso_src is not None and iso_src != f.dom:
        f = f @ canonical_iso(E, iso_src, f.dom)
    if iso_dst is not None and iso_dst != f.cod:
        f = canonical_iso(E, f.cod, iso_dst) @ f
    return f


# -- duality ------------------------------------------------------------------------

def coevaluation(E, X):
    """cev: * -> X x X, equal to i_X after reindexing."""
    S = gset.terminal(X.group)
    XX = gset.product_gset(X, X)[0]
    _, p, _ = gset.product_gset(XX, S)
    return Correspondence(E, S, XX, E.pullback(p, identity(E, X).elem))


def evaluation(E, X):
    """ev: X x X -> *, equal to i_X after reindexing."""
    S = gset.terminal(X.group)
    XX = gset.product_gset(X, X)[0]
    _, _, p = gset.product_gset(S, XX)
    return Correspondence(E, XX, S, E.pullback(p, identity(E, X).elem))


def duality_check(E, X):
    """Both triangle identities for (X, X, ev, cev); returns a report dict.

    The unitors and associator are R of the canonical bijections; see
    :func:`canonical_iso` for when those are skipped.
    """
    idX = identity(E, X)
    cev, ev = coevaluation(E, X), evaluation(E, X)

    # X = X x * -> X x (X x X) = (X x X) x X -> * x X = X
    step = tensor_corr(idX, cev)
    first = _transport(tensor_corr(ev, idX) @ _transport(step, X, None), None, X)
    # X = * x X -> (X x X) x X = X x (X x X) -> X x * = X
    step = tensor_corr(cev, idX)
    second = _transport(tensor_corr(idX, ev) @ _transport(step, X, None), None, X)
    ok1, ok2 = first == idX, second == idX
    return {"object_size": X.size, "triangle_1": ok1, "triangle_2": ok2,
            "passed": ok1 and ok2}


# -- endomorphisms of Galois objects -------------------------------------------------

def _j(sigma):
    """j_sigma: x |-> (sigma x, x), one summand of X x X."""
    return gset.pairing(sigma, gset.identity_map(sigma.src))


def twisted_basis(E, X):
    """The elements R_sigma o D_a for sigma in Aut(X), a an additive generator."""
    auts = gset.aut_group(X)
    gens = E.additive_generators(X)
    return [((s, a), lift_r(E, s) @ lift_d(E, a)) for s in auts for a in gens]


def twisted_coordinates(E, X, c):
    """Inverse of the twisted-ring map: c |-> {sigma: j_sigma^*(c)}."""
    return [(s, E.pullback(_j(s), c.elem)) for s in gset.aut_group(X)]


def from_twisted(E, X, coords):
    total = zero_corr(E, X, X)
    for s, a in coords:
        total = total + lift_r(E, s) @ lift_d(E, a)
    return total


def to_left_convention(s, a, E):
    """R_s D_a = D_b R_s with b = (s^-1)^* a (the 'a[f]' convention)."""
    return s, E.pullback(s.inverse(), a)


def endo_ring_galois(E, X):
    """Check that E(X)[Aut X] -> End(X), (s, a) |-> R_s D_a, is a ring isomorphism.

    Returns a report with the individual checks.  Raises PreconditionError
    when X is not Galois.
    """
    if not gset.is_galois(X):
        raise PreconditionError("X is not a Galois object")
    auts = gset.aut_group(X)
    gens = E.additive_generators(X)
    XX = gset.product_gset(X, X)[0]
    report = {"aut_order": len(auts), "generators": len(gens)}

    # X x X is the disjoint union of the graphs of the automorphisms
    seen = sorted(x for s in auts for x in _j(s).table)
    report["graphs_partition"] = seen == list(range(XX.size))

    # the coordinate map inverts R_s D_a on generators, and conversely on E(X x X)
    ok = True
    for s in auts:
        for a in gens:
            c = lift_r(E, s) @ lift_d(E, a)
            for t, b in twisted_coordinates(E, X, c):
                want = a if t == s else E.zero(X)
                ok = ok and b == want
    for c in E.additive_generators(XX):
        corr = Correspondence(E, X, X, c)
        ok = ok and from_twisted(E, X, twisted_coordinates(E, X, corr)) == corr
    report["bijective"] = ok

    # multiplication law R_s D_a o R_t D_b = R_{st} D_{t^*(a) b}
    law = True
    for s in auts:
        for t in auts:
            for a in gens:
                for b in gens:
                    lhs = (lift_r(E, s) @ lift_d(E, a)) @ (lift_r(E, t) @ lift_d(E, b))
                    rhs = lift_r(E, s @ t) @ lift_d(E, E.pullback(t, a) * b)
                    law = law and lhs == rhs
    report["composition_law"] = law

    # the other convention: D_b R_s with b = (s^-1)^* a
    left = True
    for s in auts:
        for a in gens:
            _, b = to_left_convention(s, a, E)
            left = left and lift_d(E, b) @ lift_r(E, s) == lift_r(E, s) @ lift_d(E, a)
    report["left_convention"] = left

    trivial = all(E.pullback(s, a) == a for s in auts for a in gens)
    report["trivial_twist"] = trivial
    if trivial:
        # then End(X) is the untwisted group ring E(X)[Aut X]
        report["group_ring"] = all(
            (lift_r(E, s) @ lift_d(E, a)) @ (lift_r(E, t) @ lift_d(E, b))
            == lift_r(E, s @ t) @ lift_d(E, a * b)
            for s in auts for t in auts for a in gens for b in gens)
        basis = [c for _, c in twisted_basis(E, X)]
        report["commutative"] = all(u @ v == v @ u for u in basis for v in basis)
    report["passed"] = all(report.get(k, True) for k in
                           ("graphs_partition", "bijective", "composition_law",
                            "left_convention", "group_ring"))
    return report


# -- trivial-group Burnside as integer matrices ---------------------------------------

def _check_matrix_functor(f):
    from gysin.burnside import BurnsideFunctor
    if not isinstance(f.functor, BurnsideFunctor) or f.functor.group.order != 1:
        raise InvalidArgument("matrix model needs the Burnside functor of the trivial group")


def matrix_model(f):
    """|Y| x |X| integer matrix of fiber counts of a correspondence X -> Y."""
    _check_matrix_functor(f)
    nx = f.dom.size
    M = [[0] * nx for _ in range(f.cod.size)]
    for key, c in f.elem.coeffs.items():
        y, x = divmod(key.point, nx)
        M[y][x] += c
    return M


def matrix_to_corr(E, M, X, Y):
    from gysin.burnside import BasisKey, BurnsideElem
    if E.group.order != 1:
        raise InvalidArgument("matrix model needs the trivial group")
    if len(M) != Y.size or any(len(row) != X.size for row in M):
        raise InvalidArgument("matrix shape does not match the objects")
    coeffs = {BasisKey(y * X.size + x, (0,)): M[y][x]
              for y in range(Y.size) for x in range(X.size)}
    base = gset.product_gset(Y, X)[0]
    return Correspondence(E, X, Y, BurnsideElem(base, coeffs))


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]
