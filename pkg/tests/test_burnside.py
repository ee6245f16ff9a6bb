import random

import pytest

from gysin import gset
from gysin.burnside import (BurnsideElem, BurnsideFunctor, burnside_canonicalize, burnside_one)
from gysin.errors import InvalidArgument
from gysin.functor import chi
from gysin.gw import FiniteFieldGW, RealClass, RealComplexGW
from conftest import random_map

Z2, Z4 = gset.cyclic_group(2), gset.cyclic_group(4)
S3 = gset.symmetric_group(3)


def test_canonicalize_identity_single_key():
    X = gset.regular_gset(Z4)
    a = burnside_canonicalize(gset.identity_map(X))
    assert list(a.coeffs.values()) == [1]


def test_canonicalize_empty_source_is_zero():
    X = gset.regular_gset(Z2)
    f = gset.GMap(gset.empty(Z2), X, [])
    assert burnside_canonicalize(f).is_zero()


def test_canonicalize_two_free_orbits():
    G = gset.regular_gset(Z2)
    S, _, _ = gset.coproduct_gset(G, G)
    a = burnside_canonicalize(gset.to_terminal(S))
    t = burnside_canonicalize(gset.to_terminal(G))
    assert a == 2 * t


def test_canonicalize_ignores_automorphisms_of_source():
    X = gset.regular_gset(Z4)
    f = gset.identity_map(X)
    for s in gset.aut_group(X):
        assert burnside_canonicalize(f @ s) == burnside_canonicalize(f)


def test_canonicalize_idempotent():
    rng = random.Random(3)
    E = BurnsideFunctor(S3)
    for _ in range(30):
        f = random_map(S3, rng)
        a = burnside_canonicalize(f)
        again = BurnsideElem(f.dst)
        for k, c in a.terms():
            again = again + c * burnside_canonicalize(k.as_map(f.dst))
        assert again == a
        assert E.pushforward(gset.identity_map(f.dst), a) == a


def test_mul_examples():
    E = BurnsideFunctor(Z2)
    pt = gset.terminal(Z2)
    t = burnside_canonicalize(gset.to_terminal(gset.regular_gset(Z2)))
    assert t * t == 2 * t
    assert burnside_one(pt) * t == t
    X, i0, i1 = gset.coproduct_gset(gset.regular_gset(Z2), pt)
    a = E.pushforward(i0, E.one(i0.src))
    b = E.pushforward(i1, E.one(i1.src))
    assert (a * b).is_zero()
    assert a + b == E.one(X)


def test_mul_mismatched_base():
    a = burnside_one(gset.terminal(Z2))
    b = burnside_one(gset.regular_gset(Z2))
    with pytest.raises(InvalidArgument):
        a * b


def test_pullback_examples():
    E = BurnsideFunctor(Z2)
    X = gset.regular_gset(Z2)
    pi = gset.to_terminal(X)
    t = E.pushforward(pi, E.one(X))
    assert E.pullback(pi, t) == 2 * E.one(X)
    assert E.pullback(gset.identity_map(X), E.one(X)) == E.one(X)
    S, i0, i1 = gset.coproduct_gset(X, X)
    assert E.pullback(i1, E.pushforward(i0, E.one(X))).is_zero()


def test_pushforward_examples():
    E = BurnsideFunctor(Z2)
    X = gset.regular_gset(Z2)
    pi = gset.to_terminal(X)
    assert E.pushforward(pi, E.one(X)) == burnside_canonicalize(pi)
    a = E.random_element(X, random.Random(1))
    assert E.pushforward(gset.identity_map(X), a) == a


@pytest.mark.parametrize("G", [Z2, Z4, S3])
def test_iso_shriek_inverse_of_pullback(G):
    rng = random.Random(5)
    E = BurnsideFunctor(G)
    for _ in range(20):
        X = gset.random_gset(G, rng, 2, 6)
        s = rng.choice(gset.aut_group(X))
        a = E.random_element(X, rng)
        assert E.pushforward(s, E.pullback(s, a)) == a
        assert E.pullback(s, E.pushforward(s, a)) == a


def test_pushforward_wrong_base():
    E = BurnsideFunctor(Z2)
    X = gset.regular_gset(Z2)
    with pytest.raises(InvalidArgument):
        E.pushforward(gset.to_terminal(X), E.one(gset.terminal(Z2)))


def test_basis_sizes():
    E = BurnsideFunctor(S3)
    # A(*) for S3 has rank = number of conjugacy classes of subgroups
    assert len(E.additive_generators(gset.terminal(S3))) == 4
    assert len(E.additive_generators(gset.regular_gset(S3))) == 1


def test_json_roundtrip():
    E = BurnsideFunctor(Z4)
    rng = random.Random(9)
    for _ in range(10):
        X = gset.random_gset(Z4, rng, 2, 6)
        a = E.random_element(X, rng)
        assert E.element_from_json(X, E.element_to_json(a, "X")) == a
    assert E.element_from_json(X, 3) == 3 * E.one(X)


# -- chi ---------------------------------------------------------------------------------

CHI_TARGETS = [
    ("burnside", BurnsideFunctor(Z4)),
    ("gw3", FiniteFieldGW(3, 4)),
    ("rc", RealComplexGW()),
]


@pytest.mark.parametrize("name,E", CHI_TARGETS, ids=[n for n, _ in CHI_TARGETS])
def test_chi_is_natural_ring_map(name, E):
    G = E.group
    A = BurnsideFunctor(G)
    rng = random.Random(13)
    for _ in range(100):
        f = random_map(G, rng, max_size=6)
        X, Y = f.src, f.dst
        a, b = A.random_element(X, rng), A.random_element(X, rng)
        c = A.random_element(Y, rng)
        assert chi(E, a + b) == chi(E, a) + chi(E, b)
        assert chi(E, a * b) == chi(E, a) * chi(E, b)
        assert chi(E, A.one(X)) == E.one(X)
        assert chi(E, A.pullback(f, c)) == E.pullback(f, chi(E, c))
        assert chi(E, A.pushforward(f, a)) == E.pushforward(f, chi(E, a))


def test_chi_into_burnside_is_identity():
    A = BurnsideFunctor(S3)
    rng = random.Random(2)
    for _ in range(20):
        X = gset.random_gset(S3, rng, 2, 6)
        a = A.random_element(X, rng)
        assert chi(A, a) == a


def test_chi_real_example():
    E, A = RealComplexGW(), BurnsideFunctor(Z2)
    X = gset.regular_gset(Z2)
    t = A.pushforward(gset.to_terminal(X), A.one(X))
    assert chi(E, t).components == (RealClass(1, 1),)


def test_chi_quadratic_extension():
    E, A = FiniteFieldGW(3, 2), BurnsideFunctor(gset.cyclic_group(2))
    X = gset.regular_gset(E.group)
    t = A.pushforward(gset.to_terminal(X), A.one(X))
    (c,) = chi(E, t).components
    assert (c.rank, c.eps) == (2, 1)


def test_sum_of_pushforwards_of_one():
    E = BurnsideFunctor(Z4)
    rng = random.Random(4)
    for _ in range(20):
        f = random_map(Z4, rng)
        g = random_map(Z4, rng, f.dst)
        S, _, _ = gset.coproduct_gset(f.src, g.src)
        fg = gset.GMap(S, f.dst, list(f.table) + list(g.table))
        assert E.pushforward(fg, E.one(S)) == \
            E.pushforward(f, E.one(f.src)) + E.pushforward(g, E.one(g.src))
