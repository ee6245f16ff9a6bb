import random

import pytest

from gysin import gset
from gysin.burnside import BurnsideFunctor
from gysin.gw import FiniteFieldGW, RealComplexGW
from gysin.rdi import Env

SEED = 0xC0FFEE


def burnside(G):
    return BurnsideFunctor(G)


def instances():
    """(label, functor) pairs used across the property tests."""
    return [
        ("burnside-Z2", BurnsideFunctor(gset.cyclic_group(2))),
        ("burnside-Z4", BurnsideFunctor(gset.cyclic_group(4))),
        ("burnside-S3", BurnsideFunctor(gset.symmetric_group(3))),
        ("gw3-Z8", FiniteFieldGW(3, 8)),
        ("rc-Z2", RealComplexGW()),
    ]


INSTANCE_IDS = [name for name, _ in instances()]


@pytest.fixture(params=instances(), ids=INSTANCE_IDS)
def functor(request):
    return request.param[1]


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_env(E, rng, n_objects=4, max_size=8, map_prob=0.6):
    """Named random objects (including *), maps between them and one element per object."""
    env = Env()
    G = E.group
    objs = [gset.terminal(G)] + [gset.random_gset(G, rng, 2, max_size) for _ in range(n_objects - 1)]
    for i, X in enumerate(objs):
        env.add_object(f"X{i}", X)
    k = 0
    for A in objs:
        for B in objs:
            f = gset.random_gmap(A, B, rng)
            if f is not None and rng.random() < map_prob:
                env.add_map(f"f{k}", f)
                k += 1
    for i, X in enumerate(objs):
        env.add_element(f"a{i}", E.random_element(X, rng))
    return env


def random_map(G, rng, Y=None, max_size=6):
    while True:
        Y0 = Y if Y is not None else gset.random_gset(G, rng, 2, max_size)
        X = gset.random_gset(G, rng, 2, max_size)
        f = gset.random_gmap(X, Y0, rng)
        if f is not None:
            return f


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
