import random

import pytest
from hypothesis import settings

from brdescent.fields import FieldTower

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rand_poly_elem(rng: random.Random, T: FieldTower, deg: int = 2, nonzero: bool = False):
    """Element of the base level of T: a polynomial in T's variables."""
    names = T.variables
    q = T.base.order
    while True:
        e = T.zero()
        for _ in range(rng.randint(0, 4)):
            m = T.const(rng.randrange(1, q))
            left = rng.randint(0, deg)
            for n in names:
                k = rng.randint(0, left)
                left -= k
                if k:
                    m = m * T.gen(n) ** k
            e = e + m
        if not nonzero or not e.is_zero():
            return e


def rand_base_elem(rng, T, deg=2, frac=True, nonzero=False):
    num = rand_poly_elem(rng, T, deg, nonzero)
    if frac and rng.random() < 0.5:
        return num / rand_poly_elem(rng, T, deg, nonzero=True)
    return num


def rand_elem(rng, T: FieldTower, deg=2, frac=True, nonzero=False):
    """Element of T with random components at every layer."""
    base = FieldTower(T.base, T.variables)
    while True:
        comps = [base.flatten(rand_base_elem(rng, base, deg, frac))[0] for _ in range(2 ** T.level)]
        e = T.unflatten(comps)
        if not nonzero or not e.is_zero():
            return e


@pytest.fixture
def Ft():
    return FieldTower.rational(1, ("t",))


@pytest.fixture
def Fs():
    return FieldTower.rational(1, ("s",))


@pytest.fixture
def Es(Fs):
    return Fs.extend(Fs.gen("s"), "mu")


@pytest.fixture
def rng():
    return random.Random(20261014)


ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
