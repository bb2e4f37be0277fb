import random

import pytest

from brdescent.errors import DegenerateLayer, DivisionByZero, NameCollision, NoQuadraticLayer, TowerMismatch
from brdescent.fields import FieldTower, rf_arith, tower_conj, tower_extend, tower_norm, wp

from conftest import rand_elem


def configs():
    g2t = FieldTower.rational(1, ("t",))
    g4t = FieldTower.rational(2, ("t",))
    g2s = FieldTower.rational(1, ("s",))
    E = g2s.extend(g2s.gen("s"), "mu")
    st = FieldTower.rational(1, ("s", "t"))
    R = st.extend(st.gen("s"), "mu")
    R2 = R.extend(R.embed(st.gen("t")) * R.gen("mu"), "nu")
    return {"GF2(t)": g2t, "GF4(t)": g4t, "E": E, "R2": R2}


def test_gf4_constant_mul():
    T = FieldTower.rational(2, ())
    w = T.const(0b10)
    assert w * w == T.const(0b11)


def test_frobenius_example(Ft):
    t = Ft.gen("t")
    assert (t + 1) * (t + 1) == t ** 2 + 1


def test_defining_relation(Es, Fs):
    mu = Es.gen("mu")
    assert mu * mu == mu + Es.embed(Fs.gen("s"))


def test_rf_arith_ops(Ft):
    t = Ft.gen("t")
    assert rf_arith(t, t + 1, "add") == Ft.one()
    assert rf_arith(t, t, "mul") == t ** 2
    assert rf_arith(t ** 2, t, "div") == t
    with pytest.raises(DivisionByZero):
        rf_arith(t, Ft.zero(), "div")
    with pytest.raises(TowerMismatch):
        rf_arith(t, FieldTower.rational(1, ("s",)).gen("s"), "add")


def test_wp_examples(Ft):
    t = Ft.gen("t")
    assert wp(t) == t ** 2 + t
    assert wp(Ft.zero()).is_zero()
    assert wp(t + 1) == t ** 2 + t


def test_extend_examples(Fs):
    s = Fs.gen("s")
    E = tower_extend(Fs, s, "mu")
    assert E.generator_names() == ("mu",)
    assert E.embed(s).components() == (s, Fs.zero())
    K = E.extend(E.embed(s ** 3), "th_b").extend(s ** 5, "th_g")
    assert K.level == 3
    assert K.descriptor() == "GF2(s)[mu: s][th_b: s^3][th_g: s^5]"


def test_extend_degenerate(Fs):
    with pytest.raises(DegenerateLayer):
        Fs.extend(wp(Fs.one()), "mu")
    s = Fs.gen("s")
    with pytest.raises(DegenerateLayer):
        Fs.extend(s ** 2 + s, "mu")


def test_name_collision(Fs):
    with pytest.raises(NameCollision):
        Fs.extend(Fs.gen("s"), "s")


def test_conj_examples(Es, Fs):
    mu = Es.gen("mu")
    s = Es.embed(Fs.gen("s"))
    assert tower_conj(mu) == mu + 1
    assert tower_conj(s) == s
    assert tower_conj(tower_conj(s + mu)) == s + mu
    with pytest.raises(NoQuadraticLayer):
        tower_conj(Fs.gen("s"))


def test_norm_examples(Es, Fs):
    mu = Es.gen("mu")
    s = Fs.gen("s")
    assert tower_norm(mu) == s
    assert tower_norm(Es.embed(s + 1)) == (s + 1) ** 2
    assert tower_norm(Es.embed(s) + mu) == s ** 2
    with pytest.raises(NoQuadraticLayer):
        tower_norm(s)


def test_inverse_in_layer(Es):
    mu = Es.gen("mu")
    e = mu + 1
    assert e * e.inv() == Es.one()
    with pytest.raises(DivisionByZero):
        Es.zero().inv()


@pytest.mark.parametrize("name", ["GF2(t)", "GF4(t)", "E", "R2"])
def test_wp_additive_1000(name):
    T = configs()[name]
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(1000):
        x, y = rand_elem(rng, T, deg=1), rand_elem(rng, T, deg=1)
        assert wp(x + y) == wp(x) + wp(y)


@pytest.mark.parametrize("name", ["GF2(t)", "GF4(t)", "E", "R2"])
def test_frobenius_additive_1000(name):
    T = configs()[name]
    rng = random.Random(7 + len(name))
    for _ in range(1000):
        x, y = rand_elem(rng, T, deg=1), rand_elem(rng, T, deg=1)
        assert (x + y).square() == x.square() + y.square()
        assert x.square() == x * x


@pytest.mark.parametrize("name", ["E", "R2"])
def test_norm_laws_500(name):
    T = configs()[name]
    rng = random.Random(11)
    for _ in range(500):
        b, c = rand_elem(rng, T, deg=1), rand_elem(rng, T, deg=1)
        assert tower_norm(b * c) == tower_norm(b) * tower_norm(c)
        assert T.embed(tower_norm(b)) == b * tower_conj(b)


def test_field_axioms_in_layers(rng):
    T = configs()["R2"]
    for _ in range(20):
        a, b, c = (rand_elem(rng, T, deg=1) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert (b / a) * a == b


def test_embed_pullback_roundtrip(rng):
    T = configs()["R2"]
    R = T.below()
    for _ in range(50):
        e = rand_elem(rng, R, deg=1)
        assert R.pullback(T.embed(e)) == e


def test_add_variables_embedding(Fs):
    T = Fs.add_variables(("a", "b"))
    assert T.variables == ("s", "a", "b")
    s = Fs.gen("s")
    assert T.embed(s ** 2 + 1) == T.gen("s") ** 2 + 1
    assert T.contains(Fs)
    assert not Fs.contains(T)
