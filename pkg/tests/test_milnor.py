from random import Random

import pytest

from adele_forge.curves import CurveModel, FunctionFieldElement, Place, principal_divisor
from adele_forge.errors import DomainError
from adele_forge.fields import Polynomial, RationalFunction, prime_field
from adele_forge.milnor import (
    GerstenCochain,
    MilnorSymbol,
    dlog_k1,
    dlog_pole_order_check,
    form_residue,
    gersten_boundary,
    tame_symbol,
    weil_reciprocity_check,
)

F5 = prime_field(5)
F7 = prime_field(7)
P15 = CurveModel.projective_line(F5)
P17 = CurveModel.projective_line(F7)


def t_of(curve):
    return FunctionFieldElement(curve, RationalFunction(Polynomial.x(curve.spec)))


def rand_fn(curve, rng, deg=3):
    spec = curve.spec
    while True:
        num = Polynomial.from_ints(spec, [rng.randrange(spec.p) for _ in range(deg + 1)])
        den = Polynomial.from_ints(spec, [rng.randrange(spec.p) for _ in range(deg + 1)])
        if num and den:
            return FunctionFieldElement(curve, RationalFunction(num, den))


def test_tame_symbol_examples():
    t = t_of(P15)
    v_t = Place.finite(P15, Polynomial.x(F5))
    assert tame_symbol(MilnorSymbol.pair(t, t), v_t) == F5.element(4)
    one = FunctionFieldElement.one(P15)
    assert tame_symbol(MilnorSymbol.pair(t, one - t), v_t) == F5.one()
    t7 = t_of(P17)
    v = Place.finite(P17, Polynomial.from_ints(F7, [5, 1]))  # t - 2
    assert tame_symbol(MilnorSymbol.pair(t7, t7 - 2), v) == F7.element(2)
    with pytest.raises(DomainError):
        MilnorSymbol.pair(FunctionFieldElement.zero(P15), t)


def test_gersten_boundary_examples():
    t7 = t_of(P17)
    s = MilnorSymbol.pair(t7, t7 - 1)
    b = gersten_boundary(GerstenCochain(P17, 0, 2, s))
    v_t = Place.finite(P17, Polynomial.x(F7))
    v_inf = Place.infinity(P17)
    assert b.payload == {v_t: F7.element(6), v_inf: F7.element(6)}

    s2 = MilnorSymbol.pair(FunctionFieldElement.constant(P17, 3), t7)
    b2 = gersten_boundary(GerstenCochain(P17, 0, 2, s2))
    assert b2.payload == {v_t: F7.element(3), v_inf: F7.element(5)}

    f = (t7 * t7 + 3) / (t7 - 1)
    b3 = gersten_boundary(GerstenCochain(P17, 0, 2, MilnorSymbol.pair(f, -f)))
    assert b3.payload == {}


def test_weight1_boundary_is_divisor():
    t7 = t_of(P17)
    f = (t7 - 1) * (t7 - 1) / t7
    b = gersten_boundary(GerstenCochain(P17, 0, 1, f))
    assert b.payload == dict(principal_divisor(f).items())


def test_tame_symbol_identities_randomized():
    rng = Random(21)
    v = Place.finite(P17, Polynomial.x(F7))
    one = FunctionFieldElement.one(P17)
    for _ in range(15):
        f = rand_fn(P17, rng, 2)
        g = rand_fn(P17, rng, 2)
        h = rand_fn(P17, rng, 2)
        assert tame_symbol(MilnorSymbol.pair(f * g, h), v) == tame_symbol(
            MilnorSymbol.pair(f, h), v
        ) * tame_symbol(MilnorSymbol.pair(g, h), v)
        assert tame_symbol(MilnorSymbol.pair(f, g), v) * tame_symbol(
            MilnorSymbol.pair(g, f), v
        ) == F7.one()
        if f != one and (one - f):
            assert tame_symbol(MilnorSymbol.pair(f, one - f), v) == F7.one()


def test_weil_reciprocity_examples():
    t7 = t_of(P17)
    assert weil_reciprocity_check(MilnorSymbol.pair(t7, t7 - 1)) == F7.one()
    t5 = t_of(P15)
    assert weil_reciprocity_check(MilnorSymbol.pair(t5, t5)) == F5.one()
    c = FunctionFieldElement.constant(P17, 3)
    g = (t7 - 1) * (t7 - 2)
    assert weil_reciprocity_check(MilnorSymbol.pair(c, g)) == F7.one()


def test_weil_reciprocity_randomized():
    rng = Random(22)
    for _ in range(40):
        s = MilnorSymbol.pair(rand_fn(P17, rng), rand_fn(P17, rng))
        assert weil_reciprocity_check(s) == F7.one()


def test_dlog_examples():
    t = t_of(P15)
    form = dlog_k1(t)
    v_t = Place.finite(P15, Polynomial.x(F5))
    assert form_residue(form, v_t) == F5.one()
    assert form_residue(form, Place.infinity(P15)) == F5.element(-1)
    t7 = t_of(P17)
    f = (t7 - 1) ** 3
    v1 = Place.finite(P17, Polynomial.from_ints(F7, [6, 1]))
    assert form_residue(dlog_k1(f), v1) == F7.element(3)
    with pytest.raises(DomainError):
        dlog_k1(FunctionFieldElement.zero(P15))


def test_dlog_residue_at_higher_degree_place():
    # residue at a degree-2 place is traced down to the prime field
    t7 = t_of(P17)
    f = t7 * t7 + 1
    quad = Place.finite(P17, Polynomial.from_ints(F7, [1, 0, 1]))
    assert form_residue(dlog_k1(f), quad) == F7.element(2)  # trace of 1 in GF(49)


def test_dlog_pole_order_examples():
    t7 = t_of(P17)
    assert dlog_pole_order_check(t7 ** 5) == 1
    assert dlog_pole_order_check((t7 - 1) * (t7 - 2)) == 1
    assert dlog_pole_order_check(FunctionFieldElement.constant(P17, 3)) == 0


def test_dlog_properties_randomized():
    rng = Random(23)
    for _ in range(25):
        f = rand_fn(P17, rng)
        assert dlog_pole_order_check(f) <= 1
        form = dlog_k1(f)
        total = F7.zero()
        for v, m in principal_divisor(f).items():
            res = form_residue(form, v)
            # res = Tr(valuation), i.e. the valuation weighted by the degree
            assert res == F7.element(m * v.residue_degree)
            total = total + res
        assert not total


def test_reciprocity_over_gf2():
    from random import Random

    F2 = prime_field(2)
    P12 = CurveModel.projective_line(F2)
    rng = Random(24)
    for _ in range(10):
        s = MilnorSymbol.pair(rand_fn(P12, rng, 4), rand_fn(P12, rng, 4))
        assert weil_reciprocity_check(s) == F2.one()


def test_elliptic_reciprocity_extension_places():
    # random (non-Miller) symbols whose supports include places of degree
    # up to 4: exercises tame symbols and norms over GF(5^d)
    from random import Random

    F5 = prime_field(5)
    E = CurveModel.elliptic(F5, -1, 0)
    rng = Random(77)

    def rand_ell(deg=2):
        while True:
            a = Polynomial.from_ints(F5, [rng.randrange(5) for _ in range(deg + 1)])
            b = Polynomial.from_ints(F5, [rng.randrange(5) for _ in range(deg)])
            c = Polynomial.from_ints(F5, [rng.randrange(5) for _ in range(2)])
            if not c:
                c = Polynomial.one(F5)
            f = FunctionFieldElement(E, RationalFunction(a, c), RationalFunction(b, c))
            if f:
                return f

    from adele_forge.milnor import symbol_support

    seen_higher = False
    for _ in range(4):
        s = MilnorSymbol.pair(rand_ell(), rand_ell())
        sup = symbol_support(s, 16)
        seen_higher = seen_higher or any(v.residue_degree > 1 for v in sup)
        assert weil_reciprocity_check(s, 16) == F5.one()
    assert seen_higher
