import pytest

from swtorsion.errors import NotDivisibleError, NotInvertibleError, SwTorsionError, VarSetMismatchError
from swtorsion.laurent import (
    LaurentPoly,
    VarSet,
    divides,
    elementary_ideal_gcd,
    exact_div,
    gcd,
    gcd_many,
    minor_det,
    normalize_unit,
    substitute,
    symmetrize,
)

T = VarSet.of("t")
XY = VarSet.of("x", "y")


def poly(coeffs, low=0):
    return LaurentPoly.from_coefficients(coeffs, "t", low)


def _random_poly(rng, varset, terms=3, spread=2):
    while True:
        p = LaurentPoly(
            varset,
            {
                tuple(rng.randint(-spread, spread) for _ in varset): rng.choice([-3, -2, -1, 1, 2, 3])
                for _ in range(rng.randint(1, terms))
            },
        )
        if not p.is_zero():
            return p


def test_text_form():
    assert str(poly([1, -3, 1], low=-1)) == "t^-1 - 3 + t"
    assert str(LaurentPoly.zero(T)) == "0"
    assert str(LaurentPoly(XY, {(1, 2): 2, (0, 0): -1})) == "-1 + 2*x*y^2"
    assert str(poly([-1])) == "-1"


def test_arithmetic():
    t = LaurentPoly.var(T, "t")
    p = t + 1
    assert p * p == poly([1, 2, 1])
    assert p - p == 0
    assert 2 - t == poly([2, -1])
    assert t ** -2 == poly([1], low=-2)
    assert p ** 0 == 1
    with pytest.raises(NotInvertibleError):
        p ** -1


def test_varset_mismatch():
    with pytest.raises(VarSetMismatchError):
        LaurentPoly.one(T) + LaurentPoly.one(XY)
    with pytest.raises(VarSetMismatchError):
        XY.index("t")
    with pytest.raises(ValueError):
        VarSet.of("x", "x")


def test_immutable():
    p = LaurentPoly.one(T)
    with pytest.raises(AttributeError):
        p.terms = {}


def test_exact_div():
    q = poly([1, -3, 1])
    p = q * poly([-1, 0, 2], low=-2)
    assert exact_div(p, q) == poly([-1, 0, 2], low=-2)
    assert exact_div(poly([2, 4]), LaurentPoly.monomial(T, (1,), 2)) == poly([1, 2], low=-1)
    with pytest.raises(NotDivisibleError):
        exact_div(poly([1, 1]), poly([1, -1]))
    with pytest.raises(NotDivisibleError):
        exact_div(poly([3]), poly([2]))
    with pytest.raises(ZeroDivisionError):
        exact_div(q, LaurentPoly.zero(T))
    assert divides(poly([1, 1]), poly([1, 0, -1]))
    assert not divides(poly([1, 2]), poly([1, 0, -1]))


def test_normalize_unit():
    assert normalize_unit(poly([-1, 3, -1], low=-4)) == poly([1, -3, 1])
    p = LaurentPoly(XY, {(-1, 2): -2, (0, -1): 4})
    assert normalize_unit(p) == LaurentPoly(XY, {(0, 3): -2, (1, 0): 4}) * -1
    with pytest.raises(SwTorsionError):
        normalize_unit(LaurentPoly.zero(T))


def test_gcd():
    a, b = poly([1, -3, 1]), poly([1, 1])
    assert gcd(a * b, b * poly([2, 0, 1], low=3)) == b
    assert gcd(poly([2, 2]), poly([4])) == 2
    assert gcd(poly([0, 6]), poly([4, 2])) == 2
    assert gcd(LaurentPoly.zero(T), poly([-1, -1], low=-3)) == b
    assert gcd(LaurentPoly.constant(VarSet(()), 4), LaurentPoly.constant(VarSet(()), 6)) == LaurentPoly.constant(VarSet(()), 2)
    with pytest.raises(SwTorsionError):
        gcd(LaurentPoly.zero(T), LaurentPoly.zero(T))


def test_gcd_many():
    b = poly([1, 1])
    assert gcd_many([LaurentPoly.zero(T), b * poly([1, 0, 1]), b * poly([3, -1])]) == b
    with pytest.raises(SwTorsionError):
        gcd_many([LaurentPoly.zero(T)])


def test_gcd_scales_with_common_factor(rng, cases):
    for _ in range(cases):
        varset = rng.choice([T, XY])
        p = _random_poly(rng, varset)
        q = _random_poly(rng, varset)
        r = _random_poly(rng, varset, terms=2)
        assert gcd(r * p, r * q) == normalize_unit(r * gcd(p, q))


def test_gcd_divides_both(rng, cases):
    for _ in range(cases):
        p = _random_poly(rng, XY)
        q = _random_poly(rng, XY)
        g = gcd(p, q)
        assert divides(g, p)
        assert divides(g, q)


def test_symmetrize_even_span():
    sym = symmetrize(poly([1, -3, 1]), "t")
    assert sym.poly == poly([1, -3, 1], low=-1)
    assert not sym.asymmetric_span
    assert symmetrize(poly([-1, 3, -1], low=5), "t").poly == poly([1, -3, 1], low=-1)


def test_symmetrize_odd_span():
    sym = symmetrize(poly([2, -1], low=7), "t")
    assert sym.poly == poly([-2, 1])
    assert sym.asymmetric_span


def test_symmetrize_multivariable():
    p = LaurentPoly(XY, {(2, 0): 1, (0, 1): -1, (4, 0): 1})
    sym = symmetrize(p, "x")
    assert sym.poly.exponent_range("x") == (-2, 2)
    assert sym.poly.coefficient((2, 0)) == 1


def test_substitute():
    p = LaurentPoly(XY, {(1, -1): 1, (0, 2): 3})
    t = LaurentPoly.var(T, "t")
    out = substitute(p, {"x": t, "y": t ** 2})
    assert out == LaurentPoly.from_coefficients([1, 0, 0, 0, 0, 3], "t", low=-1)
    assert substitute(p, {"x": 2, "y": 1}) == 5
    with pytest.raises(NotInvertibleError):
        substitute(p, {"x": t, "y": t + 1})
    with pytest.raises(VarSetMismatchError):
        substitute(p, {"z": 1})


def test_minor_det_large_matches_cofactor():
    t = LaurentPoly.var(T, "t")
    one = LaurentPoly.one(T)
    zero = LaurentPoly.zero(T)
    # bidiagonal 5x5 with t on the diagonal and -1 above: det = t^5
    m = [[t if i == j else (-one if j == i + 1 else zero) for j in range(5)] for i in range(5)]
    assert minor_det(m, range(5), range(5)) == poly([1], low=5)
    m[4][0] = one
    # the cyclic entry adds (-1)^(5+1) * 1 * (-1)^4
    assert minor_det(m, range(5), range(5)) == poly([1], low=5) + 1


def test_elementary_ideal_edges():
    t = LaurentPoly.var(T, "t")
    one = LaurentPoly.one(T)
    assert elementary_ideal_gcd([], 0, T) == 1
    assert elementary_ideal_gcd([[t - 1, one - t]], 0) == 0
    assert elementary_ideal_gcd([[t - 1, one - t]], 1) == normalize_unit(t - 1)
    assert elementary_ideal_gcd([[t, one]], 1) == 1
    assert elementary_ideal_gcd([[t, one]], 3) == 1


def test_ring_laws(rng, cases):
    for _ in range(cases):
        p, q, r = (_random_poly(rng, XY) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == 0
        assert p * 1 == p


def test_exact_div_undoes_multiplication(rng, cases):
    for _ in range(cases):
        varset = rng.choice([T, XY])
        p = _random_poly(rng, varset)
        q = _random_poly(rng, varset)
        assert exact_div(p * q, q) == p


def test_normalize_unit_picks_one_representative(rng, cases):
    for _ in range(cases):
        p = _random_poly(rng, XY)
        n = normalize_unit(p)
        assert normalize_unit(n) == n
        unit = LaurentPoly.monomial(XY, (rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice([-1, 1]))
        assert normalize_unit(unit * p) == n


TB = VarSet.of("t", "b")


def test_block_entries_have_trivial_joint_gcd():
    t = LaurentPoly.var(TB, "t")
    b = LaurentPoly.var(TB, "b")
    one_minus_b = 1 - b
    t_minus_one = t - 1
    assert gcd(one_minus_b ** 2, t_minus_one ** 2) == 1
    assert gcd(one_minus_b ** 2, one_minus_b * t_minus_one) == normalize_unit(one_minus_b)
    assert gcd_many([one_minus_b ** 2, one_minus_b * t_minus_one, t_minus_one ** 2]) == 1


def test_minors_of_fox_block():
    t = LaurentPoly.var(TB, "t")
    b = LaurentPoly.var(TB, "b")
    zero = LaurentPoly.zero(TB)
    block = [
        [zero, 1 - b, zero],
        [zero, t - 1, zero],
        [1 - b, -b, t - 1],
    ]
    assert minor_det(block, (0, 2), (0, 1)) == -((1 - b) ** 2)
    assert elementary_ideal_gcd(block, 0) == 0
    # 2x2 minors: -(1-b)^2, (1-b)(t-1), (t-1)^2 up to sign
    assert elementary_ideal_gcd(block, 1) == 1
