import pytest

from swtorsion.errors import GeneratorError, ParseError, ShapeError
from swtorsion.exactalg import IntMatrix
from swtorsion.laurent import LaurentPoly, VarSet, normalize_unit, substitute
from swtorsion.surface import Curve, MappingClass, Word, paper_phi
from swtorsion.torus3 import (
    GroupPresentation,
    GroupRingElem,
    MappingTorusY,
    abelianization,
    alexander_matrix,
    alexander_polynomial,
    betti_wang,
    charpoly_oracle,
    cup_pairings,
    cup_with_class,
    fox_derivative,
    mapping_torus_presentation,
    milnor_torsion,
    oracle_quotient,
    poincare_dual_matrix,
    presentation_alexander_polynomial,
    sw3,
    sw3_in_h2,
    symmetrize_all,
    triple_product,
    wang_betti,
)

GOLDEN = LaurentPoly.from_coefficients([1, -3, 1])


def _golden_power(g: int) -> LaurentPoly:
    return GOLDEN ** (g - 1)


def _random_mapping_class(rng, genus):
    twists = [
        (Curve(rng.choice("ab"), rng.randint(1, genus)), rng.choice([1, -1]))
        for _ in range(rng.randint(0, 5))
    ]
    return MappingClass(genus, tuple(twists))


def test_parse_trefoil(data_dir):
    P = GroupPresentation.parse((data_dir / "trefoil.txt").read_text())
    assert P.generators == ("x", "y")
    assert P.relators == (Word.parse("x y x y^-1 x^-1 y^-1"),)
    assert GroupPresentation.parse(P.to_text()) == P


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        GroupPresentation.parse("generators: x\n")
    with pytest.raises(ParseError, match="line 3"):
        GroupPresentation.parse("gens: x y\nx y\nx z\n")
    with pytest.raises(ParseError, match="line 2"):
        GroupPresentation.parse("gens: x\nx = x = x\n")
    with pytest.raises(ParseError, match="line 2"):
        GroupPresentation.parse("gens: x y\n x y = \n")
    with pytest.raises(ParseError):
        GroupPresentation.parse("# only a comment\n")
    # a cancelled unknown symbol is still unknown
    with pytest.raises(ParseError, match="unknown"):
        GroupPresentation.parse("gens: x\nx z z^-1\n")


def test_fox_derivatives():
    w = Word.parse("a b a^-1 b^-1")
    assert str(fox_derivative(w, "a")) == "1 - a b a^-1"
    assert str(fox_derivative(w, "b")) == "a - a b a^-1 b^-1"
    assert fox_derivative(Word.parse("b"), "a").is_zero()
    assert str(fox_derivative(Word.parse("a"), "a")) == "1"
    assert str(fox_derivative(Word.parse("a^-1"), "a")) == "- a^-1"
    with pytest.raises(GeneratorError):
        fox_derivative(w, "c", ["a", "b"])


def test_fox_fundamental_identity(rng, cases):
    generators = ("a", "b", "c")
    one = GroupRingElem.one()
    for _ in range(cases):
        w = Word((rng.choice(generators), rng.choice([1, -1])) for _ in range(rng.randint(0, 10)))
        total = GroupRingElem()
        for x in generators:
            total = total + fox_derivative(w, x, generators) * (GroupRingElem.of(Word.gen(x)) - one)
        assert total == GroupRingElem.of(w) - one


def test_abelianization_of_trefoil(data_dir):
    P = GroupPresentation.parse((data_dir / "trefoil.txt").read_text())
    spec, amap = abelianization(P)
    assert spec.free_rank == 1
    assert spec.torsion_coefficients == []
    assert amap.varset == VarSet.of("t")
    assert amap.images["x"] == amap.images["y"] == (1,)
    with pytest.raises(ShapeError):
        abelianization(P, ["s", "u"])


def test_abelianization_with_torsion():
    P = GroupPresentation.parse("gens: x y\nx^2 y^-2\nx y x^-1 y^-1\n")
    spec, amap = abelianization(P, ["s"])
    assert str(spec) == "Z + Z/2"
    assert amap.varset == VarSet.of("s")


def test_trefoil_alexander_polynomial(data_dir):
    P = GroupPresentation.parse((data_dir / "trefoil.txt").read_text())
    _, amap = abelianization(P)
    delta = presentation_alexander_polynomial(P, amap)
    assert str(delta) == "1 - t + t^2"
    sym, odd = symmetrize_all(delta)
    assert str(sym) == "t^-1 - 1 + t"
    assert not odd


def test_free_group_alexander_polynomial():
    _, amap = abelianization(GroupPresentation(("x",)))
    assert presentation_alexander_polynomial(GroupPresentation(("x",)), amap) == 1
    P = GroupPresentation(("x", "y"))
    _, amap = abelianization(P)
    assert presentation_alexander_polynomial(P, amap).is_zero()


def test_mapping_torus_presentation_matches_fixture(data_dir):
    P = GroupPresentation.parse((data_dir / "mapping_torus_g2.txt").read_text())
    assert mapping_torus_presentation(2, paper_phi(2)) == P
    assert len(alexander_matrix(P, abelianization(P)[1])) == 5
    with pytest.raises(ShapeError):
        mapping_torus_presentation(3, paper_phi(2))


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_golden_alexander_polynomials(g):
    Y = MappingTorusY(paper_phi(g))
    assert Y.b1 == 2
    assert Y.h1.free_rank == 2
    assert Y.h1.torsion_coefficients == []
    varset = Y.amap.varset
    assert varset.names[0] == "t"
    expected = LaurentPoly(varset, {(e[0], 0): c for e, c in _golden_power(g).terms.items()})
    assert alexander_polynomial(Y) == normalize_unit(expected)
    assert Y.alexander_polynomial_t == normalize_unit(_golden_power(g))


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_milnor_torsion_and_sw3(g):
    Y = MappingTorusY(paper_phi(g))
    t_inv = LaurentPoly.from_coefficients([1, -3, 1], low=-1)
    assert milnor_torsion(Y).varset == Y.amap.varset
    assert not Y.torsion_asymmetric
    swt = LaurentPoly.from_coefficients([1, 0, -3, 0, 1], low=-2) ** (g - 1)
    assert sw3_in_h2(Y) == LaurentPoly(Y.h2_varset, {(e[0], 0): c for e, c in swt.terms.items()})
    assert sw3(Y).coefficient_sum() == (-1) ** (g - 1)
    assert symmetrize_all(Y.alexander_polynomial_t)[0] == t_inv ** (g - 1)


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5, 6])
def test_charpoly_oracle(g):
    tm1 = LaurentPoly.from_coefficients([-1, 1])
    assert charpoly_oracle(paper_phi(g)) == tm1 * tm1 * _golden_power(g)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_oracle_quotient(g):
    assert oracle_quotient(MappingTorusY(paper_phi(g))) == LaurentPoly.from_coefficients([1, -2, 1])


def test_wang_betti_identity_monodromy():
    assert betti_wang(MappingClass(2)) == 5
    assert wang_betti(MappingClass(1)) == (1, 3, 3, 1)
    assert wang_betti(paper_phi(3)) == (1, 2, 2, 1)


def test_wang_agrees_with_abelianization(rng, cases):
    for _ in range(cases):
        mc = _random_mapping_class(rng, rng.randint(1, 3))
        spec, _ = abelianization(mapping_torus_presentation(mc.genus, mc))
        assert betti_wang(mc) == spec.free_rank


def test_invariant_cocycles_and_cup_pairings():
    Y = MappingTorusY(paper_phi(2))
    assert Y.invariant_cocycles == [(0, 1, 0, 0)]
    assert Y.hypothesis_holds
    tensor = cup_pairings(Y)
    assert tensor.h1_labels == ("theta", "beta1")
    assert tensor.h2_labels == ("[Sigma]", "[(a1) x S1]")
    assert tensor.is_zero()
    assert triple_product(Y, (1, 0), (0, 1), (1, 1)) == 0


def test_identity_monodromy_cup_products():
    Y = MappingTorusY(MappingClass(1))
    assert not Y.hypothesis_holds
    tensor = Y.cup_tensor
    assert tensor.h1_labels == ("theta", "alpha1", "beta1")
    # alpha1 u beta1 is the fibre class
    assert tensor.cup((0, 1, 0), (0, 0, 1))[0] == 1
    assert tensor.cup((0, 0, 1), (0, 1, 0))[0] == -1
    # theta u alpha1 u beta1 evaluates to +-1 on the 3-torus
    assert abs(triple_product(Y, (1, 0, 0), (0, 1, 0), (0, 0, 1))) == 1
    assert tensor.cup((1, 0, 0), (1, 0, 0)) == (0, 0, 0)


def test_cup_with_class_shape_check():
    Y = MappingTorusY(paper_phi(2))
    with pytest.raises(ShapeError):
        cup_with_class(Y, (1, 0, 0), (0, 1))


def test_poincare_dual_matrix_is_unimodular_for_standard_monodromy():
    Y = MappingTorusY(paper_phi(3))
    assert poincare_dual_matrix(Y) == IntMatrix.identity(2)


def _random_word(rng, generators, longest=8):
    return Word((rng.choice(generators), rng.choice([1, -1])) for _ in range(rng.randint(0, longest)))


def test_fox_product_rule(rng, cases):
    generators = ("a", "b", "c")
    for _ in range(cases):
        u = _random_word(rng, generators)
        v = _random_word(rng, generators)
        for x in generators:
            expected = fox_derivative(u, x) + GroupRingElem.of(u) * fox_derivative(v, x)
            assert fox_derivative(u * v, x) == expected


def test_abelianized_fox_rows_annihilate_generators(rng, cases, data_dir):
    trefoil = GroupPresentation.parse((data_dir / "trefoil.txt").read_text())
    presentations = [trefoil]
    for _ in range(cases // 10):
        mc = _random_mapping_class(rng, rng.randint(1, 2))
        presentations.append(mapping_torus_presentation(mc.genus, mc))
    for P in presentations:
        _, amap = abelianization(P)
        zero = LaurentPoly.zero(amap.varset)
        for row in alexander_matrix(P, amap):
            total = zero
            for x, entry in zip(P.generators, row):
                total = total + entry * (amap.monomial(Word.gen(x)) - 1)
            assert total == zero


def _delta(P: GroupPresentation) -> LaurentPoly:
    _, amap = abelianization(P)
    return presentation_alexander_polynomial(P, amap)


@pytest.mark.parametrize("g", [2, 3])
def test_alexander_polynomial_ignores_presentation_choices(g, rng):
    P = mapping_torus_presentation(g, paper_phi(g))
    delta = _delta(P)

    inverted = tuple(~r if k % 2 else r for k, r in enumerate(P.relators))
    assert _delta(GroupPresentation(P.generators, inverted)) == delta

    conjugated = []
    for r in P.relators:
        w = Word.gen(rng.choice(P.generators), rng.choice([1, -1]))
        conjugated.append(w * r * ~w)
    assert _delta(GroupPresentation(P.generators, tuple(conjugated))) == delta

    fibre = list(P.generators[1:])
    rng.shuffle(fibre)
    assert _delta(GroupPresentation(("t",) + tuple(fibre), P.relators)) == delta


@pytest.mark.parametrize("g", [2, 3])
def test_inverse_monodromy_flips_t(g):
    delta = MappingTorusY(paper_phi(g)).alexander_polynomial
    reverse = MappingTorusY(paper_phi(g).inverse()).alexander_polynomial
    varset = reverse.varset
    assert varset == delta.varset
    flipped = substitute(reverse, {"t": LaurentPoly.var(varset, "t") ** -1}, varset)
    assert normalize_unit(flipped) == delta
