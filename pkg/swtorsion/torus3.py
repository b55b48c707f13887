"""
Mapping tori of surface diffeomorphisms.

Builds π₁(Y) for Y = Σ×[0,1]/(x,1)~(φ(x),0), its homology by the Wang
sequence and by abelianizing the presentation, the Fox-calculus Alexander
matrix, the Alexander polynomial (generator of the first elementary ideal),
Milnor torsion, the 3-dimensional Seiberg-Witten polynomial, and the
cup-product pairings of H¹(Y) against the H₂ basis {[Σ], [c×S¹]}.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import GeneratorError, NotDivisibleError, ParseError, ShapeError, SwTorsionError
from .exactalg import (
    AbelianGroupSpec,
    IntMatrix,
    Vector,
    char_poly,
    hermite_rows,
    kernel_basis,
    nullity,
    snf,
    solve_integer,
)
from .laurent import (
    LaurentPoly,
    VarSet,
    elementary_ideal_gcd,
    exact_div,
    normalize_unit,
    substitute,
    symmetrize,
)
from .surface import (
    MappingClass,
    Word,
    cohomology_action,
    h1_action,
    mapping_class_endo_inverse,
    surface,
    symplectic_form,
)

logger = logging.getLogger(__name__)


# -- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Finitely presented group ⟨generators | relators⟩."""

    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(Word(r.letters) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise GeneratorError(f"duplicate generators in {list(self.generators)}")
        known = set(self.generators)
        for k, r in enumerate(self.relators):
            unknown = r.symbols() - known
            if unknown:
                raise GeneratorError(f"relator {k + 1} uses unknown generator(s) {sorted(unknown)}")

    @classmethod
    def parse(cls, text: str) -> "GroupPresentation":
        """Parse the text format.

        The first content line is ``gens: x y …``; every further line is one
        relator, either a word or ``lhs = rhs``. Blank lines and ``#`` comments
        are ignored.

        Raises:
            ParseError: malformed header, token or unknown symbol (with line number).
        """
        generators: Optional[Tuple[str, ...]] = None
        relators: List[Word] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if generators is None:
                head, sep, rest = line.partition(":")
                if not sep or head.strip() != "gens":
                    raise ParseError("expected 'gens: <generators>' header", number)
                generators = tuple(rest.split())
                if not generators:
                    raise ParseError("no generators declared", number)
                if len(set(generators)) != len(generators):
                    raise ParseError("duplicate generators", number)
                continue
            if line.count("=") > 1:
                raise ParseError("more than one '=' in relator", number)
            lhs, sep, rhs = line.partition("=")
            if sep and (not lhs.strip() or not rhs.strip()):
                raise ParseError("empty side of relation", number)
            word = Word.parse(lhs, number)
            if sep:
                word = word * ~Word.parse(rhs, number)
            symbols = {token.split("^", 1)[0] for token in line.replace("=", " ").split() if token != "1"}
            unknown = symbols - set(generators)
            if unknown:
                raise ParseError(f"unknown symbol(s) {sorted(unknown)}", number)
            relators.append(word)
        if generators is None:
            raise ParseError("missing 'gens:' header", 1)
        return cls(generators, tuple(relators))

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines.extend(str(r) for r in self.relators)
        return "\n".join(lines) + "\n"

    def exponent_matrix(self) -> IntMatrix:
        """Relators × generators matrix of exponent sums."""
        return IntMatrix.from_rows(
            [[r.exponent_sum(g) for g in self.generators] for r in self.relators],
            cols=len(self.generators),
        )


# -- group ring and Fox calculus ------------------------------------------


class GroupRingElem:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, int]] = None):
        clean: Dict[Word, int] = {}
        for w, c in (terms or {}).items():
            w = Word(w.letters)
            clean[w] = clean.get(w, 0) + int(c)
        object.__setattr__(self, "terms", {w: c for w, c in sorted(clean.items()) if c})

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElem is immutable")

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElem":
        return cls({w: c})

    @classmethod
    def one(cls) -> "GroupRingElem":
        return cls.of(Word())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElem(terms)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        terms: Dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                terms[w] = terms.get(w, 0) + a * b
        return GroupRingElem(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.terms.items()):
            body = str(w) if abs(c) == 1 else (f"{abs(c)}" if not len(w) else f"{abs(c)} {w}")
            if i == 0:
                out.append(f"- {body}" if c < 0 else body)
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"GroupRingElem({str(self)!r})"

    def abelianize(self, amap: "AbelianizationMap") -> LaurentPoly:
        total = LaurentPoly.zero(amap.varset)
        for w, c in self.terms.items():
            total = total + amap.monomial(w) * c
        return total


def fox_derivative(w: Word, x: str, generators: Optional[Sequence[str]] = None) -> GroupRingElem:
    """Fox derivative ∂w/∂x.

    ∂x/∂x = 1, ∂x⁻¹/∂x = −x⁻¹, ∂y/∂x = 0, ∂(uv)/∂x = ∂u/∂x + u·∂v/∂x.

    Raises:
        GeneratorError: x (or a symbol of w) is not among ``generators``.
    """
    if generators is not None:
        known = set(generators)
        if x not in known:
            raise GeneratorError(f"unknown generator {x!r}")
        unknown = w.symbols() - known
        if unknown:
            raise GeneratorError(f"word uses unknown generator(s) {sorted(unknown)}")
    terms: Dict[Word, int] = {}
    prefix: List[Tuple[str, int]] = []
    for symbol, exp in w:
        if symbol == x:
            if exp == 1:
                key = Word(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = Word(prefix + [(x, -1)])
                terms[key] = terms.get(key, 0) - 1
        prefix.append((symbol, exp))
    return GroupRingElem(terms)


# -- abelianization -----------------------------------------------------------


@dataclass(frozen=True)
class AbelianizationMap:
    """Projection of each generator to the free part ℤ^r of H₁."""

    generators: Tuple[str, ...]
    varset: VarSet
    images: Mapping[str, Vector]
    torsion_coefficients: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.varset)

    def exponents(self, w: Word) -> Vector:
        total = [0] * self.rank
        for symbol, exp in w:
            try:
                image = self.images[symbol]
            except KeyError:
                raise GeneratorError(f"symbol {symbol!r} outside {list(self.generators)}") from None
            total = [a + exp * b for a, b in zip(total, image)]
        return tuple(total)

    def monomial(self, w: Word) -> LaurentPoly:
        return LaurentPoly.monomial(self.varset, self.exponents(w))

    def matrix(self) -> IntMatrix:
        """Generators × free coordinates."""
        return IntMatrix.from_rows([list(self.images[g]) for g in self.generators], cols=self.rank)


def abelianization(
    P: GroupPresentation, var_names: Optional[Sequence[str]] = None
) -> Tuple[AbelianGroupSpec, AbelianizationMap]:
    """H₁ of a presentation and the projection onto its free part.

    The free coordinates are put in Hermite form, so each coordinate has a
    pivot generator; coordinates are named after it (``t`` when the rank is 1)
    unless ``var_names`` is given.

    Raises:
        ShapeError: ``var_names`` does not match the free rank.
    """
    n = len(P.generators)
    R = P.exponent_matrix()
    form = snf(R)
    rank = form.rank
    free = n - rank
    torsion = tuple(d for d in form.invariant_factors if d > 1)
    # generator j maps to row j of V, restricted to the free coordinates
    raw = [form.V.row(j)[rank:] for j in range(n)]
    columns = hermite_rows([[raw[j][k] for j in range(n)] for k in range(free)], width=n)
    pivots = [next(j for j, x in enumerate(row) if x) for row in columns]

    if var_names is not None:
        names = tuple(var_names)
        if len(names) != free:
            raise ShapeError(f"{len(names)} variable names for free rank {free}")
    elif free == 1:
        names = ("t",)
    else:
        names = tuple(P.generators[j] for j in pivots)

    images = {g: tuple(row[j] for row in columns) for j, g in enumerate(P.generators)}
    spec = AbelianGroupSpec(free_rank=free, torsion_coefficients=list(torsion))
    amap = AbelianizationMap(P.generators, VarSet(names), images, torsion)
    for r in P.relators:
        if any(amap.exponents(r)):
            raise SwTorsionError(f"relator {r} does not vanish under abelianization")
    logger.debug("H1 = %s, variables %s", spec, names)
    return spec, amap


def alexander_matrix(P: GroupPresentation, amap: AbelianizationMap) -> List[List[LaurentPoly]]:
    """Abelianized Fox Jacobian, relators × generators."""
    return [
        [fox_derivative(r, x).abelianize(amap) for x in P.generators]
        for r in P.relators
    ]


def presentation_alexander_polynomial(P: GroupPresentation, amap: AbelianizationMap) -> LaurentPoly:
    """Generator of E₁ of the Alexander matrix, 0 for the zero ideal."""
    m = alexander_matrix(P, amap)
    delta = elementary_ideal_gcd(m, 1, amap.varset) if m else _empty_e1(P, amap)
    return delta if delta.is_zero() else normalize_unit(delta)


def _empty_e1(P: GroupPresentation, amap: AbelianizationMap) -> LaurentPoly:
    # no relators: minors of size n-1 exist only for a single generator
    if len(P.generators) <= 1:
        return LaurentPoly.one(amap.varset)
    return LaurentPoly.zero(amap.varset)


def specialize_first(p: LaurentPoly) -> LaurentPoly:
    """Set every variable but the first to 1, in the one-variable ring of the first."""
    if not len(p.varset):
        return p
    first = p.varset.names[0]
    target = VarSet.of(first)
    assignments = {name: LaurentPoly.one(target) for name in p.varset.names[1:]}
    assignments[first] = LaurentPoly.var(target, first)
    return substitute(p, assignments, target)


def symmetrize_all(p: LaurentPoly) -> Tuple[LaurentPoly, bool]:
    """Symmetrize in each variable in turn; the flag reports an odd span anywhere."""
    asymmetric = False
    for name in p.varset:
        p, odd = symmetrize(p, name)
        asymmetric = asymmetric or odd
    return p, asymmetric


def square_variables(p: LaurentPoly) -> LaurentPoly:
    """v ↦ v² for every variable."""
    return substitute(p, {v: LaurentPoly.var(p.varset, v) ** 2 for v in p.varset}, p.varset)


# -- cohomology and cup products --------------------------------------------


def symplectic_pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """ω(u,v) = uᵀJv for classes in the (α₁,β₁,…) basis."""
    return sum(a * b for a, b in zip(u, symplectic_form(len(u) // 2).apply(v)))


def cocycle_label(u: Sequence[int]) -> str:
    """Text such as ``beta1`` or ``alpha1 - 2*beta2``."""
    names = [f"{x}{k // 2 + 1}" for k in range(len(u)) for x in ("alpha", "beta")][: len(u)]
    return linear_label(u, names)


def cycle_label(c: Sequence[int]) -> str:
    names = [f"{x}{k // 2 + 1}" for k in range(len(c)) for x in ("a", "b")][: len(c)]
    return linear_label(c, names)


def linear_label(vec: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for coeff, name in zip(vec, names):
        if not coeff:
            continue
        body = name if abs(coeff) == 1 else f"{abs(coeff)}*{name}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(parts) or "0"


def dual_cycle(u: Sequence[int]) -> Vector:
    """Poincaré dual on Σ: Σ pᵢαᵢ + qᵢβᵢ ↦ Σ qᵢaᵢ − pᵢbᵢ."""
    out = []
    for k in range(0, len(u), 2):
        out.extend([u[k + 1], -u[k]])
    return tuple(out)


@dataclass(frozen=True)
class CupTensor:
    """⟨yᵢ ∪ yⱼ, h_k⟩ for the H¹(Y) basis y = (θ, u₁…) and H₂ basis h = ([Σ], [c₁×S¹]…)."""

    h1_labels: Tuple[str, ...]
    h2_labels: Tuple[str, ...]
    values: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.h1_labels)

    def cup(self, y1: Sequence[int], y2: Sequence[int]) -> Vector:
        """y1 ∪ y2 in H²(Y) coordinates dual to the H₂ basis."""
        out = [0] * len(self.h2_labels)
        for i, a in enumerate(y1):
            if not a:
                continue
            for j, b in enumerate(y2):
                if not b:
                    continue
                for k, v in enumerate(self.values[i][j]):
                    out[k] += a * b * v
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(v for plane in self.values for row in plane for v in row)


# -- the mapping torus ---------------------------------------------------------


def mapping_torus_presentation(g: int, mc: MappingClass) -> GroupPresentation:
    """⟨t, a₁, b₁, … | ∏[aᵢ,bᵢ], t·x·t⁻¹·φ_*⁻¹(x)⁻¹ for each surface generator x⟩."""
    if g < 1:
        raise SwTorsionError(f"genus must be at least 1, got {g}")
    if mc.genus != g:
        raise ShapeError(f"mapping class of genus {mc.genus} on a genus {g} surface")
    S = surface(g)
    inverse = mapping_class_endo_inverse(mc)
    t = Word.gen("t")
    relators = [S.relator]
    for x in S.generators:
        relators.append(t * Word.gen(x) * ~t * ~inverse.images[x])
    return GroupPresentation(("t",) + S.generators, tuple(relators))


def betti_wang(mc: MappingClass) -> int:
    """b₁(Y) = 1 + nullity(φ* − I)."""
    n = 2 * mc.genus
    return 1 + nullity(cohomology_action(mc) - IntMatrix.identity(n))


def wang_betti(mc: MappingClass) -> Tuple[int, int, int, int]:
    """(b₀, b₁, b₂, b₃) of Y; b₂ = b₁ by duality."""
    b1 = betti_wang(mc)
    return (1, b1, b1, 1)


def charpoly_oracle(mc: MappingClass) -> LaurentPoly:
    """Characteristic polynomial of φ on H₁(Σ)."""
    return char_poly(h1_action(mc))


class MappingTorusY:
    """Mapping torus of a mapping class with lazily computed invariants."""

    def __init__(self, mc: MappingClass, var_names: Optional[Sequence[str]] = None):
        self.mc = mc
        self.genus = mc.genus
        self._var_names = tuple(var_names) if var_names is not None else None

    @cached_property
    def presentation(self) -> GroupPresentation:
        return mapping_torus_presentation(self.genus, self.mc)

    @cached_property
    def b1(self) -> int:
        return betti_wang(self.mc)

    @cached_property
    def _abelianization(self) -> Tuple[AbelianGroupSpec, AbelianizationMap]:
        return abelianization(self.presentation, self._var_names)

    @property
    def h1(self) -> AbelianGroupSpec:
        return self._abelianization[0]

    @property
    def amap(self) -> AbelianizationMap:
        return self._abelianization[1]

    @cached_property
    def alexander_matrix(self) -> List[List[LaurentPoly]]:
        return alexander_matrix(self.presentation, self.amap)

    @cached_property
    def alexander_polynomial(self) -> LaurentPoly:
        delta = presentation_alexander_polynomial(self.presentation, self.amap)
        logger.debug("genus %d, %s: Alexander polynomial %s", self.genus, self.mc, delta)
        if delta.is_zero():
            logger.warning("Alexander polynomial of the mapping torus of %r is 0", str(self.mc))
        return delta

    @cached_property
    def alexander_polynomial_t(self) -> LaurentPoly:
        delta = specialize_first(self.alexander_polynomial)
        return delta if delta.is_zero() else normalize_unit(delta)

    @cached_property
    def _milnor(self) -> Tuple[LaurentPoly, bool]:
        if self.alexander_polynomial.is_zero():
            raise SwTorsionError("Milnor torsion is undefined for a zero Alexander polynomial")
        return symmetrize_all(self.alexander_polynomial)

    @property
    def milnor_torsion(self) -> LaurentPoly:
        return self._milnor[0]

    @property
    def torsion_asymmetric(self) -> bool:
        return self._milnor[1]

    @cached_property
    def invariant_cocycles(self) -> List[Vector]:
        """Basis of ker(φ* − I) on H¹(Σ), Hermite-normalized."""
        n = 2 * self.genus
        return kernel_basis(cohomology_action(self.mc) - IntMatrix.identity(n))

    @property
    def hypothesis_holds(self) -> bool:
        """dim ker(φ* − I) = 1."""
        return len(self.invariant_cocycles) == 1

    @cached_property
    def cup_tensor(self) -> CupTensor:
        return cup_pairings(self)

    @cached_property
    def poincare_dual(self) -> IntMatrix:
        return poincare_dual_matrix(self)

    @property
    def h2_varset(self) -> VarSet:
        return VarSet(("t",) + tuple(f"c{k}" for k in range(1, len(self.invariant_cocycles) + 1)))


def alexander_polynomial(Y: MappingTorusY) -> LaurentPoly:
    """Unit-normalized generator of E₁ in all free H₁ variables."""
    return Y.alexander_polynomial


def milnor_torsion(Y: MappingTorusY) -> LaurentPoly:
    """Symmetrized Alexander polynomial.

    Raises:
        SwTorsionError: the Alexander polynomial is zero.
    """
    return Y.milnor_torsion


def sw3(Y: MappingTorusY) -> LaurentPoly:
    """SW_Y = milnor torsion with every variable squared."""
    return square_variables(milnor_torsion(Y))


def oracle_quotient(Y: MappingTorusY) -> Optional[LaurentPoly]:
    """charpoly_oracle / Δ(t), unit-normalized, or None when Δ(t) does not divide it."""
    delta = Y.alexander_polynomial_t
    if delta.is_zero() or delta.varset != VarSet.of("t"):
        return None
    try:
        return normalize_unit(exact_div(charpoly_oracle(Y.mc), delta))
    except NotDivisibleError:
        return None


def cup_pairings(Y: MappingTorusY) -> CupTensor:
    """Cup-product pairings of H¹(Y) = ⟨θ⟩ ⊕ ker(φ* − I) against {[Σ], [c_k×S¹]}.

    ⟨θ∪θ,·⟩ = 0, ⟨u∪v,[Σ]⟩ = ω(u,v), ⟨u∪v,[c×S¹]⟩ = 0,
    ⟨θ∪u,[Σ]⟩ = 0, ⟨θ∪u,[c_k×S¹]⟩ = u(c_k), antisymmetric in the two slots.
    """
    us = Y.invariant_cocycles
    dim = 1 + len(us)
    values = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, u in enumerate(us, start=1):
        for j, v in enumerate(us, start=1):
            values[i][j][0] = symplectic_pairing(u, v)
        for k, w in enumerate(us, start=1):
            # u(c_k) with c_k the surface dual of u_k
            pairing = symplectic_pairing(u, w)
            values[0][i][k] = pairing
            values[i][0][k] = -pairing
    h1_labels = ("theta",) + tuple(cocycle_label(u) for u in us)
    h2_labels = ("[Sigma]",) + tuple(f"[({cycle_label(dual_cycle(u))}) x S1]" for u in us)
    return CupTensor(
        h1_labels,
        h2_labels,
        tuple(tuple(tuple(row) for row in plane) for plane in values),
    )


def triple_product(Y: MappingTorusY, y1: Sequence[int], y2: Sequence[int], y3: Sequence[int]) -> int:
    """⟨y1 ∪ y2 ∪ y3, [Y]⟩, with PD(θ) = [Σ] and PD(u_k) = [c_k×S¹]."""
    return cup_with_class(Y, y3, Y.cup_tensor.cup(y1, y2))


def cup_with_class(Y: MappingTorusY, u: Sequence[int], psi: Sequence[int]) -> int:
    """⟨u ∪ ψ, [Y]⟩ = ψ(PD u) for u ∈ H¹(Y) and ψ ∈ H²(Y) in dual coordinates."""
    if len(u) != Y.cup_tensor.dim or len(psi) != len(Y.cup_tensor.h2_labels):
        raise ShapeError("class coordinates do not match the cohomology bases")
    return sum(a * b for a, b in zip(u, psi))


def poincare_dual_matrix(Y: MappingTorusY) -> IntMatrix:
    """Integer matrix taking free H₁(Y) coordinates to H²(Y) coordinates.

    The loop t goes to the dual of [Σ]; a surface loop x goes to
    (0, u₁(x), …, u_m(x)).

    Raises:
        NotDivisibleError: H₁ torsion-free part does not determine the dual (not for mapping tori).
    """
    amap = Y.amap
    us = Y.invariant_cocycles
    surface_index = {g: k for k, g in enumerate(surface(Y.genus).generators)}
    targets = []
    for g in amap.generators:
        if g == "t":
            targets.append([1] + [0] * len(us))
        else:
            k = surface_index[g]
            targets.append([0] + [u[k] for u in us])
    F = amap.matrix()
    rows = [solve_integer(F, [row[i] for row in targets]) for i in range(1 + len(us))]
    return IntMatrix.from_rows([list(r) for r in rows], cols=amap.rank)


def to_h2_coordinates(Y: MappingTorusY, p: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in H₁ variables as one in H²(Y) variables via Poincaré duality."""
    if p.varset != Y.amap.varset:
        raise ShapeError(f"polynomial in {list(p.varset)}, expected {list(Y.amap.varset)}")
    pd = Y.poincare_dual
    terms: Dict[Vector, int] = {}
    for e, c in p.terms.items():
        image = pd.apply(e)
        terms[image] = terms.get(image, 0) + c
    return LaurentPoly(Y.h2_varset, terms)


def sw3_in_h2(Y: MappingTorusY) -> LaurentPoly:
    """SW_Y with exponents expressed in H²(Y) coordinates."""
    return to_h2_coordinates(Y, sw3(Y))
