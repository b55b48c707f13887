"""
Circle bundles X → Y over mapping tori.

Given the Euler class χ ∈ H²(Y) this module runs the Gysin sequence for the
Betti numbers and the H²(X) basis, assembles the intersection form (with the
undetermined lift-lift block left symbolic), collapses SW_Y along cosets of
χ to get SW_X, reads off the canonical class and Kodaira dimension, and
evaluates the cup-product tests behind the Lefschetz, wall-crossing and
positive-scalar-curvature verdicts.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from .errors import IntegralityError, KodairaError, NotDivisibleError, ShapeError, SwTorsionError, UndeterminedError
from .exactalg import IntMatrix, Vector, det, kernel_basis, rank, solve_integer
from .laurent import LaurentPoly, VarSet
from .torus3 import MappingTorusY, cup_with_class, linear_label, sw3_in_h2, triple_product

logger = logging.getLogger(__name__)


class KodairaClass(str, Enum):
    MINUS_INFINITY = "-inf"
    ZERO = "0"
    ONE = "1"
    TWO = "2"


class BettiNumbers(NamedTuple):
    b1: int
    b2: int
    b3: int
    euler: int
    signature: Optional[int]


class IntersectionForm(BaseModel):
    """Intersection form on H²(X)/torsion in the basis (π*r₁…, z̃₁…).

    ``None`` entries are intersection numbers the construction leaves
    undetermined (the lift-lift block).
    """

    labels: List[str]
    matrix: List[List[Optional[int]]]
    signature: Optional[int] = None
    b_plus: Optional[int] = None
    b_minus: Optional[int] = None
    determinant: Optional[int] = None

    @property
    def rank(self) -> int:
        return len(self.labels)


class LefschetzResult(BaseModel):
    verdict: str
    lefschetz_type: bool
    annihilator: List[List[int]] = Field(default_factory=list)
    annihilator_labels: List[str] = Field(default_factory=list)
    witness: Optional[str] = None


class NoetherCheck(BaseModel):
    """2χ + 3σ against 9 − 4b₁ − b₋."""

    lhs: int
    rhs: int
    holds: bool


class ObstructionReport(BaseModel):
    sw_nonzero: bool
    sw_nonzero_reason: str
    wall_crossing_trivial: bool
    psc_metric: str
    complex_structure: str
    sw_simple_type: Optional[bool] = None
    kodaira: Optional[KodairaClass] = None


@dataclass(frozen=True)
class SWPolynomial4:
    """SW_X as a polynomial whose variables are the pulled-back classes π*rᵢ."""

    poly: LaurentPoly
    classes: Tuple[str, ...]

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class GysinData:
    """The two cup-by-χ maps of the Gysin sequence and the bases they produce."""

    rank_h0: int
    rank_h1: int
    functionals: IntMatrix
    complement: Tuple[Vector, ...]
    lifts: Tuple[Vector, ...]


def collapse_functionals(chi: Sequence[int]) -> IntMatrix:
    """Rows span the functionals on H²(Y) that vanish on χ (identity when χ = 0)."""
    n = len(chi)
    basis = kernel_basis(IntMatrix.from_rows([list(chi)], cols=n))
    return IntMatrix.from_rows([list(v) for v in basis], cols=n)


def default_euler_class(Y: MappingTorusY) -> Vector:
    """(0, 1, 0, …): the dual of the first invariant torus, zero when there is none."""
    n = 1 + len(Y.invariant_cocycles)
    return tuple(1 if k == 1 else 0 for k in range(n))


class CircleBundleX:
    """Circle bundle over a mapping torus with Euler class χ."""

    def __init__(self, base: MappingTorusY, euler_class: Optional[Sequence[int]] = None):
        self.base = base
        chi = tuple(euler_class) if euler_class is not None else default_euler_class(base)
        n = 1 + len(base.invariant_cocycles)
        if len(chi) != n:
            raise ShapeError(f"Euler class {chi} for H²(Y) of rank {n}")
        self.euler_class = chi
        if not any(chi):
            logger.warning("Euler class is zero; X is the product Y x S1")

    @property
    def chi_nonzero(self) -> bool:
        return any(self.euler_class)

    @cached_property
    def gysin(self) -> GysinData:
        return gysin_maps(self)

    @cached_property
    def form(self) -> IntersectionForm:
        return intersection_form(self)

    @cached_property
    def sw4(self) -> Optional[SWPolynomial4]:
        """None when SW_Y is undefined (zero Alexander polynomial)."""
        if self.base.alexander_polynomial.is_zero():
            return None
        return sw4_from_sw3(sw3_in_h2(self.base), self.euler_class)

    @property
    def h2_labels(self) -> List[str]:
        return self.form.labels


def gysin_maps(X: CircleBundleX) -> GysinData:
    """Cup with χ on H⁰(Y) and H¹(Y), the complement of χ in H²(Y) and the kernel on H¹."""
    Y = X.base
    chi = X.euler_class
    n = len(chi)
    rank_h0 = 1 if any(chi) else 0
    # ∪χ: H¹(Y) → H³(Y) = ℤ is u ↦ ⟨u∪χ,[Y]⟩
    row = IntMatrix.from_rows([[cup_with_class(Y, e, chi) for e in _unit_vectors(n)]], cols=n)
    rank_h1 = rank(row)
    lifts = tuple(kernel_basis(row))
    functionals = collapse_functionals(chi)
    complement = tuple(
        solve_integer(functionals, [1 if i == k else 0 for i in range(functionals.rows)])
        for k in range(functionals.rows)
    )
    logger.debug("Gysin: rank on H0 %d, rank on H1 %d, %d lifts", rank_h0, rank_h1, len(lifts))
    return GysinData(rank_h0, rank_h1, functionals, complement, lifts)


def _unit_vectors(n: int) -> List[Vector]:
    return [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]


def gysin_betti(X: CircleBundleX) -> BettiNumbers:
    """Betti numbers of X from the Gysin sequence; the Euler characteristic is 0.

    With χ = 0 these are the product formulas of Y × S¹.
    """
    b1y = X.base.b1
    r = X.gysin.rank_h0
    s = X.gysin.rank_h1
    b1 = b1y + (1 - r)
    b2 = (b1y - r) + (b1y - s)
    b3 = (1 - s) + b1y
    euler = 1 - b1 + b2 - b3 + 1
    return BettiNumbers(b1, b2, b3, euler, X.form.signature)


def intersection_form(X: CircleBundleX) -> IntersectionForm:
    """Q_X in the basis (π*r₁…, z̃₁…).

    π*r ∪ π*r' = 0, ⟨π*r ∪ z̃, [X]⟩ = ⟨r ∪ z, [Y]⟩, lift-lift unknown.
    When the mixed block is square and nonsingular the form has a Lagrangian
    of half rank, so σ = 0 and b₊ = b₋ whatever the unknown block is.
    """
    Y = X.base
    data = X.gysin
    k, m = len(data.complement), len(data.lifts)
    size = k + m
    matrix: List[List[Optional[int]]] = [[0] * size for _ in range(size)]
    mixed = [[cup_with_class(Y, z, r) for z in data.lifts] for r in data.complement]
    for i in range(k):
        for j in range(m):
            matrix[i][k + j] = mixed[i][j]
            matrix[k + j][i] = mixed[i][j]
    for i in range(m):
        for j in range(m):
            matrix[k + i][k + j] = None

    h2_names = Y.h2_varset.names
    labels = [f"pi*({linear_label(r, h2_names)})" for r in data.complement]
    labels += [f"lift({linear_label(z, Y.cup_tensor.h1_labels)})" for z in data.lifts]

    signature = b_plus = b_minus = determinant = None
    if m == 0:
        signature, b_plus, b_minus, determinant = 0, 0, 0, (1 if k == 0 else 0)
    elif k == m:
        d = det(IntMatrix.from_rows(mixed, cols=m))
        if d:
            signature, b_plus, b_minus = 0, k, k
            determinant = (-1) ** k * d * d
    return IntersectionForm(
        labels=labels,
        matrix=matrix,
        signature=signature,
        b_plus=b_plus,
        b_minus=b_minus,
        determinant=determinant,
    )


def pair(Q: IntersectionForm, u: Sequence[int], v: Sequence[int]) -> int:
    """Q(u, v).

    Raises:
        UndeterminedError: the value needs an undetermined entry.
    """
    if len(u) != Q.rank or len(v) != Q.rank:
        raise ShapeError(f"classes must have {Q.rank} coordinates")
    total = 0
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            entry = Q.matrix[i][j]
            if entry is None:
                raise UndeterminedError(f"Q({Q.labels[i]}, {Q.labels[j]}) is not determined")
            total += a * b * entry
    return total


def sw4_from_sw3(swY: LaurentPoly, chi: Sequence[int]) -> SWPolynomial4:
    """Sum SW_Y coefficients over cosets of ℤ·χ and rename by the pulled-back classes.

    ``swY`` has one variable per H²(Y) coordinate. The output variable is
    ``s`` when one class survives, ``s1, s2, …`` otherwise.
    """
    if len(swY.varset) != len(chi):
        raise ShapeError(f"SW_Y in {len(swY.varset)} variables, Euler class {tuple(chi)}")
    functionals = collapse_functionals(chi)
    k = functionals.rows
    names = ("s",) if k == 1 else tuple(f"s{i}" for i in range(1, k + 1))
    terms: Dict[Vector, int] = {}
    for exps, c in swY.terms.items():
        image = functionals.apply(exps)
        terms[image] = terms.get(image, 0) + c
    classes = tuple(
        linear_label(r, swY.varset.names)
        for r in (
            solve_integer(functionals, [1 if i == j else 0 for i in range(k)]) for j in range(k)
        )
    )
    return SWPolynomial4(LaurentPoly(VarSet(names), terms), classes)


def canonical_vector(sw4: SWPolynomial4) -> Vector:
    """Exponent vector of the lexicographically top basic class."""
    if sw4.poly.is_zero():
        raise SwTorsionError("canonical class of a zero SW polynomial")
    return max(sw4.poly.terms)


def canonical_class(sw4: SWPolynomial4) -> int:
    """Top exponent of the first variable; K = k·π*r₁."""
    return canonical_vector(sw4)[0] if len(sw4.poly.varset) else 0


def kodaira_dimension(Ksq: int, Kdotw: int) -> KodairaClass:
    """Symplectic Kodaira dimension of a minimal symplectic 4-manifold.

    Raises:
        KodairaError: K² > 0 with K·ω = 0, which does not occur.
    """
    if Ksq < 0 or Kdotw < 0:
        return KodairaClass.MINUS_INFINITY
    if Ksq == 0 and Kdotw == 0:
        return KodairaClass.ZERO
    if Ksq == 0:
        return KodairaClass.ONE
    if Kdotw > 0:
        return KodairaClass.TWO
    raise KodairaError(f"no minimal symplectic manifold has K^2 = {Ksq} > 0 and K.w = 0")


def kodaira_table() -> List[Tuple[str, str]]:
    return [
        ("K^2 < 0 or K.w < 0", KodairaClass.MINUS_INFINITY.value),
        ("K^2 = 0 and K.w = 0", KodairaClass.ZERO.value),
        ("K^2 = 0 and K.w > 0", KodairaClass.ONE.value),
        ("K^2 > 0 and K.w > 0", KodairaClass.TWO.value),
    ]


def noether_check(b1: int, b_minus: int, euler: int, signature: int) -> NoetherCheck:
    lhs = 2 * euler + 3 * signature
    rhs = 9 - 4 * b1 - b_minus
    return NoetherCheck(lhs=lhs, rhs=rhs, holds=lhs == rhs)


def symplectic_class(X: CircleBundleX) -> Optional[Vector]:
    """[ω] = π*Ω + lift(θ) in H²(X) coordinates, or None when θ ∪ χ ≠ 0."""
    data = X.gysin
    n = len(X.euler_class)
    theta = _unit_vectors(n)[0]
    if cup_with_class(X.base, theta, X.euler_class):
        return None
    # the dual of [Sigma] has the same coordinates as theta
    pulled = data.functionals.apply(theta)
    lifts = IntMatrix.from_columns(list(data.lifts), rows=n)
    try:
        lifted = solve_integer(lifts, theta)
    except NotDivisibleError:
        return None
    return tuple(pulled) + tuple(lifted)


def canonical_h2(X: CircleBundleX) -> Optional[Vector]:
    """K in H²(X) coordinates (pullback part from SW_X, no lift part)."""
    if X.sw4 is None or X.sw4.poly.is_zero():
        return None
    k_vec = canonical_vector(X.sw4) if len(X.sw4.poly.varset) else ()
    return tuple(k_vec) + (0,) * len(X.gysin.lifts)


def cup_annihilator(
    cup: Callable[[Sequence[int], Sequence[int]], Sequence[int]],
    dim: int,
    functionals: IntMatrix,
) -> List[Vector]:
    """Kernel of z ↦ (F·(z ∪ w))_w over a basis w, F the pullback H²(Y) → H²(X)."""
    basis = _unit_vectors(dim)
    rows: List[List[int]] = []
    for w in basis:
        images = [functionals.apply(cup(z, w)) for z in basis]
        for i in range(functionals.rows):
            rows.append([image[i] for image in images])
    return kernel_basis(IntMatrix.from_rows(rows, cols=dim))


def lefschetz_test(X: CircleBundleX) -> LefschetzResult:
    """Look for a nonzero class annihilating H¹(X) under cup product.

    Any such class rules out a Lefschetz class L (a ∪ b ∪ L would be degenerate).
    With χ = 0, H¹(X) picks up the fiber class, which pairs nontrivially with
    every class of H¹(Y), so nothing annihilates.
    """
    tensor = X.base.cup_tensor
    if not X.chi_nonzero:
        return LefschetzResult(verdict="Lefschetz-compatible", lefschetz_type=True)
    annihilator = cup_annihilator(tensor.cup, tensor.dim, X.gysin.functionals)
    theta = _unit_vectors(tensor.dim)[0]
    theta_annihilates = all(
        not any(X.gysin.functionals.apply(tensor.cup(theta, w))) for w in _unit_vectors(tensor.dim)
    )
    if not annihilator:
        return LefschetzResult(verdict="Lefschetz-compatible", lefschetz_type=True)
    return LefschetzResult(
        verdict="not Lefschetz type",
        lefschetz_type=False,
        annihilator=[list(v) for v in annihilator],
        annihilator_labels=[linear_label(v, ["pi*" + lab for lab in tensor.h1_labels]) for v in annihilator],
        witness="pi*theta" if theta_annihilates else None,
    )


def wall_crossing_term(X: CircleBundleX, xi: Sequence[int], y1: Sequence[int], y2: Sequence[int]) -> int:
    """⟨y1 ∪ y2 ∪ ξ/2, [X]⟩ for ξ in H²(X) coordinates and y1, y2 ∈ H¹(Y) ≅ H¹(X).

    Only the lift part of ξ contributes: π*(y1∪y2) ∪ π*r lies in π*H⁴(Y) = 0.

    Raises:
        IntegralityError: ξ/2 is not integral.
    """
    data = X.gysin
    k = len(data.complement)
    if len(xi) != k + len(data.lifts):
        raise ShapeError(f"xi needs {k + len(data.lifts)} coordinates")
    if any(c % 2 for c in xi):
        raise IntegralityError(f"xi = {tuple(xi)} is not divisible by 2")
    total = 0
    for j, z in enumerate(data.lifts):
        half = xi[k + j] // 2
        if half:
            total += half * triple_product(X.base, y1, y2, z)
    return total


def sw_dimension(X: CircleBundleX, xi_sq: int) -> int:
    """d(ξ) = (ξ² − 2χ(X) − 3σ(X)) / 4.

    Raises:
        UndeterminedError: σ(X) is not determined.
        IntegralityError: the numerator is not divisible by 4.
    """
    betti = gysin_betti(X)
    if betti.signature is None:
        raise UndeterminedError("signature of X is not determined")
    numerator = xi_sq - 2 * betti.euler - 3 * betti.signature
    if numerator % 4:
        raise IntegralityError(f"xi^2 = {xi_sq} gives {numerator}, not divisible by 4")
    return numerator // 4


@dataclass(frozen=True)
class CanonicalData:
    k: Optional[int]
    vector: Optional[Vector]
    k_squared: Optional[int]
    k_dot_omega: Optional[int]
    kodaira: Optional[KodairaClass]


def canonical_data(X: CircleBundleX) -> CanonicalData:
    """K, K², K·ω and κ where the inputs determine them."""
    if X.sw4 is None or X.sw4.poly.is_zero():
        return CanonicalData(None, None, None, None, None)
    k = canonical_class(X.sw4)
    vector = canonical_h2(X)
    omega = symplectic_class(X)
    k_squared = k_dot_omega = kodaira = None
    try:
        k_squared = pair(X.form, vector, vector)
        if omega is not None:
            k_dot_omega = pair(X.form, vector, omega)
    except UndeterminedError as exc:
        logger.warning("canonical class pairing undetermined: %s", exc)
    if k_squared is not None and k_dot_omega is not None:
        kodaira = kodaira_dimension(k_squared, k_dot_omega)
    return CanonicalData(k, vector, k_squared, k_dot_omega, kodaira)


def obstruction_report(X: CircleBundleX) -> ObstructionReport:
    """PSC, complex-structure and simple-type verdicts.

    Taubes nonvanishing for symplectic X is taken as an axiom.
    """
    symplectic = symplectic_class(X) is not None
    computed = X.sw4 is not None and not X.sw4.poly.is_zero()
    if symplectic:
        sw_nonzero, reason = True, "Taubes: symplectic manifolds have nonzero SW invariants"
    else:
        sw_nonzero, reason = computed, "computed SW polynomial"
    lefschetz = lefschetz_test(X)
    wall_trivial = not lefschetz.lefschetz_type
    psc = "excluded" if (sw_nonzero and wall_trivial) else "inconclusive (chamber-dependent)"
    betti = gysin_betti(X)
    complex_structure = "excluded" if (betti.b1 % 2 == 0 and not lefschetz.lefschetz_type) else "not excluded"

    canon = canonical_data(X)
    simple_type = None
    if canon.k_squared is not None:
        try:
            simple_type = sw_dimension(X, canon.k_squared) == 0
        except (UndeterminedError, IntegralityError) as exc:
            logger.warning("simple type check skipped: %s", exc)
    return ObstructionReport(
        sw_nonzero=sw_nonzero,
        sw_nonzero_reason=reason,
        wall_crossing_trivial=wall_trivial,
        psc_metric=psc,
        complex_structure=complex_structure,
        sw_simple_type=simple_type,
        kodaira=canon.kodaira,
    )
