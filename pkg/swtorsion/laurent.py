"""
Multivariate Laurent polynomials over the integers.

Polynomials are kept as a map from exponent vectors to nonzero integer
coefficients. Exact division and gcd shift both operands to ordinary
polynomials (nonnegative exponents), hand them to sympy's sparse ZZ ring
and shift the answer back; units of the Laurent ring are exactly the
signed monomials, so nothing is lost.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from .errors import NotDivisibleError, NotInvertibleError, ShapeError, SwTorsionError, VarSetMismatchError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class VarSet:
    """Ordered, distinct variable names."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not isinstance(name, str) or not name:
                raise ValueError(f"variable names must be nonempty strings, got {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VarSetMismatchError(f"variable {name!r} not in {list(self.names)}") from None


class LaurentPoly:
    """Exact Laurent polynomial with integer coefficients."""

    __slots__ = ("varset", "terms")

    def __init__(self, varset: VarSet, terms: Optional[Mapping[Exponents, int]] = None):
        n = len(varset)
        clean: Dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ShapeError(f"exponent vector {exps} for {n} variables")
            coeff = int(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
        object.__setattr__(self, "varset", varset)
        object.__setattr__(self, "terms", {e: clean[e] for e in sorted(clean) if clean[e]})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, varset: VarSet) -> "LaurentPoly":
        return cls(varset)

    @classmethod
    def constant(cls, varset: VarSet, c: int) -> "LaurentPoly":
        return cls(varset, {(0,) * len(varset): c})

    @classmethod
    def one(cls, varset: VarSet) -> "LaurentPoly":
        return cls.constant(varset, 1)

    @classmethod
    def monomial(cls, varset: VarSet, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(varset, {tuple(exps): coeff})

    @classmethod
    def var(cls, varset: VarSet, name: str) -> "LaurentPoly":
        exps = [0] * len(varset)
        exps[varset.index(name)] = 1
        return cls.monomial(varset, exps)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], var: str = "t", low: int = 0) -> "LaurentPoly":
        """Univariate polynomial Σ coeffs[k]·var^(low+k)."""
        return cls(VarSet.of(var), {(low + k,): c for k, c in enumerate(coeffs)})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        return self.is_monomial() and abs(next(iter(self.terms.values()))) == 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def items(self) -> List[Tuple[Exponents, int]]:
        """Terms in ascending lexicographic exponent order."""
        return list(self.terms.items())

    def min_exponents(self) -> Exponents:
        if self.is_zero():
            return (0,) * len(self.varset)
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> Exponents:
        if self.is_zero():
            return (0,) * len(self.varset)
        return tuple(max(col) for col in zip(*self.terms))

    def exponent_range(self, name: str) -> Tuple[int, int]:
        i = self.varset.index(name)
        values = [e[i] for e in self.terms]
        return (min(values), max(values)) if values else (0, 0)

    def content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.varset != other.varset:
            raise VarSetMismatchError(f"{list(self.varset)} vs {list(other.varset)}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(self.varset, other)
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.varset, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.varset, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.varset, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise NotInvertibleError(f"{self} is not a unit")
            (e, c), = self.terms.items()
            return LaurentPoly(self.varset, {tuple(-k * -n for k in e): c ** (-n)})
        result = LaurentPoly.one(self.varset)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        return LaurentPoly(
            self.varset, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.varset, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.varset == other.varset and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.varset, tuple(self.terms.items())))

    # -- text ---------------------------------------------------------------

    def _monomial_text(self, exps: Exponents) -> str:
        parts = []
        for name, k in zip(self.varset, exps):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.terms.items()):
            mono = self._monomial_text(exps)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if i == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({list(self.varset)}, {str(self)!r})"

    def to_pairs(self) -> List[Tuple[List[int], int]]:
        """Terms as [exponent-vector, coefficient] pairs in canonical order."""
        return [(list(e), c) for e, c in self.terms.items()]


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def neg(p: LaurentPoly) -> LaurentPoly:
    return -p


# -- ordinary polynomial kernel ------------------------------------------


@lru_cache(maxsize=None)
def _ordinary_ring(n: int):
    """Sparse polynomial ring ZZ[x0..x(n-1)]."""
    return ring(",".join(f"x{i}" for i in range(n)), ZZ)[0]


def _to_ordinary(p: LaurentPoly) -> Tuple[object, Exponents]:
    """Split p = x^shift · P with P an ordinary polynomial not divisible by any variable."""
    shift = p.min_exponents()
    R = _ordinary_ring(len(p.varset))
    element = R.from_dict({tuple(a - b for a, b in zip(e, shift)): c for e, c in p.terms.items()})
    return element, shift


def _from_ordinary(varset: VarSet, element, shift: Sequence[int] = ()) -> LaurentPoly:
    shift = tuple(shift) or (0,) * len(varset)
    return LaurentPoly(
        varset, {tuple(a + b for a, b in zip(e, shift)): int(c) for e, c in element.items()}
    )


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """The r with q·r = p.

    Raises:
        ZeroDivisionError: q is zero.
        NotDivisibleError: q does not divide p in the Laurent ring.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("exact_div by the zero polynomial")
    if p.is_zero():
        return p
    if q.is_monomial():
        (qe, qc), = q.terms.items()
        terms = {}
        for e, c in p.terms.items():
            if c % qc:
                raise NotDivisibleError(f"{q} does not divide {p}")
            terms[tuple(a - b for a, b in zip(e, qe))] = c // qc
        return LaurentPoly(p.varset, terms)
    P, ps = _to_ordinary(p)
    Q, qs = _to_ordinary(q)
    try:
        R = P.exquo(Q)
    except ExactQuotientFailed:
        raise NotDivisibleError(f"{q} does not divide {p}") from None
    return _from_ordinary(p.varset, R, tuple(a - b for a, b in zip(ps, qs)))


def divides(q: LaurentPoly, p: LaurentPoly) -> bool:
    """True when q divides p in the Laurent ring."""
    try:
        exact_div(p, q)
        return True
    except (NotDivisibleError, ZeroDivisionError):
        return False


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate: minimal exponent 0 in every variable, first term positive.

    Raises:
        SwTorsionError: p is zero.
    """
    if p.is_zero():
        raise SwTorsionError("normalize_unit of the zero polynomial")
    q = p.shift(tuple(-k for k in p.min_exponents()))
    first = next(iter(q.terms.values()))
    return -q if first < 0 else q


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Unit-normalized greatest common divisor.

    Raises:
        SwTorsionError: both inputs are zero.
    """
    p._check(q)
    if p.is_zero() and q.is_zero():
        raise SwTorsionError("gcd of two zero polynomials")
    if p.is_zero():
        return normalize_unit(q)
    if q.is_zero():
        return normalize_unit(p)
    if not len(p.varset):
        return LaurentPoly.constant(p.varset, math.gcd(p.coefficient(()), q.coefficient(())))
    if p.is_monomial() or q.is_monomial():
        return LaurentPoly.constant(p.varset, math.gcd(p.content(), q.content()))
    P, _ = _to_ordinary(p)
    Q, _ = _to_ordinary(q)
    return normalize_unit(_from_ordinary(p.varset, P.gcd(Q)))


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """Fold of gcd over a collection, unit-normalized.

    Raises:
        SwTorsionError: every element is zero (or the collection is empty).
    """
    result: Optional[LaurentPoly] = None
    for p in polys:
        if p.is_zero():
            continue
        result = normalize_unit(p) if result is None else gcd(result, p)
    if result is None:
        raise SwTorsionError("gcd_many needs at least one nonzero polynomial")
    return result


class Symmetrized(NamedTuple):
    """Result of symmetrize; ``asymmetric_span`` marks an odd exponent span."""

    poly: LaurentPoly
    asymmetric_span: bool


def symmetrize(p: LaurentPoly, var: str) -> Symmetrized:
    """Associate ±var^k·p whose exponent range in ``var`` is centred at 0.

    With an odd span the range becomes {−m, …, m+1}. The sign makes the
    coefficient of the top term in ``var`` positive.

    Raises:
        SwTorsionError: p is zero.
    """
    if p.is_zero():
        raise SwTorsionError("symmetrize of the zero polynomial")
    i = p.varset.index(var)
    lo, hi = p.exponent_range(var)
    span = hi - lo
    target_lo = -(span // 2)
    shift = [0] * len(p.varset)
    shift[i] = target_lo - lo
    q = p.shift(shift)
    top = max(q.terms, key=lambda e: (e[i], e))
    if q.terms[top] < 0:
        q = -q
    if span % 2:
        logger.debug("symmetrize: odd span %d in %s for %s", span, var, p)
    return Symmetrized(q, bool(span % 2))


Assignment = Union[int, LaurentPoly]


def substitute(
    p: LaurentPoly,
    assignments: Mapping[str, Assignment],
    varset: Optional[VarSet] = None,
) -> LaurentPoly:
    """Replace variables by monomials, constants or other polynomials.

    Variables without an assignment are kept and must exist in the target
    variable set. The target defaults to the variable set of the polynomial
    assignments, or to p's own when every assignment is an integer.

    Raises:
        VarSetMismatchError: assignments live in different variable sets, or a
            kept variable is missing from the target.
        NotInvertibleError: a variable with a negative exponent is sent to a non-unit.
    """
    for name in assignments:
        p.varset.index(name)
    if varset is None:
        targets = {a.varset for a in assignments.values() if isinstance(a, LaurentPoly)}
        if len(targets) > 1:
            raise VarSetMismatchError("substitution targets use different variable sets")
        varset = targets.pop() if targets else p.varset

    images: List[LaurentPoly] = []
    for name in p.varset:
        value = assignments.get(name)
        if value is None:
            images.append(LaurentPoly.var(varset, name))
        elif isinstance(value, int):
            images.append(LaurentPoly.constant(varset, value))
        else:
            if value.varset != varset:
                raise VarSetMismatchError(f"target for {name} is in {list(value.varset)}")
            images.append(value)

    powers: Dict[Tuple[int, int], LaurentPoly] = {}

    def power(i: int, k: int) -> LaurentPoly:
        if (i, k) not in powers:
            if k < 0 and not images[i].is_unit():
                raise NotInvertibleError(
                    f"{p.varset.names[i]} appears with exponent {k} but is sent to {images[i]}"
                )
            powers[(i, k)] = images[i] ** k
        return powers[(i, k)]

    result = LaurentPoly.zero(varset)
    for exps, c in p.terms.items():
        term = LaurentPoly.constant(varset, c)
        for i, k in enumerate(exps):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


# -- matrices over the ring ------------------------------------------------

PolyMatrix = Sequence[Sequence[LaurentPoly]]


def _cofactor_det(a: List[List[LaurentPoly]], varset: VarSet) -> LaurentPoly:
    n = len(a)
    if n == 0:
        return LaurentPoly.one(varset)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = LaurentPoly.zero(varset)
    for j, entry in enumerate(a[0]):
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in a[1:]]
        cof = entry * _cofactor_det(sub, varset)
        total = total - cof if j % 2 else total + cof
    return total


def _bareiss_det(a: List[List[LaurentPoly]], varset: VarSet) -> LaurentPoly:
    """Fraction-free elimination over the ordinary ring after clearing each row's denominators."""
    n = len(a)
    if not len(varset):
        from .exactalg import IntMatrix, det

        return LaurentPoly.constant(varset, det(IntMatrix.from_rows([[e.coefficient(()) for e in row] for row in a])))
    R = _ordinary_ring(len(varset))
    total_shift = [0] * len(varset)
    rows = []
    for row in a:
        nonzero = [e for e in row if not e.is_zero()]
        if not nonzero:
            return LaurentPoly.zero(varset)
        low = tuple(min(col) for col in zip(*(e.min_exponents() for e in nonzero)))
        total_shift = [s + k for s, k in zip(total_shift, low)]
        rows.append([
            R.from_dict({tuple(x - y for x, y in zip(k, low)): c for k, c in e.terms.items()})
            for e in row
        ])
    sign, prev = 1, R.one
    for k in range(n - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return LaurentPoly.zero(varset)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            lead = rows[i][k]
            for j in range(k + 1, n):
                numerator = rows[i][j] * pivot - lead * rows[k][j]
                rows[i][j] = numerator.exquo(prev) if numerator else numerator
        prev = pivot
    result = _from_ordinary(varset, rows[n - 1][n - 1], total_shift)
    return -result if sign < 0 else result


def _matrix_varset(m: PolyMatrix, default: Optional[VarSet]) -> VarSet:
    for row in m:
        for e in row:
            return e.varset
    if default is None:
        raise ShapeError("cannot infer the variable set of an empty matrix")
    return default


def minor_det(
    m: PolyMatrix,
    rows: Sequence[int],
    cols: Sequence[int],
    varset: Optional[VarSet] = None,
) -> LaurentPoly:
    """Determinant of the submatrix on ``rows`` × ``cols``.

    Cofactor expansion up to 4×4, fraction-free elimination above.

    Raises:
        ShapeError: the subsets differ in size or an index is out of range.
    """
    if len(rows) != len(cols):
        raise ShapeError(f"minor with {len(rows)} rows and {len(cols)} columns")
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    if any(not 0 <= i < n_rows for i in rows) or any(not 0 <= j < n_cols for j in cols):
        raise ShapeError(f"minor indices out of range for a {n_rows}x{n_cols} matrix")
    varset = _matrix_varset(m, varset)
    sub = [[m[i][j] for j in cols] for i in rows]
    if len(sub) <= 4:
        return _cofactor_det(sub, varset)
    return _bareiss_det(sub, varset)


def elementary_ideal_gcd(m: PolyMatrix, k: int, varset: Optional[VarSet] = None) -> LaurentPoly:
    """Generator (gcd) of the k-th elementary ideal of a presentation matrix.

    E_k is generated by the minors of size n−k, n the number of columns.
    Returns 0 when there are fewer than n−k rows and 1 when n−k ≤ 0.
    Enumeration stops once the running gcd is 1.
    """
    r = len(m)
    n = len(m[0]) if r else 0
    if r and any(len(row) != n for row in m):
        raise ShapeError("ragged presentation matrix")
    if k < 0:
        raise ShapeError(f"elementary ideal index {k} is negative")
    varset = _matrix_varset(m, varset)
    size = n - k
    if size <= 0:
        return LaurentPoly.one(varset)
    if size > r:
        return LaurentPoly.zero(varset)

    one = LaurentPoly.one(varset)
    running: Optional[LaurentPoly] = None
    count = 0
    for rows in combinations(range(r), size):
        for cols in combinations(range(n), size):
            minor = minor_det(m, rows, cols, varset)
            count += 1
            if minor.is_zero():
                continue
            running = normalize_unit(minor) if running is None else gcd(running, minor)
            if running == one:
                logger.debug("E_%d: gcd reached 1 after %d minors", k, count)
                return running
    logger.debug("E_%d of %dx%d matrix from %d minors: %s", k, r, n, count, running)
    return running if running is not None else LaurentPoly.zero(varset)
