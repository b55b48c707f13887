"""
Surface groups, Dehn twists and mapping classes.

Words are freely reduced sequences of (symbol, ±1) letters. A Dehn twist
about a standard curve aᵢ or bᵢ acts on π₁ by a handle-local generator
substitution and on H₁ by a transvection; a mapping class is a twist word
applied right to left.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import GeneratorError, ParseError, TwistIndexError
from .exactalg import IntMatrix

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]

# A twist about x_i with sign s sends its partner y_i to y_i * x_i^(s*e) and
# fixes every other generator: T_a: b -> b a^-1, T_b: a -> a b.
TWIST_CONVENTION: Dict[str, Tuple[str, int]] = {"a": ("b", -1), "b": ("a", 1)}

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")
_TWIST_TOKEN = re.compile(r"^T([ab])(\d+)(?:\^([+-]?1))?$")


class Word:
    """Freely reduced word in a free group; reduction happens on construction."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        stack: List[Letter] = []
        for symbol, exp in letters:
            if exp not in (1, -1):
                raise ValueError(f"letter exponent must be ±1, got {exp}")
            if stack and stack[-1] == (symbol, -exp):
                stack.pop()
            else:
                stack.append((symbol, exp))
        object.__setattr__(self, "letters", tuple(stack))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def gen(cls, symbol: str, power: int = 1) -> "Word":
        sign = 1 if power > 0 else -1
        return cls([(symbol, sign)] * abs(power))

    @classmethod
    def parse(cls, text: str, line: Optional[int] = None) -> "Word":
        """Parse whitespace-separated tokens ``x``, ``x^-1``, ``x^3``; ``1`` is the empty word."""
        letters: List[Letter] = []
        for token in text.split():
            if token == "1":
                continue
            match = _TOKEN.match(token)
            if not match:
                raise ParseError(f"bad word token {token!r}", line)
            symbol, power = match.group(1), int(match.group(2) or 1)
            sign = 1 if power > 0 else -1
            letters.extend([(symbol, sign)] * abs(power))
        return cls(letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word(base.letters * abs(n))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^-1" for s, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def symbols(self) -> set:
        return {s for s, _ in self.letters}

    def exponent_sum(self, symbol: str) -> int:
        return sum(e for s, e in self.letters if s == symbol)

    def cyclic_reduce(self) -> "Word":
        letters = list(self.letters)
        while len(letters) > 1 and letters[0] == (letters[-1][0], -letters[-1][1]):
            letters = letters[1:-1]
        return Word(letters)

    def is_conjugate_to(self, other: "Word") -> bool:
        """Free conjugacy: cyclic reductions are rotations of each other."""
        u, v = self.cyclic_reduce(), other.cyclic_reduce()
        if len(u) != len(v):
            return False
        if not u.letters:
            return True
        doubled = u.letters + u.letters
        n = len(v)
        return any(doubled[k:k + n] == v.letters for k in range(len(u)))


def free_reduce(w: Word, generators: Optional[Iterable[str]] = None) -> Word:
    """Freely reduce ``w``, checking its symbols against ``generators`` when given.

    Raises:
        GeneratorError: a symbol is not a generator.
    """
    if generators is not None:
        unknown = w.symbols() - set(generators)
        if unknown:
            raise GeneratorError(f"unknown generator(s) {sorted(unknown)}")
    return Word(w.letters)


@dataclass(frozen=True)
class SurfaceData:
    """Genus-g surface group ⟨a₁,b₁,…,a_g,b_g | ∏[aᵢ,bᵢ]⟩."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be at least 1, got {self.genus}")

    @property
    def generators(self) -> Tuple[str, ...]:
        return tuple(f"{x}{i}" for i in range(1, self.genus + 1) for x in "ab")

    @property
    def relator(self) -> Word:
        w = Word()
        for i in range(1, self.genus + 1):
            a, b = Word.gen(f"a{i}"), Word.gen(f"b{i}")
            w = w * a * b * ~a * ~b
        return w


@lru_cache(maxsize=None)
def surface(genus: int) -> SurfaceData:
    return SurfaceData(genus)


class FreeEndo:
    """Endomorphism of a free group given by generator images."""

    __slots__ = ("generators", "images")

    def __init__(self, generators: Sequence[str], images: Mapping[str, Word]):
        generators = tuple(generators)
        missing = set(generators) - set(images)
        if missing:
            raise GeneratorError(f"endomorphism undefined on {sorted(missing)}")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "images", {g: Word(images[g].letters) for g in generators})

    def __setattr__(self, name, value):
        raise AttributeError("FreeEndo is immutable")

    @classmethod
    def identity(cls, generators: Sequence[str]) -> "FreeEndo":
        return cls(generators, {g: Word.gen(g) for g in generators})

    def __call__(self, w: Word) -> Word:
        return apply_endo(self, w)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeEndo)
            and self.generators == other.generators
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.generators, tuple(self.images[g] for g in self.generators)))

    def __repr__(self) -> str:
        body = ", ".join(f"{g} -> {self.images[g]}" for g in self.generators)
        return f"FreeEndo({body})"

    def abelianize(self) -> IntMatrix:
        """Matrix on H₁ in column convention: column j is the image of generator j."""
        return IntMatrix.from_columns(
            [[self.images[g].exponent_sum(h) for h in self.generators] for g in self.generators],
            rows=len(self.generators),
        )


def apply_endo(e: FreeEndo, w: Word) -> Word:
    """Substitute generator images into ``w`` and freely reduce.

    Raises:
        GeneratorError: a symbol of ``w`` is outside the domain.
    """
    letters: List[Letter] = []
    for symbol, exp in w:
        image = e.images.get(symbol)
        if image is None:
            raise GeneratorError(f"symbol {symbol!r} outside the domain {list(e.generators)}")
        letters.extend(image.letters if exp == 1 else (~image).letters)
    return Word(letters)


def compose(e1: FreeEndo, e2: FreeEndo) -> FreeEndo:
    """(e1 ∘ e2)(x) = e1(e2(x)).

    Raises:
        GeneratorError: the two endomorphisms have different domains.
    """
    if e1.generators != e2.generators:
        raise GeneratorError(f"domain mismatch {list(e1.generators)} vs {list(e2.generators)}")
    return FreeEndo(e1.generators, {g: apply_endo(e1, e2.images[g]) for g in e2.generators})


@dataclass(frozen=True)
class Curve:
    """Standard curve aᵢ or bᵢ."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in TWIST_CONVENTION:
            raise ValueError(f"curve kind must be 'a' or 'b', got {self.kind!r}")
        if self.index < 1:
            raise TwistIndexError(f"curve index must be positive, got {self.index}")

    @classmethod
    def parse(cls, name: str) -> "Curve":
        match = re.match(r"^([ab])(\d+)$", name)
        if not match:
            raise ParseError(f"bad curve name {name!r}")
        return cls(match.group(1), int(match.group(2)))

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def _check_index(curve: Curve, genus: int) -> None:
    if curve.index > genus:
        raise TwistIndexError(f"twist about {curve} on a genus {genus} surface")


def _as_curve(curve) -> Curve:
    return curve if isinstance(curve, Curve) else Curve.parse(str(curve))


def dehn_twist_pi1(curve, sign: int, S: SurfaceData) -> FreeEndo:
    """Handle-local substitution for the twist T_curve^sign on π₁(Σ).

    Raises:
        TwistIndexError: the curve index exceeds the genus.
    """
    curve = _as_curve(curve)
    _check_index(curve, S.genus)
    partner_kind, e = TWIST_CONVENTION[curve.kind]
    partner = f"{partner_kind}{curve.index}"
    images = {g: Word.gen(g) for g in S.generators}
    images[partner] = Word.gen(partner) * Word.gen(str(curve), sign * e)
    return FreeEndo(S.generators, images)


def dehn_twist_h1(curve, sign: int, g: int) -> IntMatrix:
    """Transvection of T_curve^sign on H₁(Σ) in the basis (a₁,b₁,…), column convention.

    Raises:
        TwistIndexError: the curve index exceeds the genus.
    """
    curve = _as_curve(curve)
    _check_index(curve, g)
    partner_kind, e = TWIST_CONVENTION[curve.kind]
    base = 2 * (curve.index - 1)
    this = base + (0 if curve.kind == "a" else 1)
    other = base + (0 if partner_kind == "a" else 1)
    rows = IntMatrix.identity(2 * g).to_rows()
    rows[this][other] = sign * e
    return IntMatrix.from_rows(rows)


def symplectic_form(g: int) -> IntMatrix:
    """Intersection form J on H₁(Σ): a_i·b_i = 1."""
    return IntMatrix.block_diag([IntMatrix.from_rows([[0, 1], [-1, 0]])] * g)


@dataclass(frozen=True)
class MappingClass:
    """Twist word [(curve, ±1), …] applied right to left."""

    genus: int
    twists: Tuple[Tuple[Curve, int], ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be at least 1, got {self.genus}")
        clean = []
        for curve, sign in self.twists:
            curve = _as_curve(curve)
            if sign not in (1, -1):
                raise ValueError(f"twist sign must be ±1, got {sign}")
            _check_index(curve, self.genus)
            clean.append((curve, sign))
        object.__setattr__(self, "twists", tuple(clean))

    @classmethod
    def parse(cls, text: str, genus: int) -> "MappingClass":
        """Parse ``Tb2 Ta2^-1 Ta1``.

        Raises:
            ParseError: malformed token.
            TwistIndexError: index beyond the genus.
        """
        twists = []
        for token in text.split():
            match = _TWIST_TOKEN.match(token)
            if not match:
                raise ParseError(f"bad twist token {token!r}; expected Ta<i> or Tb<i>^-1")
            twists.append((Curve(match.group(1), int(match.group(2))), int(match.group(3) or 1)))
        return cls(genus, tuple(twists))

    def inverse(self) -> "MappingClass":
        return MappingClass(self.genus, tuple((c, -s) for c, s in reversed(self.twists)))

    def __str__(self) -> str:
        return " ".join(f"T{c}" if s == 1 else f"T{c}^-1" for c, s in self.twists)

    @property
    def surface_data(self) -> SurfaceData:
        return surface(self.genus)


def paper_phi(g: int) -> MappingClass:
    """(T_{b_g} T_{a_g}⁻¹) ⋯ (T_{b_2} T_{a_2}⁻¹) · T_{a_1}."""
    if g < 1:
        raise ValueError(f"genus must be at least 1, got {g}")
    twists = []
    for i in range(g, 1, -1):
        twists.append((Curve("b", i), 1))
        twists.append((Curve("a", i), -1))
    twists.append((Curve("a", 1), 1))
    return MappingClass(g, tuple(twists))


def h1_action(mc: MappingClass) -> IntMatrix:
    """Pushforward on H₁(Σ); the product of twist matrices in word order."""
    m = IntMatrix.identity(2 * mc.genus)
    for curve, sign in mc.twists:
        m = m @ dehn_twist_h1(curve, sign, mc.genus)
    return m


def cohomology_action(mc: MappingClass) -> IntMatrix:
    """φ* on H¹(Σ) in the dual basis (α₁,β₁,…): the inverse-transpose of h1_action."""
    return h1_action(mc.inverse()).transpose()


def mapping_class_endo(mc: MappingClass) -> FreeEndo:
    """φ_* on π₁(Σ) as the composite of the twist substitutions."""
    e = FreeEndo.identity(mc.surface_data.generators)
    for curve, sign in mc.twists:
        e = compose(e, dehn_twist_pi1(curve, sign, mc.surface_data))
    return e


def mapping_class_endo_inverse(mc: MappingClass) -> FreeEndo:
    """φ_*⁻¹, from the reversed word with flipped signs."""
    return mapping_class_endo(mc.inverse())
