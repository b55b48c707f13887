"""
Invariant report: runs the whole pipeline for one mapping class and packs
the result into a pydantic document shared by the command line and the
tool server.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from .errors import ConsistencyError, KodairaError
from .fourman import (
    CircleBundleX,
    IntersectionForm,
    KodairaClass,
    LefschetzResult,
    NoetherCheck,
    ObstructionReport,
    canonical_data,
    gysin_betti,
    kodaira_dimension,
    lefschetz_test,
    noether_check,
    obstruction_report,
)
from .laurent import LaurentPoly
from .surface import MappingClass, paper_phi
from .torus3 import MappingTorusY, charpoly_oracle, oracle_quotient, sw3, wang_betti

logger = logging.getLogger(__name__)


class PolyRecord(BaseModel):
    """A Laurent polynomial as canonical text plus [exponents, coefficient] pairs."""

    text: str
    variables: List[str]
    terms: List[Tuple[List[int], int]]

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "PolyRecord":
        return cls(text=str(p), variables=list(p.varset.names), terms=p.to_pairs())


class H1Record(BaseModel):
    text: str
    free_rank: int
    torsion_coefficients: List[int] = Field(default_factory=list)


class ReportDocument(BaseModel):
    genus: int
    twist_word: str
    hypothesis_holds: bool
    b1_y: int
    betti_y: List[int]
    h1_y: H1Record
    pi1_presentation: str
    alexander_variables: List[str]
    alexander: PolyRecord
    alexander_t: PolyRecord
    milnor_torsion: Optional[PolyRecord] = None
    torsion_asymmetric: bool = False
    sw_y: Optional[PolyRecord] = None
    euler_class: List[int]
    b1_x: int
    b2_x: int
    b3_x: int
    b_plus: Optional[int] = None
    b_minus: Optional[int] = None
    signature: Optional[int] = None
    euler_characteristic: int
    intersection_form: IntersectionForm
    sw_x: Optional[PolyRecord] = None
    sw_x_classes: List[str] = Field(default_factory=list)
    canonical_k: Optional[int] = None
    k_squared: Optional[int] = None
    k_dot_omega: Optional[int] = None
    kodaira: Optional[KodairaClass] = None
    noether: Optional[NoetherCheck] = None
    lefschetz: LefschetzResult
    obstructions: ObstructionReport
    charpoly: PolyRecord
    oracle_quotient: Optional[PolyRecord] = None

    def check_consistency(self) -> None:
        """Raise ConsistencyError when assembled invariants contradict each other."""
        if self.euler_characteristic != 2 - 2 * self.b1_x + self.b2_x:
            raise ConsistencyError(
                f"Euler characteristic {self.euler_characteristic} != 2 - 2*{self.b1_x} + {self.b2_x}"
            )
        if self.b1_y != self.h1_y.free_rank:
            raise ConsistencyError(f"Wang b1 {self.b1_y} != abelianization rank {self.h1_y.free_rank}")
        if self.betti_y[1] != self.b1_y or self.betti_y[2] != self.b1_y:
            raise ConsistencyError(f"Betti numbers of Y {self.betti_y} disagree with b1 = {self.b1_y}")
        if self.k_squared is not None and self.k_dot_omega is not None:
            try:
                expected = kodaira_dimension(self.k_squared, self.k_dot_omega)
            except KodairaError as exc:
                raise ConsistencyError(str(exc)) from None
            if self.kodaira != expected:
                raise ConsistencyError(f"kodaira {self.kodaira} inconsistent with K^2, K.w")


def build_report(mc: MappingClass, euler_class: Optional[Sequence[int]] = None) -> ReportDocument:
    """Full pipeline for the mapping torus of ``mc`` and its circle bundle.

    Raises:
        ConsistencyError: the assembled document fails its consistency checks.
    """
    Y = MappingTorusY(mc)
    if not Y.hypothesis_holds:
        logger.warning(
            "dim ker(phi* - I) = %d for %r; continuing", len(Y.invariant_cocycles), str(mc)
        )
    X = CircleBundleX(Y, euler_class)
    betti = gysin_betti(X)
    form = X.form

    milnor = sw_y = None
    if not Y.alexander_polynomial.is_zero():
        milnor = PolyRecord.from_poly(Y.milnor_torsion)
        sw_y = PolyRecord.from_poly(sw3(Y))

    canon = canonical_data(X)
    noether = None
    if betti.signature is not None and form.b_minus is not None:
        noether = noether_check(betti.b1, form.b_minus, betti.euler, betti.signature)

    quotient = oracle_quotient(Y)
    doc = ReportDocument(
        genus=mc.genus,
        twist_word=str(mc),
        hypothesis_holds=Y.hypothesis_holds,
        b1_y=Y.b1,
        betti_y=list(wang_betti(mc)),
        h1_y=H1Record(
            text=str(Y.h1),
            free_rank=Y.h1.free_rank,
            torsion_coefficients=Y.h1.torsion_coefficients,
        ),
        pi1_presentation=Y.presentation.to_text(),
        alexander_variables=list(Y.amap.varset.names),
        alexander=PolyRecord.from_poly(Y.alexander_polynomial),
        alexander_t=PolyRecord.from_poly(Y.alexander_polynomial_t),
        milnor_torsion=milnor,
        torsion_asymmetric=Y.torsion_asymmetric if milnor is not None else False,
        sw_y=sw_y,
        euler_class=list(X.euler_class),
        b1_x=betti.b1,
        b2_x=betti.b2,
        b3_x=betti.b3,
        b_plus=form.b_plus,
        b_minus=form.b_minus,
        signature=betti.signature,
        euler_characteristic=betti.euler,
        intersection_form=form,
        sw_x=PolyRecord.from_poly(X.sw4.poly) if X.sw4 is not None else None,
        sw_x_classes=list(X.sw4.classes) if X.sw4 is not None else [],
        canonical_k=canon.k,
        k_squared=canon.k_squared,
        k_dot_omega=canon.k_dot_omega,
        kodaira=canon.kodaira,
        noether=noether,
        lefschetz=lefschetz_test(X),
        obstructions=obstruction_report(X),
        charpoly=PolyRecord.from_poly(charpoly_oracle(mc)),
        oracle_quotient=PolyRecord.from_poly(quotient) if quotient is not None else None,
    )
    doc.check_consistency()
    return doc


def report_for_genus(genus: int) -> ReportDocument:
    """Pipeline on the standard monodromy of the given genus."""
    return build_report(paper_phi(genus))
