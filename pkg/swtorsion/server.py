#!/usr/bin/env python3
"""
swtorsion tool server

A FastMCP server exposing the invariant pipeline as tools. Every tool returns
a JSON-ready dict; failures come back as {"error": "..."} instead of raising.
"""

import logging
from typing import Annotated, Any, Dict, List, Optional

import uvicorn
from fastmcp import FastMCP
from starlette.requests import Request
from starlette.responses import JSONResponse

from .config import get_settings
from .errors import SwTorsionError
from .log import ensure_logger_configured
from .report import PolyRecord, build_report
from .surface import MappingClass, Word, paper_phi
from .torus3 import (
    GroupPresentation,
    abelianization,
    fox_derivative,
    presentation_alexander_polynomial,
    symmetrize_all,
)

logger = logging.getLogger(__name__)

mcp: FastMCP = FastMCP(name="swtorsion")


def _error(exc: Exception) -> Dict[str, Any]:
    logger.info("tool call failed: %s", exc)
    return {"error": str(exc)}


@mcp.tool(
    name="report",
    description="Invariants of the mapping torus and circle bundle for the standard monodromy of a genus.",
)
def report(
    genus: Annotated[int, "Genus of the fibre surface (at least 1)"],
    euler: Annotated[Optional[List[int]], "Euler class in H2(Y) coordinates; defaults to the fibre class"] = None,
) -> Dict[str, Any]:
    try:
        if genus < 1:
            raise SwTorsionError(f"genus must be at least 1, got {genus}")
        return build_report(paper_phi(genus), euler).model_dump(mode="json")
    except SwTorsionError as e:
        return _error(e)


@mcp.tool(
    name="twists",
    description="Invariants for a monodromy given as a Dehn twist word such as 'Tb2 Ta2^-1 Ta1'.",
)
def twists(
    word: Annotated[str, "Twist word, applied right to left"],
    genus: Annotated[int, "Genus of the fibre surface"],
    euler: Annotated[Optional[List[int]], "Euler class in H2(Y) coordinates"] = None,
) -> Dict[str, Any]:
    try:
        if genus < 1:
            raise SwTorsionError(f"genus must be at least 1, got {genus}")
        return build_report(MappingClass.parse(word, genus), euler).model_dump(mode="json")
    except SwTorsionError as e:
        return _error(e)


@mcp.tool(
    name="alexander",
    description="First homology and Alexander polynomial of a finite group presentation in text form.",
)
def alexander(
    text: Annotated[str, "Presentation: a 'gens: x y' line followed by one relator per line"],
    variables: Annotated[Optional[List[str]], "Names for the free H1 coordinates"] = None,
) -> Dict[str, Any]:
    try:
        P = GroupPresentation.parse(text)
        spec, amap = abelianization(P, variables)
        delta = presentation_alexander_polynomial(P, amap)
        result: Dict[str, Any] = {
            "h1": str(spec),
            "free_rank": spec.free_rank,
            "torsion_coefficients": list(spec.torsion_coefficients),
            "alexander": PolyRecord.from_poly(delta).model_dump(mode="json"),
            "symmetrized": None,
            "asymmetric_span": False,
        }
        if not delta.is_zero():
            sym, odd = symmetrize_all(delta)
            result["symmetrized"] = PolyRecord.from_poly(sym).model_dump(mode="json")
            result["asymmetric_span"] = odd
        return result
    except SwTorsionError as e:
        return _error(e)


@mcp.tool(
    name="fox",
    description="Fox free derivative of a word with respect to one generator, plus its abelianization.",
)
def fox(
    word: Annotated[str, "Word such as 'a b a^-1 b^-1'"],
    generator: Annotated[str, "Generator to differentiate by"],
) -> Dict[str, Any]:
    try:
        gens = list(dict.fromkeys(token.split("^", 1)[0] for token in word.split() if token != "1"))
        derivative = fox_derivative(Word.parse(word), generator, gens)
        _, amap = abelianization(GroupPresentation(tuple(gens)), gens)
        return {
            "derivative": str(derivative),
            "abelianized": PolyRecord.from_poly(derivative.abelianize(amap)).model_dump(mode="json"),
        }
    except SwTorsionError as e:
        return _error(e)


@mcp.custom_route("/health", methods=["GET"])
async def health_check(_request: Request) -> JSONResponse:
    """
    Health check endpoint.

    Returns:
        status: The health status of the service.
    """
    return JSONResponse({"status": "healthy"})


def main() -> None:
    ensure_logger_configured()
    settings = get_settings()
    logger.info("serving on %s:%d", settings.server_host, settings.server_port)
    uvicorn.run(mcp.http_app(), host=settings.server_host, port=settings.server_port)


if __name__ == "__main__":
    main()
