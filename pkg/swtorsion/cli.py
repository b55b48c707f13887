"""
Command line front end.

    python -m swtorsion report --genus 2 [--json]
    python -m swtorsion twists "Tb2 Ta2^-1 Ta1" --genus 2 [--json]
    python -m swtorsion alexander trefoil.txt [--vars t]
    python -m swtorsion fox "a b a^-1 b^-1" a

Exit codes: 0 success, 2 usage or parse error, 1 failed consistency check.
"""

import argparse
import logging
from pathlib import Path
from typing import List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.table import Table
from rich.text import Text

from .errors import ConsistencyError, SwTorsionError
from .fourman import KodairaClass, kodaira_table
from .log import ensure_logger_configured
from .report import ReportDocument, build_report
from .surface import MappingClass, Word, paper_phi
from .torus3 import (
    GroupPresentation,
    abelianization,
    alexander_matrix,
    fox_derivative,
    presentation_alexander_polynomial,
    symmetrize_all,
)

logger = logging.getLogger(__name__)

PROG = "swtorsion"

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2


class UsageError(SwTorsionError):
    """Bad command-line input that argparse cannot catch by itself."""


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _name_list(text: str) -> List[str]:
    return [x for x in text.replace(",", " ").split() if x]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Mapping-torus and circle-bundle invariants in exact arithmetic.",
    )
    parser.add_argument("--log-level", default=None, help="overrides SWTORSION_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="full pipeline for the standard monodromy of a genus")
    report.add_argument("--genus", type=int, required=True)
    report.add_argument("--json", action="store_true", help="machine-readable output")
    report.add_argument("--euler", type=_int_list, default=None, help="Euler class in H2(Y) coordinates")

    twists = sub.add_parser("twists", help="full pipeline for a custom twist word")
    twists.add_argument("word", help='twist word such as "Tb2 Ta2^-1 Ta1" (applied right to left)')
    twists.add_argument("--genus", type=int, required=True)
    twists.add_argument("--json", action="store_true")
    twists.add_argument("--euler", type=_int_list, default=None)

    alexander = sub.add_parser("alexander", help="Alexander invariants of a presentation file")
    alexander.add_argument("file", type=Path)
    alexander.add_argument("--vars", type=_name_list, default=None, help="names for the free H1 coordinates")

    fox = sub.add_parser("fox", help="Fox derivative of a word")
    fox.add_argument("word")
    fox.add_argument("generator")
    fox.add_argument("--gens", type=_name_list, default=None, help="free generators (default: letters of the word)")
    return parser


def _check_genus(genus: int) -> None:
    if genus < 1:
        raise UsageError(f"genus must be at least 1, got {genus}")


def cmd_report(genus: int, euler: Optional[Sequence[int]] = None) -> ReportDocument:
    _check_genus(genus)
    return build_report(paper_phi(genus), euler)


def cmd_twists(word: str, genus: int, euler: Optional[Sequence[int]] = None) -> ReportDocument:
    _check_genus(genus)
    return build_report(MappingClass.parse(word, genus), euler)


def render_report(doc: ReportDocument, console: Console) -> None:
    table = Table(title=f"Invariants, genus {doc.genus}", show_lines=False)
    table.add_column("invariant", style="cyan", no_wrap=True)
    table.add_column("value")

    def row(name: str, value) -> None:
        table.add_row(name, Text("-" if value is None else str(value)))

    row("monodromy", doc.twist_word or "identity")
    row("dim ker(phi* - I) = 1", doc.hypothesis_holds)
    row("b0, b1, b2, b3 (Y)", ", ".join(str(b) for b in doc.betti_y))
    row("H1(Y)", doc.h1_y.text)
    row("Delta_Y", doc.alexander.text)
    row("Delta_Y(t)", doc.alexander_t.text)
    row("Milnor torsion", doc.milnor_torsion.text if doc.milnor_torsion else None)
    row("SW_Y", doc.sw_y.text if doc.sw_y else None)
    row("Euler class", tuple(doc.euler_class))
    row("b1(X), b2(X), b3(X)", f"{doc.b1_x}, {doc.b2_x}, {doc.b3_x}")
    row("b+, b-, signature", f"{doc.b_plus}, {doc.b_minus}, {doc.signature}")
    row("Euler characteristic", doc.euler_characteristic)
    row("Q_X", _form_text(doc.intersection_form.matrix))
    row("SW_X", doc.sw_x.text if doc.sw_x else None)
    row("K", f"{doc.canonical_k} [{doc.sw_x_classes[0]}]" if doc.canonical_k is not None and doc.sw_x_classes else doc.canonical_k)
    row("K^2, K.w", f"{doc.k_squared}, {doc.k_dot_omega}")
    row("Kodaira dimension", doc.kodaira.value if doc.kodaira else None)
    if doc.noether is not None:
        row("2e + 3s vs 9 - 4b1 - b-", f"{doc.noether.lhs} vs {doc.noether.rhs}")
    row("Lefschetz", doc.lefschetz.verdict)
    if doc.lefschetz.annihilator_labels:
        row("annihilator", ", ".join(doc.lefschetz.annihilator_labels))
    row("wall crossing trivial", doc.obstructions.wall_crossing_trivial)
    row("PSC metric", doc.obstructions.psc_metric)
    row("complex structure", doc.obstructions.complex_structure)
    row("SW simple type", doc.obstructions.sw_simple_type)
    row("char poly of phi", doc.charpoly.text)
    row("char poly / Delta(t)", doc.oracle_quotient.text if doc.oracle_quotient else None)
    console.print(table)
    console.print(_kodaira_legend(doc.kodaira))


def _kodaira_legend(kodaira: Optional[KodairaClass]) -> Table:
    legend = Table(title="Symplectic Kodaira dimension")
    legend.add_column("minimal model")
    legend.add_column("kappa", justify="right")
    for condition, value in kodaira_table():
        style = "bold green" if kodaira is not None and kodaira.value == value else None
        legend.add_row(condition, value, style=style)
    return legend


def _form_text(matrix) -> str:
    return "[" + "; ".join(" ".join("d" if v is None else str(v) for v in r) for r in matrix) + "]"


def cmd_alexander(path: Path, var_names: Optional[Sequence[str]], console: Console) -> None:
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    P = GroupPresentation.parse(text)
    spec, amap = abelianization(P, var_names)
    matrix = alexander_matrix(P, amap)
    delta = presentation_alexander_polynomial(P, amap)
    console.print(f"H1: {spec}", soft_wrap=True)
    console.print(f"Alexander matrix: {len(matrix)} x {len(P.generators)}", soft_wrap=True)
    console.print(f"E1: {delta}", soft_wrap=True)
    if delta.is_zero():
        console.print("symmetrized: 0", soft_wrap=True)
    else:
        sym, odd = symmetrize_all(delta)
        note = " (asymmetric span)" if odd else ""
        console.print(f"symmetrized: {sym}{note}", soft_wrap=True)


def cmd_fox(word: str, generator: str, gens: Optional[Sequence[str]], console: Console) -> None:
    w = Word.parse(word)
    if gens is None:
        gens = list(dict.fromkeys(token.split("^", 1)[0] for token in word.split() if token != "1"))
    derivative = fox_derivative(w, generator, gens)
    _, amap = abelianization(GroupPresentation(tuple(gens)), gens)
    console.print(f"d({w})/d{generator} = {derivative}", soft_wrap=True)
    console.print(f"abelianized: {derivative.abelianize(amap)}", soft_wrap=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ensure_logger_configured(args.log_level)
    console = Console()
    try:
        if args.command in ("report", "twists"):
            if args.command == "report":
                doc = cmd_report(args.genus, args.euler)
            else:
                doc = cmd_twists(args.word, args.genus, args.euler)
            if args.json:
                console.out(doc.model_dump_json(indent=2), highlight=False)
            else:
                render_report(doc, console)
        elif args.command == "alexander":
            cmd_alexander(args.file, args.vars, console)
        elif args.command == "fox":
            cmd_fox(args.word, args.generator, args.gens, console)
    except ConsistencyError as exc:
        console.print(f"[red]invariant check failed:[/red] {escape(str(exc))}", soft_wrap=True)
        return EXIT_INVARIANT
    except SwTorsionError as exc:
        console.print(f"[red]error:[/red] {escape(str(exc))}", soft_wrap=True)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
