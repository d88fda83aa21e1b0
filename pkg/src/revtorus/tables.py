"""The two reversor tables, rebuilt from :func:`find_reversors`.

Rendering is plain ASCII with fixed column order and widths derived from
the cell contents, so the output is byte-stable.
"""

from __future__ import annotations

from .algebra import IntMatrix2
from .pell import EMPTY, FINITE
from .reversors import ReversorReport, find_reversors

__all__ = [
    "PRESERVING_ROWS",
    "REVERSING_ROWS",
    "reversor_table",
    "orientation_reversing_table",
    "render",
    "render_all",
    "conic_name",
    "solution_count",
]

PRESERVING_ROWS = (IntMatrix2(2, 1, 3, 2), IntMatrix2(2, 1, 1, 1), IntMatrix2(4, 9, 7, 16))
REVERSING_ROWS = (IntMatrix2(2, 3, 1, 1), IntMatrix2(3, 4, 1, 1), IntMatrix2(4, 5, 1, 1))

# Generic-column example shown for a row. The choice must lie in the
# computed family; rows not listed show the smallest member.
ROW_EXAMPLES = {
    IntMatrix2(2, 1, 3, 2): IntMatrix2(2, 1, -3, -2),
    IntMatrix2(2, 1, 1, 1): IntMatrix2(5, 3, -8, -5),
}

EMPTY_CELL = "-"
INFINITY = "inf"

PRESERVING_HEADER = (
    "Anosov",
    "(1,0;g,-1)",
    "(1,g;0,-1)",
    "(-1,0;g,1)",
    "(-1,g;0,1)",
    "(a,b;(1-a^2)/b,-a)",
)
REVERSING_HEADER = ("Anosov", "Delta", "Generalized Pell equation", "Number of solutions", "Conic", "Involutions")


def _gamma_cell(g) -> str:
    return EMPTY_CELL if g is None else f"g={g}"


def _generic_cell(report: ReversorReport) -> str:
    family = [g.matrix for g in report.generic_solutions]
    if not family:
        return EMPTY_CELL
    pick = ROW_EXAMPLES.get(report.matrix)
    if pick is None:
        pick = family[0]
    elif pick not in family:
        raise AssertionError(f"example {pick} is not in the computed family of {report.matrix}")
    return f"Example: {pick}"


def reversor_table(rows=PRESERVING_ROWS, **limits) -> list:
    """Rows of cells for orientation-preserving ``L``: four triangular columns and the generic one."""
    out = []
    for m in rows:
        rep = find_reversors(m, **limits)
        out.append([str(m)] + [_gamma_cell(g) for g in rep.triangular_cells()] + [_generic_cell(rep)])
    return out


def solution_count(report: ReversorReport) -> str:
    kind = report.pell_solutions.kind
    if kind in (EMPTY, FINITE):
        return str(len(report.pell_solutions.solutions))
    return INFINITY


def conic_name(D: int, N: int) -> str:
    """Real locus of ``x^2 - D y^2 = N``."""
    if D < 0:
        if N > 0:
            return "Ellipse"
        return "Point" if N == 0 else "Empty"
    if D == 0:
        if N > 0:
            return "Two vertical lines"
        return "Vertical line" if N == 0 else "Empty"
    if N == 0:
        return "Two crossing lines"
    return "Hyperbola"


def orientation_reversing_table(rows=REVERSING_ROWS, **limits) -> list:
    out = []
    for m in rows:
        rep = find_reversors(m, **limits)
        if not rep.obstruction.verify():
            raise AssertionError(f"obstruction certificate failed for {m}")
        involutions = EMPTY_CELL if not rep.involutions else str(len(rep.involutions))
        D, N = rep.pell_problem.D, rep.pell_problem.N
        out.append(
            [
                str(m),
                str(rep.conic_discriminant),
                rep.pell_problem.equation(),
                solution_count(rep),
                conic_name(D, N),
                involutions,
            ]
        )
    return out


def render(header, rows) -> str:
    table = [list(header)] + [list(r) for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]

    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    rule = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    body = [rule, line(table[0]), rule.replace("-", "=")]
    body += [line(r) for r in table[1:]]
    body.append(rule)
    return "\n".join(body) + "\n"


def render_all() -> str:
    parts = [
        "Orientation-preserving Anosov maps and their linear reversors (g = gamma)",
        render(PRESERVING_HEADER, reversor_table()),
        "Orientation-reversing Anosov maps",
        render(REVERSING_HEADER, orientation_reversing_table()),
    ]
    return "\n".join(parts)

