"""Scheme signatures, comparison-table rendering, and well-behavedness.

A signature places a transformation on the comparison axes: symmetry,
update representation per direction, trace representation per direction,
and how the consistency relation is given.  Symmetry is derived from the
representation tags, never declared.  The report renderer prints one row
per transformation with ASCII arrows: ``->`` when a law holds forward,
``<-`` backward, ``<->`` both, ``~>``/``<~`` for weak variants, and a
blank cell when a law fails or cannot be expressed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .frameworks import Bx
from .scheme import TraceRepr, UpdateRepr
from .verdict import Verdict

if TYPE_CHECKING:
    from .laws import LawReport


@dataclass(frozen=True)
class SchemeSignature:
    symmetry: str
    upd_to: UpdateRepr
    upd_from: UpdateRepr
    trace_to: TraceRepr
    trace_from: TraceRepr
    consistency_kind: str

    def format(self) -> str:
        return (
            f"{self.symmetry} | {self.upd_to.value},{self.upd_from.value} | "
            f"{self.trace_to.value},{self.trace_from.value} | {self.consistency_kind}"
        )


def classify(bx: Bx) -> SchemeSignature:
    """Read a transformation's signature off its declared representations."""
    return SchemeSignature(
        symmetry=bx.symmetry,
        upd_to=bx.upd_to,
        upd_from=bx.upd_from,
        trace_to=bx.trace_to,
        trace_from=bx.trace_from,
        consistency_kind=bx.consistency_kind,
    )


_REPORT_LAWS = (
    ("stability", "Stable"),
    ("invertibility", "Invert"),
    ("convergence", "Converg"),
    ("undoability", "Undo"),
    ("history_ignorance", "HistIgn"),
    ("correctness", "Correct"),
    ("hippocraticness", "Hippocr"),
    ("least_update", "Least"),
    ("totality", "Total"),
    ("safety", "Safe"),
)


def _arrow_cell(report: "LawReport", law: str) -> str:
    def mark(direction: str) -> str:
        try:
            kind = report.kind(law, direction)
        except KeyError:
            return ""
        if kind == Verdict.HOLDS:
            return "strong"
        if kind == Verdict.WEAKLY_HOLDS:
            return "weak"
        return ""

    forward, backward = mark("to"), mark("from")
    if forward == "strong" and backward == "strong":
        return "<->"
    if forward and backward:
        return "<~>"
    if forward == "strong":
        return "->"
    if forward == "weak":
        return "~>"
    if backward == "strong":
        return "<-"
    if backward == "weak":
        return "<~"
    return ""


def render_report(entries: Iterable[tuple[str, SchemeSignature, "LawReport"]]) -> str:
    """Fixed-width comparison table, one row per transformation."""
    headers = ["name", "sym", "U>", "U<", "T>", "T<", "R"] + [label for _, label in _REPORT_LAWS]
    rows: list[list[str]] = []
    for name, signature, report in entries:
        row = [
            name,
            signature.symmetry,
            signature.upd_to.value,
            signature.upd_from.value,
            signature.trace_to.value,
            signature.trace_from.value,
            signature.consistency_kind,
        ]
        row.extend(_arrow_cell(report, law) for law, _ in _REPORT_LAWS)
        rows.append(row)
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


WELL_BEHAVED = "well-behaved"
VERY_WELL_BEHAVED = "very-well-behaved"
NOT_WELL_BEHAVED = "not-well-behaved"


def well_behaved(bx: Bx, report: "LawReport") -> str:
    """Classify a transformation from its law report.

    Well-behaved means at least stable and correct.  Where stability is
    not expressible, hippocraticness (its stronger form) stands in; a
    stand-in caps the grade at well-behaved even when history-ignorance
    also holds, since the genuinely stable-and-history-ignorant reading
    is what earns very-well-behaved.
    """

    def kinds(law: str) -> list[str]:
        out = []
        for direction in ("to", "from"):
            try:
                out.append(report.kind(law, direction))
            except KeyError:
                pass
        return out

    def satisfied(law: str) -> tuple[bool, bool]:
        """(no failures among expressible directions, holds somewhere)"""
        ks = kinds(law)
        expressible = [k for k in ks if k != Verdict.NOT_EXPRESSIBLE]
        failed = any(k == Verdict.FAILS for k in expressible)
        held = any(k == Verdict.HOLDS for k in expressible)
        return (not failed, held)

    stable_ok, stable_held = satisfied("stability")
    if not stable_held and all(k == Verdict.NOT_EXPRESSIBLE for k in kinds("stability")):
        stand_in_ok, stand_in_held = satisfied("hippocraticness")
        stable_ok = stand_in_ok
        stable_held = False  # a stand-in never counts as genuine stability
        if all(k == Verdict.NOT_EXPRESSIBLE for k in kinds("hippocraticness")):
            stable_ok = True  # nothing expressible to violate
    correct_ok, correct_held = satisfied("correctness")
    if not (stable_ok and correct_ok and correct_held):
        return NOT_WELL_BEHAVED
    history_ok, history_held = satisfied("history_ignorance")
    if stable_held and history_ok and history_held:
        return VERY_WELL_BEHAVED
    return WELL_BEHAVED
