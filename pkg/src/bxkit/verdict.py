"""Outcome types for law checking: verdicts and replayable counterexamples."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Counterexample:
    """A failing case, serialized so it can be replayed through the CLI.

    ``update`` and ``trace`` are the textual forms of the inputs of the
    offending call; ``observed`` is the rendered result of that call (or
    the literal string ``undefined``), ``expected`` what the law demanded.
    """

    law: str
    direction: str
    bx_name: str
    update: str
    trace: str
    observed: str
    expected: str
    detail: str = ""

    def describe(self) -> str:
        lines = [
            f"law: {self.law}",
            f"direction: {self.direction}",
            f"bx: {self.bx_name}",
            f"update: {self.update}",
            f"trace: {self.trace}",
            f"observed: {self.observed}",
            f"expected: {self.expected}",
        ]
        if self.detail:
            lines.append(f"detail: {self.detail}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one law over a finite input space."""

    kind: str

    HOLDS = "holds"
    FAILS = "fails"
    WEAKLY_HOLDS = "weakly-holds"
    NOT_EXPRESSIBLE = "not-expressible"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class Holds(Verdict):
    cases_checked: int = 0
    kind: str = field(default=Verdict.HOLDS, init=False)

    def __post_init__(self):
        if self.cases_checked < 1:
            raise ValueError("Holds requires at least one checked case")


@dataclass(frozen=True)
class Fails(Verdict):
    counterexample: Counterexample = None  # type: ignore[assignment]
    kind: str = field(default=Verdict.FAILS, init=False)

    def __post_init__(self):
        if self.counterexample is None:
            raise ValueError("Fails requires a counterexample")


@dataclass(frozen=True)
class WeaklyHolds(Verdict):
    variant: str = ""
    cases_checked: int = 0
    kind: str = field(default=Verdict.WEAKLY_HOLDS, init=False)


@dataclass(frozen=True)
class NotExpressible(Verdict):
    reason: str = ""
    kind: str = field(default=Verdict.NOT_EXPRESSIBLE, init=False)


@dataclass(frozen=True)
class Vacuous(Verdict):
    reason: str = ""
    kind: str = field(default=Verdict.VACUOUS, init=False)
