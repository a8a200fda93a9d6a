"""Executable bidirectional laws, checked bounded-exhaustively.

Each checker takes a transformation, a direction, and a configuration,
enumerates every valid input over the declared finite domains (feeding
only traces that testify the consistency relation), and returns a
verdict.  Definedness is handled throughout with the conditioned
reading: a law's conclusion is only required to hold when the call it
mentions is defined, so an undefined call discharges the case instead
of failing it, and a law whose premise is never satisfied reports
vacuity rather than success.

Expressibility is decided from the representations alone.  A law that
needs a null update, an update inverse, or a reversed trace that the
framework's own data cannot represent is reported as not expressible,
which reproduces the classic per-framework folklore: mappings cannot
state stability, undoability, or hippocraticness; lenses can state them
backward but not forward; maintainers recover undoability and
hippocraticness by quantifying over consistent pairs while stability
stays out of reach.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable

from .values import (
    ENUMERATION_CAP,
    AtomInt,
    AtomStr,
    Rec,
    Value,
    diff,
    enumerate_values,
)
from .scheme import (
    BothStates,
    ComplementTrace,
    DeltaTrace,
    DeltaUpdate,
    Edits,
    NO_TRACE,
    PostState,
    SchemeError,
    StateEdits,
    StateNotRepresented,
    StateTrace,
    Traceability,
    TraceRepr,
    Update,
    UpdateRepr,
    apply_ops,
    check_incidence,
    compose_updates,
    default_preorder,
    delta_of,
    enumerate_op_sequences,
    identity_update,
    invert_trace,
    invert_update,
    rho_of,
    LESS_OR_EQUAL,
)
from .frameworks import Bx, Undefined
from .grammar import render_trace, render_update, render_value
from .verdict import Counterexample, Fails, Holds, NotExpressible, Vacuous, Verdict, WeaklyHolds

STABILITY = "stability"
INVERTIBILITY = "invertibility"
UNDOABILITY = "undoability"
HISTORY_IGNORANCE = "history_ignorance"
CORRECTNESS = "correctness"
HIPPOCRATICNESS = "hippocraticness"
LEAST_UPDATE = "least_update"
TOTALITY = "totality"
SAFETY = "safety"
CONVERGENCE = "convergence"
HIPPOCRATICNESS_LITERAL = "hippocraticness_literal"

ALL_LAWS = (
    STABILITY,
    INVERTIBILITY,
    UNDOABILITY,
    HISTORY_IGNORANCE,
    CORRECTNESS,
    HIPPOCRATICNESS,
    LEAST_UPDATE,
    TOTALITY,
    SAFETY,
    CONVERGENCE,
)

DIRECTIONS = ("to", "from")


def canonical_law(name: str) -> str:
    law = name.strip().lower().replace("-", "_")
    if law not in ALL_LAWS and law != HIPPOCRATICNESS_LITERAL:
        raise ValueError(f"unknown law {name!r}")
    return law


@dataclass
class LawSuiteConfig:
    """Knobs for a suite run; defaults keep everything desk-scale."""

    laws: tuple[str, ...] = ALL_LAWS
    edit_ops_per_update: int = 1
    max_convergence_rounds: int = 2
    weak_variants: bool = True
    normalizer: Callable[[Value], Value] | None = None
    value_cap: int = ENUMERATION_CAP

    def __post_init__(self):
        self.laws = tuple(canonical_law(l) for l in self.laws)
        if self.edit_ops_per_update < 0 or self.max_convergence_rounds < 1 or self.value_cap < 1:
            raise ValueError("nonsensical law suite configuration")


def _other(direction: str) -> str:
    return "from" if direction == "to" else "to"


# ---------------------------------------------------------------------------
# Input enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Case:
    """One consistent anchor: a testifying pair plus optional complement.

    Directions whose input trace carries nothing are checked case-free,
    with all anchor fields absent.
    """

    a: Value | None
    b: Value | None
    c: Value | None

    def end(self, side: str) -> Value | None:
        return self.a if side == "to" else self.b


FREE_CASE = Case(None, None, None)


def consistent_cases(bx: Bx, direction: str) -> tuple[Case, ...]:
    if bx.input_trace_repr(direction) is TraceRepr.NONE:
        return (FREE_CASE,)
    if bx.consistency_kind == "I":
        return tuple(Case(a, b, c) for a, b, c in bx.replay)
    pairs = [
        (a, b)
        for a in enumerate_values(bx.domain_a)
        for b in enumerate_values(bx.domain_b)
        if bx.consistency(a, b)
    ]
    return tuple(Case(a, b, None) for a, b in pairs)


def _realize_arrow(bx: Bx, arrow: str, case: Case) -> Traceability | None:
    """Build the trace instance for one arrow of a testifying pair.

    The forward arrow runs source to target (stored state is the A side),
    the backward arrow the reverse.
    """
    repr = bx.trace_to if arrow == "to" else bx.trace_from
    if repr is TraceRepr.NONE:
        return NO_TRACE
    if case.a is None or case.b is None:
        if repr is TraceRepr.COMPLEMENT and case.c is not None:
            return ComplementTrace(case.c)
        return None
    if repr is TraceRepr.STATE:
        return StateTrace(case.a if arrow == "to" else case.b)
    if repr is TraceRepr.COMPLEMENT:
        return ComplementTrace(case.c) if case.c is not None else None
    rel = bx.default_align(case.a, case.b)
    if arrow == "to":
        return DeltaTrace(case.a, case.b, rel)
    return DeltaTrace(case.b, case.a, rel.invert())


def _input_trace(bx: Bx, direction: str, case: Case) -> Traceability | None:
    return _realize_arrow(bx, _other(direction), case)


def _expected_output_trace(bx: Bx, direction: str, case: Case) -> Traceability | None:
    return _realize_arrow(bx, direction, case)


def _reverse_trace_as(
    bx: Bx,
    trace: Traceability,
    arrow: str,
    post_a: Value | None,
    post_b: Value | None,
) -> Traceability | None:
    """Reverse a produced trace into the representation of ``arrow``.

    Stored-state traces need the endpoint the reversal exposes, which the
    caller supplies from the post-states of the call that produced the
    trace; complements are their own reversal.
    """
    repr = bx.trace_to if arrow == "to" else bx.trace_from
    if repr is TraceRepr.NONE:
        return NO_TRACE
    if repr is TraceRepr.STATE:
        endpoint = post_a if arrow == "to" else post_b
        return StateTrace(endpoint) if endpoint is not None else None
    if repr is TraceRepr.COMPLEMENT:
        return trace if isinstance(trace, ComplementTrace) else None
    if isinstance(trace, DeltaTrace):
        return invert_trace(trace)
    return None


def _enumerate_updates(
    repr: UpdateRepr,
    domain,
    pre: Value | None,
    config: LawSuiteConfig,
) -> tuple[Update, ...]:
    values = enumerate_values(domain, config.value_cap)
    if repr is UpdateRepr.POST:
        return tuple(PostState(v) for v in values)
    if pre is None:
        return ()
    if repr is UpdateRepr.BOTH:
        return tuple(BothStates(pre, v) for v in values)
    if repr is UpdateRepr.DELTA:
        return tuple(DeltaUpdate(pre, v, diff(pre, v)) for v in values)
    if repr is UpdateRepr.EDITS:
        return tuple(
            Edits(ops) for ops in enumerate_op_sequences(pre, domain, config.edit_ops_per_update)
        )
    if repr is UpdateRepr.STATE_EDITS:
        return tuple(
            StateEdits(pre, ops)
            for ops in enumerate_op_sequences(pre, domain, config.edit_ops_per_update)
        )
    return ()


def _input_updates(bx: Bx, direction: str, case: Case, config: LawSuiteConfig) -> tuple[Update, ...]:
    return _enumerate_updates(
        bx.input_update_repr(direction),
        bx.input_domain(direction),
        case.end(direction),
        config,
    )


def _output_side_updates(bx: Bx, direction: str, pre: Value | None, config: LawSuiteConfig) -> tuple[Update, ...]:
    return _enumerate_updates(
        bx.output_update_repr(direction),
        bx.output_domain(direction),
        pre,
        config,
    )


def _post(update: Update, base: Value | None) -> Value | None:
    try:
        return rho_of(update)
    except StateNotRepresented:
        if isinstance(update, Edits) and base is not None:
            try:
                return apply_ops(update.ops, base)
            except SchemeError:
                return None
        return None


def _pre(update: Update, base: Value | None) -> Value | None:
    try:
        return delta_of(update)
    except StateNotRepresented:
        return base


def _null(repr: UpdateRepr, value: Value | None) -> Update | None:
    if repr is UpdateRepr.EDITS:
        return Edits(())
    if value is None:
        return None
    if repr is UpdateRepr.POST:
        return PostState(value)
    try:
        return identity_update(value, repr)
    except SchemeError:
        return None


def _call(bx: Bx, direction: str, update: Update, trace: Traceability):
    try:
        return bx.apply(direction, update, trace)
    except Undefined:
        return None


def _no_cases(bx: Bx, direction: str, cases) -> Verdict | None:
    if not cases:
        return Vacuous("no consistent pair exists on the declared domains")
    return None


def _free_cases(bx: Bx, direction: str) -> bool:
    return bx.input_trace_repr(direction) is TraceRepr.NONE


def _pre_recoverable(bx: Bx, direction: str) -> bool:
    """Can the pre-state of the input update be recovered from the
    framework's own data?  True when the input trace carries both
    endpoints, or when the consistency relation is the forward
    transformation and the trace stores the opposite source."""
    repr = bx.input_trace_repr(direction)
    if repr is TraceRepr.DELTA:
        return True
    return direction == "from" and repr is TraceRepr.STATE and bx.consistency_kind == "T"


def _cex(
    bx: Bx,
    law: str,
    direction: str,
    update: Update,
    trace: Traceability,
    observed: str,
    expected: str,
    detail: str = "",
) -> Counterexample:
    return Counterexample(
        law=law,
        direction=direction,
        bx_name=bx.name,
        update=render_update(update),
        trace=render_trace(trace),
        observed=observed,
        expected=expected,
        detail=detail,
    )


def _render_result(result: tuple[Update, Traceability]) -> str:
    return f"{render_update(result[0])} | {render_trace(result[1])}"


class _Tally:
    """Accumulates per-case outcomes and assembles the final verdict."""

    def __init__(self, vacuous_reason: str):
        self.checked = 0
        self.weak = 0
        self.failure: Counterexample | None = None
        self.weak_variant = ""
        self.vacuous_reason = vacuous_reason

    def ok(self) -> None:
        self.checked += 1

    def weakly(self, variant: str) -> None:
        self.checked += 1
        self.weak += 1
        self.weak_variant = variant

    def fail(self, counterexample: Counterexample) -> bool:
        if self.failure is None:
            self.failure = counterexample
        return True

    def verdict(self) -> Verdict:
        if self.failure is not None:
            return Fails(self.failure)
        if self.checked == 0:
            return Vacuous(self.vacuous_reason)
        if self.weak:
            return WeaklyHolds(self.weak_variant, self.checked)
        return Holds(self.checked)


def _match_updates(
    expected: Update,
    actual: Update,
    config: LawSuiteConfig,
    base_pre: Value | None,
) -> str:
    """Returns "strict", "weak", or "no"."""
    if expected == actual:
        return "strict"
    if not config.weak_variants:
        return "no"
    pe = _post(expected, base_pre)
    pa = _post(actual, base_pre)
    if pe is None or pa is None:
        return "no"
    if config.normalizer is not None:
        pe = config.normalizer(pe)
        pa = config.normalizer(pa)
    return "weak" if pe == pa else "no"


def _compare(
    tally: _Tally,
    bx: Bx,
    law: str,
    call_direction: str,
    call_update: Update,
    call_trace: Traceability,
    result: tuple[Update, Traceability],
    expected_update: Update,
    expected_trace: Traceability | None,
    config: LawSuiteConfig,
    base_pre: Value | None,
    detail: str = "",
) -> bool:
    """Compare a call result against the law's stated result.

    Returns True when the tally recorded a failure (callers stop early).
    """
    u_out, t_out = result
    match = _match_updates(expected_update, u_out, config, base_pre)
    trace_ok = expected_trace is None or t_out == expected_trace
    if match == "no" or not trace_ok:
        expected_text = render_update(expected_update)
        if expected_trace is not None:
            expected_text += f" | {render_trace(expected_trace)}"
        return tally.fail(
            _cex(
                bx,
                law,
                call_direction,
                call_update,
                call_trace,
                observed=_render_result(result),
                expected=expected_text,
                detail=detail,
            )
        )
    if match == "weak":
        tally.weakly("post-state equality")
    else:
        tally.ok()
    return False


def _opaque_guard(bx: Bx, direction: str) -> Verdict | None:
    if bx.input_update_repr(direction) is UpdateRepr.OPAQUE:
        return NotExpressible("function-valued updates are excluded from law checking")
    return None


# ---------------------------------------------------------------------------
# The laws
# ---------------------------------------------------------------------------

def check_stability(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Null updates must translate to null updates, leaving the trace reversed."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    repr_in = bx.input_update_repr(direction)
    if repr_in is UpdateRepr.POST and not _pre_recoverable(bx, direction):
        return NotExpressible("a null update cannot be identified: no pre-state is recoverable")
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("the transformation is undefined on every null input")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        u_id = _null(repr_in, case.end(direction))
        if u_id is None:
            continue
        result = _call(bx, direction, u_id, trace_in)
        if result is None:
            continue
        out_end = case.end(_other(direction))
        expected_u = _null(bx.output_update_repr(direction), out_end)
        if expected_u is None:
            continue
        expected_t = _expected_output_trace(bx, direction, case)
        if _compare(
            tally, bx, STABILITY, direction, u_id, trace_in, result,
            expected_u, expected_t, config, out_end,
            detail="null update was not preserved",
        ):
            break
    return tally.verdict()


def check_invertibility(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """A translated update round-trips through the opposite transformation."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    back = _other(direction)
    back_trace_repr = bx.input_trace_repr(back)
    if back_trace_repr in (TraceRepr.STATE, TraceRepr.DELTA) and _free_cases(bx, direction):
        return NotExpressible("the reversed trace is not representable for the opposite direction")
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no premise call is defined")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        trace_back = _input_trace(bx, back, case)
        if trace_back is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(back)
        for u_in in _input_updates(bx, direction, case, config):
            premise = _call(bx, direction, u_in, trace_in)
            if premise is None:
                continue
            u_mid, t_mid = premise
            conclusion = _call(bx, back, u_mid, trace_back)
            if conclusion is None:
                continue  # conclusion undefined: discharged
            if direction == "from":
                post_a, post_b = _post(u_mid, out_base), _post(u_in, in_base)
            else:
                post_a, post_b = _post(u_in, in_base), _post(u_mid, out_base)
            expected_t = _reverse_trace_as(bx, t_mid, back, post_a, post_b)
            if _compare(
                tally, bx, INVERTIBILITY, back, u_mid, trace_back, conclusion,
                u_in, expected_t, config, in_base,
                detail="round trip did not restore the translated update",
            ):
                return tally.verdict()
    return tally.verdict()


def check_undoability(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Re-applying the transformation with the inverted update undoes it."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    repr_in = bx.input_update_repr(direction)
    repr_out = bx.output_update_repr(direction)
    if repr_in is UpdateRepr.POST and bx.input_trace_repr(direction) not in (
        TraceRepr.STATE,
        TraceRepr.DELTA,
    ):
        return NotExpressible("update inversion is not representable without a state-carrying trace")
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no premise call is defined")
    reverse_arrow = _other(direction)
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(_other(direction))
        for u_in in _input_updates(bx, direction, case, config):
            premise = _call(bx, direction, u_in, trace_in)
            if premise is None:
                continue
            u_mid, t_mid = premise
            if repr_in is UpdateRepr.POST:
                u_inv = PostState(in_base) if in_base is not None else None
            else:
                u_inv = invert_update(u_in)
            if u_inv is None:
                continue
            if direction == "from":
                post_a, post_b = _post(u_mid, out_base), _post(u_in, in_base)
            else:
                post_a, post_b = _post(u_in, in_base), _post(u_mid, out_base)
            trace_undo = _reverse_trace_as(bx, t_mid, reverse_arrow, post_a, post_b)
            if trace_undo is None:
                continue
            undo = _call(bx, direction, u_inv, trace_undo)
            if undo is None:
                continue
            if repr_out is UpdateRepr.POST:
                expected_u = PostState(out_base) if out_base is not None else None
            else:
                expected_u = invert_update(u_mid)
            if expected_u is None:
                continue
            expected_t = _expected_output_trace(bx, direction, case)
            if _compare(
                tally, bx, UNDOABILITY, direction, u_inv, trace_undo, undo,
                expected_u, expected_t, config, out_base,
                detail="inverse update did not restore the original state",
            ):
                return tally.verdict()
    return tally.verdict()


def check_history_ignorance(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Translating a composite equals composing the two translations."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no chained premise is defined")
    reverse_arrow = _other(direction)
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(_other(direction))
        in_domain = bx.input_domain(direction)
        for u1 in _input_updates(bx, direction, case, config):
            first = _call(bx, direction, u1, trace_in)
            if first is None:
                continue
            out1, s1 = first
            post_in1 = _post(u1, in_base)
            post_out1 = _post(out1, out_base)
            if direction == "from":
                post_a, post_b = post_out1, post_in1
            else:
                post_a, post_b = post_in1, post_out1
            trace2 = _reverse_trace_as(bx, s1, reverse_arrow, post_a, post_b)
            if trace2 is None:
                continue
            seconds = _enumerate_updates(
                bx.input_update_repr(direction), in_domain, post_in1, config
            )
            for u2 in seconds:
                second = _call(bx, direction, u2, trace2)
                if second is None:
                    continue
                out2, s2 = second
                try:
                    u12 = compose_updates(u2, u1)
                    expected_u = compose_updates(out2, out1)
                except SchemeError:
                    continue
                combined = _call(bx, direction, u12, trace_in)
                if combined is None:
                    continue
                if _compare(
                    tally, bx, HISTORY_IGNORANCE, direction, u12, trace_in, combined,
                    expected_u, s2, config, out_base,
                    detail="translating the composite differs from composing the translations",
                ):
                    return tally.verdict()
    return tally.verdict()


def check_correctness(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Every defined result restores the consistency relation.

    When the consistency relation is the forward transformation itself,
    correctness degenerates into invertibility and is checked as such.
    """
    config = config or LawSuiteConfig()
    if bx.consistency_kind == "T":
        return _retag(check_invertibility(bx, direction, config), CORRECTNESS)
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("the transformation is undefined everywhere")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(_other(direction))
        for u_in in _input_updates(bx, direction, case, config):
            result = _call(bx, direction, u_in, trace_in)
            if result is None:
                continue
            post_in = _post(u_in, in_base)
            post_out = _post(result[0], out_base)
            if post_in is None or post_out is None:
                continue
            if direction == "from":
                pa, pb = post_out, post_in
            else:
                pa, pb = post_in, post_out
            if bx.consistency(pa, pb):
                tally.ok()
                continue
            if config.weak_variants and not _has_counterpart(bx, direction, post_in):
                tally.weakly("inconsistent result allowed: no consistent counterpart exists")
                continue
            tally.fail(
                _cex(
                    bx, CORRECTNESS, direction, u_in, trace_in,
                    observed=_render_result(result),
                    expected="an output consistent with the input's post-state",
                    detail=f"pair ({render_value(pa)}, {render_value(pb)}) is not consistent",
                )
            )
            return tally.verdict()
    return tally.verdict()


def _has_counterpart(bx: Bx, direction: str, post_in: Value) -> bool:
    opposite = bx.output_domain(direction)
    if direction == "from":
        return any(bx.consistency(x, post_in) for x in enumerate_values(opposite))
    return any(bx.consistency(post_in, x) for x in enumerate_values(opposite))


def check_hippocraticness(
    bx: Bx,
    direction: str,
    config: LawSuiteConfig | None = None,
    literal: bool = False,
) -> Verdict:
    """An update that keeps the pair consistent must be ignored.

    With a transformation-valued consistency relation this degenerates
    into stability.  For edit-based implicit-consistency frameworks the
    premise is strengthened to "the edits applied to the testified state
    stay consistent"; pass ``literal=True`` for the unconstrained
    reading, reported separately.
    """
    config = config or LawSuiteConfig()
    if bx.consistency_kind == "T":
        return _retag(check_stability(bx, direction, config), HIPPOCRATICNESS)
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    law = HIPPOCRATICNESS_LITERAL if literal else HIPPOCRATICNESS
    if bx.consistency_kind == "I" and bx.input_update_repr(direction) is not UpdateRepr.EDITS:
        return NotExpressible(
            "a consistency-preserving update cannot be recognized under an implicit relation"
        )
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    if cases[0].a is None:
        return NotExpressible("no testifying pair is available to anchor the null update")
    tally = _Tally("no consistency-preserving update is defined")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(_other(direction))
        for u_in in _input_updates(bx, direction, case, config):
            post_in = _post(u_in, in_base)
            if post_in is None:
                continue
            if not literal:
                if direction == "from":
                    preserved = bx.consistency(out_base, post_in)
                else:
                    preserved = bx.consistency(post_in, out_base)
                if not preserved:
                    continue
            result = _call(bx, direction, u_in, trace_in)
            if result is None:
                continue
            expected_u = _null(bx.output_update_repr(direction), out_base)
            if expected_u is None:
                continue
            expected_t = _composed_trace_expectation(bx, direction, case, post_in)
            if _compare(
                tally, bx, law, direction, u_in, trace_in, result,
                expected_u, expected_t, config, out_base,
                detail="a consistency-preserving update was not ignored",
            ):
                return tally.verdict()
    return tally.verdict()


def _composed_trace_expectation(
    bx: Bx, direction: str, case: Case, post_in: Value
) -> Traceability | None:
    """Expected output trace for an ignored update: the input trace
    composed with that update, then reversed."""
    repr = bx.output_trace_repr(direction)
    if repr is TraceRepr.NONE:
        return NO_TRACE
    if repr is TraceRepr.STATE:
        return StateTrace(post_in)
    if repr is TraceRepr.COMPLEMENT:
        return ComplementTrace(case.c) if case.c is not None else None
    if case.a is None:
        return None
    if direction == "from":
        rel = bx.default_align(case.a, post_in)
        return DeltaTrace(post_in, case.a, rel.invert())
    rel = bx.default_align(post_in, case.b)
    return DeltaTrace(post_in, case.b, rel)


def check_least_update(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """The returned update is minimal among all consistency-restoring ones."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    repr_out = bx.output_update_repr(direction)
    if repr_out is UpdateRepr.OPAQUE:
        return NotExpressible("no preorder is available for function-valued updates")
    anchored_order = default_preorder(UpdateRepr.BOTH)
    plain_order = bx.preorder or default_preorder(repr_out)

    def smaller_or_equal(u_result: Update, u_alt: Update, out_base: Value | None) -> bool:
        # Post-state-only updates are compared as "fewest changed
        # components" by anchoring them at the testified pre-state,
        # unless the transformation attached its own preorder.
        if bx.preorder is None and repr_out is UpdateRepr.POST and out_base is not None:
            lifted_result = BothStates(out_base, _post(u_result, out_base))
            lifted_alt = BothStates(out_base, _post(u_alt, out_base))
            return anchored_order.compare(lifted_result, lifted_alt) == LESS_OR_EQUAL
        return plain_order.compare(u_result, u_alt) == LESS_OR_EQUAL

    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("the transformation is undefined everywhere")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        out_base = case.end(_other(direction))
        for u_in in _input_updates(bx, direction, case, config):
            result = _call(bx, direction, u_in, trace_in)
            if result is None:
                continue
            post_in = _post(u_in, in_base)
            if post_in is None:
                continue
            minimal = True
            offending = None
            for alt in _output_side_updates(bx, direction, out_base, config):
                post_alt = _post(alt, out_base)
                if post_alt is None:
                    continue
                if direction == "from":
                    consistent = bx.consistency(post_alt, post_in)
                else:
                    consistent = bx.consistency(post_in, post_alt)
                if not consistent:
                    continue
                if not smaller_or_equal(result[0], alt, out_base):
                    minimal = False
                    offending = alt
                    break
            if minimal:
                tally.ok()
                continue
            tally.fail(
                _cex(
                    bx, LEAST_UPDATE, direction, u_in, trace_in,
                    observed=_render_result(result),
                    expected=f"an update no larger than {render_update(offending)}",
                    detail="a strictly smaller consistency-restoring update exists",
                )
            )
            return tally.verdict()
    return tally.verdict()


def check_totality(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Defined on every enumerated update paired with a testifying trace."""
    config = config or LawSuiteConfig()
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no inputs to enumerate")
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        for u_in in _input_updates(bx, direction, case, config):
            if _call(bx, direction, u_in, trace_in) is None:
                tally.fail(
                    _cex(
                        bx, TOTALITY, direction, u_in, trace_in,
                        observed="undefined",
                        expected="a defined result",
                    )
                )
                return tally.verdict()
            tally.ok()
    return tally.verdict()


def check_safety(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Defined at least on inputs whose post-state has a consistent counterpart."""
    config = config or LawSuiteConfig()
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no inputs to enumerate")
    counterpart_cache: dict[Value, bool] = {}
    for case in cases:
        trace_in = _input_trace(bx, direction, case)
        if trace_in is None:
            continue
        in_base = case.end(direction)
        for u_in in _input_updates(bx, direction, case, config):
            post_in = _post(u_in, in_base)
            if post_in is None:
                continue
            if post_in not in counterpart_cache:
                counterpart_cache[post_in] = _has_counterpart(bx, direction, post_in)
            if not counterpart_cache[post_in]:
                tally.ok()
                continue
            if _call(bx, direction, u_in, trace_in) is None:
                tally.fail(
                    _cex(
                        bx, SAFETY, direction, u_in, trace_in,
                        observed="undefined",
                        expected="defined: the post-state has a consistent counterpart",
                    )
                )
                return tally.verdict()
            tally.ok()
    return tally.verdict()


def check_convergence(bx: Bx, direction: str, config: LawSuiteConfig | None = None) -> Verdict:
    """Round-tripping reaches a fixed point on post-states within two passes."""
    config = config or LawSuiteConfig()
    guard = _opaque_guard(bx, direction)
    if guard:
        return guard
    back = _other(direction)
    if bx.input_trace_repr(back) in (TraceRepr.STATE, TraceRepr.DELTA) and _free_cases(bx, direction):
        return NotExpressible("the reversed trace is not representable for the opposite direction")
    cases = consistent_cases(bx, direction)
    empty = _no_cases(bx, direction, cases)
    if empty:
        return empty
    tally = _Tally("no premise call is defined")
    for case in cases:
        trace_fwd = _input_trace(bx, direction, case)
        trace_back = _input_trace(bx, back, case)
        if trace_fwd is None or trace_back is None:
            continue
        out_base = case.end(_other(direction))
        for u_in in _input_updates(bx, direction, case, config):
            first = _call(bx, direction, u_in, trace_fwd)
            if first is None:
                continue
            current = first[0]
            previous_post = _post(current, out_base)
            if previous_post is None:
                continue
            converged = False
            undefined = False
            for _ in range(config.max_convergence_rounds):
                bounce = _call(bx, back, current, trace_back)
                if bounce is None:
                    undefined = True
                    break
                again = _call(bx, direction, bounce[0], trace_fwd)
                if again is None:
                    undefined = True
                    break
                current = again[0]
                next_post = _post(current, out_base)
                if next_post == previous_post:
                    converged = True
                    break
                previous_post = next_post
            if converged:
                tally.ok()
            elif undefined:
                continue
            else:
                tally.fail(
                    _cex(
                        bx, CONVERGENCE, direction, u_in, trace_fwd,
                        observed=_render_result(first),
                        expected="a round-trip fixed point within "
                        f"{config.max_convergence_rounds} iterations",
                        detail=f"still changing at {render_value(previous_post)}",
                    )
                )
                return tally.verdict()
    return tally.verdict()


def _retag(verdict: Verdict, law: str) -> Verdict:
    if isinstance(verdict, Fails):
        relabeled = dataclasses.replace(verdict.counterexample, law=law)
        return Fails(relabeled)
    return verdict


CHECKERS: dict[str, Callable[[Bx, str, LawSuiteConfig], Verdict]] = {
    STABILITY: check_stability,
    INVERTIBILITY: check_invertibility,
    UNDOABILITY: check_undoability,
    HISTORY_IGNORANCE: check_history_ignorance,
    CORRECTNESS: check_correctness,
    HIPPOCRATICNESS: check_hippocraticness,
    LEAST_UPDATE: check_least_update,
    TOTALITY: check_totality,
    SAFETY: check_safety,
    CONVERGENCE: check_convergence,
}


# ---------------------------------------------------------------------------
# Suite driver and report
# ---------------------------------------------------------------------------

@dataclass
class LawReport:
    """Per-law, per-direction verdicts plus entailment-check results."""

    bx_name: str
    verdicts: dict[tuple[str, str], Verdict]
    meta_errors: tuple[str, ...] = ()

    def verdict(self, law: str, direction: str) -> Verdict:
        return self.verdicts[(canonical_law(law), direction)]

    def kind(self, law: str, direction: str) -> str:
        return self.verdict(law, direction).kind

    def failures(self, laws: tuple[str, ...] | None = None) -> list[Counterexample]:
        selected = tuple(canonical_law(l) for l in laws) if laws else None
        out = []
        for (law, _direction), verdict in self.verdicts.items():
            if selected is not None and law not in selected:
                continue
            if isinstance(verdict, Fails):
                out.append(verdict.counterexample)
        return out

    def to_value(self) -> Value:
        def verdict_value(v: Verdict) -> Value:
            fields: dict[str, Value] = {"kind": AtomStr(v.kind)}
            if isinstance(v, Holds):
                fields["cases"] = AtomInt(v.cases_checked)
            elif isinstance(v, WeaklyHolds):
                fields["cases"] = AtomInt(v.cases_checked)
                fields["variant"] = AtomStr(v.variant)
            elif isinstance(v, (NotExpressible, Vacuous)):
                fields["reason"] = AtomStr(v.reason)
            elif isinstance(v, Fails):
                c = v.counterexample
                fields["counterexample"] = Rec(
                    {
                        "law": AtomStr(c.law),
                        "direction": AtomStr(c.direction),
                        "update": AtomStr(c.update),
                        "trace": AtomStr(c.trace),
                        "observed": AtomStr(c.observed),
                        "expected": AtomStr(c.expected),
                    }
                )
            return Rec(fields)

        laws_present = sorted({law for law, _ in self.verdicts})
        body: dict[str, Value] = {}
        for law in laws_present:
            entry: dict[str, Value] = {}
            for direction in DIRECTIONS:
                if (law, direction) in self.verdicts:
                    entry[direction] = verdict_value(self.verdicts[(law, direction)])
            body[law] = Rec(entry)
        return Rec(
            {
                "bx": AtomStr(self.bx_name),
                "verdicts": Rec(body),
                "meta_errors": AtomStr("; ".join(self.meta_errors)),
            }
        )


def run_suite(bx: Bx, config: LawSuiteConfig | None = None) -> LawReport:
    """Evaluate every selected law in both directions, then the entailment
    theorems; identical configurations always produce identical reports."""
    config = config or LawSuiteConfig()
    verdicts: dict[tuple[str, str], Verdict] = {}
    for law in config.laws:
        checker = CHECKERS[law]
        for direction in DIRECTIONS:
            verdicts[(law, direction)] = checker(bx, direction, config)
    if (
        HIPPOCRATICNESS in config.laws
        and bx.consistency_kind == "I"
        and UpdateRepr.EDITS in (bx.upd_to, bx.upd_from)
    ):
        for direction in DIRECTIONS:
            verdicts[(HIPPOCRATICNESS_LITERAL, direction)] = check_hippocraticness(
                bx, direction, config, literal=True
            )
    meta = tuple(_meta_checks(bx, verdicts))
    return LawReport(bx.name, verdicts, meta)


def _meta_checks(bx: Bx, verdicts: dict[tuple[str, str], Verdict]) -> list[str]:
    errors: list[str] = []

    def kind(law: str, direction: str) -> str | None:
        v = verdicts.get((law, direction))
        return v.kind if v is not None else None

    for direction in DIRECTIONS:
        stab = kind(STABILITY, direction)
        hist = kind(HISTORY_IGNORANCE, direction)
        undo = kind(UNDOABILITY, direction)
        if stab == Verdict.HOLDS and hist == Verdict.HOLDS and undo not in (None, Verdict.HOLDS):
            errors.append(
                f"{bx.name}/{direction}: stability and history-ignorance hold "
                f"but undoability is {undo}"
            )
        if bx.consistency_kind == "T":
            corr, inv = kind(CORRECTNESS, direction), kind(INVERTIBILITY, direction)
            if corr is not None and inv is not None and corr != inv:
                errors.append(
                    f"{bx.name}/{direction}: correctness ({corr}) does not degenerate "
                    f"into invertibility ({inv})"
                )
            hip = kind(HIPPOCRATICNESS, direction)
            if hip is not None and stab is not None and hip != stab:
                errors.append(
                    f"{bx.name}/{direction}: hippocraticness ({hip}) does not degenerate "
                    f"into stability ({stab})"
                )
        least = kind(LEAST_UPDATE, direction)
        hip = kind(HIPPOCRATICNESS, direction)
        if least == Verdict.HOLDS and hip == Verdict.FAILS:
            errors.append(
                f"{bx.name}/{direction}: least-update holds but hippocraticness fails"
            )
    return errors


def audit_incidence(bx: Bx, config: LawSuiteConfig | None = None) -> Verdict:
    """Run every enumerated defined call and check endpoint agreement."""
    config = config or LawSuiteConfig()
    tally = _Tally("no defined invocation to audit")
    for direction in DIRECTIONS:
        for case in consistent_cases(bx, direction):
            trace_in = _input_trace(bx, direction, case)
            if trace_in is None:
                continue
            for u_in in _input_updates(bx, direction, case, config):
                result = _call(bx, direction, u_in, trace_in)
                if result is None:
                    continue
                verdict = check_incidence(u_in, trace_in, result[0], result[1], direction)
                if isinstance(verdict, Fails):
                    tagged = dataclasses.replace(verdict.counterexample, bx_name=bx.name)
                    tally.fail(tagged)
                    return tally.verdict()
                tally.ok()
    return tally.verdict()
