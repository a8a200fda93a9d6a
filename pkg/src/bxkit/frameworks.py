"""Concrete bidirectional-transformation shapes as adapters over the scheme.

Seven constructors cover the classic interface families: plain mappings,
lenses (get/put), maintainers, trigonal systems (maintainers fed both
states), symmetric lenses (complement threading), edit lenses (edit
sequences under a complement), and symmetric delta-lenses.  Each factory
wraps user functions into a uniform partial transformation
``(update, trace) -> (update, trace)`` that validates representations,
rejects traces that do not testify the consistency relation, and always
returns an output trace, synthesizing it when the classic interface
would omit it as redundant.  Partiality always surfaces as ``Undefined``,
never as a crash.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .values import (
    DomainDescriptor,
    SamenessRelation,
    Value,
    contains,
    diff,
    enumerate_values,
)
from .scheme import (
    BothStates,
    ComplementTrace,
    DeltaTrace,
    DeltaUpdate,
    EditOp,
    Edits,
    NO_TRACE,
    PostState,
    ReprMismatch,
    StateTrace,
    Traceability,
    TraceRepr,
    Update,
    UpdatePreorder,
    UpdateRepr,
    apply_op,
    apply_ops,
    enumerate_ops,
    trace_repr,
    update_repr,
)


class Undefined(Exception):
    """The transformation is not defined at this input."""

    def __init__(self, reason: str = ""):
        super().__init__(reason or "transformation undefined")
        self.reason = reason or "transformation undefined"


class UnknownName(Exception):
    pass


Transform = Callable[[Update, Traceability], tuple[Update, Traceability]]
Consistency = Callable[[Value, Value], bool]
Aligner = Callable[[Value, Value], SamenessRelation]


@dataclass(eq=False)
class Bx:
    """A named bidirectional transformation over finite domains.

    ``upd_to``/``trace_to`` describe the forward-direction update and
    trace representations (source-side updates, traces produced by the
    forward run and consumed by the backward one); ``upd_from`` and
    ``trace_from`` are their duals.
    """

    name: str
    upd_to: UpdateRepr
    upd_from: UpdateRepr
    trace_to: TraceRepr
    trace_from: TraceRepr
    consistency_kind: str
    consistency: Consistency
    to_fn: Transform
    from_fn: Transform
    domain_a: DomainDescriptor
    domain_b: DomainDescriptor
    complement_domain: DomainDescriptor | None = None
    preorder: UpdatePreorder | None = None
    align: Aligner | None = None
    replay: tuple[tuple[Value, Value, Value], ...] = field(default_factory=tuple)

    @property
    def symmetry(self) -> str:
        same_upd = self.upd_to is self.upd_from
        same_trace = self.trace_to is self.trace_from
        return "S" if same_upd and same_trace else "A"

    def to(self, update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        return self.to_fn(update, trace)

    def from_(self, update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        return self.from_fn(update, trace)

    def apply(self, direction: str, update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        if direction == "to":
            return self.to(update, trace)
        if direction == "from":
            return self.from_(update, trace)
        raise ValueError(f"direction must be 'to' or 'from', got {direction!r}")

    def input_update_repr(self, direction: str) -> UpdateRepr:
        return self.upd_to if direction == "to" else self.upd_from

    def output_update_repr(self, direction: str) -> UpdateRepr:
        return self.upd_from if direction == "to" else self.upd_to

    def input_trace_repr(self, direction: str) -> TraceRepr:
        # "to" consumes the backward trace, "from" the forward one.
        return self.trace_from if direction == "to" else self.trace_to

    def output_trace_repr(self, direction: str) -> TraceRepr:
        return self.trace_to if direction == "to" else self.trace_from

    def input_domain(self, direction: str) -> DomainDescriptor:
        return self.domain_a if direction == "to" else self.domain_b

    def output_domain(self, direction: str) -> DomainDescriptor:
        return self.domain_b if direction == "to" else self.domain_a

    def default_align(self, a: Value, b: Value) -> SamenessRelation:
        if self.align is not None:
            return self.align(a, b)
        return diff(a, b)


def _expect_update(update: Update, repr: UpdateRepr) -> None:
    if update_repr(update) is not repr:
        raise ReprMismatch(
            f"expected update representation {repr.value}, got {update_repr(update).value}"
        )


def _expect_trace(trace: Traceability, repr: TraceRepr) -> None:
    if trace_repr(trace) is not repr:
        raise ReprMismatch(
            f"expected trace representation {repr.value}, got {trace_repr(trace).value}"
        )


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise Undefined(reason)


# ---------------------------------------------------------------------------
# Mappings and lenses (consistency is the forward transformation)
# ---------------------------------------------------------------------------

def make_mapping(
    name: str,
    to_fn: Callable[[Value], Value],
    from_fn: Callable[[Value], Value],
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
) -> Bx:
    """State-to-state mapping with no traceability on either side."""

    def consistency(a: Value, b: Value) -> bool:
        try:
            return to_fn(a) == b
        except Undefined:
            return False

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.NONE)
        assert isinstance(update, PostState)
        return PostState(to_fn(update.post)), NO_TRACE

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.NONE)
        assert isinstance(update, PostState)
        return PostState(from_fn(update.post)), NO_TRACE

    return Bx(
        name=name,
        upd_to=UpdateRepr.POST,
        upd_from=UpdateRepr.POST,
        trace_to=TraceRepr.NONE,
        trace_from=TraceRepr.NONE,
        consistency_kind="T",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
    )


def make_lens(
    name: str,
    get: Callable[[Value], Value],
    put: Callable[[Value, Value], Value],
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
) -> Bx:
    """Asymmetric lens: forward is get, backward is put over the old source."""

    def consistency(a: Value, b: Value) -> bool:
        try:
            return get(a) == b
        except Undefined:
            return False

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.NONE)
        assert isinstance(update, PostState)
        return PostState(get(update.post)), StateTrace(update.post)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.STATE)
        assert isinstance(update, PostState) and isinstance(trace, StateTrace)
        old_source = trace.state
        try:
            get(old_source)
        except Undefined:
            raise Undefined("trace does not testify the consistency relation")
        return PostState(put(update.post, old_source)), NO_TRACE

    return Bx(
        name=name,
        upd_to=UpdateRepr.POST,
        upd_from=UpdateRepr.POST,
        trace_to=TraceRepr.STATE,
        trace_from=TraceRepr.NONE,
        consistency_kind="T",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
    )


# ---------------------------------------------------------------------------
# Maintainers and trigonal systems (explicit consistency relation)
# ---------------------------------------------------------------------------

def make_maintainer(
    name: str,
    consistency: Consistency,
    to_fn: Callable[[Value, Value], Value],
    from_fn: Callable[[Value, Value], Value],
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
) -> Bx:
    """Symmetric repair pair: each direction sees the opposite pre-state.

    ``to_fn(a_post, b_pre)`` returns the repaired target, ``from_fn``
    dually.  The repair functions are supplied, not inferred from the
    relation.
    """

    def _has_partner_a(a: Value) -> bool:
        return any(consistency(a, b) for b in enumerate_values(domain_b))

    def _has_partner_b(b: Value) -> bool:
        return any(consistency(a, b) for a in enumerate_values(domain_a))

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.STATE)
        assert isinstance(update, PostState) and isinstance(trace, StateTrace)
        _require(contains(domain_b, trace.state), "trace outside target domain")
        _require(_has_partner_b(trace.state), "trace does not testify the consistency relation")
        repaired = to_fn(update.post, trace.state)
        return PostState(repaired), StateTrace(update.post)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.STATE)
        assert isinstance(update, PostState) and isinstance(trace, StateTrace)
        _require(contains(domain_a, trace.state), "trace outside source domain")
        _require(_has_partner_a(trace.state), "trace does not testify the consistency relation")
        repaired = from_fn(update.post, trace.state)
        return PostState(repaired), StateTrace(update.post)

    return Bx(
        name=name,
        upd_to=UpdateRepr.POST,
        upd_from=UpdateRepr.POST,
        trace_to=TraceRepr.STATE,
        trace_from=TraceRepr.STATE,
        consistency_kind="E",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
    )


def make_trigonal(
    name: str,
    consistency: Consistency,
    to_fn: Callable[[tuple[Value, Value], Value], Value],
    from_fn: Callable[[tuple[Value, Value], Value], Value],
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
) -> Bx:
    """Maintainer variant whose updates carry both pre- and post-state,
    enabling incremental repair of only the changed parts."""

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.BOTH)
        _expect_trace(trace, TraceRepr.STATE)
        assert isinstance(update, BothStates) and isinstance(trace, StateTrace)
        _require(contains(domain_b, trace.state), "trace outside target domain")
        _require(
            consistency(update.pre, trace.state),
            "trace state does not match the update's pre-state",
        )
        repaired = to_fn((update.pre, update.post), trace.state)
        return BothStates(trace.state, repaired), StateTrace(update.post)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.BOTH)
        _expect_trace(trace, TraceRepr.STATE)
        assert isinstance(update, BothStates) and isinstance(trace, StateTrace)
        _require(contains(domain_a, trace.state), "trace outside source domain")
        _require(
            consistency(trace.state, update.pre),
            "trace state does not match the update's pre-state",
        )
        repaired = from_fn((update.pre, update.post), trace.state)
        return BothStates(trace.state, repaired), StateTrace(update.post)

    return Bx(
        name=name,
        upd_to=UpdateRepr.BOTH,
        upd_from=UpdateRepr.BOTH,
        trace_to=TraceRepr.STATE,
        trace_from=TraceRepr.STATE,
        consistency_kind="E",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
    )


# ---------------------------------------------------------------------------
# Complement-based frameworks (implicit consistency via replay)
# ---------------------------------------------------------------------------

def _sorted_triples(triples: set[tuple[Value, Value, Value]]) -> tuple[tuple[Value, Value, Value], ...]:
    from .grammar import render_value

    return tuple(sorted(triples, key=lambda t: tuple(render_value(v) for v in t)))


def make_symmetric_lens(
    name: str,
    to_fn: Callable[[Value, Value], tuple[Value, Value]],
    from_fn: Callable[[Value, Value], tuple[Value, Value]],
    init_complement: Value,
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
    complement_domain: DomainDescriptor,
    seeds: tuple[tuple[Value, Value, Value], ...],
) -> Bx:
    """Symmetric lens threading a complement value through both directions.

    The consistency relation is implicit: the pairs reachable from the
    seed states by any run of the transformations.  The reachable triples
    are precomputed so law checking can feed only testifying traces.
    """

    def step_to(a: Value, c: Value) -> tuple[Value, Value]:
        return to_fn(a, c)

    def step_from(b: Value, c: Value) -> tuple[Value, Value]:
        return from_fn(b, c)

    triples: set[tuple[Value, Value, Value]] = set(seeds)
    worklist = list(seeds)
    while worklist:
        _, _, c = worklist.pop()
        for a1 in enumerate_values(domain_a):
            try:
                b1, c1 = step_to(a1, c)
            except Undefined:
                continue
            if (a1, b1, c1) not in triples:
                triples.add((a1, b1, c1))
                worklist.append((a1, b1, c1))
        for b1 in enumerate_values(domain_b):
            try:
                a1, c1 = step_from(b1, c)
            except Undefined:
                continue
            if (a1, b1, c1) not in triples:
                triples.add((a1, b1, c1))
                worklist.append((a1, b1, c1))
    replay = _sorted_triples(triples)
    reachable_pairs = frozenset((a, b) for a, b, _ in replay)

    def consistency(a: Value, b: Value) -> bool:
        return (a, b) in reachable_pairs

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.COMPLEMENT)
        assert isinstance(update, PostState) and isinstance(trace, ComplementTrace)
        _require(contains(complement_domain, trace.payload), "complement outside its domain")
        b1, c1 = to_fn(update.post, trace.payload)
        return PostState(b1), ComplementTrace(c1)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.POST)
        _expect_trace(trace, TraceRepr.COMPLEMENT)
        assert isinstance(update, PostState) and isinstance(trace, ComplementTrace)
        _require(contains(complement_domain, trace.payload), "complement outside its domain")
        a1, c1 = from_fn(update.post, trace.payload)
        return PostState(a1), ComplementTrace(c1)

    return Bx(
        name=name,
        upd_to=UpdateRepr.POST,
        upd_from=UpdateRepr.POST,
        trace_to=TraceRepr.COMPLEMENT,
        trace_from=TraceRepr.COMPLEMENT,
        consistency_kind="I",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
        complement_domain=complement_domain,
        replay=replay,
    )


def make_edit_lens(
    name: str,
    translate_to: Callable[[tuple[EditOp, ...], Value], tuple[tuple[EditOp, ...], Value]],
    translate_from: Callable[[tuple[EditOp, ...], Value], tuple[tuple[EditOp, ...], Value]],
    init_complement: Value,
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
    complement_domain: DomainDescriptor,
    seeds: tuple[tuple[Value, Value, Value], ...],
) -> Bx:
    """Operation-based symmetric lens: edit sequences in, edit sequences out.

    Translators may reject an edit that does not make sense under the
    current complement; that surfaces as ``Undefined``.
    """

    triples: set[tuple[Value, Value, Value]] = set(seeds)
    worklist = list(seeds)
    while worklist:
        a, b, c = worklist.pop()
        for op in enumerate_ops(a, domain_a):
            try:
                ops_b, c1 = translate_to((op,), c)
                a1 = apply_op(op, a)
                b1 = apply_ops(ops_b, b)
            except Undefined:
                continue
            if (a1, b1, c1) not in triples:
                triples.add((a1, b1, c1))
                worklist.append((a1, b1, c1))
        for op in enumerate_ops(b, domain_b):
            try:
                ops_a, c1 = translate_from((op,), c)
                b1 = apply_op(op, b)
                a1 = apply_ops(ops_a, a)
            except Undefined:
                continue
            if (a1, b1, c1) not in triples:
                triples.add((a1, b1, c1))
                worklist.append((a1, b1, c1))
    replay = _sorted_triples(triples)
    reachable_pairs = frozenset((a, b) for a, b, _ in replay)

    def consistency(a: Value, b: Value) -> bool:
        return (a, b) in reachable_pairs

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.EDITS)
        _expect_trace(trace, TraceRepr.COMPLEMENT)
        assert isinstance(update, Edits) and isinstance(trace, ComplementTrace)
        _require(contains(complement_domain, trace.payload), "complement outside its domain")
        ops_b, c1 = translate_to(update.ops, trace.payload)
        return Edits(ops_b), ComplementTrace(c1)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        _expect_update(update, UpdateRepr.EDITS)
        _expect_trace(trace, TraceRepr.COMPLEMENT)
        assert isinstance(update, Edits) and isinstance(trace, ComplementTrace)
        _require(contains(complement_domain, trace.payload), "complement outside its domain")
        ops_a, c1 = translate_from(update.ops, trace.payload)
        return Edits(ops_a), ComplementTrace(c1)

    return Bx(
        name=name,
        upd_to=UpdateRepr.EDITS,
        upd_from=UpdateRepr.EDITS,
        trace_to=TraceRepr.COMPLEMENT,
        trace_from=TraceRepr.COMPLEMENT,
        consistency_kind="I",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
        complement_domain=complement_domain,
        replay=replay,
    )


# ---------------------------------------------------------------------------
# Symmetric delta-lenses
# ---------------------------------------------------------------------------

def make_sdelta_lens(
    name: str,
    consistency: Consistency,
    to_fn: Callable[[DeltaUpdate, DeltaTrace], tuple[DeltaUpdate, DeltaTrace]],
    from_fn: Callable[[DeltaUpdate, DeltaTrace], tuple[DeltaUpdate, DeltaTrace]],
    domain_a: DomainDescriptor,
    domain_b: DomainDescriptor,
    align: Aligner,
) -> Bx:
    """Delta-everywhere framework: updates and traces carry sameness relations."""

    def _validated(
        update: Update,
        trace: Traceability,
        forward: bool,
    ) -> tuple[DeltaUpdate, DeltaTrace]:
        _expect_update(update, UpdateRepr.DELTA)
        _expect_trace(trace, TraceRepr.DELTA)
        assert isinstance(update, DeltaUpdate) and isinstance(trace, DeltaTrace)
        _require(trace.tgt == update.pre, "update pre-state differs from trace target")
        if forward:
            consistent = consistency(trace.tgt, trace.src)
        else:
            consistent = consistency(trace.src, trace.tgt)
        _require(consistent, "trace does not testify the consistency relation")
        return update, trace

    def to(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        # Forward input trace runs target-to-source (its src is the B value).
        u, t = _validated(update, trace, forward=True)
        return to_fn(u, t)

    def from_(update: Update, trace: Traceability) -> tuple[Update, Traceability]:
        u, t = _validated(update, trace, forward=False)
        return from_fn(u, t)

    return Bx(
        name=name,
        upd_to=UpdateRepr.DELTA,
        upd_from=UpdateRepr.DELTA,
        trace_to=TraceRepr.DELTA,
        trace_from=TraceRepr.DELTA,
        consistency_kind="E",
        consistency=consistency,
        to_fn=to,
        from_fn=from_,
        domain_a=domain_a,
        domain_b=domain_b,
        align=align,
    )
