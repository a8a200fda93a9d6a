"""Universal immutable value model: trees of atoms, pairs, sequences, records.

Everything downstream (updates, traces, law checking) works over these
values.  They are frozen and hashable, compared structurally, and every
component of a value is addressable by a path.  Finite domains describe
universes of values with computable cardinality and a deterministic
enumeration order, which is what makes bounded-exhaustive law checking
reproducible.  ``diff`` is the alignment oracle: given two values it
returns a partial bijection between paths of equal components.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

ENUMERATION_CAP = 100_000


class CapExceeded(Exception):
    """Raised when a domain is too large to enumerate exhaustively."""

    def __init__(self, cardinality: int, cap: int):
        super().__init__(f"domain has {cardinality} values, exceeds cap {cap}")
        self.cardinality = cardinality
        self.cap = cap


class InvalidPath(Exception):
    """Raised by ``select`` when a path step does not resolve.

    ``step_index`` is the position of the first failing step.
    """

    def __init__(self, step_index: int, reason: str = ""):
        detail = f" ({reason})" if reason else ""
        super().__init__(f"path invalid at step {step_index}{detail}")
        self.step_index = step_index


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Value:
    """Base class for value constructors; all instances are immutable."""
    __slots__ = ()


@dataclass(frozen=True)
class AtomInt(Value):
    value: int


@dataclass(frozen=True)
class AtomStr(Value):
    value: str


@dataclass(frozen=True)
class Pair(Value):
    left: Value
    right: Value


@dataclass(frozen=True)
class Seq(Value):
    elements: tuple[Value, ...]

    def __init__(self, elements: Iterable[Value] = ()):
        object.__setattr__(self, "elements", tuple(elements))


@dataclass(frozen=True)
class Rec(Value):
    """Record with a finite field map; fields are kept sorted by name."""

    fields: tuple[tuple[str, Value], ...]

    def __init__(self, fields: Mapping[str, Value] | Iterable[tuple[str, Value]] = ()):
        object.__setattr__(self, "fields", tuple(sorted(dict(fields).items())))

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.fields)

    def get(self, name: str) -> Value:
        for field_name, value in self.fields:
            if field_name == name:
                return value
        raise KeyError(name)

    def has(self, name: str) -> bool:
        return any(field_name == name for field_name, _ in self.fields)

    def set(self, name: str, value: Value) -> "Rec":
        if not self.has(name):
            raise KeyError(name)
        return Rec(dict(self.fields) | {name: value})


def atom(x: int | str) -> Value:
    """Wrap a raw int or str into the corresponding atom value."""
    if isinstance(x, bool):
        raise TypeError("bool atoms are not part of the value model")
    if isinstance(x, int):
        return AtomInt(x)
    if isinstance(x, str):
        return AtomStr(x)
    raise TypeError(f"not an atom: {x!r}")


def pair(left: Value, right: Value) -> Pair:
    return Pair(left, right)


def seq(*elements: Value) -> Seq:
    return Seq(elements)


def rec(fields: Mapping[str, Value] | None = None, **kw: Value) -> Rec:
    merged: dict[str, Value] = dict(fields or {})
    merged.update(kw)
    return Rec(merged)


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    __slots__ = ()


@dataclass(frozen=True)
class GoLeft(Step):
    pass


@dataclass(frozen=True)
class GoRight(Step):
    pass


@dataclass(frozen=True)
class GoIndex(Step):
    index: int


@dataclass(frozen=True)
class GoField(Step):
    name: str


Path = tuple[Step, ...]
ROOT: Path = ()

LEFT = GoLeft()
RIGHT = GoRight()


def idx(i: int) -> GoIndex:
    return GoIndex(i)


def field(name: str) -> GoField:
    return GoField(name)


def step_key(step: Step) -> tuple:
    if isinstance(step, GoLeft):
        return (0,)
    if isinstance(step, GoRight):
        return (1,)
    if isinstance(step, GoIndex):
        return (2, step.index)
    return (3, step.name)


def path_key(path: Path) -> tuple:
    """Deterministic sort key for paths (used for stable rendering)."""
    return tuple(step_key(s) for s in path)


def select(value: Value, path: Path) -> Value:
    """Resolve ``path`` inside ``value``; the empty path is the value itself."""
    current = value
    for i, step in enumerate(path):
        if isinstance(step, GoLeft):
            if not isinstance(current, Pair):
                raise InvalidPath(i, "left on non-pair")
            current = current.left
        elif isinstance(step, GoRight):
            if not isinstance(current, Pair):
                raise InvalidPath(i, "right on non-pair")
            current = current.right
        elif isinstance(step, GoIndex):
            if not isinstance(current, Seq):
                raise InvalidPath(i, "index on non-sequence")
            if not 0 <= step.index < len(current.elements):
                raise InvalidPath(i, "index out of bounds")
            current = current.elements[step.index]
        elif isinstance(step, GoField):
            if not isinstance(current, Rec) or not current.has(step.name):
                raise InvalidPath(i, f"no field {step.name}")
            current = current.get(step.name)
        else:
            raise InvalidPath(i, "unknown step")
    return current


def path_valid(value: Value, path: Path) -> bool:
    try:
        select(value, path)
    except InvalidPath:
        return False
    return True


def all_paths(value: Value) -> tuple[Path, ...]:
    """Every path of ``value`` in preorder, root first."""
    out: list[Path] = []

    def walk(v: Value, prefix: Path) -> None:
        out.append(prefix)
        if isinstance(v, Pair):
            walk(v.left, prefix + (LEFT,))
            walk(v.right, prefix + (RIGHT,))
        elif isinstance(v, Seq):
            for i, el in enumerate(v.elements):
                walk(el, prefix + (GoIndex(i),))
        elif isinstance(v, Rec):
            for name, fv in v.fields:
                walk(fv, prefix + (GoField(name),))

    walk(value, ROOT)
    return tuple(out)


# ---------------------------------------------------------------------------
# Sameness relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SamenessRelation:
    """A partial bijection between paths of a source and a target value.

    No path may appear twice on either side; this keeps inversion and
    relational composition total and unambiguous.
    """

    links: frozenset[tuple[Path, Path]]

    def __init__(self, links: Iterable[tuple[Path, Path]] = ()):
        frozen = frozenset((tuple(src), tuple(tgt)) for src, tgt in links)
        sources = [src for src, _ in frozen]
        targets = [tgt for _, tgt in frozen]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValueError("sameness relation must be a partial bijection on paths")
        object.__setattr__(self, "links", frozen)

    def __len__(self) -> int:
        return len(self.links)

    def invert(self) -> "SamenessRelation":
        return SamenessRelation((tgt, src) for src, tgt in self.links)

    def sources(self) -> frozenset[Path]:
        return frozenset(src for src, _ in self.links)

    def targets(self) -> frozenset[Path]:
        return frozenset(tgt for _, tgt in self.links)

    def target_of(self, src: Path) -> Path | None:
        for s, t in self.links:
            if s == src:
                return t
        return None

    def sorted_links(self) -> tuple[tuple[Path, Path], ...]:
        return tuple(sorted(self.links, key=lambda l: (path_key(l[0]), path_key(l[1]))))


EMPTY_RELATION = SamenessRelation()


def compose_relations(second: SamenessRelation, first: SamenessRelation) -> SamenessRelation:
    """Relational composition: first, then second (both partial bijections)."""
    by_source = {src: tgt for src, tgt in second.links}
    return SamenessRelation(
        (src, by_source[mid]) for src, mid in first.links if mid in by_source
    )


def identity_relation(value: Value) -> SamenessRelation:
    return SamenessRelation((p, p) for p in all_paths(value))


def restrict_to_equal(source: Value, target: Value, rel: SamenessRelation) -> SamenessRelation:
    """Drop links whose endpoints are not structurally equal components."""
    kept = []
    for src, tgt in rel.links:
        try:
            if select(source, src) == select(target, tgt):
                kept.append((src, tgt))
        except InvalidPath:
            continue
    return SamenessRelation(kept)


def close_relation(source: Value, target: Value, rel: SamenessRelation) -> SamenessRelation:
    """Add links for composite nodes whose children are all linked.

    A composite (pair, sequence, record) is linked to a partner of the
    same shape and equal content once every immediate child is linked to
    the corresponding child.  This recovers links that relational
    composition through a leaf-level correspondence cannot express.
    """
    links = set(rel.links)
    linked_src = {s for s, _ in links}
    linked_tgt = {t for _, t in links}
    src_paths = sorted(all_paths(source), key=len, reverse=True)
    tgt_by_depth = sorted(all_paths(target), key=path_key)

    def children_steps(v: Value) -> list[Step] | None:
        if isinstance(v, Pair):
            return [LEFT, RIGHT]
        if isinstance(v, Seq):
            return [GoIndex(i) for i in range(len(v.elements))]
        if isinstance(v, Rec):
            return [GoField(n) for n in v.names()]
        return None

    for sp in src_paths:
        if sp in linked_src:
            continue
        sv = select(source, sp)
        steps = children_steps(sv)
        if steps is None:
            continue
        for tp in tgt_by_depth:
            if tp in linked_tgt:
                continue
            try:
                tv = select(target, tp)
            except InvalidPath:
                continue
            if tv != sv:
                continue
            if all((sp + (st,), tp + (st,)) in links for st in steps):
                links.add((sp, tp))
                linked_src.add(sp)
                linked_tgt.add(tp)
                break
    return SamenessRelation(links)


# ---------------------------------------------------------------------------
# Finite domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainDescriptor:
    __slots__ = ()


@dataclass(frozen=True)
class AtomDomain(DomainDescriptor):
    atoms: tuple[Value, ...]

    def __init__(self, atoms: Iterable[int | str | Value]):
        seen: list[Value] = []
        for a in atoms:
            v = a if isinstance(a, Value) else atom(a)
            if not isinstance(v, (AtomInt, AtomStr)):
                raise TypeError("atom domain must contain atoms only")
            if v not in seen:
                seen.append(v)
        object.__setattr__(self, "atoms", tuple(seen))


@dataclass(frozen=True)
class PairDomain(DomainDescriptor):
    left: DomainDescriptor
    right: DomainDescriptor


@dataclass(frozen=True)
class SeqDomain(DomainDescriptor):
    element: DomainDescriptor
    max_length: int


@dataclass(frozen=True)
class RecDomain(DomainDescriptor):
    fields: tuple[tuple[str, DomainDescriptor], ...]

    def __init__(self, fields: Mapping[str, DomainDescriptor] | Iterable[tuple[str, DomainDescriptor]] = ()):
        object.__setattr__(self, "fields", tuple(sorted(dict(fields).items())))


def atoms(*xs: int | str) -> AtomDomain:
    return AtomDomain(xs)


def pairs_of(left: DomainDescriptor, right: DomainDescriptor) -> PairDomain:
    return PairDomain(left, right)


def seqs_of(element: DomainDescriptor, max_length: int) -> SeqDomain:
    return SeqDomain(element, max_length)


def recs_of(fields: Mapping[str, DomainDescriptor] | None = None, **kw: DomainDescriptor) -> RecDomain:
    merged: dict[str, DomainDescriptor] = dict(fields or {})
    merged.update(kw)
    return RecDomain(merged)


def cardinality(domain: DomainDescriptor) -> int:
    if isinstance(domain, AtomDomain):
        return len(domain.atoms)
    if isinstance(domain, PairDomain):
        return cardinality(domain.left) * cardinality(domain.right)
    if isinstance(domain, SeqDomain):
        n = cardinality(domain.element)
        return sum(n ** k for k in range(domain.max_length + 1))
    if isinstance(domain, RecDomain):
        total = 1
        for _, sub in domain.fields:
            total *= cardinality(sub)
        return total
    raise TypeError(f"unknown domain {domain!r}")


@lru_cache(maxsize=None)
def _enumerate(domain: DomainDescriptor) -> tuple[Value, ...]:
    if isinstance(domain, AtomDomain):
        return domain.atoms
    if isinstance(domain, PairDomain):
        return tuple(
            Pair(l, r)
            for l in _enumerate(domain.left)
            for r in _enumerate(domain.right)
        )
    if isinstance(domain, SeqDomain):
        element_values = _enumerate(domain.element)
        out: list[Value] = []
        for k in range(domain.max_length + 1):
            for combo in itertools.product(element_values, repeat=k):
                out.append(Seq(combo))
        return tuple(out)
    if isinstance(domain, RecDomain):
        names = [name for name, _ in domain.fields]
        pools = [_enumerate(sub) for _, sub in domain.fields]
        return tuple(
            Rec(zip(names, combo)) for combo in itertools.product(*pools)
        )
    raise TypeError(f"unknown domain {domain!r}")


def enumerate_values(domain: DomainDescriptor, cap: int = ENUMERATION_CAP) -> tuple[Value, ...]:
    """All values of the domain, each exactly once, in deterministic order.

    Order is lexicographic over the schema: atom declaration order, then
    left-major pairs, length-then-content sequences, and sorted-name-major
    records.
    """
    size = cardinality(domain)
    if size > cap:
        raise CapExceeded(size, cap)
    return _enumerate(domain)


def contains(domain: DomainDescriptor, value: Value) -> bool:
    """Structural membership test, without enumerating the domain."""
    if isinstance(domain, AtomDomain):
        return value in domain.atoms
    if isinstance(domain, PairDomain):
        return (
            isinstance(value, Pair)
            and contains(domain.left, value.left)
            and contains(domain.right, value.right)
        )
    if isinstance(domain, SeqDomain):
        return (
            isinstance(value, Seq)
            and len(value.elements) <= domain.max_length
            and all(contains(domain.element, el) for el in value.elements)
        )
    if isinstance(domain, RecDomain):
        if not isinstance(value, Rec):
            return False
        if value.names() != tuple(name for name, _ in domain.fields):
            return False
        return all(contains(sub, value.get(name)) for name, sub in domain.fields)
    raise TypeError(f"unknown domain {domain!r}")


# ---------------------------------------------------------------------------
# Diff
# ---------------------------------------------------------------------------

def _lcs_matches(xs: tuple[Value, ...], ys: tuple[Value, ...]) -> list[tuple[int, int]]:
    # Classic DP; reconstruction prefers the leftmost match on ties.
    m, n = len(xs), len(ys)
    lengths = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for j in range(n - 1, -1, -1):
            if xs[i] == ys[j]:
                lengths[i][j] = lengths[i + 1][j + 1] + 1
            else:
                lengths[i][j] = max(lengths[i + 1][j], lengths[i][j + 1])
    matches: list[tuple[int, int]] = []
    i = j = 0
    while i < m and j < n:
        if xs[i] == ys[j] and lengths[i][j] == lengths[i + 1][j + 1] + 1:
            matches.append((i, j))
            i += 1
            j += 1
        elif lengths[i + 1][j] >= lengths[i][j + 1]:
            i += 1
        else:
            j += 1
    return matches


@lru_cache(maxsize=None)
def diff(pre: Value, post: Value) -> SamenessRelation:
    """Align two values and link the paths of components that are equal.

    Alignment rules: pairs align positionally, records by field name,
    sequences by a longest common subsequence of equal elements with ties
    broken leftmost.  A composite node is linked only when it is equal to
    its partner, and a linked equal subtree links all descendant paths.
    The result is the canonical sameness relation used to build delta
    updates from state pairs.
    """
    links: list[tuple[Path, Path]] = []

    def link_subtree(p: Path, q: Path, v: Value) -> None:
        for rel in all_paths(v):
            links.append((p + rel, q + rel))

    def walk(p: Path, q: Path, x: Value, y: Value) -> None:
        if x == y:
            link_subtree(p, q, x)
            return
        if isinstance(x, Pair) and isinstance(y, Pair):
            walk(p + (LEFT,), q + (LEFT,), x.left, y.left)
            walk(p + (RIGHT,), q + (RIGHT,), x.right, y.right)
        elif isinstance(x, Rec) and isinstance(y, Rec):
            for name in x.names():
                if y.has(name):
                    walk(p + (GoField(name),), q + (GoField(name),), x.get(name), y.get(name))
        elif isinstance(x, Seq) and isinstance(y, Seq):
            for i, j in _lcs_matches(x.elements, y.elements):
                link_subtree(p + (GoIndex(i),), q + (GoIndex(j),), x.elements[i])

    walk(ROOT, ROOT, pre, post)
    return SamenessRelation(links)


# ---------------------------------------------------------------------------
# Serialization (grammar lives in bxkit.grammar; re-exported here)
# ---------------------------------------------------------------------------

def render_value(value: Value) -> str:
    from .grammar import render_value as render
    return render(value)


def parse_value(text: str) -> Value:
    from .grammar import parse_value as parse
    return parse(text)
