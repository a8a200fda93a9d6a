"""Differential validation of the generic checkers.

Each classic framework family has well-known concrete law readings
(get/put round trips for lenses, repair quantifications for
maintainers).  This module evaluates those readings directly, with
plain loops over the finite domains and no law-checker machinery, and
then asserts that the generic representation-driven checkers reach the
same verdict kind on every applicable catalog entry.  A disagreement
here means the harness's trace realization or expressibility logic
drifted from the concrete semantics.
"""
import pytest

from bxkit.values import enumerate_values
from bxkit.scheme import NoTrace, PostState, StateTrace
from bxkit.frameworks import Undefined
from bxkit.catalog import catalog, catalog_entries
from bxkit.laws import (
    check_correctness,
    check_hippocraticness,
    check_history_ignorance,
    check_invertibility,
    check_stability,
    check_undoability,
)
from bxkit.verdict import Verdict

LENSES = ["fst-lens", "const-lens", "broken-put-lens"]
MAINTAINERS = ["key-maintainer", "constant-maintainer", "stale-maintainer", "oscillating-toy"]


def _lens_ops(bx):
    def get(a):
        out, _ = bx.to(PostState(a), NoTrace())
        return out.post

    def put(b, a):
        out, _ = bx.from_(PostState(b), StateTrace(a))
        return out.post

    return get, put


def _try(thunk):
    try:
        return thunk()
    except Undefined:
        return None


def _verdict_kind(ok_cases: int, failed: bool) -> str:
    if failed:
        return Verdict.FAILS
    return Verdict.HOLDS if ok_cases else Verdict.VACUOUS


# -- lenses: the get/put readings -------------------------------------------------


def _lens_get_put(bx) -> str:
    get, put = _lens_ops(bx)
    ok, failed = 0, False
    for a in enumerate_values(bx.domain_a):
        b = _try(lambda: get(a))
        if b is None:
            continue
        restored = _try(lambda: put(b, a))
        if restored is None:
            continue
        if restored == a:
            ok += 1
        else:
            failed = True
            break
    return _verdict_kind(ok, failed)


def _lens_put_get(bx) -> str:
    get, put = _lens_ops(bx)
    ok, failed = 0, False
    for a in enumerate_values(bx.domain_a):
        if _try(lambda: get(a)) is None:
            continue
        for b in enumerate_values(bx.domain_b):
            a1 = _try(lambda: put(b, a))
            if a1 is None:
                continue
            seen = _try(lambda: get(a1))
            if seen is None:
                continue
            if seen == b:
                ok += 1
            else:
                failed = True
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


def _lens_put_put(bx) -> str:
    get, put = _lens_ops(bx)
    ok, failed = 0, False
    for a in enumerate_values(bx.domain_a):
        if _try(lambda: get(a)) is None:
            continue
        for b1 in enumerate_values(bx.domain_b):
            a1 = _try(lambda: put(b1, a))
            if a1 is None:
                continue
            for b2 in enumerate_values(bx.domain_b):
                a2 = _try(lambda: put(b2, a1))
                if a2 is None:
                    continue
                direct = _try(lambda: put(b2, a))
                if direct is None:
                    continue
                if direct == a2:
                    ok += 1
                else:
                    failed = True
                    break
            if failed:
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


def _lens_undo(bx) -> str:
    get, put = _lens_ops(bx)
    ok, failed = 0, False
    for a in enumerate_values(bx.domain_a):
        b0 = _try(lambda: get(a))
        if b0 is None:
            continue
        for b1 in enumerate_values(bx.domain_b):
            a1 = _try(lambda: put(b1, a))
            if a1 is None:
                continue
            undone = _try(lambda: put(b0, a1))
            if undone is None:
                continue
            if undone == a:
                ok += 1
            else:
                failed = True
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


@pytest.mark.parametrize("name", LENSES)
def test_lens_checkers_match_direct_readings(name):
    bx = catalog(name).bx
    assert check_stability(bx, "from").kind == _lens_get_put(bx)
    assert check_invertibility(bx, "from").kind == _lens_put_get(bx)
    assert check_history_ignorance(bx, "from").kind == _lens_put_put(bx)
    assert check_undoability(bx, "from").kind == _lens_undo(bx)
    # the transformation-valued consistency makes these two coincide
    assert check_correctness(bx, "from").kind == _lens_put_get(bx)
    assert check_hippocraticness(bx, "from").kind == _lens_get_put(bx)


# -- maintainers: the repair readings ------------------------------------------------


def _maintainer_ops(bx):
    def repair_a(b_post, a_pre):
        out, _ = bx.from_(PostState(b_post), StateTrace(a_pre))
        return out.post

    def repair_b(a_post, b_pre):
        out, _ = bx.to(PostState(a_post), StateTrace(b_pre))
        return out.post

    return repair_a, repair_b


def _consistent_pairs(bx):
    return [
        (a, b)
        for a in enumerate_values(bx.domain_a)
        for b in enumerate_values(bx.domain_b)
        if bx.consistency(a, b)
    ]


def _maintainer_correct(bx) -> str:
    repair_a, _ = _maintainer_ops(bx)
    ok, failed = 0, False
    for a, _b in _consistent_pairs(bx):
        for b1 in enumerate_values(bx.domain_b):
            a1 = _try(lambda: repair_a(b1, a))
            if a1 is None:
                continue
            if bx.consistency(a1, b1):
                ok += 1
            else:
                failed = True
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


def _maintainer_hippocratic(bx) -> str:
    repair_a, _ = _maintainer_ops(bx)
    ok, failed = 0, False
    for a, b in _consistent_pairs(bx):
        a1 = _try(lambda: repair_a(b, a))
        if a1 is None:
            continue
        if a1 == a:
            ok += 1
        else:
            failed = True
            break
    return _verdict_kind(ok, failed)


def _maintainer_invertible(bx) -> str:
    repair_a, repair_b = _maintainer_ops(bx)
    ok, failed = 0, False
    for a, b in _consistent_pairs(bx):
        for b1 in enumerate_values(bx.domain_b):
            a1 = _try(lambda: repair_a(b1, a))
            if a1 is None:
                continue
            back = _try(lambda: repair_b(a1, b))
            if back is None:
                continue
            if back == b1:
                ok += 1
            else:
                failed = True
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


def _maintainer_undoable(bx) -> str:
    repair_a, _ = _maintainer_ops(bx)
    ok, failed = 0, False
    for a, b in _consistent_pairs(bx):
        for b1 in enumerate_values(bx.domain_b):
            a1 = _try(lambda: repair_a(b1, a))
            if a1 is None:
                continue
            undone = _try(lambda: repair_a(b, a1))
            if undone is None:
                continue
            if undone == a:
                ok += 1
            else:
                failed = True
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


def _maintainer_history(bx) -> str:
    repair_a, _ = _maintainer_ops(bx)
    ok, failed = 0, False
    values_b = enumerate_values(bx.domain_b)
    anchors = {a for a, _ in _consistent_pairs(bx)}
    for a in sorted(anchors, key=repr):
        for b1 in values_b:
            a1 = _try(lambda: repair_a(b1, a))
            if a1 is None:
                continue
            for b2 in values_b:
                a2 = _try(lambda: repair_a(b2, a1))
                if a2 is None:
                    continue
                direct = _try(lambda: repair_a(b2, a))
                if direct is None:
                    continue
                if direct == a2:
                    ok += 1
                else:
                    failed = True
                    break
            if failed:
                break
        if failed:
            break
    return _verdict_kind(ok, failed)


@pytest.mark.parametrize("name", MAINTAINERS)
def test_maintainer_checkers_match_direct_readings(name):
    bx = catalog(name).bx
    assert check_correctness(bx, "from").kind == _maintainer_correct(bx)
    assert check_hippocraticness(bx, "from").kind == _maintainer_hippocratic(bx)
    assert check_invertibility(bx, "from").kind == _maintainer_invertible(bx)
    assert check_undoability(bx, "from").kind == _maintainer_undoable(bx)
    assert check_history_ignorance(bx, "from").kind == _maintainer_history(bx)
    assert check_stability(bx, "from").kind == Verdict.NOT_EXPRESSIBLE


def test_every_transformation_valued_entry_keeps_degeneracy():
    for name, entry in catalog_entries().items():
        if entry.bx.consistency_kind != "T":
            continue
        for direction in ("to", "from"):
            assert (
                check_correctness(entry.bx, direction).kind
                == check_invertibility(entry.bx, direction).kind
            ), name
            assert (
                check_hippocraticness(entry.bx, direction).kind
                == check_stability(entry.bx, direction).kind
            ), name
