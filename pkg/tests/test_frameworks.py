"""Framework adapters: interface conformance, partiality, trace synthesis."""
import pytest

from bxkit.values import (
    GoField,
    SamenessRelation,
    atom,
    diff,
    enumerate_values,
    pair,
    rec,
    seq,
)
from bxkit.scheme import (
    BothStates,
    ComplementTrace,
    Delete,
    DeltaTrace,
    DeltaUpdate,
    Edits,
    Insert,
    NO_TRACE,
    PostState,
    ReprMismatch,
    StateTrace,
)
from bxkit.frameworks import Undefined, UnknownName
from bxkit.catalog import catalog, catalog_entries, catalog_names
from bxkit.laws import LawSuiteConfig, audit_incidence
from bxkit.verdict import Fails


def test_catalog_lookup():
    assert catalog("fst-lens").framework == "lens"
    assert catalog("key-maintainer").framework == "maintainer"
    with pytest.raises(UnknownName):
        catalog("nope")


def test_catalog_has_every_framework():
    canon = {e.framework for e in catalog_entries().values() if e.canonical}
    assert canon == {
        "mapping",
        "lens",
        "maintainer",
        "trigonal",
        "symmetric-lens",
        "edit-lens",
        "sdelta-lens",
    }


# -- mappings -----------------------------------------------------------------

def test_uppercase_mapping_is_bijective_on_domains():
    bx = catalog("uppercase-mapping").bx
    for a in enumerate_values(bx.domain_a):
        b, trace = bx.to(PostState(a), NO_TRACE)
        assert trace == NO_TRACE
        back, _ = bx.from_(b, NO_TRACE)
        assert back == PostState(a)


def test_embed_mapping_backward_partial():
    bx = catalog("embed-mapping").bx
    with pytest.raises(Undefined):
        bx.from_(PostState(atom("C")), NO_TRACE)
    out, _ = bx.from_(PostState(atom("A")), NO_TRACE)
    assert out == PostState(atom("a"))


# -- lenses --------------------------------------------------------------------

def test_fst_lens_calls():
    bx = catalog("fst-lens").bx
    out, trace = bx.to(PostState(pair(atom(2), atom(5))), NO_TRACE)
    assert out == PostState(atom(2))
    assert trace == StateTrace(pair(atom(2), atom(5)))
    back, back_trace = bx.from_(PostState(atom(9)), StateTrace(pair(atom(2), atom(5))))
    assert back == PostState(pair(atom(9), atom(5)))
    assert back_trace == NO_TRACE


def test_fst_lens_get_put_laws_by_hand():
    # independent oracle: loop the definitions, no law checker involved
    bx = catalog("fst-lens").bx
    sources = enumerate_values(bx.domain_a)
    views = enumerate_values(bx.domain_b)
    assert len(sources) == 9
    for a in sources:
        b, _ = bx.to(PostState(a), NO_TRACE)
        restored, _ = bx.from_(b, StateTrace(a))
        assert restored == PostState(a)  # GetPut
    for a in sources:
        for b in views:
            put_result, _ = bx.from_(PostState(b), StateTrace(a))
            got, _ = bx.to(put_result, NO_TRACE)
            assert got == PostState(b)  # PutGet


def test_lens_repr_mismatch_is_reported():
    bx = catalog("fst-lens").bx
    with pytest.raises(ReprMismatch):
        bx.to(BothStates(atom(1), atom(2)), NO_TRACE)
    with pytest.raises(ReprMismatch):
        bx.from_(PostState(atom(1)), NO_TRACE)


def test_const_lens_partial_put():
    bx = catalog("const-lens").bx
    out, _ = bx.from_(PostState(atom(0)), StateTrace(atom(1)))
    assert out == PostState(atom(1))
    with pytest.raises(Undefined):
        bx.from_(PostState(atom(1)), StateTrace(atom(0)))


# -- maintainers ------------------------------------------------------------------

def test_key_maintainer_repair_example():
    bx = catalog("key-maintainer").bx
    out, trace = bx.from_(
        PostState(rec(k=atom(2), v=atom(8))), StateTrace(rec(k=atom(1), u=atom(7)))
    )
    assert out == PostState(rec(k=atom(2), u=atom(7)))
    assert trace == StateTrace(rec(k=atom(2), v=atom(8)))


def test_key_maintainer_repair_is_unique_minimal_by_search():
    # independent oracle: exhaustive search over consistent repairs
    bx = catalog("key-maintainer").bx
    b_post = rec(k=atom(2), v=atom(8))
    a_pre = rec(k=atom(1), u=atom(7))
    consistent = [a for a in enumerate_values(bx.domain_a) if bx.consistency(a, b_post)]

    def changed_paths(a_new):
        from bxkit.values import all_paths

        return len(all_paths(a_new)) - len(diff(a_pre, a_new))

    best = min(changed_paths(a) for a in consistent)
    minimal = [a for a in consistent if changed_paths(a) == best]
    assert minimal == [rec(k=atom(2), u=atom(7))]
    out, _ = bx.from_(PostState(b_post), StateTrace(a_pre))
    assert out == PostState(minimal[0])


def test_maintainer_rejects_untestifying_trace():
    bx = catalog("key-maintainer").bx
    with pytest.raises(Undefined):
        bx.from_(PostState(rec(k=atom(2), v=atom(8))), StateTrace(atom(5)))


# -- trigonal -----------------------------------------------------------------------

def test_trigonal_identity_update_returns_source():
    bx = catalog("trigonal-key").bx
    b = rec(k=atom(1), v=atom(7))
    a = rec(k=atom(1), u=atom(7))
    out, trace = bx.from_(BothStates(b, b), StateTrace(a))
    assert out == BothStates(a, a)
    assert trace == StateTrace(b)


def test_trigonal_propagates_only_changes():
    bx = catalog("trigonal-key").bx
    b0 = rec(k=atom(1), v=atom(7))
    b1 = rec(k=atom(2), v=atom(7))
    a = rec(k=atom(1), u=atom(7))
    out, _ = bx.from_(BothStates(b0, b1), StateTrace(a))
    assert out == BothStates(a, rec(k=atom(2), u=atom(7)))


def test_trigonal_rejects_seam_violating_trace():
    bx = catalog("trigonal-key").bx
    b0 = rec(k=atom(1), v=atom(7))
    wrong_a = rec(k=atom(2), u=atom(7))  # not consistent with b0
    with pytest.raises(Undefined):
        bx.from_(BothStates(b0, b0), StateTrace(wrong_a))


# -- symmetric lens ------------------------------------------------------------------

def test_pair_sync_round_trip_preserves_hidden_halves():
    bx = catalog("pair-sync").bx
    # a = (x, y); b = (x, z); complement remembers (y, z)
    complement = ComplementTrace(pair(atom(1), atom(0)))
    out, c1 = bx.to(PostState(pair(atom(0), atom(1))), complement)
    assert out == PostState(pair(atom(0), atom(0)))  # z restored from complement
    assert c1 == ComplementTrace(pair(atom(1), atom(0)))
    back, c2 = bx.from_(out, c1)
    assert back == PostState(pair(atom(0), atom(1)))  # y restored
    assert c2 == c1


def test_pair_sync_rejects_complement_outside_domain():
    bx = catalog("pair-sync").bx
    with pytest.raises(Undefined):
        bx.to(PostState(pair(atom(0), atom(0))), ComplementTrace(atom(7)))


def test_pair_sync_replay_closure_covers_all_matching_pairs():
    bx = catalog("pair-sync").bx
    for a, b, c in bx.replay:
        assert a.left == b.left  # shared component agrees
        assert c == pair(a.right, b.right)  # complement mirrors the hidden halves
    assert len(bx.replay) == 8


# -- edit lens --------------------------------------------------------------------------

def test_edit_lens_insert_translation_example():
    bx = catalog("list-edit-lens").bx
    ops = Edits([Insert(0, pair(atom(1), atom(0)))])
    out, c1 = bx.to(ops, ComplementTrace(seq()))
    assert out == Edits([Insert(0, atom(1))])
    assert c1 == ComplementTrace(seq(atom(0)))  # complement gains the hidden half


def test_edit_lens_empty_sequence_is_fixed():
    bx = catalog("list-edit-lens").bx
    c = ComplementTrace(seq(atom(1)))
    assert bx.to(Edits(()), c) == (Edits(()), c)
    assert bx.from_(Edits(()), c) == (Edits(()), c)


def test_edit_lens_delete_out_of_range_undefined():
    bx = catalog("list-edit-lens").bx
    with pytest.raises(Undefined):
        bx.from_(Edits([Delete(3, atom(0))]), ComplementTrace(seq(atom(0))))


def test_edit_lens_fresh_backward_insert_undefined():
    bx = catalog("list-edit-lens").bx
    with pytest.raises(Undefined):
        bx.from_(Edits([Insert(0, atom(1))]), ComplementTrace(seq()))


def test_edit_lens_replay_coherence():
    # applying source edits and their translations preserves the projection
    bx = catalog("list-edit-lens").bx
    from bxkit.scheme import apply_ops, enumerate_op_sequences

    for a, b, c in bx.replay:
        assert b == seq(*(el.left for el in a.elements))
        for ops in enumerate_op_sequences(a, bx.domain_a, 2):
            try:
                translated, _c1 = bx.to(Edits(ops), ComplementTrace(c))
            except Undefined:
                continue
            a1 = apply_ops(ops, a)
            b1 = apply_ops(translated.ops, b)
            assert b1 == seq(*(el.left for el in a1.elements))


def test_edit_lens_longer_lists_replay_coherence():
    from bxkit.catalog import build_list_edit_lens
    from bxkit.scheme import apply_ops, enumerate_op_sequences

    bx = build_list_edit_lens(3)
    count = 0
    for a, b, c in bx.replay:
        assert b == seq(*(el.left for el in a.elements))
        for ops in enumerate_op_sequences(a, bx.domain_a, 3):
            try:
                translated, _ = bx.to(Edits(ops), ComplementTrace(c))
            except Undefined:
                continue
            a1 = apply_ops(ops, a)
            b1 = apply_ops(translated.ops, b)
            assert b1 == seq(*(el.left for el in a1.elements))
            count += 1
        if count > 4000:
            break
    assert count > 0


# -- symmetric delta-lens ------------------------------------------------------------------

def _rename_case():
    a0 = rec(p=atom(0), q=atom(1))
    b0 = rec(r=atom(0), s=atom(1))
    bx = catalog("rename-sync").bx
    trace = DeltaTrace(a0, b0, bx.default_align(a0, b0))
    return bx, a0, b0, trace


def test_rename_sync_propagates_value_change():
    bx, a0, b0, trace = _rename_case()
    a1 = rec(p=atom(1), q=atom(1))
    upd = DeltaUpdate(a0, a1, diff(a0, a1))
    out, new_trace = bx.to(upd, DeltaTrace(b0, a0, bx.default_align(a0, b0).invert()))
    assert out.pre == b0 and out.post == rec(r=atom(1), s=atom(1))
    # q was unchanged, so its correspondence survives into the new delta
    assert ((GoField("s"),), (GoField("s"),)) in out.same.links
    assert ((GoField("r"),), (GoField("r"),)) not in out.same.links
    assert new_trace.src == a1 and new_trace.tgt == out.post


def test_rename_sync_relinking_delta_propagates_relink():
    bx, a0, b0, _ = _rename_case()
    # move the value of p into q: link p -> q instead of p -> p
    a1 = rec(p=atom(1), q=atom(0))
    relink = SamenessRelation([((GoField("p"),), (GoField("q"),))])
    upd = DeltaUpdate(a0, a1, relink)
    out, _trace = bx.to(upd, DeltaTrace(b0, a0, bx.default_align(a0, b0).invert()))
    assert ((GoField("r"),), (GoField("s"),)) in out.same.links


def test_rename_sync_identity_delta_is_stable():
    bx, a0, b0, _ = _rename_case()
    upd = DeltaUpdate(a0, a0, diff(a0, a0))
    out, trace = bx.to(upd, DeltaTrace(b0, a0, bx.default_align(a0, b0).invert()))
    assert out == DeltaUpdate(b0, b0, diff(b0, b0))
    assert trace == DeltaTrace(a0, b0, bx.default_align(a0, b0))


def test_rename_sync_seam_mismatch_undefined():
    bx, a0, b0, _ = _rename_case()
    other = rec(p=atom(1), q=atom(0))
    upd = DeltaUpdate(other, other, diff(other, other))
    with pytest.raises(Undefined):
        bx.to(upd, DeltaTrace(b0, a0, bx.default_align(a0, b0).invert()))


def test_delta_update_rejects_invalid_relation_paths():
    a0 = rec(p=atom(0), q=atom(1))
    bogus = SamenessRelation([((GoField("zzz"),), ())])
    with pytest.raises(ValueError):
        DeltaUpdate(a0, a0, bogus)


# -- incidence audit across the whole catalog ----------------------------------------------

@pytest.mark.parametrize("name", catalog_names())
def test_incidence_audit_clean(name):
    verdict = audit_incidence(catalog(name).bx, LawSuiteConfig())
    assert not isinstance(verdict, Fails), verdict


def test_symmetry_derivation():
    assert catalog("fst-lens").bx.symmetry == "A"
    assert catalog("key-maintainer").bx.symmetry == "S"


def test_transformation_valued_consistency_coherence():
    # for entries whose consistency relation is the forward run itself,
    # the predicate agrees with that run on the whole domain product
    for name in ("uppercase-mapping", "embed-mapping", "fst-lens", "const-lens"):
        bx = catalog(name).bx
        assert bx.consistency_kind == "T"
        for a in enumerate_values(bx.domain_a):
            try:
                forward, _ = bx.to(PostState(a), NO_TRACE)
            except Undefined:
                forward = None
            for b in enumerate_values(bx.domain_b):
                expected = forward is not None and forward == PostState(b)
                assert bx.consistency(a, b) == expected, (name, a, b)
