"""A classic lens, its round-trip laws, and what the checker sees.

The left-projection lens exposes the first component of a pair as the
view.  Running it through the generic interface shows how the forward
call synthesizes the trace the backward call needs, and how the law
suite turns GetPut/PutGet/PutPut into verdicts.
"""
from bxkit import PostState, StateTrace, NoTrace, catalog, run_suite
from bxkit.grammar import render_trace, render_update
from bxkit.values import atom, pair

lens = catalog("fst-lens").bx

print("== one forward call ==")
source = pair(atom(2), atom(5))
view, trace = lens.to(PostState(source), NoTrace())
print("to  state{post=(2, 5)}  ->", render_update(view), "with trace", render_trace(trace))

print()
print("== one backward call ==")
new_source, _ = lens.from_(PostState(atom(9)), trace)
print("from state{post=9}      ->", render_update(new_source))

print()
print("== the round-trip laws by hand ==")
restored, _ = lens.from_(view, StateTrace(source))
print("GetPut: putting back the unchanged view restores the source:", restored.post == source)
got, _ = lens.to(new_source, NoTrace())
print("PutGet: reading after a put sees the written view:", got.post == atom(9))

print()
print("== the same laws, checked bounded-exhaustively ==")
report = run_suite(lens)
for law in ("stability", "invertibility", "history_ignorance", "undoability", "totality"):
    print(f"  {law:18s} to: {report.kind(law, 'to'):16s} from: {report.kind(law, 'from')}")
print()
print("backward stability is GetPut and backward invertibility is PutGet;")
print("the forward direction cannot even state them: a post-state-only")
print("update with no trace carries no pre-state to compare against.")
