"""Values, paths, finite domains, and the diff oracle.

Everything in the kernel works over one universal value model: integer
and string atoms, pairs, sequences, and records.  This walkthrough
builds a few values, addresses their components with paths, enumerates a
finite domain, and asks the diff oracle which components of two values
are the same.
"""
from bxkit import (
    atom, pair, rec, seq,
    atoms, pairs_of, recs_of, seqs_of,
    cardinality, enumerate_values,
    select, diff,
    render_value, parse_value,
)
from bxkit.values import GoField, GoIndex, RIGHT
from bxkit.grammar import render_path

print("== building values ==")
inventory = rec(name=atom("bolt"), sizes=seq(atom(4), atom(6)), spec=pair(atom(1), atom("steel")))
print("a record:", render_value(inventory))
print("round-trips:", parse_value(render_value(inventory)) == inventory)

print()
print("== paths address components ==")
path = (GoField("sizes"), GoIndex(1))
print(f"select {render_path(path)} ->", render_value(select(inventory, path)))
print(f"select /spec/right ->", render_value(select(inventory, (GoField("spec"), RIGHT))))

print()
print("== finite domains enumerate deterministically ==")
domain = recs_of(k=atoms(1, 2), u=atoms(7, 8))
print("cardinality:", cardinality(domain))
for v in enumerate_values(domain):
    print("  ", render_value(v))

print()
print("== diff aligns equal components ==")
before = pair(atom(1), atom(5))
after = pair(atom(2), atom(5))
alignment = diff(before, after)
print(f"diff({render_value(before)}, {render_value(after)}):")
for src, tgt in alignment.sorted_links():
    print(f"   {render_path(src) or '(root)'}  ~  {render_path(tgt) or '(root)'}")
print("the left atom changed and the root composite differs, so only /right aligns")

print()
print("== sequences align by longest common subsequence ==")
old_list = seq(atom(1), atom(2), atom(3))
new_list = seq(atom(2), atom(9), atom(3))
for src, tgt in diff(old_list, new_list).sorted_links():
    print(f"   {render_path(src)}  ~  {render_path(tgt)}")
