"""Defining a new transformation and letting the checker judge it.

A tiny address-book scenario: one side stores {name, phone}, the other
{name, email}.  The consistency relation demands equal names.  We write
two repair variants: a careful one that copies only the name, and a
sloppy one that also wipes the phone.  The law suite tells them apart
and hands back a replayable counterexample for the sloppy one.
"""
from bxkit import atom, atoms, rec, recs_of, make_maintainer, run_suite, classify
from bxkit.verdict import Fails

NAMES = atoms("ada", "joan")
PHONES = atoms(100, 200)
EMAILS = atoms("a@x", "j@y")

domain_a = recs_of(name=NAMES, phone=PHONES)
domain_b = recs_of(name=NAMES, email=EMAILS)


def same_name(a, b):
    return a.get("name") == b.get("name")


def careful_to(a_post, b_pre):
    return b_pre.set("name", a_post.get("name"))


def careful_from(b_post, a_pre):
    return a_pre.set("name", b_post.get("name"))


def sloppy_from(b_post, a_pre):
    return rec(name=b_post.get("name"), phone=atom(100))  # resets the phone


careful = make_maintainer("careful-sync", same_name, careful_to, careful_from, domain_a, domain_b)
sloppy = make_maintainer("sloppy-sync", same_name, careful_to, sloppy_from, domain_a, domain_b)

print("signature:", classify(careful).format())
print()

FEATURED = ("correctness", "hippocraticness", "least_update", "history_ignorance")

for bx in (careful, sloppy):
    report = run_suite(bx)
    print(f"== {bx.name} ==")
    for law in FEATURED:
        print(f"  {law:18s} from: {report.kind(law, 'from')}")
    for (law, direction), verdict in report.verdicts.items():
        if law in FEATURED and direction == "from" and isinstance(verdict, Fails):
            print("  replayable counterexample:")
            for line in verdict.counterexample.describe().splitlines():
                print("   ", line)
            break
    print()

print("the sloppy repair is still correct (it restores equal names) but it")
print("touches already-consistent pairs and over-changes, so hippocraticness")
print("and least-update call it out.")
