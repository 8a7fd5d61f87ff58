"""Smoke test for the pysparemine extension.

Build and run from the repository root:

    cargo build -p pysparemine --release --features extension-module
    python3 python/smoke_test.py

The script copies target/release/libpysparemine.so next to itself as
pysparemine.so when no importable module is found.
"""

import json
import os
import shutil
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)


def locate():
    target = os.path.join(HERE, "pysparemine.so")
    built = os.path.join(ROOT, "target", "release", "libpysparemine.so")
    if os.path.exists(built):
        shutil.copyfile(built, target)
    sys.path.insert(0, HERE)


locate()
import pysparemine  # noqa: E402

NINE_TX = "A,B,C\nA,D\nB,E\nA,C\nA,C,D\nA,B,C,D\nA,B,C\nB,D\nA,B,C,D\n"


def main():
    db = pysparemine.TransactionDb.from_basket(NINE_TX)
    assert len(db) == 9 and db.n_items == 5
    assert db.item_supports() == {"A": 7, "B": 6, "C": 6, "D": 5, "E": 1}
    assert abs(db.confidence(["A"], ["B"]) - 4 / 7) < 1e-12

    b = db.build(4)
    assert b.minsup_resolved == 4
    assert b.header() == [("A", 7), ("B", 4), ("C", 4), ("D", 1)]
    assert b.spare() == {"B": 2, "C": 2, "D": 4}
    assert b.ancestor_items("C") == ["B", "A"]

    mined = {(",".join(items), f) for items, f in b.mine()}
    assert mined == {
        ("A", 7), ("B", 4), ("A,B", 4), ("C", 4), ("A,C", 4),
        ("B,C", 4), ("A,B,C", 4), ("D", 5), ("A,D", 5),
    }, mined

    rules = b.rules(0.6)
    assert sum(1 for r in rules if r[4]) == 11

    exact = {(",".join(i), s) for i, s in db.apriori(4)}
    assert exact == {(",".join(i), s) for i, s in db.fpgrowth(4)}

    report = json.loads(b.validate())
    assert report["itemset_precision"] == 1.0
    assert len(report["frequency_deltas"]) == 4

    try:
        db.build(0)
    except ValueError:
        pass
    else:
        raise AssertionError("minsup 0 accepted")

    print("pysparemine smoke test passed")


if __name__ == "__main__":
    main()
