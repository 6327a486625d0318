"""Acceptance suite: every criterion at its stated bound, exact arithmetic,
zero tolerance.  Each test prints one pass/fail line (run with -s to see them
as they complete)."""

import time

from worked_examples import GORDON_EXAMPLE, MARKING_EXAMPLES, STEP_EXAMPLES, TYPE_EXAMPLES

from ggkit.bijections import lambda_step, phi_step, psi_step, theta_step
from ggkit.marking import gg_mark, gordon_mark
from ggkit.partitions import (
    FamilySpec,
    Overpartition,
    enumerate_overpartitions,
    family_counts_by_n,
    satisfies_family,
)
from ggkit.verify import (
    verify_bailey,
    verify_bijections,
    verify_class_gf,
    verify_class_lemma,
    verify_counting,
    verify_identity,
)

PAIRS4 = [(k, i) for k in range(1, 5) for i in range(1, k + 1)]


def _report(name: str, ok: bool, extra: str = "") -> None:
    tail = f" {extra}" if extra else ""
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, name


def test_criterion_1_overpartition_counting(ofh_tables_40, p_counts_25):
    t0 = time.time()
    ok = True
    for (k, i) in PAIRS4:
        rep = verify_counting("T1.5", k, i, 25, ofh_tables=ofh_tables_40, p_counts=p_counts_25)
        ok = ok and rep.ok
        if not rep.ok:
            print(rep)
    o_cell = family_counts_by_n(ofh_tables_40[("O", 2, 2)], 3)[3]
    p_cell = p_counts_25[(2, 2)][3]
    ok = ok and o_cell == 6 and p_cell == 6
    _report("1 (counting equality, k<=4, n<=25; hand cell 6=6)", ok,
            f"[{time.time() - t0:.1f}s]")


def test_criterion_2_partition_counting(partition_tables_40):
    ok = True
    for (k, i) in PAIRS4:
        for theorem in ("T1.1", "T1.2"):
            rep = verify_counting(theorem, k, i, 25, partition_tables=partition_tables_40)
            ok = ok and rep.ok
            if not rep.ok:
                print(rep)
    _report("2 (classical counting equalities, k<=4, n<=25)", ok)


def test_criterion_3_series_identities():
    ok = True
    for k in range(2, 5):
        for i in range(1, k + 1):
            for tag in ("AG", "BRESSOUD", "OGG"):
                rep = verify_identity(tag, k, i, 60)
                ok = ok and rep.ok
                if not rep.ok:
                    print(rep)
    _report("3 (series identities at T=60, exact)", ok)


def test_criterion_4_bivariate_identities(ofh_tables_40, partition_tables_40):
    fam = {"AG-X": "B", "BRESSOUD-X": "C", "OGG-X": "O", "F-GF": "F", "H-GF": "H"}
    ok = True
    for k in range(2, 4):
        for i in range(1, k + 1):
            for tag, f in fam.items():
                tables = partition_tables_40 if f in "BC" else ofh_tables_40
                rep = verify_identity(tag, k, i, 40, counts=tables[(f, k, i)])
                ok = ok and rep.ok
                if not rep.ok:
                    print(rep)
    _report("4 (bivariate identities at T=40, full x resolution)", ok)


def _profiles(k):
    if k == 2:
        return [(a,) for a in range(4)]
    if k == 3:
        return [(a, b) for a in range(4) for b in range(a + 1)]
    return [(a, b, c) for a in range(4) for b in range(a + 1) for c in range(b + 1)]


def test_criterion_5_class_generating_functions(class_buckets, partition_class_buckets):
    ok = True
    n = 0
    for k in (2, 3, 4):
        for prof in _profiles(k):
            for i in range(1, k + 1):
                for cls in "BEGF":
                    rep = verify_class_gf(prof, i, 30, cls, buckets=class_buckets,
                                          partition_buckets=partition_class_buckets)
                    n += 1
                    ok = ok and rep.ok
                    if not rep.ok:
                        print(rep)
                for lem in ("LEM-N1", "LEM-N2"):
                    rep = verify_class_lemma(lem, prof, i, 30, buckets=class_buckets)
                    n += 1
                    ok = ok and rep.ok
                    if not rep.ok:
                        print(rep)
    _report("5 (class generating functions, N1<=3, k<=4, T=30)", ok, f"[{n} checks]")


def test_criterion_6_bijection_suite():
    ok = True
    for (p, a, b) in STEP_EXAMPLES:
        a, b = Overpartition.from_text(a), Overpartition.from_text(b)
        ok = ok and phi_step(a, p) == b and psi_step(b, p) == a
    for (p, a, b) in TYPE_EXAMPLES:
        a, b = Overpartition.from_text(a), Overpartition.from_text(b)
        ok = ok and theta_step(a, p) == b and lambda_step(b, p) == a
    checks = 0
    for k in range(1, 4):
        for i in range(1, k + 1):
            rep = verify_bijections(k, i, 18)
            ok = ok and rep.ok
            if not rep.ok:
                print(rep)
            else:
                checks += int(rep.detail.split()[0])
    _report("6 (bijection roundtrips and weight laws, n<=18, k<=3)", ok,
            f"[{checks} roundtrip checks]")


def test_criterion_7_bailey_chain():
    ok = True
    for k in range(2, 5):
        for i in range(1, k):
            reps = verify_bailey(k, i, 40, n_depth=6)
            for rep in reps:
                ok = ok and rep.ok
                if not rep.ok:
                    print(rep)
    _report("7 (pair chains: relations at n<=6, seed form, limit at T=40)", ok)


def test_criterion_8_triple_product():
    ok = True
    for k in range(1, 6):
        for i in range(1, k + 1):
            rep = verify_identity("JTP", k, i, 200)
            ok = ok and rep.ok
            if not rep.ok:
                print(rep)
    _report("8 (theta sum = triple product at T=200, k<=5)", ok)


def test_criterion_9_structural_invariants():
    ok = True
    for text, marks, rows in MARKING_EXAMPLES:
        m = gg_mark(Overpartition.from_text(text))
        ok = ok and m.marks == marks and m.row_counts() == rows
    parts, marks = GORDON_EXAMPLE
    ok = ok and gordon_mark(parts) == marks
    for n in range(21):
        for op in enumerate_overpartitions(n):
            m = gg_mark(op)
            rows = m.row_counts()
            if any(rows[j] < rows[j + 1] for j in range(len(rows) - 1)):
                print(f"row monotonicity broken at {op!r}")
                ok = False
            fb = op.freq_table().fbar(1) + op.freq_table().f(2)
            for k in range(1, 5):
                for i in range(1, k + 1):
                    lhs = satisfies_family(op, FamilySpec("O", k, i))
                    rhs = fb <= i - 1 and len(rows) <= k - 1
                    if lhs != rhs:
                        print(f"marking equivalence broken at {op!r} k={k} i={i}")
                        ok = False
            if op.parts and all(not p.overlined and p.size % 2 == 0 for p in op.parts):
                if gordon_mark(tuple(p.size // 2 for p in op.parts)) != m.marks:
                    print(f"doubling mark agreement broken at {op!r}")
                    ok = False
    _report("9 (row monotonicity, marking equivalence, doubling marks, n<=20)", ok)
