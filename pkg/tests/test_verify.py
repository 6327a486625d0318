import json

import pytest

from ggkit.partitions import FamilySpec, count_family
from ggkit.series import LaurentSeries
from ggkit.verify import (
    DegenerateIdentityError,
    build_tasks,
    multisum_lhs,
    product_rhs,
    run_suite,
    verify_bailey,
    verify_class_gf,
    verify_class_lemma,
    verify_counting,
    verify_identity,
)


def coeffs(s, n):
    return [s.coefficient(e) for e in range(n + 1)]


def test_multisum_ag_example():
    s = multisum_lhs("AG", 2, 2, 5)
    assert coeffs(s, 5) == [1, 1, 1, 1, 2, 2]
    # oracle: count partitions with adjacent-size caps and a smallest-part cap
    for n in range(6):
        assert s.coefficient(n) == count_family(FamilySpec("B", 2, 2), n)


def test_multisum_constant_below_first_term():
    assert multisum_lhs("OGG", 3, 2, 0) == LaurentSeries.one(0)
    assert multisum_lhs("BRESSOUD", 2, 1, 0) == LaurentSeries.one(0)


def test_multisum_degenerate_guard():
    with pytest.raises(DegenerateIdentityError):
        multisum_lhs("AG", 1, 1, 10)


def test_product_rhs_ogg_example():
    r = product_rhs("OGG", 2, 2, 3)
    assert coeffs(r, 3) == [1, 2, 4, 6]


def test_product_rhs_ag_is_modular_restriction():
    r = product_rhs("AG", 2, 2, 12)
    for n in range(13):
        assert r.coefficient(n) == count_family(FamilySpec("A", 2, 2), n)


def test_ogg_empty_sum_convention_at_equal_parameters():
    # at i = k the binomial factor degenerates to the constant 2; the identity
    # must still hold against both the product and the counting family
    rep = verify_identity("OGG", 2, 2, 30)
    assert rep.ok, str(rep)
    lhs = multisum_lhs("OGG", 2, 2, 12)
    for n in range(13):
        assert lhs.coefficient(n) == count_family(FamilySpec("P", 2, 2), n)


@pytest.mark.parametrize("tag", ["AG", "BRESSOUD", "OGG"])
def test_series_identities_small(tag):
    for k, i in [(2, 1), (2, 2), (3, 2)]:
        rep = verify_identity(tag, k, i, 30)
        assert rep.ok, str(rep)


def test_consistency_triangle():
    # counting series, product side and multisum all agree
    for tag, fam in (("OGG", "P"), ("BRESSOUD", "C")):
        for k, i in [(2, 1), (2, 2)]:
            prod = product_rhs(tag, k, i, 10)
            summed = multisum_lhs(tag, k, i, 10)
            assert prod == summed
            for n in range(11):
                assert prod.coefficient(n) == count_family(FamilySpec(fam, k, i), n)


def test_jtp_identity():
    rep = verify_identity("JTP", 4, 1, 200)
    assert rep.ok, str(rep)


def test_bivariate_identity_small():
    for tag in ("AG-X", "BRESSOUD-X", "OGG-X", "F-GF", "H-GF"):
        rep = verify_identity(tag, 2, 1, 14)
        assert rep.ok, str(rep)
    lhs = multisum_lhs("OGG-X", 2, 2, 10, x_tracking=True)
    for n in range(11):
        row = lhs.coefficient(n)
        assert all(m <= n for m in row)  # a part has size >= 1


def test_x_slice_counts():
    lhs = multisum_lhs("OGG-X", 2, 2, 8, x_tracking=True)
    from ggkit.partitions import count_family_bivariate

    for n in range(9):
        want = count_family_bivariate(FamilySpec("O", 2, 2), n)
        got = {m: c for m, c in lhs.coefficient(n).items() if c}
        assert got == want, n


def test_bivariate_collapses_to_univariate_multisum():
    for tag in ("AG-X", "BRESSOUD-X", "OGG-X"):
        flat = multisum_lhs(tag, 3, 2, 25, x_tracking=True).eval_x_one()
        assert flat == multisum_lhs(tag[:-2], 3, 2, 25)


def test_counting_reports():
    rep = verify_counting("T1.5", 2, 2, 10)
    assert rep.ok and rep.verdict == "pass"
    rep = verify_counting("T1.5", 1, 1, 6)
    assert rep.ok
    rep = verify_counting("T1.1", 3, 2, 12)
    assert rep.ok
    rep = verify_counting("T1.2", 4, 3, 12)
    assert rep.ok
    with pytest.raises(ValueError):
        verify_counting("T9.9", 2, 1, 5)


def test_counting_report_names_witness():
    # doctored tables must surface the first differing cell, not raise
    tables = {("O", 2, 2): {(0, 0): 1, (1, 3): 99}}
    pc = {(2, 2): [1, 0, 0, 0]}
    rep = verify_counting("T1.5", 2, 2, 3, ofh_tables=tables, p_counts=pc)
    assert not rep.ok and "n=3" in rep.detail


def test_class_gf_profile_examples(class_buckets, partition_class_buckets):
    rep = verify_class_gf((2, 1), 1, 30, "B", partition_buckets=partition_class_buckets)
    assert rep.ok, str(rep)
    rep = verify_class_gf((1,), 1, 30, "E", buckets=class_buckets)
    assert rep.ok, str(rep)
    # members of that class are the single plain even parts of size >= 4
    members = [rec.op for rec in class_buckets[(1,)] if rec.in_class("E", 2, 1)]
    assert sorted(op.weight() for op in members if op.weight() <= 10) == [4, 6, 8, 10]


def test_class_gf_zero_profile():
    rep = verify_class_gf((0, 0), 2, 10, "F")
    assert rep.ok
    rep = verify_class_gf((0,), 1, 10, "B")
    assert rep.ok


def test_class_lemmas_profile_21(class_buckets):
    for lem in ("LEM-N1", "LEM-N2"):
        rep = verify_class_lemma(lem, (2, 1), 2, 30, buckets=class_buckets)
        assert rep.ok, str(rep)


def test_verify_identity_validates_tag():
    with pytest.raises(ValueError):
        verify_identity("NOPE", 2, 1, 10)


def test_report_json_schema():
    rep = verify_identity("JTP", 2, 1, 50)
    data = rep.to_json()
    assert set(data) == {"identity", "params", "truncation", "verdict", "detail"}
    assert data["verdict"] == "pass"
    json.dumps(data)


def test_bailey_suite_reports():
    reps = verify_bailey(2, 1, 20, n_depth=4)
    assert all(r.ok for r in reps), [str(r) for r in reps if not r.ok]
    names = [r.identity for r in reps]
    assert "SEED-BETA" in names and "LIMIT" in names and "LIMIT-VS-PRODUCT" in names


def test_run_suite_counting_sequential_and_parallel():
    seq = run_suite("counting", k=2, n_max=8, jobs=1)
    par = run_suite("counting", k=2, n_max=8, jobs=2)
    assert [str(r) for r in seq] == [str(r) for r in par]
    assert all(r.ok for r in seq)


def test_build_tasks_validates_suite():
    with pytest.raises(ValueError):
        build_tasks("nonsense")
    with pytest.raises(DegenerateIdentityError):
        build_tasks("identities", k=1, i=1)
