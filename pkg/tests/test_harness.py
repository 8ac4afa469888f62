"""Corpus enumeration and the verification checks on small corpora."""

import json

import pytest

from absplit.groups import group
from absplit.harness import (
    CHECKS,
    Corpus,
    check_csip,
    check_semis,
    check_socrad,
    check_tds,
    check_tdsprerad,
    check_tendab,
    check_thomzero,
    check_tkey,
    check_trel,
    classify_rows,
    cyclic_pq_classification,
    enumerate_groups,
    groups_of_order,
    partitions,
    run_verification,
    torsion_split_samples,
    worked_examples_report,
)
from absplit.splitness import Caps


def partition_count_pentagonal(n):
    """Independent partition counter (Euler's pentagonal recurrence)."""
    p = [1] + [0] * n
    for i in range(1, n + 1):
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > i and g2 > i:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= i:
                p[i] += sign * p[i - g1]
            if g2 <= i:
                p[i] += sign * p[i - g2]
            k += 1
    return p[n]


def test_partitions_examples():
    assert partitions(0) == [()]
    assert len(partitions(3)) == 3
    assert len(partitions(5)) == partition_count_pentagonal(5) == 7


def test_groups_of_order_examples():
    assert len(groups_of_order(1)) == 1
    assert [g.factors for g in groups_of_order(8)] == [(2, 2, 2), (2, 4), (8,)]
    assert len(groups_of_order(36)) == 4


def test_corpus_counts_match_partition_formula():
    from absplit.intmat import prime_factors
    from math import prod

    for n in range(1, 65):
        expected = prod(
            partition_count_pentagonal(e) for e in prime_factors(n).values()
        ) if n > 1 else 1
        got = groups_of_order(n)
        assert len(got) == expected, n
        # canonical, duplicate-free, right order
        assert len({g.factors for g in got}) == len(got)
        for g in got:
            assert g.order == n


def test_corpus_complete():
    c = enumerate_groups(16)
    assert all(g.order <= 16 for g in c)
    assert len(c.groups) == sum(len(groups_of_order(n)) for n in range(1, 17))


CAPS = Caps()


def test_check_tkey_small():
    rep = check_tkey(enumerate_groups(16), CAPS)
    assert rep.passed and rep.instances > 100
    assert not rep.skipped


def test_check_tkey_records_budget_skips():
    rep = check_tkey(Corpus(32, (group(2, 2, 2, 2, 2),)), CAPS)
    assert rep.passed
    assert rep.skipped and "exceeds hom budget" in rep.skipped[0]["reason"]


def test_check_trel_small():
    rep = check_trel(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 50


def test_check_tendab_small():
    rep = check_tendab(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 50


def test_check_csip_small():
    rep = check_csip(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 50


def test_check_tds_small():
    rep = check_tds(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 200


def test_check_thomzero_small():
    rep = check_thomzero(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 10
    assert len(rep.expected_failures) == 3
    assert not rep.expected_failure_misses


def test_check_tdsprerad_small():
    rep = check_tdsprerad(enumerate_groups(12), CAPS)
    assert rep.passed and rep.instances > 50
    # instances whose SIP hypothesis fails are recorded, never silently dropped
    assert all("reason" in s for s in rep.skipped)


def test_check_semis_small():
    rep = check_semis(enumerate_groups(12), CAPS, max_n=12)
    assert rep.passed
    bad_ns = {e["n"] for e in rep.expected_failures}
    assert bad_ns == {4, 8, 9, 12}
    assert all(e["witness_group"] in ("Z/4", "Z/9") for e in rep.expected_failures)


def test_check_socrad_small():
    rep = check_socrad(enumerate_groups(16), CAPS)
    assert rep.passed and rep.instances > 50


def test_run_verification_unknown_id():
    with pytest.raises(KeyError):
        run_verification(6, ["nope"])


def test_run_verification_deterministic():
    r1 = run_verification(10, ["tkey", "csip", "socrad"], CAPS)
    r2 = run_verification(10, ["tkey", "csip", "socrad"], CAPS)

    def strip(doc):
        if isinstance(doc, dict):
            return {k: strip(v) for k, v in doc.items() if k != "elapsed_s"}
        if isinstance(doc, list):
            return [strip(x) for x in doc]
        return doc

    assert json.dumps(strip(r1), sort_keys=True) == json.dumps(strip(r2), sort_keys=True)
    assert r1["passed"]
    assert set(r1["corpus_spec"]) == {"max_order", "group_count"}
    assert {t["theorem"] for t in r1["theorems"]} == {"tkey", "csip", "socrad"}


def test_report_schema():
    rep = check_tkey(enumerate_groups(6), CAPS).to_dict()
    assert set(rep) == {
        "theorem", "instances", "failures", "skipped", "expected_failures",
        "expected_failure_misses", "notes", "passed", "elapsed_s",
    }
    json.dumps(rep)  # serializable


# --- classification tables ------------------------------------------------------


def test_classify_rows_z12():
    rows, notes = classify_rows(group(4, 3))
    assert len(rows) == 6 and not notes
    by_order = {r["order"]: r for r in rows}
    assert by_order[4]["self_F_split"] == "yes"
    assert by_order[4]["strongly"] == "yes"
    assert by_order[12]["self_F_split"] == "yes"
    assert by_order[1]["dual_self_F_split"] == "yes"
    assert by_order[3]["dual_strongly"] == "yes"
    assert by_order[2]["self_F_split"] == "no"
    assert all(r["fully_invariant"] for r in rows)
    assert all(r["deciding_mode"] == "brute+theorem" for r in rows)


def test_classify_rows_infinite():
    rows, notes = classify_rows(group(2, 0))
    assert notes
    assert all(r["deciding_mode"] == "theorem" for r in rows)
    torsion_row = next(r for r in rows if r["order"] == 2)
    assert torsion_row["self_F_split"] == "yes"
    assert torsion_row["strongly"] == "yes"
    assert "torsion" in torsion_row["preradicals"]


def test_classify_rows_cap_exceeded_is_marked():
    rows, notes = classify_rows(group(2, 2), Caps(subgroup_cap=2))
    assert notes and "caps" in notes[0]
    assert rows


# --- worked examples ----------------------------------------------------------------


def test_cyclic_pq_classification():
    t = cyclic_pq_classification(2, 3)
    assert t["group"] == "Z/12"
    assert t["subgroup_orders"] == [1, 2, 3, 4, 6, 12]
    assert t["primal_strongly_yes_orders"] == [4, 12]
    assert t["dual_strongly_yes_orders"] == [1, 3]
    assert t["matches"]["primal_stated"] and t["matches"]["dual_engine"]
    assert not t["matches"]["dual_stated"]
    assert {d["order"] for d in t["discrepancies"]} == {1, 12}
    with pytest.raises(ValueError):
        cyclic_pq_classification(2, 2)
    with pytest.raises(ValueError):
        cyclic_pq_classification(4, 3)


def test_torsion_split_samples():
    samples = torsion_split_samples(max_torsion_order=4, max_rank=2)
    for s in samples:
        assert s["self_split"] == "yes"
        assert (s["strongly"] == "yes") == (s["free_rank"] <= 1)
        if s["free_rank"] == 2:
            assert s["witness_found"]
        if s["free_rank"] == 1:
            assert not s["witness_found"]


def test_worked_examples_report_passes():
    rep = worked_examples_report(pq_pairs=((2, 3),))
    assert rep["passed"]
    json.dumps(rep)
