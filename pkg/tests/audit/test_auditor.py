import pytest

from src.audit.auditor import BATCH_SIZE, arbitrary_families, audit_all, plan_work
from src.audit.report import reverify_report
from src.audit.results import ClaimId, Verdict
from src.config import AuditSettings
from src.errors import UniverseTooLarge

QUIET = AuditSettings(progress=False)


def test_single_family_at_one_element():
    report = audit_all(1, [ClaimId.T1], settings=QUIET)
    assert report.stats[ClaimId.T1].instances_checked == 1
    assert report.all_hold


def test_union_closed_supply_at_two_elements():
    report = audit_all(2, [ClaimId.T1], settings=QUIET)
    stats = report.stats[ClaimId.T1]
    assert stats.instances_checked == 6
    assert stats.bindings_checked == 6
    assert stats.holds == 6
    assert stats.preconditions_skipped == 0


@pytest.mark.parametrize("n, expected", [(2, 7), (3, 127)])
def test_arbitrary_supply_is_exhaustive_up_to_three(n, expected):
    report = audit_all(n, [ClaimId.L1], settings=QUIET)
    assert report.stats[ClaimId.L1].instances_checked == expected
    assert report.all_hold


def test_random_supply_beyond_three():
    settings = QUIET.override(random_families=5, seed=3)
    families = list(arbitrary_families(4, settings))
    assert len(families) == 5
    assert families == list(arbitrary_families(4, settings))


def test_plan_counts_both_supplies():
    items, total = plan_work(2, (ClaimId.L1, ClaimId.T1), QUIET)
    items = list(items)
    assert total == 6 + 7 == len(items)
    closed = [claims for _, claims in items if claims == (ClaimId.T1,)]
    assert len(closed) == 6


def test_claims_follow_canonical_order():
    report = audit_all(2, [ClaimId.T5, ClaimId.L4], settings=QUIET)
    assert report.claims == (ClaimId.L4, ClaimId.T5)


def test_digest_is_reproducible():
    claims = [ClaimId.L2, ClaimId.T2, ClaimId.T5]
    first = audit_all(3, claims, settings=QUIET)
    second = audit_all(3, claims, settings=QUIET)
    assert first.digest == second.digest
    assert len(first.digest) == 64


def test_digest_does_not_depend_on_jobs():
    claims = [ClaimId.L1, ClaimId.T1]
    serial = audit_all(3, claims, jobs=1, settings=QUIET)
    parallel = audit_all(3, claims, jobs=2, settings=QUIET)
    assert serial.digest == parallel.digest
    for claim in claims:
        assert serial.stats[claim].bindings_checked == parallel.stats[claim].bindings_checked


def test_digest_depends_on_claims():
    one = audit_all(2, [ClaimId.T1], settings=QUIET)
    other = audit_all(2, [ClaimId.T5], settings=QUIET)
    assert one.digest != other.digest


def test_batches_cover_every_family():
    # 127 arbitrary families span more than one batch
    assert 127 > BATCH_SIZE
    report = audit_all(3, [ClaimId.L3], settings=QUIET)
    assert report.stats[ClaimId.L3].instances_checked == 127


def test_every_closed_family_is_audited():
    report = audit_all(3, [ClaimId.T5], settings=QUIET)
    assert report.stats[ClaimId.T5].instances_checked == 60


def test_enumeration_limit():
    with pytest.raises(UniverseTooLarge):
        audit_all(5, [ClaimId.T1], settings=QUIET)


def test_random_families_are_nonempty():
    for family in arbitrary_families(5, QUIET.override(random_families=3)):
        assert len(family) > 0


@pytest.mark.slow
def test_contested_claims_at_four_are_deterministic():
    claims = [ClaimId.T3, ClaimId.L6, ClaimId.T4A, ClaimId.T4B, ClaimId.T5]
    serial = audit_all(4, claims, jobs=1, settings=QUIET)
    parallel = audit_all(4, claims, jobs=2, settings=QUIET)
    assert serial.digest == parallel.digest
    assert all(verdict is Verdict.FAILS for _, verdict in reverify_report(serial))
    for claim in claims:
        assert serial.stats[claim].instances_checked == 2479
