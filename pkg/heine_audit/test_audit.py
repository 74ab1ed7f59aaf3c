#!/usr/bin/env python3
"""
Tests for the identity catalog, the verifier and golden comparisons
"""

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the project directory to path
sys.path.append(str(Path(__file__).parent))

from src.algebra.pseries import ms_coeff, ms_truncate
from src.algebra.qfield import ONE, Q, ratfun_str
from src.audit import (
    BUILDERS,
    Params,
    Status,
    Verdict,
    catalog,
    catalog_ids,
    check_builders,
    compare_with_golden,
    get_builder,
    get_identity,
    golden_from_report,
    load_golden,
    render_report,
    verify,
    verify_all,
    verify_linkage,
    write_golden,
)
from src.audit.verifier import build_side
from src.core.config import PROJECT_DIR
from src.core.errors import UsageError

GOLDEN = PROJECT_DIR / "golden" / "verdicts.yaml"
THIRD = Fraction(1, 3)


@pytest.fixture(scope="module")
def small_report():
    return verify_all(4, ids=["I1", "T6", "C2"])


@pytest.fixture(scope="module")
def golden():
    return load_golden(GOLDEN)


def test_catalog_size_and_ids():
    """Twenty-two entries in the fixed I, T, C order"""
    ids = catalog_ids()
    assert len(catalog()) == 22
    assert ids == [f"I{i}" for i in range(1, 7)] + [f"T{i}" for i in range(1, 14)] + ["C1", "C2", "C3"]


def test_builders_resolve():
    """Every tag named by the catalog has a registered builder"""
    check_builders()
    for spec in catalog():
        for tag in (spec.lhs, spec.rhs, spec.corrected_rhs):
            if tag:
                assert callable(get_builder(tag))


def test_every_builder_is_listed():
    """No registered builder is orphaned"""
    tags = {tag for spec in catalog() for tag in (spec.lhs, spec.rhs, spec.corrected_rhs) if tag}
    assert tags == set(BUILDERS)


def test_t6_is_skipped():
    """T6 is catalogued but never built"""
    spec = get_identity("T6")
    assert spec.policy == "SKIPPED"
    assert "undefined" in spec.note


def test_corrected_forms_registered():
    """Corrected closed forms exist exactly for the adjudicated entries"""
    corrected = {spec.id for spec in catalog() if spec.corrected_rhs}
    assert corrected == {"T3", "T5", "T9", "T11", "T12", "C2"}


def test_unknown_catalog_id():
    """Unknown ids and tags are usage errors"""
    with pytest.raises(UsageError):
        get_identity("T99")
    with pytest.raises(UsageError):
        get_builder("T99.lhs")


def test_grid_override():
    """Overrides touch only the parameters an entry uses, and keep k <= n where required"""
    spec = get_identity("I2")
    assert len(spec.default_grid) == 28
    assert spec.grid([2], [1, 3]) == [Params(2, 1)]
    assert get_identity("T12").grid([5], [2]) == [Params(k=2)]
    assert get_identity("C1").grid([1, 2], None) == [Params()]


def test_leibniz_entry_documents_its_seed():
    """I4 reads k as the seed of its random polynomial pair"""
    spec = get_identity("I4")
    assert "seeds" in spec.description
    assert spec.uses == ("n", "k")


def test_refuted_needs_witness():
    """A refutation without a witness is rejected by the model"""
    with pytest.raises(ValueError):
        Verdict(status=Status.REFUTED)


def test_undefined_needs_note():
    """An undefined verdict must say what is undefined"""
    with pytest.raises(ValueError):
        Verdict(status=Status.UNDEFINED)


def test_monomial_action_sum():
    """T1 at n = 2"""
    verdict, _ = verify("T1", Params(n=2), 8)
    assert verdict.status == Status.CONFIRMED


def test_q_binomial_theorem():
    """I5 at n = 3 and order 10"""
    verdict, _ = verify("I5", Params(n=3), 10)
    assert verdict.status == Status.CONFIRMED


@pytest.mark.parametrize("id,params", [
    ("I1", Params(n=4)),
    ("I2", Params(5, 2)),
    ("I3", Params(6, 4)),
    ("I3", Params(3, 3)),
    ("I4", Params(4, 2)),
    ("I6", Params(n=5)),
])
def test_preliminaries_at_order_ten(id, params):
    """Preliminary identities hold past the default order"""
    verdict, _ = verify(id, params, 10)
    assert verdict.status == Status.CONFIRMED


def test_undefined_mehler_sum():
    """T10 divides by (q^0;q)_l; the verdict note and the catalog note read as one sentence"""
    verdict, details = verify("T10", Params(1, 1), 6)
    assert verdict.status == Status.UNDEFINED
    assert verdict.note.startswith("(q^0;q)_l vanishes for l >= 1; ")
    assert verdict.note.endswith(get_identity("T10").note)
    assert "vanishes" not in get_identity("T10").note
    assert details.corrected is None


def test_skipped():
    """Skipped entries carry their reason"""
    verdict, _ = verify("T6", Params(), 8)
    assert verdict.status == Status.SKIPPED
    assert verdict.note


def test_printed_limit_refuted_at_ab():
    """C2's printed form differs at ab with coefficients -1/(1-q) and 1/(1-q)"""
    verdict, details = verify("C2", Params(), 8)
    assert verdict.status == Status.REFUTED
    assert verdict.witness.monomial == "a*b"
    assert verdict.witness.lhs == ratfun_str(-(ONE / (ONE - Q)))
    assert verdict.witness.rhs == ratfun_str(ONE / (ONE - Q))
    assert details.corrected.status == Status.CONFIRMED


@pytest.mark.parametrize("id,params", [("T3", Params(n=1)), ("T9", Params(n=2)), ("C2", Params())])
def test_witness_is_reproducible(id, params):
    """Rebuilding both sides gives back the witness coefficients"""
    verdict, _ = verify(id, params, 6)
    assert verdict.status == Status.REFUTED
    spec = get_identity(id)
    lhs, rhs = build_side(spec.lhs, params, 6), build_side(spec.rhs, params, 6)
    idx = tuple(verdict.witness.index)
    assert ratfun_str(ms_coeff(lhs, idx)) == verdict.witness.lhs
    assert ratfun_str(ms_coeff(rhs, idx)) == verdict.witness.rhs
    assert ms_coeff(lhs, idx) != ms_coeff(rhs, idx)


def test_confirmation_is_monotone_in_order():
    """A confirmation at order N holds at every lower order"""
    spec = get_identity("T2")
    lhs = get_builder(spec.lhs)(Params(n=2), 7)
    rhs = get_builder(spec.rhs)(Params(n=2), 7)
    for order in range(2, 8):
        assert ms_truncate(lhs, order) == ms_truncate(rhs, order)
        assert verify("T2", Params(n=2), order)[0].status == Status.CONFIRMED


def test_numeric_check():
    """Confirmed coefficients also agree after substituting q = 1/3"""
    verdict, _ = verify("T8", Params(n=1), 6, q_check=THIRD)
    assert verdict.status == Status.CONFIRMED
    assert verdict.numeric == "agrees at q=1/3"


def test_order_too_small():
    """Orders below 2 are rejected"""
    with pytest.raises(UsageError):
        verify("T1", Params(n=1), 1)


def test_unknown_id_in_verify():
    """verify rejects ids outside the catalog"""
    with pytest.raises(UsageError):
        verify("X1", Params(), 8)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t8_is_t2_renamed(n):
    """T8's closed form is T2's with a renamed to y"""
    assert verify_linkage("T8~T2", 8, Params(n=n)).status == Status.CONFIRMED


@pytest.mark.parametrize("k", [1, 2])
def test_t13_is_t4_renamed(k):
    """T13's closed form is T4's after renaming a, b, c, n"""
    assert verify_linkage("T13~T4", 6, Params(k=k)).status == Status.CONFIRMED


def test_unknown_linkage():
    """Only the registered linkages can be checked"""
    with pytest.raises(UsageError):
        verify_linkage("T1~T2", 6, Params(n=1))


def test_summary_partitions_entries(small_report):
    """Every entry is counted under exactly one status"""
    s = small_report.summary
    assert s["CONFIRMED"] + s["REFUTED"] + s["UNDEFINED"] + s["SKIPPED"] == s["total"] == len(small_report.entries)
    assert s["SKIPPED"] == 1


def test_sorted_by_catalog_then_params(small_report):
    """Entries sort by catalog position, then by parameters"""
    keys = [(e.id, e.params.get("n", -1)) for e in small_report.entries]
    assert keys[:7] == [("I1", n) for n in range(7)]
    assert keys[-2:] == [("T6", -1), ("C2", -1)]


def test_report_is_deterministic(small_report):
    """A process pool run renders the same report as a serial one"""
    again = verify_all(4, ids=["I1", "T6", "C2"], workers=2)
    first = render_report(small_report.strip_volatile(), "json")
    assert first == render_report(again.strip_volatile(), "json")


def test_formats_carry_same_verdicts(small_report):
    """JSON, CSV and text report the same statuses"""
    data = json.loads(render_report(small_report, "json"))
    statuses = [e["verdict"]["status"] for e in data["entries"]]
    csv_rows = list(csv.reader(io.StringIO(render_report(small_report, "csv"))))[1:]
    assert [row[3] for row in csv_rows] == statuses
    text = render_report(small_report, "text")
    assert "REFUTED" in text and "a*b" in text
    assert "SKIPPED" in text


def test_unknown_format(small_report):
    """Unsupported report formats are usage errors"""
    with pytest.raises(UsageError):
        render_report(small_report, "xml")


def test_committed_golden_covers_default_grid(golden):
    """The golden file has one entry per default grid point at order 8"""
    assert golden.order == 8
    assert len(golden.entries) == sum(len(spec.default_grid) for spec in catalog())


def test_missing_golden_file(tmp_path):
    """A missing golden file loads as None"""
    assert load_golden(tmp_path / "absent.yaml") is None


def test_golden_round_trip_and_deviation(tmp_path):
    """A written golden file matches its own run and flags a changed status"""
    report = verify_all(8, ids=["C1", "C2"])
    path = tmp_path / "golden.yaml"
    write_golden(report, path)
    written = load_golden(path)
    assert written == golden_from_report(report)
    assert compare_with_golden(report, written) == []

    written.entries[0].status = Status.REFUTED
    deviations = compare_with_golden(report, written)
    assert len(deviations) == 1 and deviations[0].id == "C1"


def test_other_orders_cannot_deviate(golden):
    """Golden verdicts only bind runs at their own order"""
    report = verify_all(4, ids=["C2"])
    assert compare_with_golden(report, golden) == []


@pytest.mark.parametrize("id", catalog_ids())
def test_default_grid_matches_golden_with_numeric_check(id, golden):
    """Each entry at order 8 matches the golden file, and every confirmation also agrees at q = 1/3"""
    report = verify_all(8, ids=[id], q_check=THIRD)
    assert len(report.entries) == len(get_identity(id).default_grid)
    assert compare_with_golden(report, golden) == []
    for entry in report.entries:
        for verdict in (entry.verdict, entry.corrected):
            if verdict is not None and verdict.status == Status.CONFIRMED:
                assert verdict.numeric is not None and verdict.numeric.startswith("agrees"), (entry.id, entry.params)


@pytest.mark.parametrize("id", ["T4", "T7", "T13", "C3"])
def test_closed_forms_confirmed_on_whole_grid(id):
    """Entries whose printed form is right are confirmed at every default grid point"""
    report = verify_all(8, ids=[id])
    assert {entry.verdict.status for entry in report.entries} == {Status.CONFIRMED}
