import pytest

from superfit import (BettiTable, ConjectureReading, GradedFreeModule, Status, generic_setup,
                      predict_conjecture41, resolve, resolve_complex)
from superfit.resolution import (check_exactness, compare, euler_characteristic, format_betti,
                                 minimal_presentation, verify_conj41)
from superfit.supermodule import coker_dim, identity_matrix

BUCHSBAUM_RIM = generic_setup(2, 0, 3, 0)
SQUARE_1111 = generic_setup(1, 1, 1, 1)
RESIDUE_FIELD = generic_setup(0, 1, 1, 0)


def test_betti_table_bookkeeping():
    table = BettiTable(i_max=2)
    table.add(0, 0, 0, 2)
    table.add(1, 1, 1)
    table.add(1, 2, 0, 0)
    assert table.get(0, 0) == (2, 0)
    assert table.rank(1) == (0, 1)
    assert table.total(0) == 2
    assert table.degrees() == [0, 1]
    assert BettiTable.from_dict(table.to_dict()) == table
    with pytest.raises(ValueError):
        table.add(0, 0, 0, -1)


def test_buchsbaum_rim_betti_numbers():
    table = resolve(BUCHSBAUM_RIM.phi, i_max=3, j_max=5)
    assert table.rank(0) == (2, 0)
    assert table.rank(1) == (3, 0)
    assert table.get(2, 3) == (1, 0)
    assert table.total(3) == 0


def test_buchsbaum_rim_matches_prediction():
    actual = resolve(BUCHSBAUM_RIM.phi, i_max=2, j_max=5)
    predicted = predict_conjecture41(2, 0, 3, 0, i_max=2, j_max=5)
    report = compare(actual, predicted)
    assert report.status == Status.PASS, report.details
    assert report.claim == "conj41"


def test_identity_has_zero_resolution():
    ring = BUCHSBAUM_RIM.ring
    phi = identity_matrix(ring, GradedFreeModule(2, 0))
    assert minimal_presentation(phi).shape == (0, 0)
    table = resolve(phi)
    assert table.rank(0) == (0, 0)
    assert table.rank(1) == (0, 0)


def test_square_1111_presentation_is_minimal():
    table = resolve(SQUARE_1111.phi, i_max=1)
    assert table.get(0, 0) == (1, 1)
    assert table.get(1, 1) == (1, 1)


def test_exactness_checks():
    resolution = resolve_complex(BUCHSBAUM_RIM.phi, i_max=3, j_max=4)
    assert resolution.complete
    report = check_exactness(resolution)
    assert report.passed, report.witnesses
    for j in range(4):
        assert euler_characteristic(resolution, j) == coker_dim(BUCHSBAUM_RIM.phi, j)


def test_exterior_residue_field_resolution():
    resolution = resolve_complex(RESIDUE_FIELD.phi, i_max=3, j_max=4)
    table = resolution.betti
    assert [table.total(i) for i in range(4)] == [1, 1, 1, 1]
    assert table.get(2, 2) == (0, 1)
    assert check_exactness(resolution).passed


def test_prediction_for_residue_field():
    predicted = predict_conjecture41(0, 1, 1, 0, i_max=4)
    assert [predicted.rank(i) for i in range(5)] == [(0, 1), (1, 0), (0, 1), (1, 0), (0, 1)]
    assert predicted.degrees(3) == [3]
    assert verify_conj41(RESIDUE_FIELD, i_max=3).passed


def test_literal_reading_drops_non_partitions():
    predicted = predict_conjecture41(0, 1, 1, 0, i_max=2, reading=ConjectureReading.LITERAL)
    assert predicted.rank(2) == (0, 0)
    assert predicted.provenance[2] == []
    literal = predict_conjecture41(2, 0, 3, 0, i_max=2, reading=ConjectureReading.LITERAL)
    assert literal.rank(2) != (1, 0)


def test_compare_reports_mismatch_per_degree():
    actual = BettiTable(i_max=1, j_max=3)
    actual.add(0, 0, 0, 1)
    actual.add(1, 1, 1, 2)
    predicted = BettiTable(i_max=1, j_max=3)
    predicted.add(0, 0, 0, 1)
    predicted.add(1, 1, 0, 2)
    report = compare(actual, predicted)
    assert report.status == Status.MISMATCH
    assert report.details["degrees"]["0"]["match"]
    assert not report.details["degrees"]["1"]["match"]
    assert report.details["degrees"]["1"]["total_match"]


def test_format_betti():
    table = resolve(BUCHSBAUM_RIM.phi, i_max=2, j_max=5)
    text = format_betti(table)
    assert "2|0" in text
    assert "3|0" in text
    assert "1|0" in text
    assert text.splitlines()[0].split() == ["0", "1", "2"]


def test_pair_budget_truncates():
    resolution = resolve_complex(SQUARE_1111.phi, i_max=3, max_pairs=1)
    assert resolution.truncated
    assert resolution.betti.truncated


@pytest.mark.slow
def test_conjecture_window_for_square_instance():
    report = verify_conj41(SQUARE_1111, i_max=3)
    assert report.status in (Status.PASS, Status.MISMATCH)
    assert set(report.details["degrees"]) == {"0", "1", "2", "3"}


def test_readings_agree_on_the_first_mixed_window():
    literal = predict_conjecture41(1, 1, 2, 1, i_max=3, reading=ConjectureReading.LITERAL)
    corrected = predict_conjecture41(1, 1, 2, 1, i_max=3)
    for i in range(4):
        assert literal.rank(i) == corrected.rank(i), i
        assert literal.degrees(i) == corrected.degrees(i), i
    assert corrected.degrees(2) == [4]
    assert corrected.total(2) > 0


@pytest.mark.slow
def test_conjecture_window_for_mixed_instance():
    report = verify_conj41(generic_setup(1, 1, 2, 1), i_max=3)
    assert report.status in (Status.PASS, Status.MISMATCH)
    degrees = report.details["degrees"]
    assert set(degrees) == {"0", "1", "2", "3"}
    assert degrees["0"]["match"] and degrees["1"]["match"]
