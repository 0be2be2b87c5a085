import itertools

import pytest

from superfit import (DimensionError, DoubleTableau, Ideal, IdealMethod, LieGenerator,
                      ResourceLimitError, Side, Status, ZeroAnnihilatorError, annihilator,
                      corollary2_Z, generic_setup, ideal_contains, ideal_equal,
                      ideal_I_lambda)
from superfit.fitting import (GenericSetup, degree_shift, filtration_dim, highest_weight_vector,
                              leibniz_holds, lie_apply, lie_closure, lie_generators, pi,
                              pi_prime, random_parity_pairs, rho,
                              row_canonical_tableaux, specialize_ideal, verify_cor2,
                              verify_lemma31, verify_lie, verify_shift, verify_specialization,
                              verify_thm1a, verify_thm1b)
from superfit.schur import partitions_of

ODD_ROWS = generic_setup(0, 2, 2, 0)
MIXED_ROWS = generic_setup(1, 1, 2, 0)
SQUARE_1111 = generic_setup(1, 1, 1, 1)

SMALL_INSTANCES = [(d, e, m, n) for d, e, m, n in itertools.product(range(3), repeat=4)
                   if d + e <= 2 and m + n <= 3]


def p(setup, text):
    return setup.ring.parse(text)


def test_setup_names_and_blocks():
    assert set(SQUARE_1111.ring.names) == {"x1_1", "y1_1", "a1_1", "b1_1"}
    assert SQUARE_1111.ring.even_vars == ("x1_1", "y1_1")
    assert MIXED_ROWS.variable(1, 1) == p(MIXED_ROWS, "b1_2")
    assert GenericSetup.from_instance(SQUARE_1111.instance()).dims == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        GenericSetup(-1, 0, 1, 0)
    with pytest.raises(ValueError):
        GenericSetup(1, 0, 1, 0, 4)


def test_rho_of_a_mixed_row():
    assert rho(2, [0, 1], [0, 1], SQUARE_1111) == p(SQUARE_1111, "x1_1*y1_1 - a1_1*b1_1")
    assert rho(1, [1], [0], SQUARE_1111) == p(SQUARE_1111, "a1_1")
    with pytest.raises(DimensionError):
        rho(2, [0], [0, 1], SQUARE_1111)


def test_rho_vanishes_on_repeated_even_entries():
    assert rho(2, [0, 0], [0, 1], SQUARE_1111).is_zero()


def test_pi_with_repeated_even_column():
    tableau = DoubleTableau([[0], [0]], [[0], [1]])
    assert pi(tableau, ODD_ROWS) == p(ODD_ROWS, "2*b1_1*b2_1")


def test_double_tableau_shape():
    assert DoubleTableau([[0, 1], [0]], [[0, 1], [1]]).shape == (2, 1)
    with pytest.raises(DimensionError):
        DoubleTableau([[0, 1]], [[0]])


def test_row_canonical_tableaux():
    assert len(list(row_canonical_tableaux((1,), SQUARE_1111))) == 4
    # rows of length 2 on (1|1): (0, 1) and (1, 1)
    assert len(list(row_canonical_tableaux((2,), SQUARE_1111))) == 4


def test_highest_weight_vectors():
    assert highest_weight_vector((1,), generic_setup(1, 0, 1, 0)) == \
        p(generic_setup(1, 0, 1, 0), "x1_1")
    assert highest_weight_vector((2, 1), SQUARE_1111) == \
        p(SQUARE_1111, "x1_1^2*y1_1 - x1_1*a1_1*b1_1")
    assert highest_weight_vector((2, 2), SQUARE_1111).is_zero()


def test_ideal_methods_agree_on_exterior_minors():
    ann = annihilator(ODD_ROWS.phi)
    for method in IdealMethod:
        assert ideal_equal(ideal_I_lambda((1, 1), ODD_ROWS, method), ann), method


def test_pi_and_pi_prime_families():
    setup = generic_setup(2, 0, 2, 0)
    gens = [f(t, setup) for t in row_canonical_tableaux((2,), setup) for f in (pi, pi_prime)]
    det = p(setup, "x1_1*x2_2 - x1_2*x2_1")
    assert ideal_equal(Ideal(setup.ring, gens), Ideal(setup.ring, [det]))


def test_thm1a_small_setups():
    for setup, degrees in ((ODD_ROWS, [2, 2, 2]), (MIXED_ROWS, [3, 3, 3, 3]),
                           (SQUARE_1111, [3, 3, 3, 3])):
        report = verify_thm1a(setup)
        assert report.passed, report
        assert report.details["ann_degrees"] == degrees


def test_thm1a_classical_minors():
    for d, m in itertools.product(range(1, 3), range(4)):
        assert verify_thm1a(generic_setup(d, 0, m, 0)).passed, (d, m)


def test_characteristic_two_annihilator_is_larger():
    setup = generic_setup(1, 1, 1, 1, 2)
    report = verify_thm1a(setup)
    assert report.status == Status.MISMATCH
    assert report.details["ann_contains_fitting"]
    assert not report.details["fitting_contains_ann"]
    assert annihilator(setup.phi).contains(p(setup, "x1_1*y1_1 + a1_1*b1_1"))


def test_thm1b():
    report = verify_thm1b(SQUARE_1111, sample_cap=3)
    assert report.passed, report.witnesses
    assert report.details["checked"] > 0


def test_lie_actions_on_axy():
    axy = p(SQUARE_1111, "a1_1*x1_1*y1_1")
    v01 = LieGenerator(Side.V, 0, 1, SQUARE_1111)
    u10 = LieGenerator(Side.U, 1, 0, SQUARE_1111)
    assert lie_apply(v01, axy, SQUARE_1111) == p(SQUARE_1111, "x1_1^2*y1_1 - x1_1*a1_1*b1_1")
    assert lie_apply(u10, axy, SQUARE_1111) == p(SQUARE_1111, "x1_1*y1_1^2 + y1_1*a1_1*b1_1")
    assert v01.parity == 1
    assert repr(v01) == "v_{0,1}"


def test_lie_generators_and_closure():
    assert len(lie_generators(SQUARE_1111)) == 8
    closure = lie_closure([p(SQUARE_1111, "x1_1")], SQUARE_1111)
    assert len(closure) == 4
    with pytest.raises(DimensionError):
        LieGenerator(Side.U, 2, 0, SQUARE_1111)


def test_verify_lie():
    report = verify_lie(SQUARE_1111)
    assert report.passed, report.witnesses
    assert report.details["v01_on_axy"] and report.details["u10_on_axy"]


def test_z_elements():
    assert corollary2_Z(SQUARE_1111) == p(SQUARE_1111, "x1_1^2*y1_1 - x1_1*a1_1*b1_1")
    assert corollary2_Z(MIXED_ROWS) == p(MIXED_ROWS, "x1_1*b1_1*b1_2")
    assert corollary2_Z(ODD_ROWS) == p(ODD_ROWS, "b1_1*b2_1")
    with pytest.raises(ZeroAnnihilatorError):
        corollary2_Z(generic_setup(0, 1, 0, 0))


def test_cor2():
    for setup in (ODD_ROWS, MIXED_ROWS, SQUARE_1111):
        report = verify_cor2(setup)
        assert report.passed, report
        assert report.details["degree"] == setup.d * setup.e + setup.d + setup.e


def test_degree_shift():
    shifted, images = degree_shift(MIXED_ROWS)
    assert shifted.dims == (1, 1, 0, 2)
    assert len(images) == MIXED_ROWS.ring.nvars
    assert verify_shift(MIXED_ROWS).passed
    assert verify_shift(SQUARE_1111).passed


def test_block_automorphism_keeps_fitting_ideal():
    assert verify_lemma31(SQUARE_1111, seed=1).passed
    assert verify_lemma31(MIXED_ROWS, seed=2, lam=(1,)).passed


def test_specialization():
    report = verify_specialization(SQUARE_1111, seed=3)
    assert report.passed, report.witnesses
    assert report.claim == "spec1a"


def test_specialize_checks_blocks():
    with pytest.raises(DimensionError):
        specialize_ideal(Ideal(SQUARE_1111.ring), MIXED_ROWS.phi, SQUARE_1111)


def test_filtration():
    assert filtration_dim((1,), generic_setup(1, 0, 1, 0)) == 1
    with pytest.raises(ResourceLimitError):
        filtration_dim((3, 3), SQUARE_1111, max_size=5)


def test_exterior_minors_are_the_symmetric_products():
    b = {name: ODD_ROWS.ring.gen(name) for name in ("b1_1", "b1_2", "b2_1", "b2_2")}
    expected = Ideal(ODD_ROWS.ring, [b["b1_1"] * b["b2_1"], b["b1_2"] * b["b2_2"],
                                     (b["b1_1"] + b["b1_2"]) * (b["b2_1"] + b["b2_2"])])
    assert ideal_equal(ideal_I_lambda((1, 1), ODD_ROWS), expected)


def _contained_pairs(max_size):
    shapes = [lam for t in range(1, max_size + 1) for lam in partitions_of(t)]
    return [(lam, mu) for lam in shapes for mu in shapes if lam != mu and mu.contains(lam)]


@pytest.mark.parametrize("dims", [(2, 0, 2, 0), (1, 1, 1, 1)])
def test_larger_shapes_give_smaller_ideals(dims):
    setup = generic_setup(*dims)
    for lam, mu in _contained_pairs(3):
        assert ideal_contains(ideal_I_lambda(lam, setup), ideal_I_lambda(mu, setup)), (lam, mu)


def test_incomparable_shapes_give_incomparable_ideals():
    setup = generic_setup(2, 0, 2, 0)
    columns = ideal_I_lambda((1, 1), setup)
    minors = ideal_I_lambda((2,), setup)
    assert ideal_equal(minors, Ideal(setup.ring, [p(setup, "x1_1*x2_2 - x1_2*x2_1")]))
    assert not ideal_contains(columns, minors)
    assert not ideal_contains(minors, columns)


def test_pi_sign_follows_column_parity():
    odd_columns = generic_setup(2, 0, 0, 2)
    straight = pi(DoubleTableau([[0], [1]], [[0], [1]]), odd_columns)
    swapped = pi(DoubleTableau([[1], [0]], [[0], [1]]), odd_columns)
    assert not straight.is_zero()
    assert swapped == -straight
    even_columns = generic_setup(2, 0, 2, 0)
    straight = pi(DoubleTableau([[0], [1]], [[0], [1]]), even_columns)
    swapped = pi(DoubleTableau([[1], [0]], [[0], [1]]), even_columns)
    assert not straight.is_zero()
    assert swapped == straight


@pytest.mark.parametrize("setup", [SQUARE_1111, ODD_ROWS], ids=["1111", "0220"])
def test_closure_matches_pi_span(setup):
    for t in range(1, 4):
        for lam in partitions_of(t):
            closure = ideal_I_lambda(lam, setup, IdealMethod.CLOSURE)
            assert ideal_equal(closure, ideal_I_lambda(lam, setup, IdealMethod.PI)), lam


def test_leibniz_sign_between_odd_factors():
    v01 = LieGenerator(Side.V, 0, 1, SQUARE_1111)
    a, y = p(SQUARE_1111, "a1_1"), p(SQUARE_1111, "y1_1")
    image = lie_apply(v01, a * y, SQUARE_1111)
    assert image == p(SQUARE_1111, "x1_1*y1_1 - a1_1*b1_1")
    unsigned = lie_apply(v01, a, SQUARE_1111) * y + a * lie_apply(v01, y, SQUARE_1111)
    assert image != unsigned
    assert leibniz_holds(v01, a, y, SQUARE_1111)


def test_random_leibniz_pairs_cover_every_parity():
    pairs = random_parity_pairs(SQUARE_1111, 8, seed=4)
    assert {(f.parity(), h.parity()) for f, h in pairs} == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert pairs == random_parity_pairs(SQUARE_1111, 8, seed=4)
    for g in lie_generators(SQUARE_1111):
        for f, h in pairs:
            assert leibniz_holds(g, f, h, SQUARE_1111), (g, f, h)
    report = verify_lie(MIXED_ROWS, seed=7)
    assert report.passed, report.witnesses
    assert report.details["leibniz_pairs"] > 0


@pytest.mark.slow
def test_thm1a_sweep():
    for dims in SMALL_INSTANCES:
        assert verify_thm1a(generic_setup(*dims)).passed, dims


@pytest.mark.slow
def test_lie_invariance_sweep():
    for dims in SMALL_INSTANCES:
        report = verify_lie(generic_setup(*dims))
        assert report.details["invariant"], (dims, report.witnesses)


@pytest.mark.slow
def test_characteristic_three_exception():
    report = verify_thm1a(generic_setup(1, 2, 2, 0, 3))
    assert report.status == Status.MISMATCH


@pytest.mark.slow
def test_thm1b_sweep():
    for dims in SMALL_INSTANCES:
        if dims[0] + dims[1] == 0:
            continue
        report = verify_thm1b(generic_setup(*dims))
        assert report.passed, (dims, report.witnesses)


@pytest.mark.slow
def test_cor2_sweep():
    for d, e, m, n in itertools.product(range(4), repeat=4):
        if not 0 < d + e <= 3 or m + n > 4 or m < d or n < e:
            continue
        report = verify_cor2(generic_setup(d, e, m, n))
        assert report.passed, ((d, e, m, n), report.witnesses)


@pytest.mark.slow
@pytest.mark.parametrize("setup", [SQUARE_1111, ODD_ROWS, generic_setup(2, 0, 2, 0)],
                         ids=["1111", "0220", "2020"])
def test_closure_matches_pi_span_up_to_four_cells(setup):
    for lam in partitions_of(4):
        closure = ideal_I_lambda(lam, setup, IdealMethod.CLOSURE)
        assert ideal_equal(closure, ideal_I_lambda(lam, setup, IdealMethod.PI)), lam


@pytest.mark.slow
def test_containment_up_to_four_cells():
    for lam, mu in _contained_pairs(4):
        if mu.size < 4:
            continue
        assert ideal_contains(ideal_I_lambda(lam, SQUARE_1111),
                              ideal_I_lambda(mu, SQUARE_1111)), (lam, mu)
