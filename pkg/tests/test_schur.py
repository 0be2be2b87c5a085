import itertools

import pytest

from superfit import Partition, cauchy_check, hook_schur_dim, lambda_de
from superfit.schur import (conjugate, hook_tableaux, in_hook, is_partition, partitions_of,
                            super_symmetric_dim, verify_cauchy)


def test_partition_validation():
    assert Partition([2, 1, 0]) == (2, 1)
    with pytest.raises(ValueError):
        Partition([1, 2])
    assert not is_partition((2, 0, 1))
    assert is_partition(())


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)
    assert conjugate(()) == ()


def test_lambda_de():
    assert lambda_de(1, 1) == (2, 1)
    assert lambda_de(0, 2) == (1, 1)
    assert lambda_de(2, 0) == (2,)
    assert lambda_de(1, 2).size == 5


def test_partitions_of():
    assert len(partitions_of(4)) == 5
    assert partitions_of(0) == [Partition()]
    assert partitions_of(4, max_parts=2) == [(4,), (3, 1), (2, 2)]


def test_hook_dimensions():
    assert hook_schur_dim((1, 1), 2, 0) == 1
    assert hook_schur_dim((2,), 0, 2) == 1
    assert hook_schur_dim((1, 1), 0, 2) == 3
    assert hook_schur_dim((2, 2), 1, 1) == 0
    assert hook_schur_dim((2,), 1, 1) == 2
    assert not in_hook((2, 2), 1, 1)


def test_hook_tableaux_are_counted_by_parity():
    tableaux = list(hook_tableaux(Partition((2,)), 1, 1))
    assert len(tableaux) == 2


def test_super_symmetric_dim():
    assert super_symmetric_dim(2, 2, 2) == 8
    assert super_symmetric_dim(3, 0, 2) == 0
    assert super_symmetric_dim(0, 0, 0) == 1


def test_cauchy_small():
    for t in range(4):
        assert cauchy_check(t, (1, 1), (1, 1))
        assert cauchy_check(t, (2, 0), (0, 2))
    assert verify_cauchy(4, (2, 2), (2, 2)).passed


@pytest.mark.slow
def test_cauchy_all_dims():
    report = verify_cauchy(5)
    assert report.passed, report.witnesses
    assert report.details["pairs"] == 81


def weyl_dim(lam, m):
    """Dimension of the GL(m) irreducible of highest weight ``lam``."""
    if len(lam) > m:
        return 0
    parts = list(lam) + [0] * (m - len(lam))
    numerator = denominator = 1
    for i, j in itertools.combinations(range(m), 2):
        numerator *= parts[i] - parts[j] + j - i
        denominator *= j - i
    return numerator // denominator


def test_super_duality():
    for t in range(5):
        for lam in partitions_of(t):
            for m, n in itertools.product(range(3), repeat=2):
                assert hook_schur_dim(lam, m, n) == hook_schur_dim(conjugate(lam), n, m), \
                    (lam, m, n)


def test_purely_even_dimension_is_weyl():
    assert weyl_dim((2, 1), 3) == 8
    for t in range(6):
        for lam in partitions_of(t):
            for m in range(4):
                assert hook_schur_dim(lam, m, 0) == weyl_dim(lam, m), (lam, m)
