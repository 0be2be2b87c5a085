"""Partitions and hook (super) Schur combinatorics."""
import logging
from functools import lru_cache
from itertools import product
from math import comb

from superfit.report import Report, Status

logger = logging.getLogger(__name__)


class Partition(tuple):
    """
    A weakly decreasing tuple of positive integers

    Parameters
    ----------
    parts : iterable of int
        the parts; trailing zeros are dropped
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError("Partition parts have to be positive, got %r" % (parts,))
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("Partition parts have to be weakly decreasing, got %r" % (parts,))
        return super().__new__(cls, parts)

    def __repr__(self):
        return "Partition(%s)" % list(self)

    @property
    def size(self):
        return sum(self)

    def part(self, i):
        """The ``i``-th part (0-based), 0 beyond the length."""
        return self[i] if i < len(self) else 0

    def conjugate(self):
        return conjugate(self)

    def contains(self, other):
        """True when the diagram of ``other`` fits inside this one."""
        other = Partition(other)
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def cells(self):
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j


def is_partition(parts):
    parts = tuple(parts)
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def lambda_de(d, e):
    """The shape ``((d+1)^e, d)``: a ``(d+1) x (e+1)`` rectangle minus its corner box."""
    if d < 0 or e < 0:
        raise ValueError("The values of 'd' and 'e' can't be negative")
    return Partition((d + 1,) * e + (d,))


def partitions_of(t, max_parts=None, max_part=None):
    """
    All partitions of ``t``, largest first in lexicographic order

    Parameters
    ----------
    t : int
    max_parts : int, optional
        bound on the number of parts
    max_part : int, optional
        bound on the size of each part

    Returns
    -------
    list of superfit.Partition
    """
    if t < 0:
        return []
    out = []

    def extend(prefix, remaining, cap):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if max_parts is not None and len(prefix) >= max_parts:
            return
        for p in range(min(remaining, cap), 0, -1):
            extend(prefix + [p], remaining - p, p)

    extend([], t, t if max_part is None else max_part)
    return out


def _hook_cells(lam):
    return [(i, j) for i, row in enumerate(lam) for j in range(row)]


def hook_tableaux(lam, m, n):
    """
    Generate the ``(m|n)`` hook semistandard tableaux of shape ``lam``

    Letters ``0..m-1`` are unprimed and ``m..m+n-1`` primed.  Unprimed letters
    weakly increase along rows and strictly down columns; primed letters
    strictly increase along rows and weakly down columns.

    Yields
    ------
    dict
        ``{(row, column): letter}``
    """
    lam = Partition(lam)
    cells = _hook_cells(lam)
    letters = m + n
    filling = {}

    def fill(k):
        if k == len(cells):
            yield dict(filling)
            return
        i, j = cells[k]
        left = filling.get((i, j - 1))
        up = filling.get((i - 1, j))
        for a in range(letters):
            if left is not None and (a < left or (a == left and a >= m)):
                continue
            if up is not None and (a < up or (a == up and a < m)):
                continue
            filling[(i, j)] = a
            yield from fill(k + 1)
            del filling[(i, j)]

    yield from fill(0)


@lru_cache(maxsize=None)
def hook_schur_parity_dims(lam, m, n):
    """Counts of hook tableaux with an even and with an odd number of primed letters."""
    counts = [0, 0]
    for tab in hook_tableaux(lam, m, n):
        counts[sum(1 for a in tab.values() if a >= m) & 1] += 1
    return tuple(counts)


def in_hook(lam, m, n):
    """True when the diagram of ``lam`` fits in the ``(m|n)`` hook."""
    return Partition(lam).part(m) <= n


def hook_schur_dim(lam, m, n):
    """Dimension of the Schur functor of shape ``lam`` on a super space of dimension ``(m|n)``."""
    lam = Partition(lam)
    if not in_hook(lam, m, n):
        return 0
    return sum(hook_schur_parity_dims(lam, m, n))


def super_symmetric_dim(t, even, odd):
    """Dimension of the degree ``t`` part of the free super-commutative algebra."""
    return sum(comb(even + t - k - 1, t - k) * comb(odd, k) if even else int(t == k) * comb(odd, k)
               for k in range(min(t, odd) + 1))


def cauchy_check(t, v_dims, u_dims):
    """
    Compare both sides of the super Cauchy decomposition in degree ``t``

    Parameters
    ----------
    t : int
    v_dims : (int, int)
        even and odd dimension of V
    u_dims : (int, int)
        even and odd dimension of U

    Returns
    -------
    bool
    """
    m, n = v_dims
    d, e = u_dims
    lhs = super_symmetric_dim(t, m * d + n * e, m * e + n * d)
    rhs = sum(hook_schur_dim(lam, m, n) * hook_schur_dim(lam, d, e) for lam in partitions_of(t))
    if lhs != rhs:
        logger.warning("Cauchy mismatch in degree %d for V=%s, U=%s: %d != %d",
                       t, v_dims, u_dims, lhs, rhs)
    return lhs == rhs


def verify_cauchy(t_max, v_dims=None, u_dims=None, max_dim=2):
    """
    Cauchy identity through degree ``t_max``

    With ``v_dims`` and ``u_dims`` given, checks that pair only; otherwise every
    pair with all four dimensions at most ``max_dim``.

    Returns
    -------
    superfit.Report
    """
    if t_max < 0:
        raise ValueError("The value of 't_max' can't be negative")
    if (v_dims is None) != (u_dims is None):
        raise ValueError("'v_dims' and 'u_dims' have to be given together")
    if v_dims is None:
        dims = [((m, n), (d, e)) for m, n, d, e in product(range(max_dim + 1), repeat=4)]
        instance = {"max_dim": max_dim}
    else:
        dims = [(tuple(v_dims), tuple(u_dims))]
        instance = {"d": u_dims[0], "e": u_dims[1], "m": v_dims[0], "n": v_dims[1]}
    failures = ["t=%d V=%s U=%s" % (t, v, u)
                for v, u in dims for t in range(t_max + 1) if not cauchy_check(t, v, u)]
    return Report("cauchy", instance, Status.FAIL if failures else Status.PASS,
                  witnesses=failures, details={"t_max": t_max, "pairs": len(dims)})
