"""The generic super matrix and its representation-theoretic Fitting ideals.

A :class:`GenericSetup` fixes ordered bases of ``V = V0 + V1`` (index ``k``,
``k < m`` even) and ``U = U0 + U1`` (index ``i``, ``i < d`` even).  The generic
map has the variable ``v_k (x) u_i`` in row ``i`` and column ``k``, so its blocks
read ``(X A; B Y)``.
"""
import itertools
import logging
import random
from collections import deque
from enum import Enum
from functools import reduce
from operator import mul

from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex
from sympy.utilities.iterables import multiset_permutations

from superfit.errors import DimensionError, ResourceLimitError, ZeroAnnihilatorError
from superfit.groebner import Ideal, ideal_contains, minimal_generators
from superfit.linalg import VectorSpan
from superfit.report import Report, Status
from superfit.schur import Partition, conjugate, in_hook, lambda_de, partitions_of
from superfit.superpoly import SuperPoly, SuperRing, mono_product, random_poly, substitute
from superfit.supermodule import (GradedFreeModule, GradedMatrix, annihilates, annihilator,
                                  compose, image_gb)

logger = logging.getLogger(__name__)


class GenericSetup:
    """
    Ring ``S(V (x) U)`` and the tautological map for dimensions ``(d|e)`` and ``(m|n)``

    Parameters
    ----------
    d, e : int
        even and odd dimension of ``U`` (rows of the generic matrix)
    m, n : int
        even and odd dimension of ``V`` (columns of the generic matrix)
    characteristic : int, optional
        0 or a prime
    """

    def __init__(self, d, e, m, n, characteristic=0):
        for name, value in (("d", d), ("e", e), ("m", m), ("n", n)):
            if not isinstance(value, int) or value < 0:
                raise ValueError("The value of '%s' has to be a non-negative integer" % name)
        self.d, self.e, self.m, self.n = d, e, m, n
        self.characteristic = characteristic
        evens, odds = [], []
        for i in range(d + e):
            for k in range(m + n):
                name = self.variable_name(k, i)
                (odds if self.v_parity(k) ^ self.u_parity(i) else evens).append(name)
        # x block before y block, a block before b block
        evens.sort(key=lambda s: s[0] == "y")
        odds.sort(key=lambda s: s[0] == "b")
        self.ring = SuperRing(evens, odds, characteristic)
        self._index = {}
        for i in range(d + e):
            for k in range(m + n):
                self._index[(k, i)] = self.ring.index(self.variable_name(k, i))
        self.phi = GradedMatrix(
            self.ring, GradedFreeModule(d, e), GradedFreeModule(m, n, [1] * (m + n)),
            [[self.variable(k, i) for k in range(m + n)] for i in range(d + e)])

    @property
    def dims(self):
        return self.d, self.e, self.m, self.n

    @property
    def lambda_de(self):
        return lambda_de(self.d, self.e)

    def v_parity(self, k):
        return int(k >= self.m)

    def u_parity(self, i):
        return int(i >= self.d)

    def variable_name(self, k, i):
        """``x``, ``a``, ``b`` or ``y`` with 1-based block indices (row, column)."""
        d, m = self.d, self.m
        if i < d:
            return "x%d_%d" % (i + 1, k + 1) if k < m else "a%d_%d" % (i + 1, k - m + 1)
        return "b%d_%d" % (i - d + 1, k + 1) if k < m else "y%d_%d" % (i - d + 1, k - m + 1)

    def var_index(self, k, i):
        try:
            return self._index[(k, i)]
        except KeyError:
            raise DimensionError("No variable for V index %d and U index %d in %r"
                                 % (k, i, self)) from None

    def variable(self, k, i):
        return self.ring.gen(self.var_index(k, i))

    def instance(self):
        return {"d": self.d, "e": self.e, "m": self.m, "n": self.n,
                "char": self.characteristic}

    @classmethod
    def from_instance(cls, data):
        return cls(data["d"], data["e"], data["m"], data["n"], data.get("char", 0))

    def __repr__(self):
        return "GenericSetup(d=%d, e=%d, m=%d, n=%d, char=%d)" % (
            self.d, self.e, self.m, self.n, self.characteristic)


def generic_setup(d, e, m, n, characteristic=0):
    return GenericSetup(d, e, m, n, characteristic)


# ---- signs ---

def _matching(original, arranged):
    """Original position of every arranged entry; equal entries keep their order."""
    slots = {}
    for pos, x in enumerate(original):
        slots.setdefault(x, deque()).append(pos)
    return [slots[x].popleft() for x in arranged]


def _inversion_sign(perm, items, odd, exterior):
    # a swap of two entries costs -1 when both are odd (symmetric tensors)
    # or when not both are odd (super exterior powers)
    sign = 1
    for j, l in itertools.combinations(range(len(perm)), 2):
        if perm[j] > perm[l]:
            if (odd(items[perm[j]]) and odd(items[perm[l]])) != exterior:
                sign = -sign
    return sign


def _repeats_even(row, odd):
    return any(a == b and not odd(a) for a, b in itertools.combinations(row, 2))


def _ordered_product(ring, variables):
    """Sign and monomial of the product of ``variables`` in the given order, or None."""
    sign, mono = 1, ring.unit_mono
    for v in variables:
        r = mono_product(mono, ring.var_mono(v), ring.n_even)
        if r is None:
            return None
        sign *= r[0]
        mono = r[1]
    return sign, mono


# ---- tableaux and the maps rho, pi ---

class DoubleTableau:
    """
    Two fillings of one Young diagram: ``S`` by V-basis indices, ``T`` by U-basis indices

    Parameters
    ----------
    s_rows : sequence of sequence of int
    t_rows : sequence of sequence of int
    """

    def __init__(self, s_rows, t_rows):
        self.S = tuple(tuple(r) for r in s_rows)
        self.T = tuple(tuple(r) for r in t_rows)
        if [len(r) for r in self.S] != [len(r) for r in self.T]:
            raise DimensionError("Rows of S and T have different lengths")
        self.shape = Partition(len(r) for r in self.S)
        if len(self.shape) != len(self.S):
            raise DimensionError("Tableau rows have to be non-empty")

    def __eq__(self, other):
        return isinstance(other, DoubleTableau) and (self.S, self.T) == (other.S, other.T)

    def __hash__(self):
        return hash((self.S, self.T))

    def __repr__(self):
        return "DoubleTableau(S=%s, T=%s)" % (list(self.S), list(self.T))


def rho_tableau(s_rows, t_rows, setup):
    """
    Image of ``(x)_i wedge(S_i) (x) wedge(T_i)`` in ``S(V (x) U)``

    Every row contributes the signed sum over the distinct rearrangements of its
    U-entries; the product of the rows carries the Koszul sign of moving every
    U-factor past the V-factors that follow it.

    Parameters
    ----------
    s_rows, t_rows : sequence of sequence of int
        basis indices of ``V`` and ``U``, row by row
    setup : superfit.GenericSetup

    Returns
    -------
    superfit.SuperPoly
    """
    ring = setup.ring
    s_rows = [tuple(r) for r in s_rows]
    t_rows = [tuple(r) for r in t_rows]
    if [len(r) for r in s_rows] != [len(r) for r in t_rows]:
        raise DimensionError("Rows of S and T have different lengths")
    v_odd, u_odd = setup.v_parity, setup.u_parity
    if any(_repeats_even(r, v_odd) for r in s_rows) or any(_repeats_even(r, u_odd)
                                                            for r in t_rows):
        return ring.zero()
    word_v = [k for row in s_rows for k in row]
    choices = [[tuple(a) for a in multiset_permutations(list(row))] for row in t_rows]
    terms = []
    for arrangement in itertools.product(*choices):
        sign = 1
        for row, arranged in zip(t_rows, arrangement):
            sign *= _inversion_sign(_matching(row, arranged), row, u_odd, exterior=True)
        word_u = [i for arranged in arrangement for i in arranged]
        for j, l in itertools.combinations(range(len(word_u)), 2):
            if u_odd(word_u[j]) and v_odd(word_v[l]):
                sign = -sign
        product = _ordered_product(ring, [setup.var_index(k, i)
                                          for k, i in zip(word_v, word_u)])
        if product is not None:
            terms.append((product[1], sign * product[0]))
    return ring.from_terms(terms)


def rho(t, vrow, urow, setup):
    """``rho_t`` on one row: the super analogue of a ``t x t`` minor."""
    if len(vrow) != t or len(urow) != t:
        raise DimensionError("rho_%d needs rows of length %d" % (t, t))
    return rho_tableau([vrow], [urow], setup)


def _column_arrangements(rows, odd, distinct, fixed_columns=()):
    """
    Yield ``(sign, rows)`` for the rearrangements of ``rows`` inside columns

    With ``distinct`` only different fillings are produced (equal entries are not
    told apart); otherwise every element of the column group contributes.
    """
    lengths = [len(r) for r in rows]
    width = lengths[0] if lengths else 0
    per_column = []
    for j in range(width):
        col = [rows[r][j] for r in range(len(rows)) if lengths[r] > j]
        if j in fixed_columns:
            options = [(1, tuple(col))]
        elif distinct:
            options = [(_inversion_sign(_matching(col, a), col, odd, False), tuple(a))
                       for a in multiset_permutations(col)]
        else:
            options = [(_inversion_sign(p, col, odd, False), tuple(col[x] for x in p))
                       for p in itertools.permutations(range(len(col)))]
        per_column.append(options)
    for combo in itertools.product(*per_column):
        sign = 1
        new_rows = [[None] * n for n in lengths]
        for j, (s, col) in enumerate(combo):
            sign *= s
            for r, x in enumerate(col):
                new_rows[r][j] = x
        yield sign, new_rows


def pi(tableau, setup):
    """Sum of ``rho(sigma S (x) T)`` over the column group acting on ``S``, Koszul-signed."""
    ring = setup.ring
    result = ring.zero()
    for sign, rows in _column_arrangements(tableau.S, setup.v_parity, distinct=False):
        result = result + rho_tableau(rows, tableau.T, setup).scale(sign)
    return result


def pi_prime(tableau, setup):
    """The variant of :func:`pi` that lets the column group act on ``T``."""
    ring = setup.ring
    result = ring.zero()
    for sign, rows in _column_arrangements(tableau.T, setup.u_parity, distinct=False):
        result = result + rho_tableau(tableau.S, rows, setup).scale(sign)
    return result


def row_canonical_rows(length, dim, odd):
    """Weakly increasing rows where even entries do not repeat."""
    return [row for row in itertools.combinations_with_replacement(range(dim), length)
            if not any(a == b and not odd(a) for a, b in zip(row, row[1:]))]


def row_canonical_tableaux(lam, setup):
    """All double tableaux of shape ``lam`` whose rows are row-canonical."""
    lam = Partition(lam)
    s_choices = [row_canonical_rows(l, setup.m + setup.n, setup.v_parity) for l in lam]
    t_choices = [row_canonical_rows(l, setup.d + setup.e, setup.u_parity) for l in lam]
    for s_rows in itertools.product(*s_choices):
        for t_rows in itertools.product(*t_choices):
            yield DoubleTableau(s_rows, t_rows)


# ---- highest weight vectors and the ideals I_lambda ---

def admissible(lam, setup):
    """True when ``wedge^lam V`` and ``wedge^lam U`` are both nonzero."""
    conj = conjugate(lam)
    return in_hook(conj, setup.m, setup.n) and in_hook(conj, setup.d, setup.e)


def highest_weight_tableau(lam, setup):
    """Row ``i`` is the even prefix followed by the ``i``-th odd vector, repeated as needed."""
    lam = Partition(lam)
    s_rows, t_rows = [], []
    for i, length in enumerate(lam):
        s_rows.append(list(range(min(length, setup.m))) + [setup.m + i] * (length - setup.m))
        t_rows.append(list(range(min(length, setup.d))) + [setup.d + i] * (length - setup.d))
    return DoubleTableau(s_rows, t_rows)


def highest_weight_vector(lam, setup):
    """
    Highest weight vector of ``wedge^lam V (x) wedge^lam U`` inside ``S(V (x) U)``

    The product of the row images, antisymmetrized over every column in which
    both tableaux hold distinct odd vectors; elsewhere columns stay fixed.
    Returns zero, with a warning, when the representation vanishes.

    Parameters
    ----------
    lam : superfit.Partition
    setup : superfit.GenericSetup

    Returns
    -------
    superfit.SuperPoly
    """
    lam = Partition(lam)
    if not admissible(lam, setup):
        logger.warning("Representation of shape %s vanishes for %r", list(lam), setup)
        return setup.ring.zero()
    tab = highest_weight_tableau(lam, setup)
    width = lam[0] if lam else 0
    fixed = [j for j in range(width)
             if len({row[j] for row in tab.T if len(row) > j}) == 1]
    result = setup.ring.zero()
    for sign, rows in _column_arrangements(tab.S, setup.v_parity, True, fixed):
        result = result + rho_tableau(rows, tab.T, setup).scale(sign)
    return result


class Side(Enum):
    V = "v"
    U = "u"


class LieGenerator:
    """
    Elementary operator ``E_{p,q}`` on ``V`` or ``U``, sending basis vector ``q`` to ``p``

    Parameters
    ----------
    side : superfit.Side
    p, q : int
        basis indices on that side
    setup : superfit.GenericSetup
    """

    def __init__(self, side, p, q, setup):
        dim = setup.m + setup.n if side == Side.V else setup.d + setup.e
        if not (0 <= p < dim and 0 <= q < dim):
            raise DimensionError("Indices (%d, %d) out of range for side %s of dimension %d"
                                 % (p, q, side.value, dim))
        parity = setup.v_parity if side == Side.V else setup.u_parity
        self.side = side
        self.p = p
        self.q = q
        self.parity = parity(p) ^ parity(q)
        self.setup = setup
        if side == Side.V:
            self._images = {setup.var_index(q, i): (setup.var_index(p, i), 1)
                            for i in range(setup.d + setup.e)}
        else:
            # supertranspose sign
            scale = -1 if (setup.u_parity(q) and not setup.u_parity(p)) else 1
            self._images = {setup.var_index(k, q): (setup.var_index(k, p), scale)
                            for k in range(setup.m + setup.n)}

    def apply(self, f):
        return _superderivation(f, self._images, self.parity, left=self.side == Side.V)

    def __repr__(self):
        return "%s_{%d,%d}" % (self.side.value, self.p, self.q)


def _superderivation(f, images, parity, left):
    """
    Extend a map on variables to a superderivation

    ``images`` sends a variable index to ``(variable index, scale)``.  A left
    derivation passing an odd factor on its way in picks up ``(-1)^parity``; a
    right one counts the odd factors after the position instead.
    """
    ring = f.ring
    ne = ring.n_even
    terms = []
    for mono, c in f.terms.items():
        factors = [v for v in range(ne) for _ in range(mono[v])]
        factors += [v for v in range(ne, ring.nvars) if mono[v]]
        n_odd = sum(mono[ne:])
        odd_before = 0
        for pos, v in enumerate(factors):
            is_odd = int(v >= ne)
            img = images.get(v)
            if img is not None:
                target, scale = img
                passed = odd_before if left else n_odd - odd_before - is_odd
                if parity and passed & 1:
                    scale = -scale
                product = _ordered_product(ring, factors[:pos] + [target] + factors[pos + 1:])
                if product is not None:
                    terms.append((product[1], c if scale * product[0] > 0 else -c))
            odd_before += is_odd
    return ring.from_terms(terms)


def lie_apply(g, f, setup):
    """Action of the Lie superalgebra element ``g`` on ``f``."""
    if f.ring != setup.ring:
        raise DimensionError("Polynomial does not belong to the ring of %r" % setup)
    return g.apply(f)


def lie_generators(setup):
    gens = []
    for side, dim in ((Side.V, setup.m + setup.n), (Side.U, setup.d + setup.e)):
        for p in range(dim):
            for q in range(dim):
                gens.append(LieGenerator(side, p, q, setup))
    return gens


def lie_closure(polys, setup):
    """
    Basis of the smallest span containing ``polys`` and stable under every LieGenerator

    Returns
    -------
    list of superfit.SuperPoly
    """
    ring = setup.ring
    span = VectorSpan(ring.domain, key=grevlex)
    queue = deque(f for f in polys if f and span.add(f.terms))
    generators = lie_generators(setup)
    while queue:
        f = queue.popleft()
        for g in generators:
            h = g.apply(f)
            if h and span.add(h.terms):
                queue.append(h)
    logger.debug("Lie closure has dimension %d", span.rank)
    return [SuperPoly(ring, dict(v)) for v in span.basis]


def leibniz_holds(g, f, h, setup):
    """Check the signed Leibniz rule of ``g`` on the product ``f h``."""
    sign = -1 if g.parity and (f.require_parity() if g.side == Side.V
                               else h.require_parity()) else 1
    if g.side == Side.V:
        expected = lie_apply(g, f, setup) * h + (f * lie_apply(g, h, setup)).scale(sign)
    else:
        expected = f * lie_apply(g, h, setup) + (lie_apply(g, f, setup) * h).scale(sign)
    return lie_apply(g, f * h, setup) == expected


class IdealMethod(Enum):
    CLOSURE = "closure"
    PI = "pi"
    PI_PRIME = "pi_prime"


def ideal_I_lambda(lam, setup, method=IdealMethod.CLOSURE):
    """
    The ideal generated by ``wedge^lam V (x) wedge^lam U``

    Parameters
    ----------
    lam : superfit.Partition
    setup : superfit.GenericSetup
    method : superfit.IdealMethod, optional
        Lie closure of the highest weight vector, or enumeration of ``pi`` / ``pi'``
        over row-canonical tableaux

    Returns
    -------
    superfit.Ideal
    """
    lam = Partition(lam)
    ring = setup.ring
    if not admissible(lam, setup):
        logger.warning("I_%s is the zero ideal for %r", list(lam), setup)
        return Ideal(ring)
    if method == IdealMethod.CLOSURE:
        gens = lie_closure([highest_weight_vector(lam, setup)], setup)
    else:
        func = pi if method == IdealMethod.PI else pi_prime
        gens = [func(tab, setup) for tab in row_canonical_tableaux(lam, setup)]
    return Ideal(ring, gens)


# ---- the element Z and the degree shift ---

def _shift_index(k, even_dim, odd_dim):
    return odd_dim + k if k < even_dim else k - even_dim


def shift_map(source, target):
    """Images in ``target`` of the variables of ``source`` under the parity flip of V and U."""
    if target.dims != (source.e, source.d, source.n, source.m):
        raise DimensionError("%r is not the degree shift of %r" % (target, source))
    images = [None] * source.ring.nvars
    for (k, i), idx in source._index.items():
        images[idx] = target.variable(_shift_index(k, source.m, source.n),
                                      _shift_index(i, source.d, source.e))
    return images


def degree_shift(setup):
    """
    The setup with ``(d, e, m, n)`` replaced by ``(e, d, n, m)``

    Returns
    -------
    (superfit.GenericSetup, list of superfit.SuperPoly)
        the shifted setup and the images of the original variables in its ring
    """
    shifted = GenericSetup(setup.e, setup.d, setup.n, setup.m, setup.characteristic)
    return shifted, shift_map(setup, shifted)


def leading_minor(setup):
    d = setup.d
    return rho(d, list(range(d)), list(range(d)), setup)


def corollary2_Z(setup):
    """
    Single generator of the annihilator as an ideal stable under both Lie actions

    Signs follow the left-multiplication convention of the ring: every product is
    formed left to right in the order the factors are named.  For ``m = d``,
    ``n = e`` this is the highest weight vector of ``lambda_de``; on ``(1, 1, 1, 1)``
    it reads ``x (x y - a b)``.

    Raises
    ------
    superfit.ZeroAnnihilatorError
        when ``m <= d``, ``n <= e`` and not both are equalities
    """
    d, e, m, n = setup.dims
    if m > d:
        z1 = setup.ring.one()
        for j in range(e):
            for k in range(d + 1):
                z1 = z1 * setup.variable(k, d + j)
        return z1 * leading_minor(setup)
    if n > e:
        shifted, _ = degree_shift(setup)
        return substitute(corollary2_Z(shifted), shift_map(shifted, setup), setup.ring)
    if m == d and n == e:
        return highest_weight_vector(setup.lambda_de, setup)
    raise ZeroAnnihilatorError("The annihilator of the cokernel is zero for %r" % setup)


def specialize_ideal(ideal, phi, setup):
    """
    Image of an ideal of the generic ring under ``Phi -> phi``

    Parameters
    ----------
    ideal : superfit.Ideal
        an ideal of ``setup.ring``
    phi : superfit.GradedMatrix
        a map with the block dimensions of ``setup.phi``

    Returns
    -------
    superfit.Ideal
    """
    if (phi.target.rank_even, phi.target.rank_odd) != (setup.d, setup.e) or \
            (phi.source.rank_even, phi.source.rank_odd) != (setup.m, setup.n):
        raise DimensionError("%r does not have the block dimensions of %r" % (phi, setup))
    images = [None] * setup.ring.nvars
    for (k, i), idx in setup._index.items():
        images[idx] = phi.entries[i][k]
    return Ideal(phi.ring, [substitute(g, images, phi.ring) for g in ideal.generators])


# ---- filtration by shapes ---

def _row_images(length, setup):
    s_rows = row_canonical_rows(length, setup.m + setup.n, setup.v_parity)
    t_rows = row_canonical_rows(length, setup.d + setup.e, setup.u_parity)
    images = (rho(length, s, t, setup) for s in s_rows for t in t_rows)
    return [f for f in images if f]


def _shape_span(shape, setup, row_cache):
    domain = setup.ring.domain
    current = [setup.ring.one()]
    for length in shape:
        if length not in row_cache:
            row_cache[length] = _row_images(length, setup)
        span = VectorSpan(domain, key=grevlex)
        nxt = []
        for f in current:
            for r in row_cache[length]:
                h = f * r
                if h and span.add(h.terms):
                    nxt.append(h)
        current = nxt
    return current


def filtration_dim(lam, setup, max_size=5):
    """
    Dimension of the filtration quotient of ``S_|lam|(V (x) U)`` at ``lam``

    Shapes are ordered by their conjugates, lexicographically; the step at
    ``lam`` adds the products of row images of shape ``lam``.

    Raises
    ------
    superfit.ResourceLimitError
        when ``|lam|`` exceeds ``max_size``
    """
    lam = Partition(lam)
    if lam.size > max_size:
        raise ResourceLimitError("filtration_dim is capped at |lambda| <= %d, got %d"
                                 % (max_size, lam.size))
    span = VectorSpan(setup.ring.domain, key=grevlex)
    row_cache = {}
    for mu in sorted(partitions_of(lam.size), key=lambda p: tuple(conjugate(p))):
        before = span.rank
        for f in _shape_span(mu, setup, row_cache):
            span.add(f.terms)
        if mu == lam:
            return span.rank - before
    raise ValueError("Shape %s was not enumerated" % list(lam))


# ---- verification drivers ---

def _product(ring, factors):
    return reduce(mul, factors, ring.one())


def _degrees(gens):
    return sorted(g.degree() for g in gens)


def verify_thm1a(setup):
    """Compare the annihilator of the generic cokernel with ``I_Lambda(d,e)``."""
    ann = annihilator(setup.phi)
    fitting = ideal_I_lambda(setup.lambda_de, setup)
    ann_contains = ideal_contains(ann, fitting)
    fitting_contains = ideal_contains(fitting, ann)
    mins = minimal_generators(ann)
    fitting_mins = minimal_generators(fitting)
    equal = ann_contains and fitting_contains
    details = {"equal": equal,
               "ann_contains_fitting": ann_contains,
               "fitting_contains_ann": fitting_contains,
               "ann_generators": len(mins),
               "ann_degrees": _degrees(mins),
               "fitting_generators": len(fitting_mins),
               "fitting_degrees": _degrees(fitting_mins)}
    if not equal:
        logger.info("Annihilator and I_Lambda differ for %r", setup)
    return Report("thm1a", setup.instance(), Status.PASS if equal else Status.MISMATCH,
                  witnesses=[str(g) for g in mins], details=details)


def verify_thm1b(setup, phi=None, sample_cap=6):
    """
    Membership checks for products of annihilator elements

    With ``x_1, ...`` drawn from the minimal generators of the annihilator of
    ``phi`` (the generic map by default): ``x_1...x_e`` lies in ``I_Lambda(0,e)``,
    ``x_1...x_{e+1} I_Lambda(s,e)`` lies in ``I_Lambda(s+1,e)`` for ``s < d``, and any
    product of ``(d+1)(e+1)-1`` of them lies in ``I_Lambda(d,e)``.
    """
    generic = phi is None
    phi = setup.phi if generic else phi
    ring = phi.ring
    ann = annihilator(phi)
    samples = minimal_generators(ann)[:sample_cap]
    d, e = setup.d, setup.e

    def fitting(lam):
        ideal = ideal_I_lambda(lam, setup)
        return ideal if generic else specialize_ideal(ideal, phi, setup)

    def products(k):
        combos = itertools.combinations_with_replacement(samples, k)
        return [_product(ring, c) for c in itertools.islice(combos, sample_cap)]

    failures = []
    checked = 0
    if samples:
        base = fitting(lambda_de(0, e))
        for p in products(e):
            checked += 1
            if not base.contains(p):
                failures.append("b-case: %s" % p)
        for s in range(d):
            lower, upper = fitting(lambda_de(s, e)), fitting(lambda_de(s + 1, e))
            for p in products(e + 1):
                for h in lower.generators:
                    checked += 1
                    if not upper.contains(p * h):
                        failures.append("s=%d: (%s)*(%s)" % (s, p, h))
        top = fitting(lambda_de(d, e))
        for p in products((d + 1) * (e + 1) - 1):
            checked += 1
            if not top.contains(p):
                failures.append("product: %s" % p)
    status = Status.FAIL if failures else Status.PASS
    return Report("thm1b", setup.instance(), status, witnesses=failures,
                  details={"samples": len(samples), "checked": checked})


def verify_cor2(setup):
    """``Z`` has degree ``de+d+e``, annihilates, and generates the annihilator as a Lie ideal."""
    d, e = setup.d, setup.e
    ann = annihilator(setup.phi)
    try:
        z = corollary2_Z(setup)
    except ZeroAnnihilatorError:
        status = Status.PASS if ann.is_zero() else Status.FAIL
        return Report("cor2", setup.instance(), status, details={"case": "zero"})
    closure = Ideal(setup.ring, lie_closure([z], setup))
    details = {"case": "a" if setup.m > d or setup.n > e else "b",
               "degree": z.degree(),
               "expected_degree": d * e + d + e,
               "annihilates": ann.contains(z),
               "generates": ideal_contains(closure, ann) and ideal_contains(ann, closure)}
    ok = (details["degree"] == details["expected_degree"] and details["annihilates"]
          and details["generates"])
    return Report("cor2", setup.instance(), Status.PASS if ok else Status.FAIL,
                  witnesses=[str(z)], details=details)


def random_parity_pairs(setup, count, seed=0):
    """
    ``count`` pairs ``(f, h)`` of random homogeneous polynomials of degree 1 or 2

    The parities of ``f`` and ``h`` cycle through even-even, even-odd, odd-even and
    odd-odd; a pair is dropped when the ring has no monomial of the asked parity.
    """
    rng = random.Random(seed)
    pairs = []
    for k in range(count):
        pf, ph = (k >> 1) & 1, k & 1
        f = random_poly(setup.ring, rng, rng.randint(1, 2), pf)
        h = random_poly(setup.ring, rng, rng.randint(1, 2), ph)
        if f and h:
            pairs.append((f, h))
    return pairs


def verify_lie(setup, leibniz_pairs=8, seed=0):
    """
    Lie invariance of the annihilator and the signed Leibniz rule

    The Leibniz rule is checked for every Lie generator on ``leibniz_pairs`` seeded
    random pairs of mixed parity.  On ``(1, 1, 1, 1)`` also locks the two worked
    actions on ``a x y``.
    """
    ring = setup.ring
    checks = {}
    if setup.dims == (1, 1, 1, 1):
        axy = ring.parse("a1_1*x1_1*y1_1")
        left = lie_apply(LieGenerator(Side.V, 0, 1, setup), axy, setup)
        right = lie_apply(LieGenerator(Side.U, 1, 0, setup), axy, setup)
        checks["v01_on_axy"] = left == ring.parse("x1_1^2*y1_1 - x1_1*a1_1*b1_1")
        checks["u10_on_axy"] = right == ring.parse("x1_1*y1_1^2 + y1_1*a1_1*b1_1")
    ann = annihilator(setup.phi)
    generators = lie_generators(setup)
    failures = []
    for g in generators:
        for f in ann.generators:
            if not ann.contains(lie_apply(g, f, setup)):
                failures.append("%r(%s)" % (g, f))
    checks["invariant"] = not failures
    pairs = random_parity_pairs(setup, leibniz_pairs, seed)
    broken = ["%r on (%s)(%s)" % (g, f, h) for g in generators for f, h in pairs
              if not leibniz_holds(g, f, h, setup)]
    failures.extend(broken)
    checks["leibniz"] = not broken
    status = Status.PASS if all(checks.values()) else Status.FAIL
    checks["leibniz_pairs"] = len(pairs)
    return Report("lie", setup.instance(), status, witnesses=failures, details=checks)


def _random_invertible(size, domain, rng):
    if size == 0:
        return []
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
        matrix = DomainMatrix([[domain.convert(c) for c in row] for row in rows],
                              (size, size), domain)
        if matrix.det():
            return rows


def verify_lemma31(setup, seed=0, lam=None):
    """``I_lam`` does not change when the generic map is composed with a block automorphism of V."""
    rng = random.Random(seed)
    lam = setup.lambda_de if lam is None else Partition(lam)
    ring = setup.ring
    m, n = setup.m, setup.n
    even_block = _random_invertible(m, ring.domain, rng)
    odd_block = _random_invertible(n, ring.domain, rng)
    entries = [[ring.zero() for _ in range(m + n)] for _ in range(m + n)]
    for r in range(m):
        for c in range(m):
            entries[r][c] = ring.const(even_block[r][c])
    for r in range(n):
        for c in range(n):
            entries[m + r][m + c] = ring.const(odd_block[r][c])
    alpha = GradedMatrix(ring, setup.phi.source, setup.phi.source, entries)
    base = ideal_I_lambda(lam, setup)
    moved = specialize_ideal(base, compose(setup.phi, alpha), setup)
    contained = ideal_contains(base, moved)
    equal = contained and ideal_contains(moved, base)
    return Report("lemma31", setup.instance(), Status.PASS if equal else Status.FAIL,
                  details={"shape": list(lam), "seed": seed, "contained": contained,
                           "equal": equal})


def verify_specialization(setup, seed=0):
    """Every generator of ``I_Lambda(d,e)(phi)`` kills ``coker phi`` for a random linear ``phi``."""
    rng = random.Random(seed)
    target = SuperRing(("s", "t"), ("p", "q", "r"), setup.characteristic)
    evens = [target.gen("s"), target.gen("t")]
    odds = [target.gen("p"), target.gen("q"), target.gen("r")]
    entries = []
    for i in range(setup.d + setup.e):
        row = []
        for k in range(setup.m + setup.n):
            pool = odds if setup.u_parity(i) ^ setup.v_parity(k) else evens
            row.append(sum((g.scale(rng.randint(-2, 2)) for g in pool), target.zero()))
        entries.append(row)
    phi = GradedMatrix(target, setup.phi.target, setup.phi.source, entries)
    ideal = specialize_ideal(ideal_I_lambda(setup.lambda_de, setup), phi, setup)
    gb = image_gb(phi)
    failures = [str(g) for g in ideal.generators if not annihilates(phi, g, gb)]
    return Report("spec1a", setup.instance(), Status.FAIL if failures else Status.PASS,
                  witnesses=failures, details={"seed": seed, "phi": str(phi),
                                               "generators": len(ideal.generators)})


def verify_shift(setup):
    """The annihilator of the shifted setup is the image of the original annihilator."""
    shifted, images = degree_shift(setup)
    ann = annihilator(setup.phi)
    moved = Ideal(shifted.ring, [substitute(g, images, shifted.ring) for g in ann.generators])
    target = annihilator(shifted.phi)
    equal = ideal_contains(target, moved) and ideal_contains(moved, target)
    return Report("shift", setup.instance(), Status.PASS if equal else Status.FAIL,
                  details={"shifted": shifted.instance(), "equal": equal})
