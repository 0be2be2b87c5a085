"""Gröbner bases of ideals and submodules of free modules over a super ring.

One Buchberger engine works on module vectors ``{(position, monomial): coeff}``
under a position-over-term order (position 0 most significant); an ideal is the
rank one case.  Ring elements always act from the left.
"""
import heapq
import logging

from superfit.errors import HomogeneityError, ResourceLimitError, RingMismatchError
from superfit.linalg import VectorSpan, rank
from superfit.superpoly import DEGREVLEX, SuperPoly, TermOrder, mono_product

logger = logging.getLogger(__name__)

_INPUT = 0
_SPAIR = 1
_ODD = 2


def poly_to_vector(f, pos=0):
    return {(pos, m): c for m, c in f.terms.items()}


def vector_to_poly(ring, vec, pos=0):
    return SuperPoly(ring, {m: c for (p, m), c in vec.items() if p == pos})


def vector_parity(ring, vec, parities):
    """Common parity of the terms of ``vec`` (monomial parity plus basis parity), or None."""
    seen = {(ring.mono_parity(m) + parities[p]) & 1 for p, m in vec}
    if len(seen) > 1:
        return None
    return seen.pop() if seen else 0


def vector_degree(vec, twists):
    return max((sum(m) + twists[p] for p, m in vec), default=-1)


def mul_vector(ring, mono, coeff, vec):
    """Left multiple ``coeff * mono * vec``."""
    ne = ring.n_even
    zero = ring.domain.zero
    out = {}
    for (p, m), c in vec.items():
        r = mono_product(mono, m, ne)
        if r is None:
            continue
        v = c * coeff if r[0] > 0 else -(c * coeff)
        k = (p, r[1])
        out[k] = out.get(k, zero) + v
    return {k: c for k, c in out.items() if c}


def add_vectors(ring, a, b, scale=1):
    out = dict(a)
    scale = ring.convert(scale)
    zero = ring.domain.zero
    for k, c in b.items():
        s = out.get(k, zero) + c * scale
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _quotient(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _sub_mul(vec, coeff, s, g, ne, zero):
    # vec -= coeff * s * g, in place
    for (p, m), c in g.items():
        r = mono_product(s, m, ne)
        if r is None:
            continue
        k = (p, r[1])
        v = coeff * c if r[0] > 0 else -(coeff * c)
        nv = vec.get(k, zero) - v
        if nv:
            vec[k] = nv
        else:
            vec.pop(k, None)


class _Element:
    __slots__ = ("vec", "pos", "lead", "degree")

    def __init__(self, vec, pos, lead, degree):
        self.vec = vec
        self.pos = pos
        self.lead = lead
        self.degree = degree


def _module_key(order):
    key = order.key
    return lambda k: (-k[0], key(k[1]))


def reduce_vector(ring, vec, elements, okey, full=True):
    """
    Reduce ``vec`` by monic basis elements

    Parameters
    ----------
    ring : superfit.SuperRing
    vec : dict
        the vector to reduce
    elements : list
        basis elements with monic leading terms
    okey : callable
        module order key
    full : bool, optional
        reduce every term, not only the leading one

    Returns
    -------
    dict
        the remainder
    """
    ne = ring.n_even
    zero = ring.domain.zero
    vec = dict(vec)
    rem = {}
    while vec:
        k = max(vec, key=okey)
        c = vec[k]
        pos, mono = k
        for el in elements:
            if el.pos == pos and _divides(el.lead, mono):
                s = _quotient(mono, el.lead)
                sign = mono_product(s, el.lead, ne)[0]
                _sub_mul(vec, c if sign > 0 else -c, s, el.vec, ne, zero)
                break
        else:
            if not full:
                rem.update(vec)
                return rem
            rem[k] = c
            del vec[k]
    return rem


class _Buchberger:
    """Single run of the pair-queue completion."""

    def __init__(self, ring, order, twists, max_degree=None, max_pairs=None):
        self.ring = ring
        self.okey = _module_key(order)
        self.twists = twists
        self.max_degree = max_degree
        self.max_pairs = max_pairs
        self.elements = []
        self.queue = []
        self.pending = {}
        self.counter = 0
        self.processed = 0
        self.truncated = False
        self.rank_one = len(twists) == 1

    def _push(self, degree, kind, a, b):
        if self.max_degree is not None and degree > self.max_degree:
            self.truncated = True
            return
        self.counter += 1
        heapq.heappush(self.queue, (degree, self.counter, kind, a, b))
        if kind == _SPAIR:
            self.pending[self.counter] = (a, b)

    def _make_monic(self, vec):
        lead = max(vec, key=self.okey)
        inv = self.ring.domain.one / vec[lead]
        if inv != self.ring.domain.one:
            vec = {k: c * inv for k, c in vec.items()}
        return vec, lead

    def _insert(self, vec):
        vec, (pos, lead) = self._make_monic(vec)
        tw = self.twists[pos]
        h = len(self.elements)
        new = _Element(vec, pos, lead, sum(lead) + tw)
        # chain criterion on pending pairs
        for pid, (i, j) in list(self.pending.items()):
            ei, ej = self.elements[i], self.elements[j]
            if ei.pos != pos:
                continue
            lij = _lcm(ei.lead, ej.lead)
            if (_divides(lead, lij) and _lcm(ei.lead, lead) != lij
                    and _lcm(ej.lead, lead) != lij):
                del self.pending[pid]
        self.elements.append(new)
        ne = self.ring.n_even
        for i, el in enumerate(self.elements[:-1]):
            if el.pos != pos:
                continue
            if (self.rank_one and not any(el.lead[ne:]) and not any(lead[ne:])
                    and all(x == 0 or y == 0 for x, y in zip(el.lead, lead))):
                continue
            self._push(sum(_lcm(el.lead, lead)) + tw, _SPAIR, i, h)
        for v in range(ne, self.ring.nvars):
            if lead[v]:
                self._push(new.degree + 1, _ODD, h, v)

    def _spoly(self, i, j):
        ne = self.ring.n_even
        zero = self.ring.domain.zero
        ei, ej = self.elements[i], self.elements[j]
        lij = _lcm(ei.lead, ej.lead)
        si = _quotient(lij, ei.lead)
        sj = _quotient(lij, ej.lead)
        sign_i = mono_product(si, ei.lead, ne)[0]
        sign_j = mono_product(sj, ej.lead, ne)[0]
        one = self.ring.domain.one
        vec = {}
        _sub_mul(vec, -one if sign_i > 0 else one, si, ei.vec, ne, zero)
        _sub_mul(vec, one if sign_j > 0 else -one, sj, ej.vec, ne, zero)
        return vec

    def run(self, vectors):
        for idx, vec in enumerate(vectors):
            if vec:
                self._push(vector_degree(vec, self.twists), _INPUT, idx, None)
        while self.queue:
            degree, cid, kind, a, b = heapq.heappop(self.queue)
            if kind == _SPAIR:
                if cid not in self.pending:
                    continue
                del self.pending[cid]
                vec = self._spoly(a, b)
            elif kind == _ODD:
                var = tuple(1 if k == b else 0 for k in range(self.ring.nvars))
                vec = mul_vector(self.ring, var, self.ring.domain.one, self.elements[a].vec)
            else:
                vec = vectors[a]
            self.processed += 1
            if self.max_pairs is not None and self.processed > self.max_pairs:
                raise ResourceLimitError(
                    "Gröbner computation exceeded %d pairs" % self.max_pairs,
                    partial=[el.vec for el in self.elements])
            red = reduce_vector(self.ring, vec, self.elements, self.okey)
            if red:
                self._insert(red)
        logger.debug("Buchberger finished: %d elements, %d pairs processed",
                     len(self.elements), self.processed)
        return self._interreduce()

    def _interreduce(self):
        els = sorted(self.elements, key=lambda e: self.okey((e.pos, e.lead)))
        minimal = []
        for e in els:
            if not any(o.pos == e.pos and _divides(o.lead, e.lead) for o in minimal):
                minimal.append(e)
        result = []
        for e in minimal:
            others = [o for o in minimal if o is not e]
            vec = reduce_vector(self.ring, e.vec, others, self.okey)
            vec, (pos, lead) = self._make_monic(vec)
            result.append(_Element(vec, pos, lead, sum(lead) + self.twists[pos]))
        result.sort(key=lambda e: self.okey((e.pos, e.lead)), reverse=True)
        return result


def groebner_vectors(ring, vectors, parities, twists, order=DEGREVLEX,
                     max_degree=None, max_pairs=None):
    """
    Reduced Gröbner basis of the submodule generated by ``vectors``

    Parameters
    ----------
    ring : superfit.SuperRing
    vectors : list of dict
        generators ``{(position, monomial): coeff}``
    parities : sequence of int
        parity of each free basis element
    twists : sequence of int
        internal degree of each free basis element
    order : superfit.TermOrder, optional
        monomial order used below the position-over-term comparison
    max_degree : int, optional
        drop pairs above this degree (exact only for degree-homogeneous input)
    max_pairs : int, optional
        raise ResourceLimitError after processing this many pairs

    Returns
    -------
    (list, bool)
        the basis elements and whether the computation was degree-truncated
    """
    for vec in vectors:
        if vector_parity(ring, vec, parities) is None:
            raise HomogeneityError("Gröbner input has to be parity-homogeneous")
    engine = _Buchberger(ring, order, list(twists), max_degree, max_pairs)
    return engine.run([dict(v) for v in vectors]), engine.truncated


class GroebnerBasis:
    """
    Reduced Gröbner basis of a submodule of a free module (an ideal when rank is 1)

    Parameters
    ----------
    ring : superfit.SuperRing
    elements : list
        monic, interreduced basis elements from the engine
    order : superfit.TermOrder
    parities, twists : sequence of int
        parity and internal degree of the free basis elements
    truncated : bool
        whether pairs above a degree bound were dropped
    """

    def __init__(self, ring, elements, order, parities, twists, truncated=False):
        self.ring = ring
        self.order = order
        self.parities = tuple(parities)
        self.twists = tuple(twists)
        self.truncated = truncated
        self._elements = elements
        self._okey = _module_key(order)

    @property
    def rank(self):
        return len(self.parities)

    @property
    def vectors(self):
        return [e.vec for e in self._elements]

    @property
    def generators(self):
        """Basis elements as polynomials (rank one only)."""
        return [vector_to_poly(self.ring, e.vec) for e in self._elements]

    @property
    def leads(self):
        return [(e.pos, e.lead) for e in self._elements]

    def __len__(self):
        return len(self._elements)

    def reduce(self, vec):
        return reduce_vector(self.ring, vec, self._elements, self._okey)

    def is_unit(self):
        return any(not any(e.lead) for e in self._elements) and self.rank == 1

    def dim_in_degree(self, t):
        """Dimension of the degree ``t`` part, counted from leading monomials."""
        count = 0
        for pos in range(self.rank):
            d = t - self.twists[pos]
            if d < 0:
                continue
            leads = [e.lead for e in self._elements if e.pos == pos]
            count += sum(1 for m in self.ring.monomials_of_degree(d)
                         if any(_divides(lead, m) for lead in leads))
        return count


def buchberger(gens, order=DEGREVLEX, max_degree=None, max_pairs=None):
    """
    Reduced Gröbner basis of the ideal generated by ``gens``

    Parameters
    ----------
    gens : list of superfit.SuperPoly
        parity-homogeneous generators from one ring
    order : superfit.TermOrder, optional

    Returns
    -------
    superfit.GroebnerBasis
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring != ring:
            raise RingMismatchError("Generators belong to different rings")
    for g in gens:
        g.require_parity()
    elements, truncated = groebner_vectors(ring, [poly_to_vector(g) for g in gens], (0,),
                                           (0,), order, max_degree, max_pairs)
    return GroebnerBasis(ring, elements, order, (0,), (0,), truncated)


def normal_form(f, gb):
    if f.ring != gb.ring:
        raise RingMismatchError("Polynomial and basis belong to different rings")
    if not f:
        return f
    return vector_to_poly(f.ring, gb.reduce(poly_to_vector(f)))


class Ideal:
    """
    An ideal given by generators, with a lazily computed Gröbner basis

    Parameters
    ----------
    ring : superfit.SuperRing
    generators : list of superfit.SuperPoly
    """

    def __init__(self, ring, generators=()):
        self.ring = ring
        self.generators = [g for g in generators if g]
        for g in self.generators:
            if g.ring != ring:
                raise RingMismatchError("Generator %s does not belong to %r" % (g, ring))
        self._gb = None

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @property
    def gb(self):
        if self._gb is None and self.generators:
            self._gb = buchberger(self.generators)
        return self._gb

    def is_zero(self):
        return not self.generators

    def is_unit(self):
        return not self.is_zero() and self.gb.is_unit()

    def contains(self, f):
        if not f:
            return True
        if self.is_zero():
            return False
        return not normal_form(f, self.gb)

    __contains__ = contains

    def normal_form(self, f):
        return f if self.is_zero() else normal_form(f, self.gb)

    def dim_in_degree(self, t):
        return 0 if self.is_zero() else self.gb.dim_in_degree(t)

    def reduced_generators(self):
        return [] if self.is_zero() else self.gb.generators

    def minimal_generators(self):
        return minimal_generators(self)

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.generators)


def _check_same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatchError("Ideals belong to different rings")


def ideal_contains(I, J):
    """True when every generator of ``J`` lies in ``I``."""
    _check_same_ring(I, J)
    return all(I.contains(g) for g in J.generators)


def ideal_equal(I, J):
    return ideal_contains(I, J) and ideal_contains(J, I)


def _fresh_name(ring, base):
    name = base
    while name in ring.names:
        name = "_" + name
    return name


def _embed(poly, target, t_exp=0):
    return SuperPoly(target, {(t_exp,) + m: c for m, c in poly.terms.items()})


def eliminate(I, variables):
    """
    Intersect ``I`` with the subring on the variables not listed

    Parameters
    ----------
    I : superfit.Ideal
    variables : iterable of str or int
        the variables to eliminate

    Returns
    -------
    superfit.Ideal
    """
    ring = I.ring
    block = sorted({v if isinstance(v, int) else ring.index(v) for v in variables})
    if not block or I.is_zero():
        return Ideal(ring, I.generators)
    order = TermOrder.elimination(block, ring.nvars)
    gb = buchberger(I.generators, order)
    keep = [g for g in gb.generators
            if all(m[i] == 0 for m in g.terms for i in block)]
    return Ideal(ring, [g.monic() for g in keep])


def ideal_intersect(I, J):
    """Generators of ``I ∩ J``, from eliminating an even tag ``t`` in ``tI + (1 - t)J``."""
    _check_same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    ext = ring.extended(even_front=(_fresh_name(ring, "t"),))
    gens = [_embed(g, ext, 1) for g in I.generators]
    for h in J.generators:
        gens.append(_embed(h, ext, 0) - _embed(h, ext, 1))
    gb = buchberger(gens, TermOrder.elimination([0], ext.nvars))
    keep = []
    for g in gb.generators:
        if all(m[0] == 0 for m in g.terms):
            keep.append(SuperPoly(ring, {m[1:]: c for m, c in g.terms.items()}).monic())
    logger.debug("Intersection produced %d generators", len(keep))
    return Ideal(ring, keep)


def syzygy_vectors(ring, columns, target_parities, target_twists,
                   source_parities, source_twists, order=DEGREVLEX,
                   max_degree=None, max_pairs=None):
    """
    Generators of the kernel of the map sending source basis j to ``columns[j]``

    The columns are stacked with unit vectors in positions after the target
    positions; under position-over-term the basis elements whose target part
    vanishes generate the kernel.

    Returns
    -------
    (list of dict, bool)
        kernel vectors over the source module and the truncation flag
    """
    r = len(target_parities)
    stacked = []
    one = ring.domain.one
    unit = ring.unit_mono
    for j, col in enumerate(columns):
        vec = dict(col)
        vec[(r + j, unit)] = one
        stacked.append(vec)
    parities = tuple(target_parities) + tuple(source_parities)
    twists = tuple(target_twists) + tuple(source_twists)
    elements, truncated = groebner_vectors(ring, stacked, parities, twists, order,
                                           max_degree, max_pairs)
    kernel = []
    for e in elements:
        if e.pos >= r:
            kernel.append({(p - r, m): c for (p, m), c in e.vec.items()})
    return kernel, truncated


def ideal_colon(I, f):
    """The ideal ``{g : g f ∈ I}``."""
    ring = I.ring
    if f.ring != ring:
        raise RingMismatchError("Polynomial and ideal belong to different rings")
    if not f:
        return Ideal.unit(ring)
    pf = f.require_parity()
    if I.is_zero():
        columns = [poly_to_vector(f)]
        parities = [pf]
        twists = [f.degree()]
    else:
        columns = [poly_to_vector(f)] + [poly_to_vector(g) for g in I.generators]
        parities = [pf] + [g.require_parity() for g in I.generators]
        twists = [f.degree()] + [g.degree() for g in I.generators]
    kernel, _ = syzygy_vectors(ring, columns, (0,), (0,), parities, twists)
    gens = [vector_to_poly(ring, v, 0) for v in kernel]
    return Ideal(ring, [g.monic() for g in gens if g])


def minimal_vectors(ring, vectors, twists):
    """
    Graded-Nakayama minimal subset of homogeneous generators

    Per degree, a candidate is kept when it is independent of the kept
    candidates of that degree together with all monomial multiples of kept
    generators of lower degree.
    """
    by_degree = {}
    for vec in vectors:
        if vec:
            by_degree.setdefault(vector_degree(vec, twists), []).append(vec)
    kept = []
    for t in sorted(by_degree):
        span = VectorSpan(ring.domain)
        for g, dg in kept:
            for mono in ring.monomials_of_degree(t - dg):
                span.add(mul_vector(ring, mono, ring.domain.one, g))
        for vec in by_degree[t]:
            if span.add(vec):
                kept.append((vec, t))
    return [vec for vec, _ in kept]


def minimal_generators(I):
    """Minimal homogeneous generators of ``I``, taken from its reduced Gröbner basis."""
    if I.is_zero():
        return []
    gens = I.gb.generators
    for g in gens:
        if not g.is_homogeneous():
            raise HomogeneityError("minimal_generators needs a degree-homogeneous ideal")
    vecs = minimal_vectors(I.ring, [poly_to_vector(g) for g in gens], (0,))
    return [vector_to_poly(I.ring, v) for v in vecs]


def brute_force_dim(ring, gens, t):
    """Dimension of the degree ``t`` part of the ideal spanned by monomial multiples of ``gens``."""
    vectors = []
    for g in gens:
        for d in g.degrees():
            if d > t:
                continue
            for mono in ring.monomials_of_degree(t - d):
                part = SuperPoly(ring, {m: c for m, c in g.terms.items() if sum(m) == d})
                v = part.mul_term(mono, ring.domain.one)
                if v:
                    vectors.append(v.terms)
    return rank(vectors, ring.domain)
