"""Graded free modules over a super ring and the maps between them.

A matrix column ``j`` is the image ``sum_i phi[i][j] e_i`` of the ``j``-th
source basis element; ring elements multiply coordinates from the left.
"""
import json
import logging

from superfit.errors import DimensionError, HomogeneityError, ParseError, RingMismatchError
from superfit.groebner import (GroebnerBasis, Ideal, groebner_vectors, ideal_intersect,
                               minimal_vectors, mul_vector, syzygy_vectors, vector_degree,
                               vector_parity, vector_to_poly)
from superfit.linalg import nullspace, rank
from superfit.superpoly import DEGREVLEX, SuperPoly, SuperRing, parse_poly

logger = logging.getLogger(__name__)


class GradedFreeModule:
    """
    Free module with an even block followed by an odd block of basis elements

    Parameters
    ----------
    rank_even : int
        number of parity 0 basis elements
    rank_odd : int
        number of parity 1 basis elements
    twists : sequence of int, optional
        internal degree of every basis element, even block first; zeros by default
    """

    def __init__(self, rank_even, rank_odd, twists=None):
        if rank_even < 0 or rank_odd < 0:
            raise ValueError("Ranks can't be negative")
        self.rank_even = rank_even
        self.rank_odd = rank_odd
        if twists is None:
            twists = (0,) * (rank_even + rank_odd)
        self.twists = tuple(twists)
        if len(self.twists) != rank_even + rank_odd:
            raise DimensionError("Expected %d twists, got %d"
                                 % (rank_even + rank_odd, len(self.twists)))

    @classmethod
    def from_parities(cls, parities, twists):
        """Module with basis elements given in arbitrary parity order; parities must be sorted."""
        parities = list(parities)
        if parities != sorted(parities):
            raise ValueError("Basis parities have to list the even block first")
        return cls(parities.count(0), parities.count(1), twists)

    @property
    def rank(self):
        return self.rank_even + self.rank_odd

    @property
    def parities(self):
        return (0,) * self.rank_even + (1,) * self.rank_odd

    def __eq__(self, other):
        return (isinstance(other, GradedFreeModule) and self.rank_even == other.rank_even
                and self.rank_odd == other.rank_odd and self.twists == other.twists)

    def __repr__(self):
        return "GradedFreeModule(%d|%d, twists=%s)" % (self.rank_even, self.rank_odd,
                                                       list(self.twists))

    def to_dict(self):
        return {"rank_even": self.rank_even, "rank_odd": self.rank_odd,
                "twists": list(self.twists)}

    @classmethod
    def from_dict(cls, data):
        return cls(data["rank_even"], data["rank_odd"], data.get("twists"))


class ModuleElement:
    """A coordinate vector of polynomials over a free module."""

    def __init__(self, module, coords):
        self.module = module
        self.coords = list(coords)
        if len(self.coords) != module.rank:
            raise DimensionError("Element has %d coordinates, module rank is %d"
                                 % (len(self.coords), module.rank))

    @classmethod
    def basis(cls, ring, module, k):
        return cls(module, [ring.one() if i == k else ring.zero() for i in range(module.rank)])

    @classmethod
    def from_vector(cls, ring, module, vec):
        return cls(module, [vector_to_poly(ring, vec, i) for i in range(module.rank)])

    def to_vector(self):
        vec = {}
        for i, f in enumerate(self.coords):
            for m, c in f.terms.items():
                vec[(i, m)] = c
        return vec

    def is_zero(self):
        return not any(self.coords)

    def __repr__(self):
        return "ModuleElement(%s)" % ", ".join(str(f) for f in self.coords)


class GradedMatrix:
    """
    Homogeneous map ``source -> target`` of graded free modules

    Parameters
    ----------
    ring : superfit.SuperRing
    target : superfit.GradedFreeModule
        indexes the rows
    source : superfit.GradedFreeModule
        indexes the columns
    entries : list of list of superfit.SuperPoly
        ``entries[i][j]`` is the ``e_i`` coordinate of the image of ``f_j``
    """

    def __init__(self, ring, target, source, entries):
        self.ring = ring
        self.target = target
        self.source = source
        self.entries = [list(row) for row in entries]
        self.truncated = False
        if len(self.entries) != target.rank or any(len(r) != source.rank for r in self.entries):
            raise DimensionError("Entries do not have shape %d x %d"
                                 % (target.rank, source.rank))
        for row in self.entries:
            for f in row:
                if f.ring != ring:
                    raise RingMismatchError("Matrix entry %s does not belong to %r" % (f, ring))

    @property
    def shape(self):
        return self.target.rank, self.source.rank

    def column(self, j):
        vec = {}
        for i in range(self.target.rank):
            for m, c in self.entries[i][j].terms.items():
                vec[(i, m)] = c
        return vec

    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def is_zero(self):
        return not any(f for row in self.entries for f in row)

    def check_homogeneous(self):
        """Raise HomogeneityError unless every entry has the parity and degree of its slot."""
        tp, sp = self.target.parities, self.source.parities
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if not f:
                    continue
                if f.parity() != (tp[i] + sp[j]) & 1:
                    raise HomogeneityError("Entry (%d, %d) = %s has the wrong parity" % (i, j, f))
                degrees = f.degrees()
                want = self.source.twists[j] - self.target.twists[i]
                if degrees != {want}:
                    raise HomogeneityError("Entry (%d, %d) = %s should have degree %d"
                                           % (i, j, f, want))

    def compose(self, other):
        """The map ``self o other``."""
        return compose(self, other)

    def __str__(self):
        width = max((len(str(f)) for row in self.entries for f in row), default=1)
        return "\n".join("[ " + "  ".join(str(f).rjust(width) for f in row) + " ]"
                         for row in self.entries)

    def __repr__(self):
        return "GradedMatrix(%s -> %s)" % (self.source, self.target)


def compose(phi, psi):
    """``phi o psi``: entry ``(i, l)`` is ``sum_j psi[j][l] * phi[i][j]``."""
    if phi.source.rank != psi.target.rank:
        raise DimensionError("Cannot compose %r after %r" % (phi, psi))
    ring = phi.ring
    entries = []
    for i in range(phi.target.rank):
        row = []
        for l in range(psi.source.rank):
            acc = ring.zero()
            for j in range(phi.source.rank):
                a = psi.entries[j][l]
                b = phi.entries[i][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        entries.append(row)
    return GradedMatrix(ring, phi.target, psi.source, entries)


def module_gb(ring, module, columns, order=DEGREVLEX, max_degree=None, max_pairs=None):
    """
    Gröbner basis of the submodule of ``module`` generated by ``columns``

    Parameters
    ----------
    ring : superfit.SuperRing
    module : superfit.GradedFreeModule
    columns : list of superfit.ModuleElement or dict
        generators, as elements or sparse vectors

    Returns
    -------
    superfit.GroebnerBasis
    """
    vectors = [c.to_vector() if isinstance(c, ModuleElement) else c for c in columns]
    vectors = [v for v in vectors if v]
    elements, truncated = groebner_vectors(ring, vectors, module.parities, module.twists,
                                           order, max_degree, max_pairs)
    return GroebnerBasis(ring, elements, order, module.parities, module.twists, truncated)


def module_normal_form(ring, module, element, gb):
    vec = element.to_vector() if isinstance(element, ModuleElement) else element
    return ModuleElement.from_vector(ring, module, gb.reduce(vec))


def submodule_contains(gb, element):
    vec = element.to_vector() if isinstance(element, ModuleElement) else element
    return not gb.reduce(vec)


def image_gb(phi, **limits):
    return module_gb(phi.ring, phi.target, phi.columns(), **limits)


def _kernel_module(ring, source, kernel):
    kernel = [v for v in kernel if v]
    info = []
    for v in kernel:
        parity = vector_parity(ring, v, source.parities)
        info.append((parity, vector_degree(v, source.twists), v))
    # even block first, stable within a parity
    info.sort(key=lambda t: t[0])
    module = GradedFreeModule(sum(1 for t in info if t[0] == 0),
                              sum(1 for t in info if t[0] == 1),
                              [t[1] for t in info])
    entries = [[ring.zero() for _ in info] for _ in range(source.rank)]
    for j, (_, _, v) in enumerate(info):
        for i in range(source.rank):
            entries[i][j] = vector_to_poly(ring, v, i)
    return GradedMatrix(ring, source, module, entries)


def syzygies(phi, minimal=False, max_degree=None, max_pairs=None):
    """
    Matrix whose columns generate the kernel of ``phi``

    Parameters
    ----------
    phi : superfit.GradedMatrix
        a homogeneous map
    minimal : bool, optional
        keep a graded-minimal subset of the kernel generators
    max_degree : int, optional
        only compute kernel generators up to this internal degree

    Returns
    -------
    superfit.GradedMatrix
        map from a new free module onto ``phi.source``
    """
    ring = phi.ring
    kernel, truncated = syzygy_vectors(ring, phi.columns(), phi.target.parities,
                                       phi.target.twists, phi.source.parities,
                                       phi.source.twists, max_degree=max_degree,
                                       max_pairs=max_pairs)
    if max_degree is not None:
        kernel = [v for v in kernel if vector_degree(v, phi.source.twists) <= max_degree]
    if minimal:
        kernel = minimal_vectors(ring, kernel, phi.source.twists)
    syz = _kernel_module(ring, phi.source, kernel)
    syz.truncated = truncated
    return syz


def module_colon(phi, k):
    """The ideal ``(im phi : e_k)`` of ring elements moving ``e_k`` into the image."""
    ring = phi.ring
    target = phi.target
    unit = {(k, ring.unit_mono): ring.domain.one}
    columns = [unit] + phi.columns()
    parities = (target.parities[k],) + phi.source.parities
    twists = (target.twists[k],) + phi.source.twists
    kernel, _ = syzygy_vectors(ring, columns, target.parities, target.twists,
                               parities, twists)
    gens = [vector_to_poly(ring, v, 0) for v in kernel]
    return Ideal(ring, [g.monic() for g in gens if g])


def annihilator(phi):
    """
    Annihilator of the cokernel of ``phi``

    Intersection over target basis elements of ``(im phi : e_k)``.

    Returns
    -------
    superfit.Ideal
    """
    ring = phi.ring
    if phi.target.rank == 0:
        return Ideal.unit(ring)
    ann = None
    for k in range(phi.target.rank):
        colon = module_colon(phi, k)
        ann = colon if ann is None else ideal_intersect(ann, colon)
        if ann.is_zero():
            break
    gens = ann.reduced_generators()
    gens.sort(key=lambda g: g.sort_key())
    logger.debug("Annihilator has %d reduced generators", len(gens))
    return Ideal(ring, gens)


def annihilates(phi, f, gb=None):
    """True when ``f e_k`` lies in the image of ``phi`` for every target basis element."""
    if gb is None:
        gb = image_gb(phi)
    for k in range(phi.target.rank):
        vec = {(k, m): c for m, c in f.terms.items()}
        if vec and gb.reduce(vec):
            return False
    return True


class AnnihilatorDegree:
    """Degree ``t`` slice of the annihilator found by the linear-algebra oracle."""

    def __init__(self, degree, basis):
        self.degree = degree
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return "AnnihilatorDegree(t=%d, dim=%d)" % (self.degree, self.dim)


def _image_vectors(phi, s):
    """Spanning vectors of the degree ``s`` part of the image, keyed by ``(row, monomial)``."""
    ring = phi.ring
    vectors = []
    for j, col in enumerate(phi.columns()):
        d = s - phi.source.twists[j]
        if d < 0 or not col:
            continue
        for m in ring.monomials_of_degree(d):
            vec = mul_vector(ring, m, ring.domain.one, col)
            if vec:
                vectors.append(vec)
    return vectors


def _image_functionals(phi, s):
    """Functionals on the degree ``s`` part of the target vanishing on the image."""
    ring = phi.ring
    target = phi.target
    coords = {}
    for i in range(target.rank):
        if s - target.twists[i] >= 0:
            for m in ring.monomials_of_degree(s - target.twists[i]):
                coords[(i, m)] = len(coords)
    rows = [{coords[k]: c for k, c in vec.items()} for vec in _image_vectors(phi, s)]
    return coords, nullspace(rows, len(coords), ring.domain)


def annihilator_oracle(phi, max_degree):
    """
    Per-degree bases of the annihilator by brute-force linear algebra

    An element ``r`` of degree ``t`` annihilates the cokernel when every
    functional killing the image vanishes on ``r e_k`` for all ``k``.

    Parameters
    ----------
    phi : superfit.GradedMatrix
    max_degree : int
        largest degree ``t`` to solve for

    Returns
    -------
    list of superfit.AnnihilatorDegree
    """
    if max_degree < 0:
        raise ValueError("The value of 'max_degree' can't be negative")
    ring = phi.ring
    target = phi.target
    result = []
    for t in range(max_degree + 1):
        monos = ring.monomials_of_degree(t)
        functionals = {}
        constraints = []
        for k in range(target.rank):
            s = t + target.twists[k]
            if s not in functionals:
                functionals[s] = _image_functionals(phi, s)
            coords, forms = functionals[s]
            for form in forms:
                row = {}
                for mi, m in enumerate(monos):
                    c = form.get(coords[(k, m)])
                    if c:
                        row[mi] = c
                if row:
                    constraints.append(row)
        if target.rank == 0:
            basis = [ring.term(m) for m in monos]
        else:
            basis = [SuperPoly(ring, {monos[i]: c for i, c in vec.items()})
                     for vec in nullspace(constraints, len(monos), ring.domain)]
        result.append(AnnihilatorDegree(t, basis))
    return result


def minimalize(phi):
    """
    Strip unit entries of a presentation matrix, keeping its cokernel

    For a nonzero constant ``c`` at ``(i, j)``, clear row ``i`` with column
    operations ``col_k -= (c^-1 phi[i][k]) col_j`` and drop row ``i`` and column ``j``.
    """
    ring = phi.ring
    entries = [list(r) for r in phi.entries]
    rows = list(range(phi.target.rank))
    cols = list(range(phi.source.rank))
    unit = ring.unit_mono
    while True:
        pivot = None
        for i in rows:
            for j in cols:
                c = entries[i][j].coefficient(unit)
                if c:
                    pivot = (i, j, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, c = pivot
        inv = ring.domain.one / c
        for k in cols:
            if k == j or not entries[i][k]:
                continue
            factor = entries[i][k].scale(inv)
            for l in rows:
                if entries[l][j]:
                    entries[l][k] = entries[l][k] - factor * entries[l][j]
        rows.remove(i)
        cols.remove(j)
    target = GradedFreeModule.from_parities([phi.target.parities[i] for i in rows],
                                            [phi.target.twists[i] for i in rows])
    source = GradedFreeModule.from_parities([phi.source.parities[j] for j in cols],
                                            [phi.source.twists[j] for j in cols])
    return GradedMatrix(ring, target, source, [[entries[i][j] for j in cols] for i in rows])


def identity_matrix(ring, module):
    entries = [[ring.one() if i == j else ring.zero() for j in range(module.rank)]
               for i in range(module.rank)]
    return GradedMatrix(ring, module, module, entries)


def matrix_to_json(phi):
    return {"ring": phi.ring.to_dict(),
            "target": phi.target.to_dict(),
            "source": phi.source.to_dict(),
            "entries": [[str(f) for f in row] for row in phi.entries]}


def matrix_from_json(data, ring=None):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        if ring is None:
            ring = SuperRing.from_dict(data["ring"])
        target = GradedFreeModule.from_dict(data["target"])
        source = GradedFreeModule.from_dict(data["source"])
        entries = [[parse_poly(ring, text) for text in row] for row in data["entries"]]
    except (KeyError, TypeError) as err:
        raise ParseError("Invalid matrix JSON: %s" % err) from err
    return GradedMatrix(ring, target, source, entries)


def coker_dim(phi, t):
    """Dimension of the degree ``t`` part of the cokernel of ``phi``."""
    _, forms = _image_functionals(phi, t)
    return len(forms)


def image_dim(phi, t):
    return rank(_image_vectors(phi, t), phi.ring.domain)
