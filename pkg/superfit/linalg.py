"""Exact linear algebra over the coefficient domain of a ring.

Vectors are sparse dicts ``{key: coefficient}``; batch questions (rank,
nullspace) are answered by sympy's ``DomainMatrix``, incremental span
membership by :class:`VectorSpan`.
"""
from sympy.polys.matrices import DomainMatrix


def column_index(vectors):
    """Assign consecutive column numbers to the keys of ``vectors`` in first-seen order."""
    index = {}
    for vec in vectors:
        for k in vec:
            if k not in index:
                index[k] = len(index)
    return index


def to_domain_matrix(rows, ncols, domain):
    sdm = {i: dict(row) for i, row in enumerate(rows) if row}
    return DomainMatrix(sdm, (len(rows), ncols), domain)


def rank(vectors, domain):
    """Dimension of the span of sparse vectors."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    index = column_index(vectors)
    rows = [{index[k]: c for k, c in v.items()} for v in vectors]
    return to_domain_matrix(rows, len(index), domain).rank()


def nullspace(rows, ncols, domain):
    """
    Basis of ``{x : row . x = 0 for every row}``

    Parameters
    ----------
    rows : list of dict
        sparse rows ``{column: coefficient}``
    ncols : int
        number of columns
    domain : sympy domain

    Returns
    -------
    list of dict
        basis vectors as sparse dicts keyed by column
    """
    if ncols == 0:
        return []
    rows = [r for r in rows if r]
    if not rows:
        return [{j: domain.one} for j in range(ncols)]
    ns = to_domain_matrix(rows, ncols, domain).nullspace()
    basis = []
    for row in ns.to_list():
        vec = {j: c for j, c in enumerate(row) if c}
        if vec:
            basis.append(vec)
    return basis


def linear_relations(vectors, domain):
    """Basis of the coefficient tuples ``c`` with ``sum c_i v_i = 0`` (as sparse dicts on i)."""
    if not vectors:
        return []
    index = column_index(vectors)
    # transpose: one row per key, one column per vector
    rows = [dict() for _ in range(len(index))]
    for i, vec in enumerate(vectors):
        for k, c in vec.items():
            rows[index[k]][i] = c
    return nullspace(rows, len(vectors), domain)


class VectorSpan:
    """
    Incrementally maintained echelon form of a span of sparse vectors

    Every stored row is monic in its pivot, and the pivot is the largest key of
    the row under ``key``; reducing by the largest pivot first only introduces
    smaller keys, so reduction terminates.

    Parameters
    ----------
    domain : sympy domain
        the coefficient field
    key : callable, optional
        ordering of vector keys used to choose pivots
    """

    def __init__(self, domain, key=None):
        self.domain = domain
        self._key = key if key is not None else (lambda k: k)
        self._rows = {}
        self.basis = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, vec):
        vec = dict(vec)
        rows = self._rows
        while True:
            hits = [k for k in vec if k in rows]
            if not hits:
                return vec
            p = max(hits, key=self._key)
            c = vec[p]
            for k, v in rows[p].items():
                s = vec.get(k, self.domain.zero) - c * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)

    def contains(self, vec):
        return not self.reduce(vec)

    def add(self, vec):
        """Add ``vec`` to the span; return True when the dimension grew."""
        red = self.reduce(vec)
        if not red:
            return False
        p = max(red, key=self._key)
        inv = self.domain.one / red[p]
        self._rows[p] = {k: c * inv for k, c in red.items()}
        self.basis.append(vec)
        return True
