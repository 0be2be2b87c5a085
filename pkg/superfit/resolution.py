"""Truncated minimal free resolutions and predicted Betti tables."""
import json
import logging
from enum import Enum

from superfit.errors import ResourceLimitError
from superfit.groebner import minimal_vectors
from superfit.report import Report, Status
from superfit.schur import (Partition, conjugate, hook_schur_parity_dims, in_hook,
                            is_partition, lambda_de, partitions_of)
from superfit.supermodule import (GradedFreeModule, GradedMatrix, coker_dim, compose,
                                  image_dim, minimalize, syzygies)

logger = logging.getLogger(__name__)


class BettiTable:
    """
    Ranks of the free modules of a resolution by homological and internal degree

    Parameters
    ----------
    i_max : int, optional
        last homological degree covered
    j_max : int, optional
        last internal degree covered; None when not truncated in degree
    truncated : bool, optional
        whether a computation cap cut the table short
    """

    def __init__(self, i_max=None, j_max=None, truncated=False):
        self.entries = {}
        self.i_max = i_max
        self.j_max = j_max
        self.truncated = truncated

    def add(self, i, j, parity, count=1):
        if count < 0:
            raise ValueError("Betti numbers can't be negative")
        even, odd = self.entries.get((i, j), (0, 0))
        if parity:
            odd += count
        else:
            even += count
        if even or odd:
            self.entries[(i, j)] = (even, odd)

    def get(self, i, j):
        return self.entries.get((i, j), (0, 0))

    def rank(self, i):
        """``(even, odd)`` rank of the ``i``-th module over all internal degrees."""
        even = sum(v[0] for (k, _), v in self.entries.items() if k == i)
        odd = sum(v[1] for (k, _), v in self.entries.items() if k == i)
        return even, odd

    def total(self, i):
        return sum(self.rank(i))

    def degrees(self, i=None):
        return sorted({j for (k, j) in self.entries if i is None or k == i})

    def homological_degrees(self):
        return sorted({k for (k, _) in self.entries})

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return "BettiTable(%s)" % {i: self.rank(i) for i in self.homological_degrees()}

    def to_dict(self):
        return {"entries": [[i, j, ev, od] for (i, j), (ev, od) in sorted(self.entries.items())],
                "i_max": self.i_max, "j_max": self.j_max, "truncated": self.truncated}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        table = cls(data.get("i_max"), data.get("j_max"), data.get("truncated", False))
        for i, j, even, odd in data["entries"]:
            table.add(i, j, 0, even)
            table.add(i, j, 1, odd)
        return table


class ConjecturePrediction(BettiTable):
    """Predicted Betti table, with the shape pairs behind every homological degree."""

    def __init__(self, i_max=None, j_max=None, reading=None):
        super().__init__(i_max, j_max)
        self.reading = reading
        self.provenance = {}

    def to_dict(self):
        data = super().to_dict()
        data["reading"] = self.reading.value if self.reading else None
        data["provenance"] = {str(i): rows for i, rows in sorted(self.provenance.items())}
        return data


class ConjectureReading(Enum):
    """
    LITERAL takes the displayed index shapes as they stand and drops the ones that
    are not partitions.  CORRECTED rebuilds them so that ``e = 0`` gives the
    Buchsbaum-Rim ranks and ``d = 0, e = 1`` the resolution of the residue field
    of an exterior algebra.
    """
    LITERAL = "literal"
    CORRECTED = "corrected"


def module_dim(ring, module, j):
    """Dimension of the degree ``j`` part of a graded free module."""
    return sum(len(ring.monomials_of_degree(j - tw)) for tw in module.twists)


class Resolution:
    """
    A computed chain ``F_0 <- F_1 <- ...`` with ``maps[k]`` going ``F_{k+1} -> F_k``

    Parameters
    ----------
    modules : list of superfit.GradedFreeModule
    maps : list of superfit.GradedMatrix
    i_max, j_max : int
        the caps the resolution was computed with
    truncated : bool
    instance : dict, optional
        where the presented module came from
    """

    def __init__(self, modules, maps, i_max, j_max=None, truncated=False, instance=None):
        self.modules = modules
        self.maps = maps
        self.i_max = i_max
        self.j_max = j_max
        self.truncated = truncated
        self.instance = dict(instance or {})

    @property
    def ring(self):
        return self.maps[0].ring if self.maps else None

    @property
    def complete(self):
        """True when the last computed module is zero."""
        return self.modules[-1].rank == 0

    @property
    def betti(self):
        table = BettiTable(self.i_max, self.j_max, self.truncated)
        for i, module in enumerate(self.modules):
            for parity, twist in zip(module.parities, module.twists):
                if self.j_max is None or twist <= self.j_max:
                    table.add(i, twist, parity)
        return table


def minimal_presentation(phi):
    """Strip unit entries, then keep a minimal subset of the columns."""
    phi = minimalize(phi)
    columns = phi.columns()
    kept = {id(v) for v in minimal_vectors(phi.ring, columns, phi.target.twists)}
    cols = [j for j, v in enumerate(columns) if id(v) in kept]
    if len(cols) == phi.source.rank:
        return phi
    source = GradedFreeModule.from_parities([phi.source.parities[j] for j in cols],
                                            [phi.source.twists[j] for j in cols])
    return GradedMatrix(phi.ring, phi.target, source,
                        [[row[j] for j in cols] for row in phi.entries])


def resolve_complex(phi, i_max=4, j_max=None, max_pairs=None, instance=None):
    """
    Minimal free resolution of ``coker phi`` up to homological degree ``i_max``

    Parameters
    ----------
    phi : superfit.GradedMatrix
        a homogeneous presentation
    i_max : int, optional
        last homological degree to compute
    j_max : int, optional
        drop syzygies of internal degree above this bound
    max_pairs : int, optional
        S-pair budget per syzygy computation; exhausting it ends the resolution early

    Returns
    -------
    superfit.Resolution
    """
    if i_max < 0:
        raise ValueError("The value of 'i_max' can't be negative")
    if j_max is not None and j_max < 0:
        raise ValueError("The value of 'j_max' can't be negative")
    phi.check_homogeneous()
    current = minimal_presentation(phi)
    modules = [current.target]
    maps = []
    truncated = False
    reached = i_max
    for i in range(1, i_max + 1):
        maps.append(current)
        modules.append(current.source)
        if current.source.rank == 0 or i == i_max:
            break
        try:
            current = syzygies(current, minimal=True, max_degree=j_max, max_pairs=max_pairs)
        except ResourceLimitError as err:
            logger.warning("Resolution stopped after F_%d: %s", i, err)
            truncated = True
            reached = i
            break
        truncated = truncated or current.truncated
        logger.debug("F_%d has rank %d", i + 1, current.source.rank)
    return Resolution(modules, maps, reached, j_max, truncated, instance)


def resolve(phi, i_max=4, j_max=None, max_pairs=None):
    """Betti table of the truncated minimal resolution of ``coker phi``."""
    return resolve_complex(phi, i_max, j_max, max_pairs).betti


def euler_characteristic(resolution, j):
    """Alternating sum of the degree ``j`` dimensions of the computed modules."""
    ring = resolution.ring
    if ring is None:
        return 0
    return sum((-1) ** i * module_dim(ring, module, j)
               for i, module in enumerate(resolution.modules))


def check_exactness(resolution, j_max=None):
    """
    Consecutive maps compose to zero, entries have no constant term, homology
    vanishes up to ``j_max`` and the Euler characteristic matches the cokernel.

    Returns
    -------
    superfit.Report
    """
    maps = resolution.maps
    failures = []
    if not maps:
        return Report("exactness", resolution.instance, Status.PASS)
    ring = resolution.ring
    if j_max is None:
        j_max = resolution.j_max
    if j_max is None:
        j_max = max(tw for m in resolution.modules for tw in m.twists or (0,)) + 1
    unit = ring.unit_mono
    for k, d in enumerate(maps):
        if any(f.coefficient(unit) for row in d.entries for f in row):
            failures.append("d_%d has a unit entry" % (k + 1))
    for k in range(len(maps) - 1):
        if not compose(maps[k], maps[k + 1]).is_zero():
            failures.append("d_%d d_%d != 0" % (k + 1, k + 2))
    for k in range(1, len(maps)):
        module = resolution.modules[k]
        for j in range(j_max + 1):
            kernel = module_dim(ring, module, j) - image_dim(maps[k - 1], j)
            if kernel != image_dim(maps[k], j):
                failures.append("homology at F_%d in degree %d" % (k, j))
    # F_i starts in degree >= i, so degree j only needs F_0..F_j
    top = j_max if resolution.complete else min(j_max, len(resolution.modules) - 1)
    for j in range(top + 1):
        if euler_characteristic(resolution, j) != coker_dim(maps[0], j):
            failures.append("Euler characteristic in degree %d" % j)
    return Report("exactness", resolution.instance,
                  Status.FAIL if failures else Status.PASS, witnesses=failures,
                  details={"maps": len(maps), "j_max": j_max})


def _tensor_parity_dims(v_dims, u_dims):
    (ve, vo), (ue, uo) = v_dims, u_dims
    return ve * ue + vo * uo, ve * uo + vo * ue


def _index_shapes(d, e, alpha, beta, reading):
    if reading == ConjectureReading.LITERAL:
        theta = [d + 1 + alpha.part(j) for j in range(e)] + [e + 1] + list(conjugate(beta))
        lam = [d + 1 + beta.part(j) for j in range(e)] + [e] + list(conjugate(alpha))
    else:
        theta = [d + 1 + alpha.part(j) for j in range(e + 1)] + list(conjugate(beta))
        lam = [d + 1 + beta.part(j) for j in range(e)] + [d] + list(conjugate(alpha))
    while theta and theta[-1] == 0:
        theta.pop()
    while lam and lam[-1] == 0:
        lam.pop()
    return theta, lam


def predict_conjecture41(d, e, m, n, i_max=4, j_max=None,
                         reading=ConjectureReading.CORRECTED):
    """
    Betti table predicted for the generic cokernel

    ``F_0`` is ``U*`` in degree 0, ``F_1`` is ``V`` in degree 1, and ``F_i`` for
    ``i >= 2`` sits in degree ``i - 1 + |Lambda(d,e)|`` as a sum over shape pairs
    ``(alpha, beta)`` with ``|alpha| + |beta| = i - 2``.  A summand's parity is the
    number of primed entries of its two hook tableaux, mod 2.

    Parameters
    ----------
    d, e, m, n : int
    i_max : int, optional
    j_max : int, optional
        defaults to ``|Lambda(d,e)| + 4``
    reading : superfit.ConjectureReading, optional

    Returns
    -------
    superfit.ConjecturePrediction
    """
    size = lambda_de(d, e).size
    if j_max is None:
        j_max = size + 4
    table = ConjecturePrediction(i_max, j_max, reading)
    table.add(0, 0, 0, d)
    table.add(0, 0, 1, e)
    if i_max >= 1:
        table.add(1, 1, 0, m)
        table.add(1, 1, 1, n)
    alpha_parts = e if reading == ConjectureReading.LITERAL else e + 1
    for i in range(2, i_max + 1):
        degree = i - 1 + size
        rows = []
        for a in range(i - 1):
            for alpha in partitions_of(a, max_parts=alpha_parts):
                for beta in partitions_of(i - 2 - a, max_parts=e):
                    theta, lam = _index_shapes(d, e, alpha, beta, reading)
                    if not (is_partition(theta) and is_partition(lam)):
                        logger.info("Skipping non-partition shapes %s, %s for alpha=%s beta=%s",
                                    theta, lam, list(alpha), list(beta))
                        continue
                    theta, lam = Partition(theta), Partition(lam)
                    if reading == ConjectureReading.CORRECTED:
                        v_shape, u_shape = conjugate(theta), conjugate(lam)
                    else:
                        v_shape, u_shape = theta, lam
                    if not (in_hook(v_shape, m, n) and in_hook(u_shape, d, e)):
                        continue
                    v_dims = hook_schur_parity_dims(v_shape, m, n)
                    u_dims = hook_schur_parity_dims(u_shape, d, e)
                    even, odd = _tensor_parity_dims(v_dims, u_dims)
                    table.add(i, degree, 0, even)
                    table.add(i, degree, 1, odd)
                    rows.append({"alpha": list(alpha), "beta": list(beta),
                                 "theta": list(theta), "lambda": list(lam),
                                 "v_dims": list(v_dims), "u_dims": list(u_dims)})
        table.provenance[i] = rows
    return table


def _window(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def compare(actual, predicted, instance=None):
    """
    Per homological degree agreement of two Betti tables inside their common window

    Returns
    -------
    superfit.Report
        PASS when all entries agree, MISMATCH otherwise; the details keep the
        parity-resolved and the total comparison apart
    """
    i_top = _window(actual.i_max, predicted.i_max)
    j_top = _window(actual.j_max, predicted.j_max)
    if i_top is None:
        i_top = max(actual.homological_degrees() + predicted.homological_degrees(), default=0)
    per_degree = {}
    all_match = True
    for i in range(i_top + 1):
        js = sorted(set(actual.degrees(i)) | set(predicted.degrees(i)))
        if j_top is not None:
            js = [j for j in js if j <= j_top]
        diffs = []
        for j in js:
            a, p = actual.get(i, j), predicted.get(i, j)
            if a != p:
                diffs.append({"j": j, "actual": list(a), "predicted": list(p)})
        total_match = all(sum(actual.get(i, j)) == sum(predicted.get(i, j)) for j in js)
        per_degree[str(i)] = {"match": not diffs, "total_match": total_match, "diffs": diffs}
        all_match = all_match and not diffs
    details = {"window": {"i_max": i_top, "j_max": j_top}, "degrees": per_degree,
               "actual": actual.to_dict(), "predicted": predicted.to_dict(),
               "truncated": actual.truncated}
    if isinstance(predicted, ConjecturePrediction) and predicted.reading is not None:
        details["parity_rule"] = "primed entries mod 2"
    return Report("conj41", instance or {}, Status.PASS if all_match else Status.MISMATCH,
                  details=details)


def verify_conj41(setup, i_max=4, j_max=None, reading=ConjectureReading.CORRECTED,
                  max_pairs=None):
    """Resolve the generic cokernel of ``setup`` and compare with the prediction."""
    if j_max is None:
        j_max = setup.lambda_de.size + 4
    resolution = resolve_complex(setup.phi, i_max, j_max, max_pairs, setup.instance())
    predicted = predict_conjecture41(setup.d, setup.e, setup.m, setup.n, i_max, j_max, reading)
    return compare(resolution.betti, predicted, setup.instance())


def format_betti(table):
    """Aligned text grid: one row per internal degree, one column per homological degree."""
    homological = list(range((table.i_max if table.i_max is not None else
                              max(table.homological_degrees(), default=0)) + 1))
    internal = table.degrees()
    cells = {(i, j): "%d|%d" % table.get(i, j) if table.get(i, j) != (0, 0) else "."
             for i in homological for j in internal}
    width = max([len(c) for c in cells.values()] + [len(str(i)) for i in homological] + [1])
    label = max([len(str(j)) for j in internal] + [1]) + 1
    lines = [" " * label + " " + " ".join(str(i).rjust(width) for i in homological)]
    for j in internal:
        lines.append(("%d:" % j).rjust(label) + " "
                     + " ".join(cells[(i, j)].rjust(width) for i in homological))
    if table.truncated:
        lines.append("(truncated)")
    return "\n".join(lines)
