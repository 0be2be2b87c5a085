"""Super-commutative polynomial rings over QQ and GF(p).

A monomial is a plain exponent tuple laid out as the even variables followed by
the odd variables; odd entries are 0 or 1.  Polynomials keep their terms in a
dict ``{monomial: coefficient}`` with coefficients taken from a sympy domain.
"""
import json
import logging
import re
from itertools import combinations, combinations_with_replacement

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import ProductOrder, grevlex

from superfit.errors import HomogeneityError, ParseError, RingMismatchError

logger = logging.getLogger(__name__)


def mono_product(a, b, n_even):
    # odd part scanned from the top: each odd factor of b has to move left past
    # every odd factor of a with a larger index
    swaps = 0
    seen = 0
    for k in range(len(a) - 1, n_even - 1, -1):
        ak = a[k]
        bk = b[k]
        if ak and bk:
            return None
        if bk:
            swaps += seen
        if ak:
            seen += 1
    return (-1 if swaps & 1 else 1), tuple(x + y for x, y in zip(a, b))


class TermOrder:
    """
    A monomial order given by a sort key

    Parameters
    ----------
    name : str
        human readable name of the order
    key : callable
        maps a monomial tuple to a comparable key; larger key means larger monomial
    """

    def __init__(self, name, key):
        self.name = name
        self.key = key

    def __call__(self, mono):
        return self.key(mono)

    def __repr__(self):
        return "TermOrder(%s)" % self.name

    @classmethod
    def degrevlex(cls):
        return cls("degrevlex", grevlex)

    @classmethod
    def elimination(cls, block, nvars):
        """Block order with the variables of ``block`` compared first."""
        block = tuple(sorted(block))
        rest = tuple(i for i in range(nvars) if i not in block)
        key = ProductOrder(
            (grevlex, lambda m: tuple(m[i] for i in block)),
            (grevlex, lambda m: tuple(m[i] for i in rest)),
        )
        return cls("elim%s" % (block,), key)

    def compare(self, a, b):
        ka = self.key(a)
        kb = self.key(b)
        return (ka > kb) - (ka < kb)


DEGREVLEX = TermOrder.degrevlex()


def compare(order, a, b):
    """Return 1, 0 or -1 as ``a`` is greater, equal or smaller than ``b``."""
    return order.compare(a, b)


class SuperRing:
    """
    The free super-commutative algebra on even and odd generators

    Parameters
    ----------
    even_vars : sequence of str
        names of the even (central) generators
    odd_vars : sequence of str
        names of the odd generators; they anticommute and square to zero
    characteristic : int
        0 for the rationals, otherwise a prime p for GF(p)
    """

    def __init__(self, even_vars=(), odd_vars=(), characteristic=0):
        self.even_vars = tuple(even_vars)
        self.odd_vars = tuple(odd_vars)
        names = self.even_vars + self.odd_vars
        if len(set(names)) != len(names):
            raise ValueError("Variable names have to be unique across even and odd variables")
        if characteristic != 0 and not (characteristic > 1 and isprime(characteristic)):
            raise ValueError("The value of 'characteristic' has to be 0 or a prime, got %r"
                             % (characteristic,))
        self.characteristic = characteristic
        self.domain = QQ if characteristic == 0 else GF(characteristic, symmetric=False)
        self.names = names
        self.n_even = len(self.even_vars)
        self.n_odd = len(self.odd_vars)
        self.nvars = len(names)
        self._index = {name: i for i, name in enumerate(names)}
        self._monomial_cache = {}

    def __eq__(self, other):
        return (isinstance(other, SuperRing) and self.even_vars == other.even_vars
                and self.odd_vars == other.odd_vars
                and self.characteristic == other.characteristic)

    def __hash__(self):
        return hash((self.even_vars, self.odd_vars, self.characteristic))

    def __repr__(self):
        return "SuperRing(even=%s, odd=%s, char=%d)" % (
            list(self.even_vars), list(self.odd_vars), self.characteristic)

    # ---- variables and monomials ---

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ParseError("Unknown variable %r" % name) from None

    def is_odd(self, i):
        return i >= self.n_even

    @property
    def unit_mono(self):
        return (0,) * self.nvars

    def var_mono(self, i):
        return tuple(1 if k == i else 0 for k in range(self.nvars))

    def monomial(self, even_exp=(), odd_set=()):
        """Build the canonical monomial from an even exponent vector and odd indices."""
        even_exp = tuple(even_exp) + (0,) * (self.n_even - len(even_exp))
        odd_set = tuple(odd_set)
        if any(e < 0 for e in even_exp) or len(even_exp) != self.n_even:
            raise ValueError("Invalid even exponent vector %r" % (even_exp,))
        if any(j >= k for j, k in zip(odd_set, odd_set[1:])):
            raise ValueError("The odd set has to be strictly increasing, got %r" % (odd_set,))
        odd = [0] * self.n_odd
        for j in odd_set:
            odd[j] = 1
        return even_exp + tuple(odd)

    def even_exp(self, mono):
        return mono[:self.n_even]

    def odd_set(self, mono):
        return tuple(j for j, e in enumerate(mono[self.n_even:]) if e)

    def mono_parity(self, mono):
        return sum(mono[self.n_even:]) & 1

    def mono_mul(self, a, b):
        """Product of two monomials as ``(sign, monomial)``, or None when it vanishes."""
        if len(a) != self.nvars or len(b) != self.nvars:
            raise RingMismatchError("Monomials do not belong to %r" % (self,))
        return mono_product(a, b, self.n_even)

    def monomials_of_degree(self, t):
        """All monomials of total degree ``t``, largest first in degrevlex."""
        if t < 0:
            return []
        cached = self._monomial_cache.get(t)
        if cached is not None:
            return cached
        monos = []
        for k in range(min(t, self.n_odd) + 1):
            evens = []
            if self.n_even:
                for combo in combinations_with_replacement(range(self.n_even), t - k):
                    exp = [0] * self.n_even
                    for i in combo:
                        exp[i] += 1
                    evens.append(tuple(exp))
            elif t - k == 0:
                evens.append(())
            for odd in combinations(range(self.n_odd), k):
                tail = [0] * self.n_odd
                for j in odd:
                    tail[j] = 1
                monos.extend(e + tuple(tail) for e in evens)
        monos.sort(key=grevlex, reverse=True)
        self._monomial_cache[t] = monos
        return monos

    # ---- elements ---

    def convert(self, c):
        return self.domain.convert(c)

    def zero(self):
        return SuperPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.convert(c)
        return SuperPoly(self, {self.unit_mono: c} if c else {})

    def gen(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return SuperPoly(self, {self.var_mono(i): self.domain.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def term(self, mono, coeff=1):
        c = self.convert(coeff)
        return SuperPoly(self, {tuple(mono): c} if c else {})

    def from_terms(self, terms):
        """Build a polynomial from ``(monomial, coefficient)`` pairs, dropping zeros."""
        acc = {}
        for mono, c in terms:
            mono = tuple(mono)
            acc[mono] = acc.get(mono, self.domain.zero) + self.convert(c)
        return SuperPoly(self, {m: c for m, c in acc.items() if c})

    def extended(self, even_front=(), odd_back=()):
        """A ring with extra even variables in front and extra odd variables at the end."""
        return SuperRing(tuple(even_front) + self.even_vars, self.odd_vars + tuple(odd_back),
                         self.characteristic)

    def with_characteristic(self, characteristic):
        return SuperRing(self.even_vars, self.odd_vars, characteristic)

    def parse(self, text):
        return parse_poly(self, text)

    def to_dict(self):
        return {"even_vars": list(self.even_vars), "odd_vars": list(self.odd_vars),
                "char": self.characteristic}

    @classmethod
    def from_dict(cls, data):
        return cls(data["even_vars"], data["odd_vars"], data.get("char", 0))


class SuperPoly:
    """An element of a :class:`SuperRing`; treat instances as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("Polynomials belong to different rings: %r and %r"
                                    % (self.ring, other.ring))

    def _coerce(self, other):
        if isinstance(other, SuperPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s += c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return SuperPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        self._check(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        # scalars are even and central
        return self.scale(other)

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        c = self.ring.convert(c)
        if not c:
            return self.ring.zero()
        return SuperPoly(self.ring, {m: v * c for m, v in self.terms.items() if v * c})

    def mul_term(self, mono, coeff, left=True):
        """Multiply by the single term ``coeff * mono`` on the left or right."""
        ne = self.ring.n_even
        zero = self.ring.domain.zero
        coeff = self.ring.convert(coeff)
        out = {}
        for m, c in self.terms.items():
            r = mono_product(mono, m, ne) if left else mono_product(m, mono, ne)
            if r is not None:
                v = c * coeff if r[0] > 0 else -(c * coeff)
                out[r[1]] = out.get(r[1], zero) + v
        return SuperPoly(self.ring, {m: c for m, c in out.items() if c})

    # ---- gradings ---

    def degrees(self):
        return {sum(m) for m in self.terms}

    def degree(self):
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def parity(self):
        """0 or 1 when all terms share a parity, None when mixed; zero counts as even."""
        parities = {self.ring.mono_parity(m) for m in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def require_parity(self):
        p = self.parity()
        if p is None:
            raise HomogeneityError("Polynomial %s is not parity-homogeneous" % self)
        return p

    # ---- ordering ---

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order(t[0]), reverse=True)

    def leading_term(self, order=DEGREVLEX):
        if not self.terms:
            return None
        mono = max(self.terms, key=order)
        return mono, self.terms[mono]

    def monic(self, order=DEGREVLEX):
        lt = self.leading_term(order)
        if lt is None or lt[1] == self.ring.domain.one:
            return self
        inv = self.ring.domain.one / lt[1]
        return SuperPoly(self.ring, {m: c * inv for m, c in self.terms.items()})

    def sort_key(self):
        """Deterministic key ordering polynomials by their degrevlex term lists."""
        return [(grevlex(m), str(self.ring.domain.to_sympy(c)))
                for m, c in self.sorted_terms()]

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.ring.domain.zero)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "SuperPoly(%s)" % format_poly(self)


def mono_mul(ring, a, b):
    return ring.mono_mul(a, b)


def convert_coeff(c, source, target):
    """Move a coefficient between domains through its rational value."""
    if source == target:
        return c
    value = source.to_sympy(c)
    return target.convert(int(value.p)) / target.convert(int(value.q))


def substitute(f, images, target):
    """
    Apply the ring map sending variable ``i`` to ``images[i]``

    A monomial maps to the product of the images of its factors taken in
    canonical order.  Images must preserve parity.

    Parameters
    ----------
    f : superfit.SuperPoly
    images : list of superfit.SuperPoly
        one image per variable of ``f.ring``, all in ``target``
    target : superfit.SuperRing

    Returns
    -------
    superfit.SuperPoly
    """
    ring = f.ring
    if len(images) != ring.nvars:
        raise RingMismatchError("Expected %d images, got %d" % (ring.nvars, len(images)))
    for i, img in enumerate(images):
        p = img.parity()
        if p is None or (img and p != int(ring.is_odd(i))):
            raise HomogeneityError("Image %s of %s does not preserve parity"
                                   % (img, ring.names[i]))
    powers = {}
    result = target.zero()
    for mono, c in f.terms.items():
        term = target.const(convert_coeff(c, ring.domain, target.domain))
        for i, e in enumerate(mono):
            if not e:
                continue
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            term = term * powers[key]
            if not term:
                break
        result = result + term
    return result


def poly_mul(f, g):
    """Bilinear extension of the signed monomial product."""
    f._check(g)
    ne = f.ring.n_even
    out = {}
    for ma, ca in f.terms.items():
        for mb, cb in g.terms.items():
            r = mono_product(ma, mb, ne)
            if r is None:
                continue
            v = ca * cb
            if r[0] < 0:
                v = -v
            m = r[1]
            s = out.get(m)
            out[m] = v if s is None else s + v
    return SuperPoly(f.ring, {m: c for m, c in out.items() if c})


def random_poly(ring, rng, degree, parity=None, terms=3):
    """
    Random homogeneous polynomial drawn from a ``random.Random``

    Parameters
    ----------
    ring : superfit.SuperRing
    rng : random.Random
    degree : int
    parity : int, optional
        keep only monomials of this parity; any parity by default
    terms : int
        at most this many monomials, with coefficients in ``[-3, 3] \\ {0}``

    Returns
    -------
    superfit.SuperPoly
        zero when no monomial fits (or every coefficient vanishes in the field)
    """
    monos = [m for m in ring.monomials_of_degree(degree)
             if parity is None or ring.mono_parity(m) == parity]
    chosen = rng.sample(monos, min(terms, len(monos)))
    return ring.from_terms((m, rng.choice((-3, -2, -1, 1, 2, 3))) for m in chosen)


# ---- textual and JSON formats ---

def format_coeff(domain, c):
    return str(domain.to_sympy(c))


def _format_mono(ring, mono):
    factors = []
    for i, e in enumerate(mono):
        if e == 1:
            factors.append(ring.names[i])
        elif e > 1:
            factors.append("%s^%d" % (ring.names[i], e))
    return "*".join(factors)


def format_poly(f):
    """Render ``f`` with terms in descending degrevlex order."""
    if not f.terms:
        return "0"
    ring = f.ring
    out = []
    for mono, c in f.sorted_terms():
        value = ring.domain.to_sympy(c)
        negative = value < 0
        if negative:
            value = -value
        body = _format_mono(ring, mono)
        if not body:
            text = str(value)
        elif value == 1:
            text = body
        else:
            text = "%s*%s" % (value, body)
        if not out:
            out.append("-" + text if negative else text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_COEFF = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(ring, text):
    """
    Parse a polynomial written as a signed sum of ``*``-separated factors

    Factors are multiplied in the order written, so odd factors out of canonical
    order pick up their Koszul signs.

    Parameters
    ----------
    ring : superfit.SuperRing
        the ring the polynomial lives in
    text : str
        e.g. ``"x1_1*y1_1 - 2/3*a1_1*b1_1"``

    Returns
    -------
    superfit.SuperPoly
    """
    text = text.strip()
    if not text:
        raise ParseError("Empty polynomial text")
    pieces = _TERM_SPLIT.split(text)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ParseError("Dangling sign in %r" % text)
    result = ring.zero()
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise ParseError("Missing term after %r in %r" % (sign, text))
        term = ring.one()
        for factor in body.split("*"):
            factor = factor.strip()
            cm = _COEFF.match(factor)
            if cm:
                num = ring.convert(int(cm.group(1)))
                den = ring.convert(int(cm.group(2) or 1))
                if not den:
                    raise ParseError("Zero denominator in %r" % factor)
                term = term.scale(num / den)
                continue
            fm = _FACTOR.match(factor)
            if not fm:
                raise ParseError("Cannot parse factor %r in %r" % (factor, text))
            i = ring.index(fm.group(1))
            power = int(fm.group(2) or 1)
            if ring.is_odd(i) and power > 1:
                term = ring.zero()
                continue
            term = term * ring.gen(i) ** power
        result = result + (-term if sign == "-" else term)
    return result


def poly_to_json(f):
    ring = f.ring
    return [{"coeff": format_coeff(ring.domain, c),
             "even_exp": list(ring.even_exp(m)),
             "odd_set": list(ring.odd_set(m))}
            for m, c in f.sorted_terms()]


def poly_from_json(ring, data):
    if isinstance(data, str):
        data = json.loads(data)
    terms = []
    try:
        for entry in data:
            num, _, den = str(entry["coeff"]).partition("/")
            c = ring.convert(int(num)) / ring.convert(int(den or 1))
            terms.append((ring.monomial(entry["even_exp"], entry["odd_set"]), c))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
        raise ParseError("Invalid polynomial JSON: %s" % err) from err
    return ring.from_terms(terms)
