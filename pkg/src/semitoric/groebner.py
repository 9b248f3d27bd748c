"""Multivariate polynomials over ``Q(T)`` and Buchberger's algorithm.

Monomial orders are products of graded reverse lexicographic blocks.  Within a
block, a variable listed later is larger, so in the default order on
``x1..xr`` the linear relations eliminate the high-index variables first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from numbers import Rational

from .errors import InfiniteQuotient
from .exact.linalg import ScalarMatrix
from .exact.novikov import ONE, ZERO, NovikovScalar

Monomial = tuple  # exponent vector, one entry per ring variable


@dataclass(frozen=True)
class MonomialOrder:
    """Block order; each block is graded reverse lexicographic.

    ``blocks`` partitions the variable indices.  Earlier blocks dominate, so
    ``MonomialOrder(((0,), (1, 2)))`` eliminates variable 0.
    """

    blocks: tuple

    @classmethod
    def grevlex(cls, nvars):
        return cls((tuple(range(nvars)),))

    @classmethod
    def block(cls, front, back):
        return cls((tuple(front), tuple(back)))

    @property
    def tag(self):
        return "GrevLex" if len(self.blocks) == 1 else "Block"

    def key(self, m):
        k = _KEY_CACHE.get((self.blocks, m))
        if k is None:
            k = tuple((sum(m[i] for i in b), tuple(-m[i] for i in b)) for b in self.blocks)
            _KEY_CACHE[(self.blocks, m)] = k
        return k


_KEY_CACHE: dict = {}


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    order: MonomialOrder

    @classmethod
    def make(cls, names, order=None):
        names = tuple(names)
        return cls(names, order or MonomialOrder.grevlex(len(names)))

    @property
    def nvars(self):
        return len(self.names)

    @property
    def one_monomial(self):
        return (0,) * len(self.names)

    def gen(self, i):
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): ONE})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name):
        return self.gen(self.names.index(name))

    def const(self, c):
        c = NovikovScalar.coerce(c)
        return Poly(self, {self.one_monomial: c} if c else {})

    def monomial(self, exps, coeff=ONE):
        coeff = NovikovScalar.coerce(coeff)
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def zero(self):
        return Poly(self, {})

    def render_monomial(self, m):
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


def _mdiv(a, b):
    """``a / b`` if ``b`` divides ``a``, else ``None``."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def _divides(b, a):
    return all(y <= x for x, y in zip(a, b))


def _mlcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial: a map from exponent vectors to nonzero scalars."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._lm = None

    # structure
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def LM(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no lead monomial")
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    @property
    def LC(self):
        return self.terms[self.LM]

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def is_one(self):
        return len(self.terms) == 1 and self.ring.one_monomial in self.terms and \
            self.terms[self.ring.one_monomial].is_one()

    def involves(self, i):
        return any(m[i] for m in self.terms)

    def variables(self):
        return sorted({i for m in self.terms for i, e in enumerate(m) if e})

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (NovikovScalar, Rational)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = NovikovScalar.coerce(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: c * a for m, a in self.terms.items()})

    def mul_term(self, mono, c=ONE):
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {_mmul(m, mono): c * a for m, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (NovikovScalar, Rational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mmul(m1, m2)
                s = out.get(m)
                p = c1 * c2
                out[m] = p if s is None else s + p
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self):
        if not self.terms:
            return self
        lc = self.LC
        if lc.is_one():
            return self
        return self.scale(lc.inverse())

    def __eq__(self, other):
        if isinstance(other, (NovikovScalar, Rational)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def substitute(self, i, value):
        """Replace variable ``i`` by the polynomial ``value``."""
        out = self.ring.zero()
        for m, c in self.terms.items():
            rest = list(m)
            e = rest[i]
            rest[i] = 0
            out = out + self.ring.monomial(rest, c) * (value ** e)
        return out

    def embed(self, ring, index_map):
        """Move into ``ring``; variable ``j`` goes to position ``index_map[j]``."""
        out = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for j, e in enumerate(m):
                if e:
                    mm[index_map[j]] = e
            out[tuple(mm)] = c
        return Poly(ring, out)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)})"


def render(p):
    """Canonical text: descending terms, coefficients in lowest terms."""
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        ms = p.ring.render_monomial(m)
        negative = not c.needs_parens() and c.num[-1] < 0
        if negative:
            c = -c
        if c.is_one():
            body = ms or "1"
        else:
            cs = f"({c})" if c.needs_parens() else str(c)
            body = f"{cs}*{ms}" if ms else cs
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def normal_form(p, gb):
    """Remainder of ``p`` under full multivariate division by ``gb``."""
    divisors = gb.generators if isinstance(gb, GroebnerBasis) else list(gb)
    return _reduce(p, divisors)


def _reduce(p, divisors):
    if not p.terms:
        return p
    key = p.ring.order.key
    work = dict(p.terms)
    rem = {}
    leads = [(g.LM, g.LC, g) for g in divisors]
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, lc, g in leads:
            q = _mdiv(m, lm)
            if q is not None:
                f = c / lc if not lc.is_one() else c
                for gm, gc in g.terms.items():
                    mm = _mmul(gm, q)
                    s = work.get(mm)
                    d = f * gc
                    if s is None:
                        work[mm] = -d
                    else:
                        s = s - d
                        if s:
                            work[mm] = s
                        else:
                            del work[mm]
                break
        else:
            rem[m] = work.pop(m)
    return Poly(p.ring, rem)


def _spoly(f, g):
    lcm = _mlcm(f.LM, g.LM)
    return f.mul_term(_mdiv(lcm, f.LM)) - g.mul_term(_mdiv(lcm, g.LM))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis sorted by descending lead monomial."""

    ring: PolyRing
    generators: tuple

    @property
    def order(self):
        return self.ring.order

    def lead_monomials(self):
        return [g.LM for g in self.generators]

    def is_unit_ideal(self):
        return any(g.is_one() for g in self.generators)

    def contains(self, p):
        return normal_form(p, self).is_zero()

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        return "[" + ", ".join(render(g) for g in self.generators) + "]"


def buchberger(gens, ring=None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are chosen by the normal strategy (smallest lcm first) with ties
    broken by pair index; the coprime-lead and chain criteria discard pairs.
    """
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    key = ring.order.key

    G = []
    pending = set()

    def add(f):
        f = f.monic()
        if f.is_one():
            G.clear()
            pending.clear()
            G.append(f)
            return True
        k = len(G)
        G.append(f)
        pending.update((i, k) for i in range(k))
        return False

    # inter-reduce the input once so trivially redundant generators drop out
    for f in sorted(gens, key=lambda g: key(g.LM)):
        r = _reduce(f, G)
        if r and add(r):
            return GroebnerBasis(ring, (G[0],))

    while pending:
        i, j = min(pending, key=lambda p: (sum(_mlcm(G[p[0]].LM, G[p[1]].LM)),
                                           key(_mlcm(G[p[0]].LM, G[p[1]].LM)), p))
        pending.discard((i, j))
        fi, fj = G[i], G[j]
        lcm = _mlcm(fi.LM, fj.LM)
        if lcm == _mmul(fi.LM, fj.LM):
            continue
        if _chain_criterion(i, j, lcm, G, pending):
            continue
        s = _reduce(_spoly(fi, fj), G)
        if s and add(s):
            return GroebnerBasis(ring, (G[0],))
    return GroebnerBasis(ring, _reduced(G, ring))


def _chain_criterion(i, j, lcm, G, pending):
    for k, g in enumerate(G):
        if k in (i, j):
            continue
        if _divides(g.LM, lcm):
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                return True
    return False


def _reduced(G, ring):
    key = ring.order.key
    G = sorted(G, key=lambda g: key(g.LM))
    minimal = []
    for g in G:
        if not any(_divides(h.LM, g.LM) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(_reduce(g, others).monic())
    out.sort(key=lambda g: key(g.LM), reverse=True)
    return tuple(out)


class QuotientBasis:
    """Standard monomials of ``R/I``; ``monomials is None`` marks an infinite quotient."""

    __slots__ = ("ring", "monomials")

    def __init__(self, ring, monomials):
        self.ring = ring
        self.monomials = None if monomials is None else tuple(monomials)

    @property
    def finite(self):
        return self.monomials is not None

    @property
    def dim(self):
        return len(self.monomials) if self.finite else None

    def index(self, m):
        return self.monomials.index(m)

    def render(self):
        if not self.finite:
            return "Infinite"
        return [self.ring.render_monomial(m) or "1" for m in self.monomials]

    def __eq__(self, other):
        if not isinstance(other, QuotientBasis):
            return NotImplemented
        return self.ring == other.ring and self.monomials == other.monomials

    def __repr__(self):
        return f"QuotientBasis({self.render()})"


def monomials_outside(leads, nvars):
    """Exponent vectors not divisible by any of ``leads``, or ``None`` if infinitely many."""
    leads = [tuple(lm) for lm in leads]
    if any(not any(lm) for lm in leads):
        return []
    bounds = []
    for i in range(nvars):
        pure = [lm[i] for lm in leads if lm[i] and sum(lm) == lm[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    return [m for m in _cartesian(*(range(b) for b in bounds))
            if not any(_divides(lm, m) for lm in leads)]


def standard_monomials(gb):
    ring = gb.ring
    mons = monomials_outside(gb.lead_monomials(), ring.nvars)
    if mons is None:
        return QuotientBasis(ring, None)
    mons.sort(key=ring.order.key)
    return QuotientBasis(ring, mons)


def saturate(gens, m, ring=None):
    """Groebner basis of ``(I : m^inf)`` via an auxiliary eliminated variable."""
    gens = [g for g in gens if g]
    if ring is None:
        ring = gens[0].ring
    m = tuple(m)
    if not any(m):
        raise ValueError("saturating monomial must not be 1")
    n = ring.nvars
    blocks = ((0,),) + tuple(tuple(i + 1 for i in b) for b in ring.order.blocks)
    big = PolyRing(("_sat",) + ring.names, MonomialOrder(blocks))
    shift = {j: j + 1 for j in range(n)}
    lifted = [g.embed(big, shift) for g in gens]
    y_m = big.monomial((1,) + m)
    lifted.append(big.const(1) - y_m)
    gb = buchberger(lifted, big)
    kept = []
    for g in gb.generators:
        if g.involves(0):
            continue
        kept.append(Poly(ring, {mono[1:]: c for mono, c in g.terms.items()}))
    key = ring.order.key
    kept.sort(key=lambda g: key(g.LM), reverse=True)
    return GroebnerBasis(ring, tuple(kept))


def multiplication_matrix(gb, p, basis=None):
    """Matrix of ``q -> NF(p*q)`` on the standard monomials, one column per basis element."""
    basis = basis or standard_monomials(gb)
    if not basis.finite:
        raise InfiniteQuotient("quotient is infinite dimensional")
    ring = gb.ring
    pos = {m: i for i, m in enumerate(basis.monomials)}
    d = len(pos)
    cols = []
    for m in basis.monomials:
        r = normal_form(p * ring.monomial(m), gb)
        col = [ZERO] * d
        for mono, c in r.terms.items():
            col[pos[mono]] = c
        cols.append(col)
    return ScalarMatrix.from_columns(cols, d) if d else ScalarMatrix([], 0, 0)


def coordinates(p, gb, basis):
    """Coordinate vector of ``NF(p)`` with respect to the standard monomials."""
    r = normal_form(p, gb)
    vec = [ZERO] * basis.dim
    pos = {m: i for i, m in enumerate(basis.monomials)}
    for mono, c in r.terms.items():
        vec[pos[mono]] = c
    return tuple(vec)


def ideal_equal(a, b):
    """Equality of ideals given by generator lists or bases, via reduced bases."""
    ga = a if isinstance(a, GroebnerBasis) else buchberger(a)
    gb_ = b if isinstance(b, GroebnerBasis) else buchberger(b)
    return ga == gb_
