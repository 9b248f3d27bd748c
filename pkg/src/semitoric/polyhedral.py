"""Fans, their supports and duals, moment polytopes, and circle actions.

Ray labels are 1-based throughout (ray ``i`` is the divisor ``D_i``); a cone
is a sorted tuple of labels.  All arithmetic is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd, lcm

from .errors import (
    CompactFan, CompleteFan, ConeOverlap, DimensionMismatch, InputError,
    NonIntegralCoordinates, NonIsolatedFixedLocus, NonPrimitiveRay,
    NonUnimodularCone, NotComplete, NotContracting, NoVertices, RhsMeetsLhs,
    UnboundedBelow, UnboundedSearch,
)
from .exact.intmat import (
    determinant, rank, rational_nullspace, solve_in_span,
    to_integer_vector,
)

HILBERT_SEARCH_LIMIT = 2_000_000


class InvalidMomentData(InputError):
    """Offsets whose polyhedron does not have the fan as its normal fan."""


class Membership(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class ActionClass(enum.Enum):
    CONTRACTING = "Contracting"
    COMPLETE_ONLY = "CompleteOnly"
    NOT_COMPLETE = "NotComplete"


def pair(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones",
                           tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def nrays(self):
        return len(self.rays)

    def ray(self, i):
        return self.rays[i - 1]

    def cone_rays(self, cone):
        return [self.rays[i - 1] for i in cone]

    @cached_property
    def cones(self):
        """Every cone of the fan (all faces of the maximal cones), origin included."""
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(combinations(c, k))
        return sorted(out, key=lambda c: (len(c), c))

    @cached_property
    def _cone_set(self):
        return set(self.cones)

    def is_cone(self, labels):
        return tuple(sorted(labels)) in self._cone_set

    @cached_property
    def full_dim_cones(self):
        return [c for c in self.max_cones if len(c) == self.rank]

    @cached_property
    def facet_normals(self):
        """Inward primitive normals of the facets of the support, sorted."""
        return extreme_rays(self.rays, (), self.rank)

    def is_interior_cone(self, cone):
        """Relative interior of ``cone`` lies in the interior of the support."""
        for w in self.facet_normals:
            if all(pair(w, self.ray(i)) == 0 for i in cone):
                return False
        return True

    def coordinates_in_cone(self, cone, v):
        """Coordinates of ``v`` in the ray basis of ``cone`` or ``None`` if outside its span."""
        return solve_in_span(self.cone_rays(cone), v)

    def containing_max_cone(self, v):
        """First maximal cone (in input order) containing ``v``, with coordinates."""
        for c in self.max_cones:
            coords = self.coordinates_in_cone(c, v)
            if coords is not None and all(x >= 0 for x in coords):
                return c, coords
        return None, None


@dataclass(frozen=True)
class MomentData:
    fan: Fan
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        if len(self.lam) != self.fan.nrays:
            raise DimensionMismatch(
                f"{len(self.lam)} offsets for {self.fan.nrays} rays")

    @cached_property
    def vertices(self):
        return polytope_vertices(self)


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple
    source: str = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))
        if not self.weights:
            raise ValueError("weight system must be nonempty")

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class FixedComponent:
    cone: tuple
    orbit_dim: int
    compact: bool
    minimal: bool


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    support_convex: bool
    support_full_dim: bool
    complete: bool
    semiprojective_candidate: bool


# ---------------------------------------------------------------------------
# exact cone machinery

def extreme_rays(ineqs, eqs, n):
    """Extreme rays of the pointed cone ``{x : a.x >= 0, b.x = 0}`` as primitive vectors."""
    ineqs = [list(a) for a in ineqs]
    eqs = [list(b) for b in eqs]
    r_eq = rank(eqs) if eqs else 0
    need = n - 1 - r_eq
    if need < 0:
        return []
    found = set()
    for S in combinations(range(len(ineqs)), need):
        rows = eqs + [ineqs[i] for i in S]
        if (rank(rows) if rows else 0) != n - 1:
            continue
        (x,) = rational_nullspace(rows, n)
        x = to_integer_vector(x)
        for cand in (x, [-t for t in x]):
            if all(pair(a, cand) >= 0 for a in ineqs):
                found.add(tuple(cand))
    return sorted(found)


def _cone_hrep(rays, n):
    """(inequalities, equations) cutting out the simplicial cone on ``rays``."""
    R = [[Fraction(x) for x in r] for r in rays]
    k = len(R)
    eqs = rational_nullspace(R, n) if k else [[Fraction(int(i == j)) for j in range(n)]
                                              for i in range(n)]
    if k == 0:
        return [], eqs
    gram = [[pair(R[i], R[j]) for j in range(k)] for i in range(k)]
    inv = _inverse(gram)
    duals = [[sum(inv[j][l] * R[l][c] for l in range(k)) for c in range(n)] for j in range(k)]
    return duals, eqs


def _inverse(M):
    n = len(M)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        lead = aug[c][c]
        aug[c] = [a / lead for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def _lattice_index(rays):
    """Index of the lattice spanned by ``rays`` in its saturation (0 if dependent).

    This is the gcd of the maximal minors; it is 1 exactly when the rays
    extend to a basis of ``Z^n``.
    """
    if not rays:
        return 1
    k, n = len(rays), len(rays[0])
    if k > n:
        return 0
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, int(determinant([[r[c] for c in cols] for r in rays])))
    return g


# ---------------------------------------------------------------------------
# operations

def validate_fan(fan):
    n = fan.rank
    for i, r in enumerate(fan.rays, 1):
        if len(r) != n:
            raise DimensionMismatch(f"ray {i} has length {len(r)}, expected {n}")
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            raise NonPrimitiveRay(f"ray {i} = {list(r)} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        raise ConeOverlap("duplicate rays")
    if not fan.max_cones:
        raise ConeOverlap("fan has no cones")
    used = set()
    for c in fan.max_cones:
        if any(i < 1 or i > fan.nrays for i in c) or len(set(c)) != len(c):
            raise DimensionMismatch(f"cone {list(c)} references unknown rays")
        used.update(c)
        idx = _lattice_index(fan.cone_rays(c))
        if idx != 1:
            raise NonUnimodularCone(c, idx)
    missing = set(range(1, fan.nrays + 1)) - used
    if missing:
        raise ConeOverlap(f"rays {sorted(missing)} lie in no cone")
    for a, b in combinations(fan.max_cones, 2):
        _check_intersection(fan, a, b)

    full_dim = rank(list(fan.rays)) == n
    support_convex = _support_is_convex(fan)
    complete = support_convex and full_dim and not fan.facet_normals
    return ValidationReport(
        smooth=True,
        support_convex=support_convex,
        support_full_dim=full_dim,
        complete=complete,
        semiprojective_candidate=support_convex and full_dim and bool(fan.full_dim_cones),
    )


def _check_intersection(fan, a, b):
    n = fan.rank
    ia, ea = _cone_hrep(fan.cone_rays(a), n)
    ib, eb = _cone_hrep(fan.cone_rays(b), n)
    common = sorted(set(a) & set(b))
    crays = fan.cone_rays(common)
    for x in extreme_rays(ia + ib, ea + eb, n):
        coords = solve_in_span(crays, x)
        if coords is None or any(t < 0 for t in coords):
            raise ConeOverlap(
                f"cones {list(a)} and {list(b)} meet outside their common face {common}")


def _support_is_convex(fan):
    dims = {len(c) for c in fan.max_cones}
    d = rank(list(fan.rays))
    if dims != {d}:
        return False
    if d < fan.rank:
        # lower-dimensional support: only the uncomplicated pure cases are accepted
        return len(fan.max_cones) == 1
    normals = fan.facet_normals
    counts = {}
    for c in fan.max_cones:
        for f in combinations(c, d - 1):
            counts[f] = counts.get(f, 0) + 1
    for f, k in counts.items():
        if k == 2:
            continue
        if k > 2:
            return False
        on_boundary = any(all(pair(w, fan.ray(i)) == 0 for i in f) for w in normals)
        if not on_boundary:
            return False
    return True


def _check_dim(fan, v):
    if len(v) != fan.rank:
        raise DimensionMismatch(f"vector {list(v)} has length {len(v)}, fan rank {fan.rank}")


def support_membership(fan, v):
    v = tuple(v)
    _check_dim(fan, v)
    cone, _ = fan.containing_max_cone(v)
    if cone is None:
        return Membership.OUTSIDE
    if any(pair(w, v) == 0 for w in fan.facet_normals):
        return Membership.BOUNDARY
    return Membership.INTERIOR


def dual_cone_hilbert_basis(fan):
    """Minimal Hilbert basis of the dual of the support, ``|fan|^dual ∩ M``."""
    n = fan.rank
    gens = extreme_rays(fan.rays, (), n)
    if not gens:
        raise CompleteFan("support is all of N_R; its dual cone is {0}")
    lo = [sum(min(0, g[k]) for g in gens) for k in range(n)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(n)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > HILBERT_SEARCH_LIMIT:
        raise UnboundedSearch(f"search box of {size} points exceeds the limit")

    def in_dual(w):
        return all(pair(w, e) >= 0 for e in fan.rays)

    cands = [w for w in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
             if any(w) and in_dual(w)]
    cands.sort(key=lambda w: (sum(abs(x) for x in w), w))
    basis = []
    for w in cands:
        reducible = False
        for h in cands:
            if h == w:
                continue
            diff = tuple(x - y for x, y in zip(w, h))
            if any(diff) and in_dual(diff):
                reducible = True
                break
        if not reducible:
            basis.append(w)
    return WeightSystem(tuple(basis), source="hilbert-basis")


def classify_action_from_weights(ws, v):
    ws = ws if isinstance(ws, WeightSystem) else WeightSystem(ws)
    pairs = []
    for w in ws:
        if len(w) != len(v):
            raise DimensionMismatch(f"weight {list(w)} and cocharacter {list(v)} differ in length")
        pairs.append(pair(w, v))
    if all(p > 0 for p in pairs):
        return ActionClass.CONTRACTING
    if all(p >= 0 for p in pairs):
        return ActionClass.COMPLETE_ONLY
    return ActionClass.NOT_COMPLETE


def psi_map_exponents(ws, v):
    """``(lcm_v, p)`` with ``p_j * <v, w_j> = lcm_v`` for every weight."""
    ws = ws if isinstance(ws, WeightSystem) else WeightSystem(ws)
    if classify_action_from_weights(ws, v) is not ActionClass.CONTRACTING:
        raise NotContracting(f"cocharacter {list(v)} is not contracting for these weights")
    pairs = [pair(w, v) for w in ws]
    L = lcm(*pairs)
    return L, [L // p for p in pairs]


def polytope_vertices(md):
    """One vertex per full-dimensional cone, in the fan's cone order."""
    fan = md.fan
    cones = fan.full_dim_cones
    if not cones:
        raise NoVertices("fan has no full-dimensional cone")
    out = []
    seen = {}
    for c in cones:
        M = [list(fan.ray(i)) for i in c]
        rhs = [md.lam[i - 1] for i in c]
        x = _solve_square(M, rhs)
        for i, e in enumerate(fan.rays, 1):
            if pair(x, e) < md.lam[i - 1]:
                raise InvalidMomentData(
                    f"vertex {list(x)} of cone {list(c)} violates facet {i}")
        x = tuple(x)
        if x in seen:
            continue
        seen[x] = c
        out.append((x, c))
    return out


def _solve_square(M, rhs):
    n = len(M)
    aug = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        lead = aug[c][c]
        aug[c] = [a / lead for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [_tidy(row[n]) for row in aug]


def _tidy(x):
    return int(x) if x.denominator == 1 else x


def min_moment(md, v):
    """Minimum of ``<x, v>`` over the moment polyhedron."""
    v = tuple(v)
    _check_dim(md.fan, v)
    if support_membership(md.fan, v) is Membership.OUTSIDE:
        raise UnboundedBelow(f"<x, {list(v)}> is unbounded below on the polyhedron")
    return _tidy(Fraction(min(pair(x, v) for x, _ in md.vertices)))


def primitive_subsets(fan):
    """Minimal non-faces, sorted by size then labels."""
    labels = range(1, fan.nrays + 1)
    out = []
    for k in range(2, fan.rank + 2):
        for S in combinations(labels, k):
            if fan.is_cone(S):
                continue
            if all(fan.is_cone(T) for T in combinations(S, k - 1)):
                out.append(S)
    return out


def batyrev_rhs(fan, prim):
    """Cone coordinates of ``sum_{i in prim} e_i`` as ``[(label, coeff), ...]``."""
    prim = tuple(sorted(prim))
    s = [sum(fan.ray(i)[k] for i in prim) for k in range(fan.rank)]
    if not any(s):
        return []
    cone, coords = fan.containing_max_cone(s)
    if cone is None:
        raise NotComplete(f"sum of rays {list(prim)} lies outside the support")
    out = []
    for i, c in zip(cone, coords):
        if c == 0:
            continue
        if c.denominator != 1:
            raise NonIntegralCoordinates(f"coordinate {c} of ray {i} is not integral")
        out.append((i, int(c)))
    clash = [i for i, _ in out if i in prim]
    if clash:
        raise RhsMeetsLhs(f"rays {clash} occur on both sides for {list(prim)}")
    return out


def fixed_locus(fan, v, md=None):
    """Minimal cones whose span contains ``v``; the orbit closures form ``Fix``.

    ``minimal`` flags components on which ``H_v`` attains its minimum and
    needs ``md``; without it the flag is ``False``.
    """
    v = tuple(v)
    _check_dim(fan, v)
    hits = [c for c in fan.cones if fan.coordinates_in_cone(c, v) is not None]
    minimal = [c for c in hits if not any(set(d) < set(c) for d in hits)]
    low = None
    if md is not None and support_membership(fan, v) is not Membership.OUTSIDE:
        low = min_moment(md, v)
    comps = []
    for c in minimal:
        at_min = False
        if low is not None:
            at_min = any(set(c) <= set(sigma) and pair(x, v) == low for x, sigma in md.vertices)
        comps.append(FixedComponent(cone=c, orbit_dim=fan.rank - len(c),
                                    compact=fan.is_interior_cone(c), minimal=at_min))
    return comps


def core(fan):
    """All interior cones of dimension at least one."""
    if not fan.facet_normals:
        raise CompactFan("the fan is complete; the core is the whole manifold")
    return [c for c in fan.cones if c and fan.is_interior_cone(c)]


def core_components(fan):
    """Minimal interior cones: their orbit closures are the components of the core."""
    cs = core(fan)
    return [c for c in cs if not any(set(d) < set(c) for d in cs)]


def compact_divisors(fan):
    return [c[0] for c in core(fan) if len(c) == 1]


@dataclass(frozen=True)
class MorseBottPoint:
    vertex: tuple
    cone: tuple
    weights: tuple
    index: int


@dataclass(frozen=True)
class MorseBottData:
    points: tuple
    poincare: dict  # degree -> count

    def poincare_string(self):
        terms = []
        for deg in sorted(self.poincare):
            k = self.poincare[deg]
            mono = "1" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            terms.append(mono if k == 1 and deg else (str(k) if not deg else f"{k}*{mono}"))
        return " + ".join(terms)


def morse_bott_data(md, v):
    fan = md.fan
    v = tuple(v)
    _check_dim(fan, v)
    if support_membership(fan, v) is not Membership.INTERIOR:
        raise NotContracting(f"cocharacter {list(v)} is not in N_+")
    for comp in fixed_locus(fan, v):
        if len(comp.cone) != fan.rank:
            raise NonIsolatedFixedLocus(comp.cone)
    pts = []
    poincare = {}
    for x, c in md.vertices:
        coords = [_tidy(t) for t in fan.coordinates_in_cone(c, v)]
        index = 2 * sum(1 for t in coords if t < 0)
        pts.append(MorseBottPoint(vertex=x, cone=c, weights=tuple(coords), index=index))
        poincare[index] = poincare.get(index, 0) + 1
    return MorseBottData(points=tuple(pts), poincare=dict(sorted(poincare.items())))
