"""Ring presentations attached to a semiprojective toric manifold.

Variables ``x1..xr`` are indexed by rays; ``u`` is the equivariant parameter
and ``z1..zn`` are the torus coordinates of the superpotential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (
    CompactFan, GradingInhomogeneous, NonPositiveOmega, NotContracting, NotFanoOrCY,
    RouteMismatch,
)
from .exact.intmat import hermite_normal_form, rref
from .exact.linalg import kernel_of_power
from .exact.novikov import ZERO, NovikovScalar
from .groebner import (
    GroebnerBasis, MonomialOrder, Poly, PolyRing, buchberger,
    monomials_outside, multiplication_matrix, normal_form, saturate, standard_monomials,
)
from .polyhedral import (
    Membership, batyrev_rhs, pair, polytope_vertices, primitive_subsets, support_membership,
)

FANO = "FanoMonotone"
CALABI_YAU = "CalabiYau"
OTHER = "Other"


@dataclass(frozen=True)
class GeometryClass:
    kind: str
    compact: bool
    t: Fraction | None = None
    xi: tuple | None = None

    def __str__(self):
        if self.kind == FANO:
            return f"FanoMonotone(t={self.t}, xi={_vec(self.xi)})"
        if self.kind == CALABI_YAU:
            return f"CalabiYau(xi={_vec(self.xi)})"
        return "Other"


def _vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


@dataclass(frozen=True)
class TaggedGenerator:
    tag: str  # Linear | QuantumSR | ClassicalSR | UIdentification | Jacobian
    poly: Poly
    xi: tuple | None = None
    prim: tuple | None = None
    rhs: tuple | None = None
    omega: int | None = None

    def describe(self):
        if self.tag in ("Linear", "UIdentification"):
            return f"{self.tag}(xi={_vec(self.xi)})"
        if self.tag == "QuantumSR":
            return f"QuantumSR(prim={list(self.prim)}, omega={self.omega})"
        if self.tag == "ClassicalSR":
            return f"ClassicalSR(prim={list(self.prim)})"
        return f"{self.tag}(k={self.xi.index(1) + 1})"


@dataclass
class IdealPresentation:
    ring: PolyRing
    generators: tuple
    gb: GroebnerBasis
    label: str = ""
    extras: dict = field(default_factory=dict)

    @cached_property
    def basis(self):
        return standard_monomials(self.gb)

    @property
    def dim(self):
        return self.basis.dim

    @property
    def graded_dims(self):
        """``{degree: count}`` from the standard monomials (``|x_i| = 2``)."""
        if not self.basis.finite:
            return None
        out = {}
        for m in self.basis.monomials:
            d = 2 * sum(m)
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    @cached_property
    def eliminated(self):
        """Variables solved for by the linear generators, as indices."""
        lin = [g.poly for g in self.generators if g.tag == "Linear"]
        if not lin:
            return ()
        gb = buchberger(lin, self.ring)
        out = []
        for g in gb.generators:
            lm = g.LM
            if sum(lm) == 1:
                out.append(lm.index(1))
        return tuple(sorted(out))

    @cached_property
    def reduced_ring(self):
        keep = [i for i in range(self.ring.nvars) if i not in self.eliminated]
        blocks = []
        for b in self.ring.order.blocks:
            nb = tuple(keep.index(i) for i in b if i in keep)
            if nb:
                blocks.append(nb)
        return PolyRing(tuple(self.ring.names[i] for i in keep), MonomialOrder(tuple(blocks)))

    @cached_property
    def reduced_gb(self):
        """The Groebner basis after substituting the linear relations away."""
        elim = set(self.eliminated)
        keep = [i for i in range(self.ring.nvars) if i not in elim]
        ring = self.reduced_ring
        out = []
        for g in self.gb.generators:
            if any(g.involves(i) for i in elim):
                continue
            out.append(Poly(ring, {tuple(m[i] for i in keep): c for m, c in g.terms.items()}))
        return GroebnerBasis(ring, tuple(out))

    def reduced_ideal_from_generators(self):
        """Independent route: substitute linear solutions into non-linear generators."""
        lin = buchberger([g.poly for g in self.generators if g.tag == "Linear"], self.ring) \
            if self.eliminated else None
        gens = []
        for g in self.generators:
            if g.tag == "Linear":
                continue
            p = normal_form(g.poly, lin) if lin else g.poly
            gens.append(p)
        keep = [i for i in range(self.ring.nvars) if i not in self.eliminated]
        ring = self.reduced_ring
        moved = [Poly(ring, {tuple(m[i] for i in keep): c for m, c in p.terms.items()})
                 for p in gens]
        return buchberger(moved, ring)


def x_ring(r, extra=()):
    names = tuple(f"x{i}" for i in range(1, r + 1)) + tuple(extra)
    if extra:
        order = MonomialOrder((tuple(range(r)), tuple(range(r, r + len(extra)))))
    else:
        order = MonomialOrder.grevlex(r)
    return PolyRing(names, order)


def linear_relation(ring, fan, xi):
    out = ring.zero()
    for i, e in enumerate(fan.rays):
        c = pair(xi, e)
        if c:
            out = out + ring.gen(i).scale(c)
    return out


def standard_basis(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def classify_geometry(md):
    fan = md.fan
    compact = not fan.facet_normals
    rays = fan.rays
    n = fan.rank
    cy = _solve_affine([list(e) for e in rays], [1] * len(rays), n)
    if cy is not None:
        return GeometryClass(CALABI_YAU, compact, xi=tuple(cy))
    sol = _solve_affine([[-1] + list(e) for e in rays], list(md.lam), n + 1)
    if sol is not None and sol[0] > 0:
        return GeometryClass(FANO, compact, t=sol[0], xi=tuple(sol[1:]))
    return GeometryClass(OTHER, compact)


def _solve_affine(A, b, n):
    """A particular rational solution of ``A y = b`` (free variables zero) or ``None``."""
    R, pivots = rref([row + [bb] for row, bb in zip(A, b)])
    if n in pivots:
        return None
    y = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        y[p] = row[n]
    return [int(x) if x.denominator == 1 else x for x in y]


def _monomial_product(ring, labels_with_exps):
    exps = [0] * ring.nvars
    for i, c in labels_with_exps:
        exps[i - 1] += c
    return ring.monomial(exps)


def classical_cohomology(fan):
    ring = x_ring(fan.nrays)
    gens = []
    for xi in standard_basis(fan.rank):
        p = linear_relation(ring, fan, xi)
        if p:
            gens.append(TaggedGenerator("Linear", p, xi=xi))
    for prim in primitive_subsets(fan):
        gens.append(TaggedGenerator("ClassicalSR", _monomial_product(ring, [(i, 1) for i in prim]),
                                    prim=prim))
    gb = buchberger([g.poly for g in gens], ring)
    return IdealPresentation(ring, tuple(gens), gb, label="classical")


def quantum_srs(md, ring, geometry=None):
    fan = md.fan
    geometry = geometry or classify_geometry(md)
    check_grading = geometry.kind == FANO and all(l == -1 for l in md.lam)
    out = []
    for prim in primitive_subsets(fan):
        rhs = batyrev_rhs(fan, prim)
        omega = -sum(md.lam[i - 1] for i in prim) + sum(c * md.lam[j - 1] for j, c in rhs)
        if omega <= 0:
            raise NonPositiveOmega(prim, omega)
        if check_grading and len(prim) != sum(c for _, c in rhs) + omega:
            raise GradingInhomogeneous(
                f"relation for {list(prim)} has degrees {2 * len(prim)} and "
                f"{2 * (sum(c for _, c in rhs) + omega)}")
        lhs = _monomial_product(ring, [(i, 1) for i in prim])
        p = lhs - _monomial_product(ring, rhs).scale(NovikovScalar.T(omega))
        out.append(TaggedGenerator("QuantumSR", p, prim=prim, rhs=tuple(rhs), omega=omega))
    return out


def quantum_cohomology(md, classical=None):
    fan = md.fan
    geometry = classify_geometry(md)
    if geometry.kind == OTHER:
        raise NotFanoOrCY("quantum presentation needs a monotone Fano or Calabi-Yau input")
    ring = x_ring(fan.nrays)
    gens = []
    for xi in standard_basis(fan.rank):
        p = linear_relation(ring, fan, xi)
        if p:
            gens.append(TaggedGenerator("Linear", p, xi=xi))
    gens.extend(quantum_srs(md, ring, geometry))
    gb = buchberger([g.poly for g in gens], ring)
    qh = IdealPresentation(ring, tuple(gens), gb, label="quantum",
                           extras={"geometry": geometry})
    classical = classical or classical_cohomology(fan)
    if qh.graded_dims != classical.graded_dims:
        raise RouteMismatch(
            f"quantum graded dims {qh.graded_dims} differ from classical {classical.graded_dims}")
    return qh


def rotation_monomial(fan, v):
    """Exponent vector of ``x^v`` in the lowest-index maximal cone containing ``v``."""
    cone, coords = fan.containing_max_cone(tuple(v))
    if cone is None:
        return None
    exps = [0] * fan.nrays
    for i, c in zip(cone, coords):
        exps[i - 1] = int(c)
    return tuple(exps), cone


@dataclass(frozen=True)
class SymplecticResult:
    presentation: IdealPresentation
    dim: int
    dim_route_a: int
    dim_route_b: int
    route_agreement: bool
    eigenspace_dim: int
    compact_forced: bool = False


def symplectic_cohomology(md, v, qh=None, force_compact=False):
    fan = md.fan
    v = tuple(v)
    if support_membership(fan, v) is not Membership.INTERIOR:
        raise NotContracting(f"cocharacter {list(v)} is not in N_+")
    if not fan.facet_normals and not force_compact:
        raise CompactFan("symplectic cohomology is defined for non-compact manifolds only")
    qh = qh or quantum_cohomology(md)
    d = qh.dim

    exps, _ = rotation_monomial(fan, v)
    M = multiplication_matrix(qh.gb, qh.ring.monomial(exps), qh.basis)
    e_dim = kernel_of_power(M, d).dim if d else 0
    dim_a = d - e_dim

    ring = qh.ring
    sat = saturate([g.poly for g in qh.generators], (1,) * ring.nvars, ring)
    pres = IdealPresentation(ring, qh.generators, sat, label="symplectic",
                             extras={"saturated_by": "x1*...*x%d" % ring.nvars})
    dim_b = pres.dim
    agree = dim_a == dim_b
    if not agree:
        raise RouteMismatch(f"SH dims disagree: eigenspace route {dim_a}, localisation {dim_b}")
    return SymplecticResult(pres, dim_b, dim_a, dim_b, agree, e_dim, compact_forced=force_compact)


@dataclass(frozen=True)
class JacobianResult:
    dim: int | None
    presentation: IdealPresentation
    superpotential: tuple  # (lambda_i, e_i) pairs

    def render_superpotential(self):
        terms = []
        for lam, e in self.superpotential:
            coeff = NovikovScalar.T(-lam)
            mono = "*".join(f"z{k + 1}" if a == 1 else f"z{k + 1}^{a}"
                            for k, a in enumerate(e) if a)
            c = "" if coeff.is_one() else str(coeff)
            terms.append("*".join(x for x in (c, mono) if x) or "1")
        return " + ".join(terms)


def jacobian_ring(md):
    fan = md.fan
    polytope_vertices(md)
    n = fan.rank
    ring = PolyRing.make(tuple(f"z{k}" for k in range(1, n + 1)))
    shift = [max(0, -min(e[k] for e in fan.rays)) for k in range(n)]
    gens = []
    for k in range(n):
        terms = {}
        for lam, e in zip(md.lam, fan.rays):
            if e[k]:
                mono = tuple(a + s for a, s in zip(e, shift))
                c = NovikovScalar.T(-lam) * e[k]
                terms[mono] = terms.get(mono, ZERO) + c
        p = Poly(ring, terms)
        if p:
            gens.append(TaggedGenerator("Jacobian", p, xi=tuple(int(i == k) for i in range(n))))
    if gens:
        gb = saturate([g.poly for g in gens], (1,) * n, ring)
    else:
        gb = GroebnerBasis(ring, ())
    pres = IdealPresentation(ring, tuple(gens), gb, label="jacobian")
    return JacobianResult(pres.dim, pres, tuple(zip(md.lam, fan.rays)))


def _u_identification(v):
    """``(xi0, perp)`` with ``<xi0, v> = gcd(v)`` and ``perp`` a basis of ``v^perp`` in M."""
    H, U = hermite_normal_form([[x] for x in v])
    return tuple(U[0]), [tuple(row) for row in U[1:]], H[0][0]


def equivariant_quantum(md, v, qh=None):
    fan = md.fan
    v = tuple(v)
    if support_membership(fan, v) is not Membership.INTERIOR:
        raise NotContracting(f"cocharacter {list(v)} is not in N_+")
    qh = qh or quantum_cohomology(md)
    r = fan.nrays
    ring = x_ring(r, extra=("u",))
    u = ring.gen(r)
    xi0, perp, g = _u_identification(v)
    gens = []
    for xi in perp:
        p = linear_relation(ring, fan, xi)
        if p:
            gens.append(TaggedGenerator("Linear", p, xi=xi))
    gens.append(TaggedGenerator("UIdentification",
                                linear_relation(ring, fan, xi0) - u.scale(g), xi=xi0))
    gens.extend(quantum_srs(md, ring))
    gb = buchberger([t.poly for t in gens], ring)
    pres = IdealPresentation(ring, tuple(gens), gb, label="equivariant-quantum")
    pres.extras["rank_over_ku"] = rank_over_ku(gb, r)
    pres.extras["u_specialisation"] = specialise_u(gens, r, qh.ring)
    pres.extras["u_specialisation_matches"] = pres.extras["u_specialisation"] == qh.gb
    return pres


def rank_over_ku(gb, r):
    """Rank of ``k[u][x]/I`` over ``k(u)`` (``None`` if infinite)."""
    if gb.is_unit_ideal():
        return 0
    leads = [lm[:r] for lm in gb.lead_monomials()]
    mons = monomials_outside(leads, r)
    return None if mons is None else len(mons)


def specialise_u(gens, r, target_ring):
    """Reduced basis of the ideal obtained by setting ``u = 0``."""
    polys = []
    for t in gens:
        p = t.poly.substitute(r, t.poly.ring.const(0))
        polys.append(Poly(target_ring, {m[:r]: c for m, c in p.terms.items()}))
    return buchberger(polys, target_ring)


@dataclass(frozen=True)
class EquivariantSymplecticResult:
    dim: int | None
    rank_over_ku: int | None
    u_in_x: bool
    jacobian_dim: int | None
    presentation: IdealPresentation


def equivariant_symplectic(md, v, eq=None, qh=None):
    """Localised equivariant presentation.

    ``rank_over_ku`` saturates over ``k[u]`` by ``x1...xr``; ``dim`` is the
    dimension of the coefficient-field Laurent quotient at ``u = 0``.
    """
    fan = md.fan
    qh = qh or quantum_cohomology(md)
    eq = eq or equivariant_quantum(md, v, qh)
    r = fan.nrays
    ring = eq.ring
    sat = saturate([t.poly for t in eq.generators], (1,) * r + (0,), ring)
    rank = rank_over_ku(sat, r)

    special = eq.extras["u_specialisation"]
    laurent = saturate(list(special.generators), (1,) * r, special.ring) \
        if special.generators else special
    dim = standard_monomials(laurent).dim

    u_first = PolyRing(ring.names, MonomialOrder(((r,), tuple(range(r)))))
    moved = [Poly(u_first, t.poly.terms) for t in eq.generators]
    gb_u = buchberger(moved, u_first)
    u_lead = tuple(int(i == r) for i in range(r + 1))
    u_in_x = any(g.LM == u_lead for g in gb_u.generators)

    jac = jacobian_ring(md).dim
    pres = IdealPresentation(ring, eq.generators, sat, label="equivariant-symplectic")
    return EquivariantSymplecticResult(dim, rank, u_in_x, jac, pres)

