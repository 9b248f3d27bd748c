"""Rotation classes, the a-function, period rescaling and integer filtrations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import DimensionMismatch, InfiniteQuotient, NotComplete, NotContracting
from .exact.linalg import Subspace, kernel_of_power
from .exact.novikov import NovikovScalar
from .groebner import multiplication_matrix, normal_form
from .polyhedral import (
    Membership, WeightSystem, dual_cone_hilbert_basis, min_moment, pair, support_membership,
)
from .presentations import quantum_cohomology, rotation_monomial


@dataclass(frozen=True)
class RotationClass:
    v: tuple
    cone: tuple
    monomial: tuple
    normal_form: object
    min_H: int | Fraction
    normalized: object

    def monomial_text(self, ring):
        return ring.render_monomial(self.monomial) or "1"


def _in_n0(fan, v):
    if support_membership(fan, v) is Membership.OUTSIDE:
        raise NotComplete(f"cocharacter {list(v)} is not in N_0")


def rotation_class(md, v, qh=None):
    v = tuple(v)
    _in_n0(md.fan, v)
    qh = qh or quantum_cohomology(md)
    exps, cone = rotation_monomial(md.fan, v)
    nf = normal_form(qh.ring.monomial(exps), qh.gb)
    low = min_moment(md, v)
    return RotationClass(v, cone, exps, nf, low, nf.scale(NovikovScalar.T(int(low))))


def a_function(md, vs):
    vs = [tuple(v) for v in vs]
    if not vs:
        return 0
    total = tuple(sum(col) for col in zip(*vs))
    for v in vs + [total]:
        _in_n0(md.fan, v)
    return min_moment(md, total) - sum(min_moment(md, v) for v in vs)


def verify_rotation_homomorphism(md, v, vp, qh=None):
    """``T^(min H_v + min H_v') x^v x^v' == T^(min H_(v+v')) x^(v+v')`` in the quantum ring."""
    qh = qh or quantum_cohomology(md)
    s = tuple(a + b for a, b in zip(v, vp))
    a, b, c = (rotation_class(md, w, qh) for w in (v, vp, s))
    lhs = normal_form(a.normal_form * b.normal_form, qh.gb).scale(
        NovikovScalar.T(int(a.min_H + b.min_H)))
    rhs = c.normal_form.scale(NovikovScalar.T(int(c.min_H)))
    return lhs == rhs


def rescaling_constant(ws, v, vp):
    """``k(v, v') = min_j <v, w_j> / <v', w_j>`` as an exact rational."""
    ws = ws if isinstance(ws, WeightSystem) else WeightSystem(ws)
    best = None
    for j, w in enumerate(ws, 1):
        if len(w) != len(v) or len(w) != len(vp):
            raise DimensionMismatch("weights and cocharacters differ in length")
        a, b = pair(v, w), pair(vp, w)
        for name, x, val in (("v", v, a), ("v'", vp, b)):
            if val <= 0:
                raise NotContracting(f"{name} = {list(x)} pairs to {val} with weight {j}")
        q = Fraction(a, b)
        best = q if best is None or q < best else best
    return best


@dataclass(frozen=True)
class FiltrationChain:
    v: tuple
    E: Subspace
    n_v: int
    chain: tuple  # Q^j E for j = 0..n_v, descending
    kernels: tuple  # ker Q^j for j = 0..n_v, ascending inside E
    quotient_dim: int

    @property
    def dims(self):
        return tuple(s.dim for s in self.chain)

    @property
    def kernel_dims(self):
        return tuple(s.dim for s in self.kernels)

    @property
    def sh_dim(self):
        return self.quotient_dim - self.E.dim

    def image_level(self, p):
        """``Q^p E`` (zero once ``p >= n_v``)."""
        return self.chain[min(p, self.n_v)]

    def kernel_level(self, p):
        """``ker Q^p`` (all of ``E`` once ``p >= n_v``)."""
        return self.kernels[min(p, self.n_v)]


def rotation_operator(md, v, qh):
    exps, _ = rotation_monomial(md.fan, v)
    return multiplication_matrix(qh.gb, qh.ring.monomial(exps), qh.basis)


def integer_filtration(md, v, qh=None):
    v = tuple(v)
    if support_membership(md.fan, v) is not Membership.INTERIOR:
        raise NotContracting(f"cocharacter {list(v)} is not in N_+")
    qh = qh or quantum_cohomology(md)
    if not qh.basis.finite:
        raise InfiniteQuotient("quantum quotient is infinite dimensional")
    d = qh.dim
    M = rotation_operator(md, v, qh)
    E = kernel_of_power(M, d) if d else Subspace(0)
    chain = [E]
    kernels = [Subspace(d)]
    while chain[-1].dim:
        chain.append(chain[-1].image(M))
        kernels.append(kernel_of_power(M, len(kernels)))
        if len(chain) > d + 1:
            raise ArithmeticError("rotation operator is not nilpotent on E")
    return FiltrationChain(v, E, len(chain) - 1, tuple(chain), tuple(kernels), d)


def period_for(ws, v, vp, p):
    """Smallest integer period ``p'`` with ``p' >= k(v, v') p``."""
    return ceil(rescaling_constant(ws, v, vp) * p)


def filtration_inclusion(md, v, vp, p, pp, qh=None, labeling="image", chains=None):
    """Whether ``Fil_{v'}^{p'}`` lies in ``Fil_v^p``.

    ``labeling="image"`` uses ``Fil^p = Q^p E`` and ``labeling="kernel"`` uses
    ``Fil^p = ker Q^p``.
    """
    qh = qh or quantum_cohomology(md)
    chains = chains if chains is not None else {}
    for w in (tuple(v), tuple(vp)):
        if w not in chains:
            chains[w] = integer_filtration(md, w, qh)
    fv, fvp = chains[tuple(v)], chains[tuple(vp)]
    if labeling == "image":
        return fvp.image_level(pp) <= fv.image_level(p)
    if labeling == "kernel":
        return fvp.kernel_level(pp) <= fv.kernel_level(p)
    raise ValueError(f"unknown labeling {labeling!r}")


def hilbert_weights(fan):
    return dual_cone_hilbert_basis(fan)
