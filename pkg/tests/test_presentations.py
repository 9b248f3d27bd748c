import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from semitoric.errors import CompactFan, NonPositiveOmega, NotContracting, NotFanoOrCY
from semitoric.exact import T
from semitoric.groebner import ideal_equal, multiplication_matrix, saturate
from semitoric.polyhedral import Membership, MomentData, morse_bott_data, pair, support_membership
from semitoric.presentations import (
    CALABI_YAU, FANO, OTHER, classify_geometry, equivariant_quantum,
    equivariant_symplectic, jacobian_ring, quantum_cohomology, rotation_monomial,
    symplectic_cohomology,
)

from conftest import ALL, NONCOMPACT, classical, example, interior_point, quantum

T0 = 3  # value substituted for T in numerical oracles


def specialise(s, t=T0):
    return sympy.Rational(s.evaluate(Fraction(t)).numerator, s.evaluate(Fraction(t)).denominator)


def critical_points(md, t=T0):
    """Nondegenerate critical points of W in the torus, counted by sympy."""
    n = md.fan.rank
    z = sympy.symbols(f"z1:{n + 1}")
    W = sum(sympy.Integer(t) ** (-l) * sympy.prod([zi ** a for zi, a in zip(z, e)])
            for l, e in zip(md.lam, md.fan.rays))
    eqs = [sympy.numer(sympy.together(zi * sympy.diff(W, zi))) for zi in z]
    sols = sympy.solve(eqs, z, dict=True)
    return [s for s in sols if all(s.get(zi, zi) != 0 and s.get(zi, zi).is_number for zi in z)]


def test_classify_geometry():
    g = classify_geometry(example("blp-cxp1"))
    assert g.kind == FANO and g.t == 1 and g.xi == (0, 0) and not g.compact
    g = classify_geometry(example("conifold-resolution"))
    assert g.kind == CALABI_YAU and g.xi == (0, 0, 1)
    other = MomentData(example("blp-cxp1").fan, (-1, -1, -1, -5))
    assert classify_geometry(other).kind == OTHER
    assert classify_geometry(example("cp2")).compact


@pytest.mark.parametrize("lam", [(0, 0, 0, -1), (-1, -2, 3, -4), (2, 0, 5, 1)])
def test_conifold_cy_for_any_lambda(lam):
    g = classify_geometry(MomentData(example("conifold-resolution").fan, lam))
    assert g.kind == CALABI_YAU


def test_classical_examples():
    blp = classical("blp-cxp1")
    assert blp.graded_dims == {0: 1, 2: 2}
    R = blp.reduced_ring
    x1, x2 = R.gens
    assert ideal_equal(blp.reduced_gb, [x1 * x2, x1 ** 2, x2 ** 2])
    con = classical("conifold-resolution")
    assert con.dim == 2 and [str(g) for g in con.reduced_gb] == ["x1^2"]
    assert classical("c2").basis.render() == ["1"]


def test_quantum_blp_reduced_ideal():
    qh = quantum("blp-cxp1")
    x1, x2 = qh.reduced_ring.gens
    assert qh.reduced_ring.names == ("x1", "x2")
    assert ideal_equal(qh.reduced_gb, [x1 * x2 + T * x1, x1 ** 2, x2 ** 2 + T * x1 - T ** 2])
    assert qh.reduced_ideal_from_generators() == qh.reduced_gb


def test_quantum_cp2_and_line_bundle():
    qh = quantum("cp2")
    (x,) = qh.reduced_ring.gens
    assert ideal_equal(qh.reduced_gb, [x ** 3 - T ** 3])
    qh = quantum("o(-1)-cp1")
    (x,) = qh.reduced_ring.gens
    assert ideal_equal(qh.reduced_gb, [x ** 2 + T * x])


@pytest.mark.parametrize("k,m", [(1, 1), (1, 2), (2, 2), (3, 2), (2, 1), (3, 3)])
def test_line_bundle_quantum_formula(k, m):
    qh = quantum(f"o(-{k})-cp{m}")
    (x,) = qh.reduced_ring.gens
    expected = x ** (1 + m) - (x.scale(-k)) ** k * qh.reduced_ring.const(T ** (1 + m - k))
    assert ideal_equal(qh.reduced_gb, [expected])


def test_quantum_errors():
    blp = example("blp-cxp1")
    with pytest.raises(NotFanoOrCY):
        quantum_cohomology(MomentData(blp.fan, (-1, -1, -1, -5)))
    with pytest.raises(NonPositiveOmega) as exc:
        quantum_cohomology(MomentData(example("conifold-resolution").fan, (0, 0, 0, 0)))
    assert exc.value.omega == 0


@pytest.mark.parametrize("name", ALL)
def test_quantum_graded_dims_match_classical_and_morse(name):
    qh, cl = quantum(name), classical(name)
    assert qh.graded_dims == cl.graded_dims
    md = example(name)
    rnd = random.Random(name)
    generic = [v for v in product(range(-3, 6), repeat=md.fan.rank)
               if support_membership(md.fan, v) is Membership.INTERIOR
               and all(md.fan.coordinates_in_cone(c, v) is None
                       for c in md.fan.cones if len(c) < md.fan.rank)]
    for v in rnd.sample(generic, 3):
        assert morse_bott_data(md, v).poincare == cl.graded_dims


@pytest.mark.parametrize("name", ALL)
def test_fano_relations_homogeneous(name):
    qh = quantum(name)
    if qh.extras["geometry"].kind != FANO or any(l != -1 for l in example(name).lam):
        return
    for g in qh.generators:
        degs = {sum(m) + t_degree(c) for m, c in g.poly.terms.items()}
        assert len(degs) == 1


def t_degree(c):
    # coefficients of these relations are plain powers of T
    assert len(c.den) == 1
    return len(c.num) - 1


def test_symplectic_examples():
    res = symplectic_cohomology(example("blp-cxp1"), (1, 1), quantum("blp-cxp1"))
    assert res.dim == 0 and res.route_agreement and res.presentation.gb.is_unit_ideal()
    res = symplectic_cohomology(example("o(-1)-cp1"), (1, 1), quantum("o(-1)-cp1"))
    (x,) = res.presentation.reduced_ring.gens
    assert res.dim == 1 and ideal_equal(res.presentation.reduced_gb, [x + T])
    res = symplectic_cohomology(example("o(-2)-cp1"), (2, 1), quantum("o(-2)-cp1"))
    assert res.dim == 0


def test_symplectic_errors():
    with pytest.raises(NotContracting):
        symplectic_cohomology(example("blp-cxp1"), (0, 1))
    with pytest.raises(CompactFan):
        symplectic_cohomology(example("cp2"), (1, 1))
    forced = symplectic_cohomology(example("cp2"), (1, 1), force_compact=True)
    assert forced.dim == 3 and forced.eigenspace_dim == 0


def eigen_oracle(md, qh, v):
    """dim QH minus the algebraic multiplicity of 0 for x^v at T = T0 (sympy)."""
    exps, _ = rotation_monomial(md.fan, v)
    M = multiplication_matrix(qh.gb, qh.ring.monomial(exps), qh.basis)
    S = sympy.Matrix([[specialise(a) for a in row] for row in M.entries])
    lam = sympy.Symbol("lam")
    cp = sympy.Poly(S.charpoly(lam).as_expr(), lam)
    mult = 0
    while cp.eval(0) == 0 and cp.degree() > 0:
        cp = sympy.Poly(sympy.quo(cp.as_expr(), lam), lam)
        mult += 1
    return qh.dim - mult


@pytest.mark.parametrize("name", NONCOMPACT)
def test_sh_against_numeric_oracles(name):
    md, qh = example(name), quantum(name)
    v = interior_point(md.fan)
    res = symplectic_cohomology(md, v, qh)
    assert res.dim == eigen_oracle(md, qh, v)
    assert res.dim == jacobian_ring(md).dim
    if md.fan.rank <= 3:
        assert res.dim == len(critical_points(md))


@pytest.mark.parametrize("name", NONCOMPACT)
def test_sh_all_variables_invertible(name):
    md, qh = example(name), quantum(name)
    res = symplectic_cohomology(md, interior_point(md.fan), qh)
    gb = res.presentation.gb
    for i in range(qh.ring.nvars):
        m = tuple(int(j == i) for j in range(qh.ring.nvars))
        assert saturate(list(gb.generators), m, qh.ring) == gb


@pytest.mark.parametrize("name", NONCOMPACT)
def test_cy_sh_vanishes(name):
    md = example(name)
    if classify_geometry(md).kind == CALABI_YAU:
        assert symplectic_cohomology(md, interior_point(md.fan), quantum(name)).dim == 0


@pytest.mark.parametrize("name", ["blp-cxp1", "o(-1)-cp1", "o(-2)-cp2", "o(-1)-cp2"])
def test_monotone_rescaled_lambda(name):
    """lambda = -t + <xi, e_i> keeps the SH dimension and the route agreement."""
    base = example(name)
    rnd = random.Random(name)
    for _ in range(3):
        t = rnd.choice([1, 2, 3])
        xi = [rnd.randint(-2, 2) for _ in range(base.fan.rank)]
        lam = tuple(-t + pair(xi, e) for e in base.fan.rays)
        md = MomentData(base.fan, lam)
        assert classify_geometry(md).t == t
        qh = quantum_cohomology(md)
        res = symplectic_cohomology(md, interior_point(md.fan), qh)
        assert res.route_agreement
        assert res.dim == symplectic_cohomology(base, interior_point(base.fan),
                                                quantum(name)).dim
        assert res.dim == jacobian_ring(md).dim


def test_jacobian_examples():
    assert jacobian_ring(example("o(-1)-cp1")).dim == 1
    assert jacobian_ring(example("cp2")).dim == 3
    assert jacobian_ring(example("blp-cxp1")).dim == 0
    assert len(critical_points(example("o(-1)-cp1"))) == 1
    assert len(critical_points(example("cp2"))) == 3
    assert jacobian_ring(example("o(-1)-cp1")).render_superpotential() == "T*z1 + T*z2 + T*z1*z2"


def test_equivariant_line_bundle():
    md = example("o(-1)-cp1")
    eq = equivariant_quantum(md, (1, 1), quantum("o(-1)-cp1"))
    R = eq.ring
    x1, x2, x3, u = R.gens
    assert ideal_equal(eq.gb, [x1 - x2, x1 * x2 - x3.scale(T), x1 + x3 - u])
    assert ideal_equal(eq.gb, [x1 ** 2 + x1.scale(T) - u.scale(T), x2 - x1, x3 + x1 - u])
    assert eq.extras["rank_over_ku"] == 2
    assert eq.extras["u_specialisation_matches"]
    es = equivariant_symplectic(md, (1, 1), eq, quantum("o(-1)-cp1"))
    assert es.dim == 1 == es.jacobian_dim
    assert es.u_in_x


def test_equivariant_c2_and_blp():
    eq = equivariant_quantum(example("c2"), (1, 1), quantum("c2"))
    x1, x2, u = eq.ring.gens
    assert ideal_equal(eq.gb, [x1 - x2, x1 - u])
    assert eq.extras["rank_over_ku"] == 1
    eq = equivariant_quantum(example("blp-cxp1"), (1, 1), quantum("blp-cxp1"))
    assert eq.extras["rank_over_ku"] == 3
    es = equivariant_symplectic(example("blp-cxp1"), (1, 1), eq, quantum("blp-cxp1"))
    assert es.dim == 0 == es.jacobian_dim
    with pytest.raises(NotContracting):
        equivariant_quantum(example("blp-cxp1"), (0, 1))


@pytest.mark.parametrize("name", NONCOMPACT)
def test_equivariant_rank_and_specialisation(name):
    md, qh = example(name), quantum(name)
    v = interior_point(md.fan)
    eq = equivariant_quantum(md, v, qh)
    assert eq.extras["rank_over_ku"] == classical(name).dim
    assert eq.extras["u_specialisation_matches"]
    es = equivariant_symplectic(md, v, eq, qh)
    assert es.dim == es.jacobian_dim
    # over k(u) the localisation keeps every generator of the quantum module
    assert es.rank_over_ku == qh.dim
