from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from semitoric.errors import (
    CompleteFan, ConeOverlap, DimensionMismatch, NonIsolatedFixedLocus, NonPrimitiveRay,
    NonUnimodularCone, NotContracting, NoVertices, RhsMeetsLhs, UnboundedBelow,
)
from semitoric.polyhedral import (
    ActionClass, Fan, Membership, MomentData, batyrev_rhs, classify_action_from_weights,
    compact_divisors, core, core_components, dual_cone_hilbert_basis, fixed_locus, min_moment,
    morse_bott_data, pair, polytope_vertices, primitive_subsets, psi_map_exponents,
    support_membership, validate_fan,
)

from conftest import ALL, NONCOMPACT, brute_vertices, classical, example

A2 = [(1, 2), (2, 1), (1, 1)]


def in_dual(fan, w):
    return all(pair(w, e) >= 0 for e in fan.rays)


def brute_hilbert(fan, radius=3):
    """Irreducible nonzero lattice points of the dual cone inside a box."""
    pts = [w for w in product(range(-radius, radius + 1), repeat=fan.rank)
           if any(w) and in_dual(fan, w)]
    pset = set(pts)
    out = []
    for w in pts:
        if not any(tuple(a - b for a, b in zip(w, h)) in pset for h in pts if h != w):
            out.append(w)
    return sorted(out)


def test_validate_blp(blp):
    r = validate_fan(blp.fan)
    assert r.smooth and r.support_convex and r.support_full_dim
    assert not r.complete and r.semiprojective_candidate


def test_validate_cp2(cp2):
    assert validate_fan(cp2.fan).complete


def test_validate_errors():
    with pytest.raises(NonUnimodularCone) as exc:
        validate_fan(Fan(2, [(1, 0), (1, 2)], [(1, 2)]))
    assert exc.value.determinant == 2
    with pytest.raises(NonPrimitiveRay):
        validate_fan(Fan(2, [(2, 0), (0, 1)], [(1, 2)]))
    with pytest.raises(ConeOverlap):
        validate_fan(Fan(2, [(1, 0), (0, 1), (1, 1)], [(1, 2), (1, 3)]))
    with pytest.raises(DimensionMismatch):
        validate_fan(Fan(2, [(1, 0, 0), (0, 1)], [(1, 2)]))


def test_nonconvex_support():
    # three quadrants of the plane
    fan = Fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(1, 2), (2, 3), (3, 4)])
    r = validate_fan(fan)
    assert not r.support_convex and not r.semiprojective_candidate


@pytest.mark.parametrize("name", ALL)
def test_builtins_validate(name):
    r = validate_fan(example(name).fan)
    assert r.semiprojective_candidate
    assert r.complete == (name == "cp2")


def test_support_membership_blp(blp):
    f = blp.fan
    assert support_membership(f, (1, 0)) is Membership.INTERIOR
    assert support_membership(f, (0, 1)) is Membership.BOUNDARY
    assert support_membership(f, (-1, 0)) is Membership.OUTSIDE
    with pytest.raises(DimensionMismatch):
        support_membership(f, (1, 0, 0))


def test_hilbert_basis_examples():
    assert list(dual_cone_hilbert_basis(example("c2").fan)) == [(0, 1), (1, 0)]
    assert list(dual_cone_hilbert_basis(example("blp-cxp1").fan)) == [(1, 0)]
    ws = list(dual_cone_hilbert_basis(example("conifold-resolution").fan))
    assert len(ws) == 4
    assert any(tuple(a + b for a, b in zip(ws[i], ws[j])) ==
               tuple(a + b for a, b in zip(*[ws[k] for k in range(4) if k not in (i, j)]))
               for i, j in combinations(range(4), 2))
    with pytest.raises(CompleteFan):
        dual_cone_hilbert_basis(example("cp2").fan)


@pytest.mark.parametrize("name", NONCOMPACT)
def test_hilbert_basis_against_brute_force(name):
    fan = example(name).fan
    ws = dual_cone_hilbert_basis(fan)
    assert sorted(ws) == brute_hilbert(fan)
    for w in ws:
        assert in_dual(fan, w)
    for a, b, c in product(ws, repeat=3):
        assert tuple(x + y for x, y in zip(b, c)) != a


def test_classify_action_from_weights():
    assert classify_action_from_weights(A2, (1, 1)) is ActionClass.CONTRACTING
    assert classify_action_from_weights(A2, (0, 0)) is ActionClass.COMPLETE_ONLY
    assert classify_action_from_weights(A2, (-1, 0)) is ActionClass.NOT_COMPLETE
    with pytest.raises(DimensionMismatch):
        classify_action_from_weights(A2, (1, 1, 1))


def test_psi_map_exponents():
    assert psi_map_exponents(A2, (1, 1)) == (6, [2, 2, 3])
    assert psi_map_exponents([(1,)], (1,)) == (1, [1])
    assert psi_map_exponents(A2, (1, 0)) == (2, [2, 1, 2])
    with pytest.raises(NotContracting):
        psi_map_exponents(A2, (-1, 2))


def test_vertices(cp2, blp):
    assert [x for x, _ in polytope_vertices(cp2)] == [(0, 0), (3, 0), (0, 3)]
    assert {x for x, _ in polytope_vertices(blp)} == {(0, -1), (-1, 0), (-1, 1)}
    assert [x for x, _ in polytope_vertices(example("c2"))] == [(0, 0)]
    with pytest.raises(NoVertices):
        polytope_vertices(MomentData(Fan(2, [(1, 0)], [(1,)]), (0,)))


@pytest.mark.parametrize("name", ALL)
def test_vertices_against_all_subsets(name):
    md = example(name)
    assert {x for x, _ in polytope_vertices(md)} == brute_vertices(md)


def test_min_moment(cp2, blp):
    assert min_moment(cp2, (-1, -1)) == -3
    assert min_moment(blp, (1, 0)) == -1
    assert min_moment(blp, (1, 1)) == -1
    with pytest.raises(UnboundedBelow):
        min_moment(blp, (-1, 0))


def test_primitive_subsets():
    assert primitive_subsets(example("blp-cxp1").fan) == [(1, 2), (2, 4), (3, 4)]
    assert primitive_subsets(example("cp2").fan) == [(1, 2, 3)]
    assert primitive_subsets(example("conifold-resolution").fan) == [(2, 4)]


def test_batyrev_rhs(blp):
    assert batyrev_rhs(blp.fan, (1, 2)) == [(3, 1)]
    assert batyrev_rhs(blp.fan, (2, 4)) == []
    assert batyrev_rhs(example("conifold-resolution").fan, (2, 4)) == [(1, 1), (3, 1)]
    with pytest.raises(RhsMeetsLhs):
        batyrev_rhs(blp.fan, (1, 3))


@pytest.mark.parametrize("name", ALL)
def test_batyrev_relation_exact(name):
    fan = example(name).fan
    for prim in primitive_subsets(fan):
        rhs = batyrev_rhs(fan, prim)
        lhs = [sum(fan.ray(i)[k] for i in prim) for k in range(fan.rank)]
        assert lhs == [sum(c * fan.ray(j)[k] for j, c in rhs) for k in range(fan.rank)]
        assert all(c > 0 for _, c in rhs)


def test_fixed_locus_blp(blp):
    f = blp.fan
    comps = fixed_locus(f, (1, 0), blp)
    assert [(c.cone, c.compact) for c in comps] == [((1,), True), ((2, 3), True)]
    assert [c.cone for c in comps if c.minimal] == [(1,)]
    assert [c.cone for c in fixed_locus(f, (0, 1))] == [(2,), (4,), (1, 3)]
    assert sorted(c.cone for c in fixed_locus(f, (1, 2))) == [(1, 3), (1, 4), (2, 3)]
    assert all(c.orbit_dim == 2 - len(c.cone) for c in fixed_locus(f, (0, 1)))


def test_core():
    f = example("blp-cxp1").fan
    assert compact_divisors(f) == [1, 3]
    assert core(f) == [(1,), (3,), (1, 3), (1, 4), (2, 3)]
    assert compact_divisors(example("o(-1)-cp1").fan) == [3]
    con = example("conifold-resolution").fan
    assert compact_divisors(con) == []
    assert core_components(con) == [(1, 3)]


def test_morse_bott(blp):
    data = morse_bott_data(blp, (1, 2))
    assert sorted(p.index for p in data.points) == [0, 2, 2]
    assert data.poincare == {0: 1, 2: 2}
    weights = {p.cone: p.weights for p in data.points}
    assert weights[(2, 3)] == (1, 1) and weights[(1, 3)] == (-1, 2) and weights[(1, 4)] == (1, -2)
    c2 = morse_bott_data(example("c2"), (1, 1))
    assert [(p.weights, p.index) for p in c2.points] == [((1, 1), 0)]
    with pytest.raises(NonIsolatedFixedLocus) as exc:
        morse_bott_data(blp, (1, 0))
    assert exc.value.cone == (1,)


def box(n, r=5):
    return list(product(range(-r, r + 1), repeat=n))


@pytest.mark.parametrize("name", NONCOMPACT)
def test_membership_agrees_with_weights(name):
    fan = example(name).fan
    ws = dual_cone_hilbert_basis(fan)
    pairing = {Membership.INTERIOR: ActionClass.CONTRACTING,
               Membership.BOUNDARY: ActionClass.COMPLETE_ONLY,
               Membership.OUTSIDE: ActionClass.NOT_COMPLETE}
    r = 5 if fan.rank <= 3 else 2
    for v in box(fan.rank, r):
        if not any(v):
            continue
        assert classify_action_from_weights(ws, v) is pairing[support_membership(fan, v)]


@pytest.mark.parametrize("name", NONCOMPACT)
def test_fixed_locus_invariants(name):
    fan = example(name).fan
    for v in box(fan.rank, 2):
        if not any(v):
            continue
        comps = fixed_locus(fan, v)
        cones = [set(c.cone) for c in comps]
        assert not any(a < b for a in cones for b in cones)
        m = support_membership(fan, v)
        if m is Membership.INTERIOR:
            assert all(c.compact for c in comps)
        elif m is Membership.BOUNDARY:
            assert any(not c.compact for c in comps)


@pytest.mark.parametrize("name", ALL)
def test_vertex_count_matches_betti(name):
    md = example(name)
    assert len(polytope_vertices(md)) == classical(name).dim


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NONCOMPACT), st.data())
def test_min_moment_linear(name, data):
    md = example(name)
    n = md.fan.rank
    v = data.draw(st.tuples(*[st.integers(0, 4)] * n))
    if support_membership(md.fan, v) is Membership.OUTSIDE:
        return
    k = data.draw(st.integers(0, 5))
    assert min_moment(md, tuple(k * x for x in v)) == k * min_moment(md, v)
