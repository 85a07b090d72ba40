import random
from itertools import product

import pytest

from ternions.gf import make_field
from ternions.linalg import (
    BudgetError,
    canonicalize,
    contains,
    coordinate_subspace,
    enumerate_subspaces,
    gaussian_binomial,
    meet,
    meet_dim,
    projective_points,
)
from ternions.model import (
    LINE_MODEL_AXIS_COORDS,
    SubmoduleType,
    block6_lift,
    block6_rows,
    build_catalog,
    classify,
    classify_by_rank,
    cyclic_span,
    distinguished_flats,
    expected_counts,
    is_block6_patterned,
    is_unimodular,
    line_model,
    matrix2_from_block6,
    phi,
    phi_inverse,
    quadric,
    quadric_value,
    scan_planes_for_x,
    validate_catalog,
)
from ternions.ternion import (
    Ternion,
    act_right,
    enumerate_invertible,
    enumerate_pairs,
    random_invertible,
    random_ternion,
)


def tpair(f, a, b):
    return (Ternion(f, *a), Ternion(f, *b))


REPRESENTATIVES = [
    ((1, 0, 1), (0, 0, 0), SubmoduleType.X, 3),
    ((0, 0, 1), (0, 1, 0), SubmoduleType.Y, 3),
    ((0, 0, 1), (0, 0, 0), SubmoduleType.ALPHA, 2),
    ((1, 0, 0), (0, 0, 0), SubmoduleType.BETA, 1),
    ((0, 1, 0), (0, 0, 0), SubmoduleType.GAMMA, 1),
]


def test_phi_round_trip(f3):
    rng = random.Random(3)
    for _ in range(50):
        v = (random_ternion(f3, rng), random_ternion(f3, rng))
        assert phi_inverse(f3, phi(v)) == v
    with pytest.raises(ValueError):
        phi_inverse(f3, (1, 2, 3))


@pytest.mark.parametrize("a,b,want,dim", REPRESENTATIVES)
def test_representatives(f3, a, b, want, dim):
    v = tpair(f3, a, b)
    assert classify(v) is want
    assert classify_by_rank(v) is want
    assert cyclic_span(v).dim == dim
    assert is_unimodular(v) == (want is SubmoduleType.X)


def test_zero_pair(f2):
    v = tpair(f2, (0, 0, 0), (0, 0, 0))
    assert classify(v) is SubmoduleType.ZERO
    assert classify_by_rank(v) is SubmoduleType.ZERO
    assert cyclic_span(v).dim == 0


@pytest.mark.parametrize("q", [2, 3])
def test_classifiers_agree_exhaustive(q):
    f = make_field(q, 1)
    for v in enumerate_pairs(f):
        t = classify(v)
        assert classify_by_rank(v) is t
        assert is_unimodular(v) == (t is SubmoduleType.X)


def test_span_is_left_module(f2):
    # the span really is closed under left scaling
    from ternions.ternion import enumerate_ternions, scale_left

    for v in enumerate_pairs(f2):
        span = cyclic_span(v)
        for t in enumerate_ternions(f2):
            w = phi(scale_left(t, v))
            assert contains(span, canonicalize(f2, 6, (w,)))


def test_distinguished_flats(f3):
    j, k, l = distinguished_flats(f3)
    assert j == coordinate_subspace(f3, 6, (0, 1, 3, 4))
    assert k == coordinate_subspace(f3, 6, (1, 2, 4, 5))
    assert l == meet(j, k)
    assert l.dim == 2


def test_quadric_structure(f3):
    q = 3
    geo = quadric(f3)
    j, k, l = distinguished_flats(f3)
    assert len(geo.points) == (q + 1) ** 2
    assert len(geo.regulus_alpha) == q + 1
    assert len(geo.regulus_opposite) == q + 1
    assert l in geo.regulus_opposite
    assert l not in geo.regulus_alpha
    for m in geo.regulus_alpha + geo.regulus_opposite:
        assert contains(k, m)
        for p in projective_points(m):
            assert quadric_value(f3, p.basis[0]) == 0
    # lines of one regulus are pairwise skew, lines of different reguli meet
    for a in geo.regulus_alpha:
        for b in geo.regulus_alpha:
            if a != b:
                assert meet_dim(a, b) == 0
        for o in geo.regulus_opposite:
            assert meet_dim(a, o) == 1
    # every quadric point lies on exactly one line of each family
    for p in geo.points:
        assert sum(1 for m in geo.regulus_alpha if contains(m, p)) == 1
        assert sum(1 for m in geo.regulus_opposite if contains(m, p)) == 1


def test_block6_homomorphism(f2):
    rng = random.Random(7)
    k = f2.kernel
    for _ in range(40):
        s = random_invertible(f2, rng)
        t = random_invertible(f2, rng)
        assert block6_rows(s * t) == k.matmul(block6_rows(s), block6_rows(t))


def test_block6_equivariance(f3):
    # Phi intertwines the right action with the lift
    rng = random.Random(11)
    for _ in range(60):
        v = (random_ternion(f3, rng), random_ternion(f3, rng))
        s = random_invertible(f3, rng)
        lift = block6_lift(s)
        assert phi(act_right(v, s)) == lift.apply_vector(phi(v))


def test_block6_preserves_flats(f3):
    rng = random.Random(13)
    j, k, l = distinguished_flats(f3)
    for _ in range(30):
        lift = block6_lift(random_invertible(f3, rng))
        assert lift.apply(j) == j
        assert lift.apply(k) == k
        assert lift.apply(l) == l


def test_block6_fixes_opposite_permutes_alpha(f2):
    rng = random.Random(17)
    geo = quadric(f2)
    for _ in range(20):
        lift = block6_lift(random_invertible(f2, rng))
        for m in geo.regulus_opposite:
            assert lift.apply(m) == m
        assert {lift.apply(m) for m in geo.regulus_alpha} == set(geo.regulus_alpha)


def test_block6_pattern_round_trip(f3):
    rng = random.Random(19)
    for _ in range(40):
        s = random_invertible(f3, rng)
        rows = block6_rows(s)
        assert is_block6_patterned(rows)
        assert matrix2_from_block6(f3, rows) == s
    not_lift = tuple(tuple(1 if i == j else 0 for j in range(6)) for i in range(6))
    broken = (not_lift[0][:2] + (1,) + not_lift[0][3:],) + not_lift[1:]
    assert not is_block6_patterned(broken)
    with pytest.raises(ValueError):
        matrix2_from_block6(f3, broken)


def test_block6_lift_requires_invertible(f2):
    z = Ternion(f2, 0, 0, 0)
    from ternions.ternion import TernionMatrix

    with pytest.raises(ValueError):
        block6_lift(TernionMatrix(z, z, z, z))


def test_line_model_well_defined_q2(f2):
    # generators with the same span give the same line; image is the
    # special linear complex minus the axis
    span_to_line = {}
    for v in enumerate_pairs(f2):
        if classify(v) is not SubmoduleType.X:
            continue
        line = line_model(v)
        span = cyclic_span(v)
        assert span_to_line.setdefault(span, line) == line
    axis = coordinate_subspace(f2, 4, LINE_MODEL_AXIS_COORDS)
    image = set(span_to_line.values())
    complex_lines = {
        m
        for m in enumerate_subspaces(f2, 4, 2)
        if m != axis and meet_dim(m, axis) == 1
    }
    assert image == complex_lines
    assert len(image) == expected_counts(2)["X"]


def test_line_model_rejects_non_unimodular(f2):
    with pytest.raises(ValueError):
        line_model(tpair(f2, (0, 0, 1), (0, 1, 0)))


@pytest.mark.parametrize("q", [2, 3])
def test_catalog_counts(q, cat2, cat3):
    cat = {2: cat2, 3: cat3}[q]
    assert cat.counts() == expected_counts(q)
    assert len(cat.planes) == len(cat.g_x) + len(cat.g_y)


def test_catalog_index_and_witness(cat2):
    for t in SubmoduleType:
        if t is SubmoduleType.ZERO:
            continue
        for s in cat2.members(t):
            assert cat2.type_of(s) is t
            v = cat2.witness[s]
            assert cyclic_span(v) == s
    assert cat2.type_of(coordinate_subspace(cat2.field, 6, (0,))) in (
        SubmoduleType.BETA,
        None,
    )


def test_validate_catalog_report(cat3):
    report = validate_catalog(cat3)
    assert report["x_scan_mode"] in ("full", "targeted")
    for key, val in report.items():
        if key == "x_scan_mode":
            continue
        assert val is True, key


@pytest.mark.parametrize("q", [2, 3])
def test_scan_modes_agree(q, cat2, cat3):
    cat = {2: cat2, 3: cat3}[q]
    full, mode_f = scan_planes_for_x(cat, full=True)
    targeted, mode_t = scan_planes_for_x(cat, full=False)
    assert (mode_f, mode_t) == ("full", "targeted")
    assert full == targeted == frozenset(cat.g_x)


def test_build_catalog_budget(f4):
    with pytest.raises(BudgetError):
        build_catalog(f4, budget=1000)


def test_orbits_are_transitive_q2(cat2):
    # the lifted group permutes each orbit list transitively
    f = cat2.field
    base = {
        SubmoduleType.X: cat2.g_x[0],
        SubmoduleType.Y: cat2.g_y[0],
        SubmoduleType.ALPHA: cat2.g_alpha[0],
        SubmoduleType.BETA: cat2.g_beta[0],
        SubmoduleType.GAMMA: cat2.g_gamma[0],
    }
    reach = {t: set() for t in base}
    for s in enumerate_invertible(f):
        lift = block6_lift(s)
        for t, rep in base.items():
            reach[t].add(lift.apply(rep))
    for t, got in reach.items():
        assert got == set(cat2.members(t)), t.value


def test_quadric_alpha_matches_catalog(cat2, cat3):
    for cat in (cat2, cat3):
        assert set(cat.g_alpha) == set(cat.quadric.regulus_alpha)


def test_expected_counts_closed_form():
    assert expected_counts(2) == {"X": 18, "Y": 3, "alpha": 3, "beta": 12, "gamma": 3}
    assert expected_counts(3) == {"X": 48, "Y": 4, "alpha": 4, "beta": 36, "gamma": 4}
    assert expected_counts(5) == {"X": 180, "Y": 6, "alpha": 6, "beta": 150, "gamma": 6}
