import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratsurf import ellcurve as ec
from ratsurf.ellcurve import INFINITY, QQ, PrimeField, WeierstrassCurve
from ratsurf.errors import ConfigurationError, DimensionError, UnsupportedModelError
from ratsurf.piclattice import DivisorClass, anticanonical_class, intersect, perp_basis
from ratsurf.restriction import (
    AbstractConfiguration,
    ConcreteBlowup,
    RestrictedClass,
    add_restricted,
    gamma_generator_classes,
    gamma_generators,
    is_torsion_class,
    model_from_json,
    random_model,
    restrict,
)

P101 = PrimeField(101)
E101 = WeierstrassCurve.short(P101, 2, 3)
E11 = WeierstrassCurve.short(PrimeField(11), 1, 1)
EQ = WeierstrassCurve.short(QQ, 0, -2)
G = EQ.point(3, 5)


def E(i, r):
    return DivisorClass.exceptional(i, r)


def L(r):
    return DivisorClass.line(r)


def model(curve, r, seed):
    return random_model(curve, r, random.Random(seed))


def affine(S):
    pts = [P for P in ec.points(S.curve)]
    return [P for P in pts if P is not INFINITY]


# --- brute-force oracles over F_p ---------------------------------------------


def _nullspace_mod_p(rows, p):
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    pivots, rank = [], 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def curve_through(points, degree, p):
    """Coefficients of the unique plane curve of the given degree through the points, or None."""
    monos = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    rows = [[pow(x, i, p) * pow(y, j, p) % p for i, j in monos] for x, y in points]
    ns = _nullspace_mod_p(rows, p)
    if len(ns) != 1:
        return None
    return monos, ns[0]


def residual_points(S, degree, chosen):
    """Affine points of E on the curve through ``chosen``, other than ``chosen``."""
    p = S.field.p
    found = curve_through(chosen, degree, p)
    if found is None:
        return None
    monos, coeffs = found
    on = [
        P
        for P in affine(S)
        if sum(c * pow(P[0], i, p) * pow(P[1], j, p) for (i, j), c in zip(monos, coeffs)) % p == 0
    ]
    return [P for P in on if P not in chosen]


# --- pinned examples ----------------------------------------------------------


def test_restrict_line():
    S = model(E101, 5, 1)
    R = restrict(S, L(5))
    assert R == RestrictedClass(3, INFINITY)


def test_restrict_minus_k_r9():
    S = model(E101, 9, 2)
    R = restrict(S, anticanonical_class(9))
    total = INFINITY
    for P in S.points:
        total = ec.add(S.curve, total, P)
    assert R.degree == 0
    assert R.point == ec.negate(S.curve, total)


def test_restrict_exceptional_difference():
    S = model(E101, 6, 3)
    p = S.points
    for i in range(1, 6):
        R = restrict(S, E(i, 6) - E(6, 6))
        assert R.degree == 0
        assert R.point == ec.sub(S.curve, p[i - 1], p[5])


def test_restrict_exceptional_curve():
    for seed in range(20):
        S = model(E11, 4, seed)
        for i in range(1, 5):
            assert restrict(S, E(i, 4)) == RestrictedClass(1, S.points[i - 1])


def test_line_through_two_points_matches_enumeration():
    checked = 0
    for seed in range(30):
        S = model(E101, 2, seed)
        if INFINITY in S.points:
            continue
        rest = residual_points(S, 1, list(S.points))
        if rest is None or len(rest) != 1:
            continue  # third point at infinity or a tangency
        R = restrict(S, L(2) - E(1, 2) - E(2, 2))
        assert R == RestrictedClass(1, rest[0])
        checked += 1
    assert checked >= 10


def test_tangent_line_matches_enumeration():
    checked = 0
    for P in affine(ConcreteBlowup(E101, ())):
        if P[1] == 0:
            continue
        # tangent at P: y - y0 = lam (x - x0), lam = (3x0^2 + a)/(2 y0)
        p = 101
        lam = (3 * P[0] * P[0] + 2) * pow(2 * P[1], -1, p) % p
        on = [Q for Q in ec.points(E101) if Q is not INFINITY and (Q[1] - P[1] - lam * (Q[0] - P[0])) % p == 0]
        others = [Q for Q in on if Q != P]
        S = ConcreteBlowup(E101, (P,))
        R = restrict(S, L(1) - 2 * E(1, 1))
        if others:
            assert R == RestrictedClass(1, others[0])
        else:  # flex: the tangent meets E only at P
            assert R == RestrictedClass(1, P)
        checked += 1
        if checked > 25:
            break
    assert checked > 10


def test_conic_through_five_points_matches_enumeration():
    checked = 0
    for seed in range(40):
        S = model(E101, 5, seed)
        if INFINITY in S.points:
            continue
        rest = residual_points(S, 2, list(S.points))
        if rest is None or len(rest) != 1:
            continue
        D = DivisorClass(2, (1, 1, 1, 1, 1))
        assert restrict(S, D) == RestrictedClass(1, rest[0])
        checked += 1
    assert checked >= 5


def test_restrict_dimension_mismatch():
    S = model(E11, 3, 0)
    with pytest.raises(DimensionError):
        restrict(S, L(4))


def test_abstract_models_unsupported():
    A = AbstractConfiguration([[-2]], [0])
    with pytest.raises(UnsupportedModelError):
        restrict(A, L(0))
    with pytest.raises(UnsupportedModelError):
        gamma_generators(A)


# --- homomorphism and degree ---------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 10_000),
    st.lists(st.integers(-5, 5), min_size=11, max_size=11),
    st.lists(st.integers(-5, 5), min_size=11, max_size=11),
)
def test_homomorphism(seed, v1, v2):
    S = model(E11, 10, seed)
    D1, D2 = DivisorClass.from_vector(v1), DivisorClass.from_vector(v2)
    assert restrict(S, D1 + D2) == add_restricted(S, restrict(S, D1), restrict(S, D2))
    assert restrict(S, D1).degree == intersect(D1, anticanonical_class(10))


def test_homomorphism_over_q():
    pts = tuple(ec.scalar_mul(EQ, i, G) for i in (1, 2, -1, 3))
    S = ConcreteBlowup(EQ, pts)
    rng = random.Random(5)
    for _ in range(20):
        D1 = DivisorClass(rng.randint(-3, 3), tuple(rng.randint(-3, 3) for _ in range(4)))
        D2 = DivisorClass(rng.randint(-3, 3), tuple(rng.randint(-3, 3) for _ in range(4)))
        assert restrict(S, D1 + D2) == add_restricted(S, restrict(S, D1), restrict(S, D2))


# --- gamma generators ---------------------------------------------------------


def test_gamma_generators_by_r():
    assert gamma_generators(model(E11, 8, 0)) == []
    S9 = model(E11, 9, 0)
    assert gamma_generator_classes(S9) == [anticanonical_class(9)]
    assert gamma_generators(S9) == [restrict(S9, anticanonical_class(9))]
    S10 = model(E101, 10, 0)
    gens = gamma_generators(S10)
    assert len(gens) == 10
    assert all(R.degree == 0 for R in gens)


def test_gamma_generators_span_explicit_images():
    # the subgroup generated by the images equals the one generated by {p_i - p_r} and -3 p_r
    S = model(E101, 10, 4)
    E = S.curve
    n = ec.group_order(E)

    def subgroup(gens):
        seen = {INFINITY}
        frontier = [INFINITY]
        while frontier:
            P = frontier.pop()
            for g in gens:
                Q = ec.add(E, P, g)
                if Q not in seen:
                    seen.add(Q)
                    frontier.append(Q)
        return seen

    ours = subgroup([R.point for R in gamma_generators(S)])
    pr = S.points[-1]
    explicit = [ec.sub(E, P, pr) for P in S.points[:-1]] + [ec.scalar_mul(E, -3, pr)]
    assert ours == subgroup(explicit)
    assert n % len(ours) == 0


def test_generators_over_finite_field_are_torsion():
    for seed in range(10):
        S = model(E11, 11, seed)
        assert all(is_torsion_class(S, R) for R in gamma_generators(S))


def test_not_effective_has_no_generators():
    S = ConcreteBlowup(E11, model(E11, 10, 0).points, antican_effective=False, e=2)
    with pytest.raises(ConfigurationError):
        gamma_generators(S)


# --- torsion of restricted classes --------------------------------------------


def test_is_torsion_class_examples():
    S = ConcreteBlowup(EQ, (G,))
    assert not is_torsion_class(S, RestrictedClass(3, INFINITY))
    assert is_torsion_class(S, RestrictedClass(0, INFINITY))
    assert not is_torsion_class(S, RestrictedClass(0, G))


# --- models -------------------------------------------------------------------


def test_model_validation():
    P = E11.point(0, 1)
    with pytest.raises(ConfigurationError):
        ConcreteBlowup(E11, (P, P))
    with pytest.raises(ConfigurationError):
        ConcreteBlowup(E11, ((Fraction(1), Fraction(1)),))
    with pytest.raises(ConfigurationError):
        ConcreteBlowup(E11, (), antican_effective=False, e=1)
    with pytest.raises(ConfigurationError):
        ConcreteBlowup(E11, (), antican_effective=True, e=2)


def test_model_json_roundtrip():
    S = model(E101, 7, 3)
    assert model_from_json(S.to_json()) == S
    A = AbstractConfiguration([[-2, 1], [1, -2]], [0, 0], iitaka=1)
    assert model_from_json(A.to_json()) == A


def test_model_json_defaults_e():
    S = model(E11, 3, 0)
    data = S.to_json()
    data["antican_effective"] = False
    del data["e"]
    assert model_from_json(data).e == 2


@pytest.mark.parametrize(
    "bad",
    [
        {"kind": "mystery"},
        {"points": []},
        {"kind": "abstract", "gram": [[-2]]},
        {"curve": {"field": "Q", "a": ["0", "0", "0", "0", "-2"]}, "points": "none"},
        {"curve": {"field": "Q", "a": ["0", "0", "0", "0", "-2"]}, "antican_effective": "yes"},
    ],
)
def test_model_json_rejects(bad):
    with pytest.raises(ValueError):
        model_from_json(bad)


def test_random_model_too_many_points():
    with pytest.raises(ConfigurationError):
        model(E11, ec.group_order(E11) + 1, 0)


def test_perp_basis_of_minus_k_restricts_to_degree_zero():
    S = model(E101, 12, 9)
    for D in perp_basis([anticanonical_class(12)]):
        assert restrict(S, D).degree == 0
