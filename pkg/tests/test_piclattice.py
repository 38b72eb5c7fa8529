import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratsurf.errors import DimensionError
from ratsurf.piclattice import (
    DivisorClass,
    LatticeBasis,
    anticanonical_class,
    arithmetic_genus,
    canonical_class,
    enumerate_negative_classes,
    euler_characteristic,
    gram_matrix,
    inertia,
    integer_kernel,
    intersect,
    is_negative_definite,
    perp_basis,
)


def classes(r, bound=6):
    coeff = st.integers(-bound, bound)
    return st.builds(DivisorClass, coeff, st.tuples(*[coeff] * r))


def E(i, r):
    return DivisorClass.exceptional(i, r)


def L(r):
    return DivisorClass.line(r)


# --- intersection form --------------------------------------------------------


def test_basic_intersections():
    assert intersect(L(2), L(2)) == 1
    assert intersect(E(1, 2), E(1, 2)) == -1
    assert intersect(E(1, 2), E(2, 2)) == 0
    assert intersect(L(2), E(1, 2)) == 0


def test_k_squared_is_nine_minus_r():
    for r in range(16):
        assert intersect(canonical_class(r), canonical_class(r)) == 9 - r


def test_canonical_class_values():
    assert canonical_class(0) == DivisorClass(-3, ())
    assert canonical_class(3) == DivisorClass(-3, (-1, -1, -1))
    minus_k = anticanonical_class(12)
    assert intersect(minus_k, minus_k) == -3


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        intersect(L(2), L(3))


@settings(max_examples=60)
@given(st.integers(0, 6).flatmap(lambda r: st.tuples(classes(r), classes(r), classes(r), st.integers(-5, 5))))
def test_bilinear_and_symmetric(data):
    d1, d2, d3, n = data
    assert intersect(d1, d2) == intersect(d2, d1)
    assert intersect(d1 + d2, d3) == intersect(d1, d3) + intersect(d2, d3)
    assert intersect(n * d1, d2) == n * intersect(d1, d2)


# --- Riemann-Roch and adjunction ----------------------------------------------


def test_euler_characteristic_examples():
    assert euler_characteristic(DivisorClass.zero(4)) == 1
    assert euler_characteristic(L(0)) == 3
    assert euler_characteristic(anticanonical_class(9)) == 1


def test_chi_of_plane_curves_counts_monomials():
    # on P^2, chi(O(d)) = h^0 = number of degree-d monomials for d >= 0
    for d in range(8):
        monomials = sum(1 for i in range(d + 1) for j in range(d + 1 - i))
        assert euler_characteristic(DivisorClass(d, ())) == monomials


def test_arithmetic_genus_examples():
    assert arithmetic_genus(L(3)) == 0
    assert arithmetic_genus(E(1, 3)) == 0
    for r in range(13):
        assert arithmetic_genus(anticanonical_class(r)) == 1
    # smooth plane curves of degree d have genus (d-1)(d-2)/2
    for d in range(1, 7):
        assert arithmetic_genus(DivisorClass(d, ())) == (d - 1) * (d - 2) // 2


@given(st.integers(0, 6).flatmap(classes))
def test_riemann_roch_genus_relation(d):
    k = canonical_class(d.r)
    assert 2 * (euler_characteristic(d) - 1) == intersect(d, d) - intersect(d, k)
    assert 2 * (arithmetic_genus(d) - 1) == intersect(d, d) + intersect(d, k)


# --- JSON ---------------------------------------------------------------------


@given(st.integers(0, 5).flatmap(classes))
def test_divisor_json_roundtrip(d):
    assert DivisorClass.from_json(d.to_json()) == d


@pytest.mark.parametrize("bad", [{"b": []}, {"a": "1"}, {"a": 1, "b": [1.5]}, {"a": True}, [1, 2]])
def test_divisor_json_rejects(bad):
    with pytest.raises(ValueError):
        DivisorClass.from_json(bad)


# --- perp_basis ---------------------------------------------------------------


def test_perp_of_anticanonical_r10_matches_explicit_basis():
    r = 10
    basis = perp_basis([anticanonical_class(r)])
    explicit = [E(i, r) - E(r, r) for i in range(1, r)] + [L(r) - 3 * E(r, r)]
    assert len(basis) == 10
    assert basis.same_lattice(explicit)


def test_perp_of_line_is_exceptional_span():
    r = 5
    basis = perp_basis([L(r)])
    assert basis.rank == r
    assert basis.same_lattice([E(i, r) for i in range(1, r + 1)])


def test_perp_of_nothing_is_everything():
    basis = perp_basis([], r=4)
    assert basis.rank == 5
    assert basis.contains(DivisorClass(7, (1, -2, 3, 0)))


def test_perp_requires_r_when_empty():
    with pytest.raises(ValueError):
        perp_basis([])


def test_lattice_membership_is_integral():
    basis = LatticeBasis((DivisorClass(2, (0,)),), 1)
    assert basis.contains(DivisorClass(4, (0,)))
    assert not basis.contains(DivisorClass(1, (0,)))
    assert not basis.contains(DivisorClass(0, (1,)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7).flatmap(lambda r: st.lists(classes(r, 4), min_size=1, max_size=3)))
def test_perp_basis_properties(cs):
    r = cs[0].r
    basis = perp_basis(cs)
    for v in basis:
        assert all(intersect(v, c) == 0 for c in cs)
        vec = v.as_vector()
        assert any(vec)
        for q in (2, 3, 5, 7):
            assert not all(x % q == 0 for x in vec)
    # the form is nondegenerate, so rank of the complement is 1 + r - rank of the span
    span_rank = _rank([c.as_vector() for c in cs])
    assert basis.rank == 1 + r - span_rank


def _rank(rows):
    import sympy

    return sympy.Matrix(rows).rank()


def test_integer_kernel_is_saturated():
    # the kernel of 2x + 4y + 6z is the saturated lattice spanned by (2,-1,0), (3,0,-1)
    kernel = integer_kernel([[2, 4, 6]], 3)
    assert len(kernel) == 2
    basis = LatticeBasis(tuple(DivisorClass.from_vector(v) for v in kernel), 2)
    assert basis.same_lattice([DivisorClass(2, (-1, 0)), DivisorClass(3, (0, -1))])


# --- negative classes ---------------------------------------------------------


def minus_one(cs):
    return [c for c in cs if intersect(c, c) == -1]


def minus_two(cs):
    return [c for c in cs if intersect(c, c) == -2]


def test_r2_minus_one_classes():
    r = 2
    found = set(minus_one(enumerate_negative_classes(r, 3)))
    assert found == {E(1, r), E(2, r), L(r) - E(1, r) - E(2, r)}


def test_r2_roots_both_signs():
    roots = set(minus_two(enumerate_negative_classes(2, 3)))
    assert E(1, 2) - E(2, 2) in roots
    assert E(2, 2) - E(1, 2) in roots


@pytest.mark.parametrize("r,count", [(3, 6), (4, 10), (5, 16), (6, 27), (7, 56)])
def test_exceptional_counts_match_brute_force(r, count):
    bound = 3
    found = minus_one(enumerate_negative_classes(r, bound))
    assert len(found) == count
    # brute force over the full box a <= bound, |b_i| <= a (or b = -e_i when a = 0)
    brute = 0
    for a in range(0, bound + 1):
        lo = -1 if a == 0 else 0
        for b in itertools.product(range(lo, a + 1), repeat=r):
            d = DivisorClass(a, b)
            if intersect(d, d) == -1 and intersect(d, canonical_class(r)) == -1 and (a > 0 or sum(b) == -1):
                brute += 1
    assert brute == count


def test_r8_bound_six_gives_240_exceptional_classes():
    assert len(minus_one(enumerate_negative_classes(8, 6))) == 240


def test_negative_class_invariants():
    for r in range(0, 8):
        for c in enumerate_negative_classes(r, 4):
            k = canonical_class(r)
            assert arithmetic_genus(c) == 0
            if intersect(c, c) == -1:
                assert intersect(c, k) == -1
                assert euler_characteristic(c) == 1
            else:
                assert intersect(c, c) == -2 and intersect(c, k) == 0
                assert euler_characteristic(c) == 0


def test_enumeration_rejects_bad_bounds():
    with pytest.raises(ValueError):
        enumerate_negative_classes(3, 0)


# --- definiteness -------------------------------------------------------------


@pytest.mark.parametrize(
    "gram,expected",
    [
        ([[-2]], True),
        ([[-2, 1], [1, -2]], True),
        ([[-2, 2], [2, -2]], False),
        ([[-1, 0], [0, 1]], False),
        ([[-2, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -2]], True),
    ],
)
def test_is_negative_definite(gram, expected):
    assert is_negative_definite(gram) is expected


def test_is_negative_definite_rejects_asymmetric():
    with pytest.raises(ValueError):
        is_negative_definite([[-2, 1], [0, -2]])


@settings(max_examples=50)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inertia_against_eigenvalues(rows):
    import sympy

    n = len(rows)
    sym = [[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    pos, neg, zero = inertia(sym)
    assert pos + neg + zero == n
    m = sympy.Matrix(sym)
    assert zero == n - m.rank()
    charpoly = m.charpoly()
    roots = sympy.real_roots(charpoly.as_expr())
    assert pos == sum(1 for x in roots if x > 0)
    assert is_negative_definite(sym) is (neg == n)


def test_gram_matrix_of_exceptional_curves():
    assert gram_matrix([E(1, 2), E(2, 2), L(2)]) == [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]
