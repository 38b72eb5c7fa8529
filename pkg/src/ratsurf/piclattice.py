"""Picard lattice of the blow-up of P^2 at r points.

A class is stored as ``(a; b_1, ..., b_r)`` and stands for

    D = a*l - b_1*E_1 - ... - b_r*E_r

where ``l`` is the pull-back of a line and ``E_i`` are the exceptional
curves.  With this convention the anticanonical class is ``(3; 1, ..., 1)``,
a line through two blown-up points is ``(1; 1, 1, 0, ...)`` and the
exceptional curve ``E_i`` itself has ``b_i = -1``.  Every other module uses
the same convention.

The intersection form is diagonal of signature (1, r):
``D.D' = a*a' - sum(b_i*b'_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, Sequence

from ratsurf.errors import DimensionError

__all__ = [
    "DivisorClass",
    "LatticeBasis",
    "intersect",
    "canonical_class",
    "anticanonical_class",
    "euler_characteristic",
    "arithmetic_genus",
    "gram_matrix",
    "perp_basis",
    "integer_kernel",
    "enumerate_negative_classes",
    "is_negative_definite",
    "inertia",
]


@dataclass(frozen=True)
class DivisorClass:
    a: int
    b: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))

    @property
    def r(self) -> int:
        return len(self.b)

    @classmethod
    def zero(cls, r: int) -> DivisorClass:
        return cls(0, (0,) * r)

    @classmethod
    def line(cls, r: int) -> DivisorClass:
        return cls(1, (0,) * r)

    @classmethod
    def exceptional(cls, i: int, r: int) -> DivisorClass:
        """The class of E_i, with 1-based ``i``."""
        if not 1 <= i <= r:
            raise IndexError(f"exceptional index {i} outside 1..{r}")
        b = [0] * r
        b[i - 1] = -1
        return cls(0, tuple(b))

    def as_vector(self) -> tuple[int, ...]:
        return (self.a,) + self.b

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> DivisorClass:
        return cls(v[0], tuple(v[1:]))

    def _check(self, other: DivisorClass) -> None:
        if self.r != other.r:
            raise DimensionError(f"classes on surfaces with r={self.r} and r={other.r}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(self.b, other.b)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.a - other.a, tuple(x - y for x, y in zip(self.b, other.b)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.a, tuple(-x for x in self.b))

    def __mul__(self, n: int) -> DivisorClass:
        if not isinstance(n, int):
            return NotImplemented
        return DivisorClass(n * self.a, tuple(n * x for x in self.b))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and not any(self.b)

    def to_json(self) -> dict:
        return {"a": self.a, "b": list(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> DivisorClass:
        if not isinstance(data, dict) or "a" not in data:
            raise ValueError("divisor JSON needs an integer field 'a'")
        a, b = data["a"], data.get("b", [])
        if not isinstance(a, int) or isinstance(a, bool):
            raise ValueError("divisor field 'a' must be an integer")
        if not isinstance(b, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in b):
            raise ValueError("divisor field 'b' must be a list of integers")
        return cls(a, tuple(b))

    def __str__(self) -> str:
        terms = [f"{self.a}l"] if self.a else []
        for i, v in enumerate(self.b, 1):
            if v:
                terms.append(f"{-v:+d}E{i}")
        return " ".join(terms) if terms else "0"


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    d1._check(d2)
    return d1.a * d2.a - sum(x * y for x, y in zip(d1.b, d2.b))


def canonical_class(r: int) -> DivisorClass:
    if r < 0:
        raise ValueError("r must be non-negative")
    return DivisorClass(-3, (-1,) * r)


def anticanonical_class(r: int) -> DivisorClass:
    return -canonical_class(r)


def euler_characteristic(d: DivisorClass) -> int:
    """Riemann-Roch: chi(O(D)) = 1 + (D^2 - D.K)/2."""
    k = canonical_class(d.r)
    twice = intersect(d, d) - intersect(d, k)
    # D^2 and D.K always have the same parity on this lattice.
    assert twice % 2 == 0, d
    return 1 + twice // 2


def arithmetic_genus(c: DivisorClass) -> int:
    """Adjunction: p_a(C) = 1 + (C^2 + C.K)/2."""
    k = canonical_class(c.r)
    twice = intersect(c, c) + intersect(c, k)
    assert twice % 2 == 0, c
    return 1 + twice // 2


def gram_matrix(classes: Sequence[DivisorClass]) -> list[list[int]]:
    return [[intersect(c, d) for d in classes] for c in classes]


# --- integer linear algebra -------------------------------------------------


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Basis of {v in Z^n : row . v = 0 for every row}.

    Column operations bring the matrix to column echelon form ``A U = [H | 0]``
    with ``U`` unimodular; the columns of ``U`` over the zero block form a
    basis of the integer kernel, which is therefore saturated.
    """
    m = len(rows)
    # columns of the augmented matrix [A; I]
    cols = [[int(rows[i][j]) for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    pivot = 0
    for i in range(m):
        if pivot == n:
            break
        while True:
            live = [j for j in range(pivot, n) if cols[j][i] != 0]
            if not live:
                break
            j_min = min(live, key=lambda j: (abs(cols[j][i]), j))
            cols[pivot], cols[j_min] = cols[j_min], cols[pivot]
            p = cols[pivot][i]
            done = True
            for j in range(pivot + 1, n):
                q = cols[j][i] // p
                if q:
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[pivot])]
                if cols[j][i] != 0:
                    done = False
            if done:
                pivot += 1
                break
    kernel = [c[m:] for c in cols[pivot:]]
    return _size_reduce(kernel)


def _size_reduce(vectors: list[list[int]]) -> list[list[int]]:
    # Cheap pairwise reduction; keeps the basis unimodularly equivalent.
    vecs = [list(v) for v in vectors]
    changed = True
    while changed:
        changed = False
        for i, j in itertools.permutations(range(len(vecs)), 2):
            vj = vecs[j]
            nj = sum(x * x for x in vj)
            if nj == 0:
                continue
            dot = sum(x * y for x, y in zip(vecs[i], vj))
            q = round(Fraction(dot, nj))
            if q:
                cand = [x - q * y for x, y in zip(vecs[i], vj)]
                if sum(x * x for x in cand) < sum(x * x for x in vecs[i]):
                    vecs[i] = cand
                    changed = True
    return vecs


def _solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with sum c_j*columns[j] = target, or None if unsolvable."""
    k, n = len(columns), len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    row, where = 0, []
    for col in range(k):
        piv = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if piv is None:
            return None  # dependent columns; callers pass bases
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        where.append(row)
        row += 1
    if any(aug[i][k] != 0 for i in range(row, n)):
        return None
    return [aug[where[j]][k] for j in range(k)]


@dataclass(frozen=True)
class LatticeBasis:
    """A Z-basis of a sublattice of Pic(X)."""

    vectors: tuple[DivisorClass, ...]
    r: int

    def __iter__(self) -> Iterator[DivisorClass]:
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> DivisorClass:
        return self.vectors[i]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def contains(self, d: DivisorClass) -> bool:
        """Integral membership of ``d`` in the span."""
        if d.r != self.r:
            raise DimensionError(f"class with r={d.r} against lattice with r={self.r}")
        if not self.vectors:
            return d.is_zero()
        coeffs = _solve_rational([v.as_vector() for v in self.vectors], d.as_vector())
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def same_lattice(self, other: LatticeBasis | Iterable[DivisorClass]) -> bool:
        other = other if isinstance(other, LatticeBasis) else LatticeBasis(tuple(other), self.r)
        return all(self.contains(v) for v in other) and all(other.contains(v) for v in self)

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.vectors]


def perp_basis(classes: Sequence[DivisorClass], r: int | None = None) -> LatticeBasis:
    """Saturated Z-basis of the classes orthogonal to all of ``classes``.

    ``r`` is only needed when ``classes`` is empty.
    """
    classes = list(classes)
    if classes:
        r0 = classes[0].r
        if any(c.r != r0 for c in classes):
            raise DimensionError("classes live on different surfaces")
        if r is not None and r != r0:
            raise DimensionError(f"r={r} does not match classes with r={r0}")
        r = r0
    elif r is None:
        raise ValueError("r is required when no classes are given")
    # D.C = a*c_a - sum(b_i*c_b_i): the linear form of C is (c_a, -c_b).
    rows = [(c.a,) + tuple(-x for x in c.b) for c in classes]
    kernel = integer_kernel(rows, r + 1)
    return LatticeBasis(tuple(DivisorClass.from_vector(v) for v in kernel), r)


# --- negative classes ---------------------------------------------------------


def _nonneg_vectors(length: int, total: int, squares: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors with the given sum and sum of squares, in lex order."""
    if length == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    if total < 0 or squares < 0 or total > squares or total * total > length * squares:
        return
    for v in range(0, isqrt(squares) + 1):
        if v > total:
            break
        for rest in _nonneg_vectors(length - 1, total - v, squares - v * v):
            yield (v,) + rest


def enumerate_negative_classes(r: int, degree_bound: int) -> list[DivisorClass]:
    """(-1)- and (-2)-classes of degree at most ``degree_bound``.

    (-1)-classes satisfy C^2 = -1, C.K = -1; (-2)-classes satisfy C^2 = -2,
    C.K = 0.  For a > 0 only b_i >= 0 is searched.  In degree 0 the list holds
    the E_i and both signs of every root E_i - E_j.  The list is complete
    within the bound and says nothing about classes of higher degree.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    if r < 0:
        raise ValueError("r must be non-negative")
    found: list[DivisorClass] = []
    for i in range(r):
        found.append(DivisorClass.exceptional(i + 1, r))
    for i, j in itertools.permutations(range(r), 2):
        b = [0] * r
        b[i], b[j] = -1, 1
        found.append(DivisorClass(0, tuple(b)))
    for a in range(1, degree_bound + 1):
        # (-1): sum b = 3a - 1, sum b^2 = a^2 + 1 ; (-2): sum b = 3a, sum b^2 = a^2 + 2
        for total, squares in ((3 * a - 1, a * a + 1), (3 * a, a * a + 2)):
            for b in _nonneg_vectors(r, total, squares):
                found.append(DivisorClass(a, b))
    found.sort(key=lambda c: (c.a, c.b))
    return found


# --- definiteness -------------------------------------------------------------


def is_negative_definite(gram: Sequence[Sequence[int | Fraction]]) -> bool:
    """Sylvester's criterion on -G, with exact pivots."""
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise ValueError("Gram matrix must be square")
    if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
        raise ValueError("Gram matrix must be symmetric")
    m = [[-Fraction(x) for x in row] for row in gram]
    # Leading minor k is the product of the first k pivots of elimination
    # without row exchanges, so all minors are positive iff all pivots are.
    for k in range(n):
        p = m[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return True


def inertia(gram: Sequence[Sequence[int | Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form, by exact congruence diagonalisation."""
    m = [[Fraction(x) for x in row] for row in gram]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            # zero diagonal: if some off-diagonal entry survives, replace
            # e_i by e_i + e_j to create a nonzero diagonal entry 2*m[i][j]
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            continue
        p = m[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / p
            if f:
                for j in active:
                    m[i][j] -= f * m[k][j]
                m[i][k] = Fraction(0)
        for i in active:
            m[k][i] = Fraction(0)
    return pos, neg, n - pos - neg
