"""Plane curves over Q and singular members of pencils s*f0 + t*f_inf.

Forms are stored sparsely as ``{(i, j, k): Fraction}`` for the monomial
x^i y^j z^k.  Heavier polynomial work (Groebner bases, univariate
factorisation over Q) is delegated to sympy; the Sylvester resultant is
computed here by fraction-free elimination.

A member of a pencil counts as singular when its singular scheme is longer
than that of a general member.  For pencils whose general member is smooth
this is the usual notion; pencils whose members all share singular base
points (Halphen pencils, for instance) are handled the same way.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from ratsurf.errors import DegeneratePencilError, NonIsolatedSingularitiesError

__all__ = [
    "HomogeneousForm",
    "PencilMember",
    "NodeType",
    "ParameterReport",
    "SingularPointReport",
    "partial",
    "evaluate",
    "resultant",
    "resultant_in",
    "pencil_member",
    "singular_parameters",
    "singular_length",
    "rational_singular_points",
    "node_test",
    "is_reduced_on_random_lines",
]

X, Y, Z = sympy.symbols("x y z")
_SYMS = (X, Y, Z)
_VAR_INDEX = {"x": 0, "y": 1, "z": 2, 0: 0, 1: 1, 2: 2}


class HomogeneousForm:
    __slots__ = ("degree", "_terms")

    def __init__(self, terms: Mapping[tuple[int, int, int], object], degree: int | None = None):
        clean: dict[tuple[int, int, int], Fraction] = {}
        for e, c in terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != 3 or min(e) < 0:
                raise ValueError(f"bad exponent {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        degrees = {sum(e) for e in clean}
        if len(degrees) > 1:
            raise ValueError(f"form is not homogeneous (degrees {sorted(degrees)})")
        if degree is None:
            if not degrees:
                raise ValueError("degree of the zero form must be given")
            degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise ValueError(f"terms have degree {degrees.pop()}, expected {degree}")
        self.degree = int(degree)
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- conversions --

    @classmethod
    def from_sympy(cls, expr, degree: int | None = None) -> HomogeneousForm:
        poly = sympy.Poly(sympy.expand(expr), *_SYMS, domain="QQ")
        terms = {m: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())}
        return cls(terms, degree)

    @classmethod
    def parse(cls, text: str) -> HomogeneousForm:
        transformations = standard_transformations + (convert_xor, implicit_multiplication_application)
        expr = parse_expr(text, local_dict={"x": X, "y": Y, "z": Z}, transformations=transformations)
        if expr.free_symbols - set(_SYMS):
            raise ValueError(f"unknown symbols in {text!r}")
        return cls.from_sympy(expr)

    def to_sympy(self):
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * X**i * Y**j * Z**k for (i, j, k), c in self._terms.items()),
            sympy.Integer(0),
        )

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"e": list(e), "c": str(c)} for e, c in sorted(self._terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data) -> HomogeneousForm:
        if isinstance(data, str):
            return cls.parse(data)
        if not isinstance(data, dict):
            raise ValueError("form must be an object with 'degree' and 'terms', or a polynomial string")
        if "expr" in data:
            return cls.parse(data["expr"])
        if "degree" not in data or "terms" not in data:
            raise ValueError("form JSON needs fields 'degree' and 'terms'")
        terms: dict = {}
        for t in data["terms"]:
            if not isinstance(t, dict) or "e" not in t or "c" not in t:
                raise ValueError(f"bad term {t!r}: expected {{'e': [i, j, k], 'c': 'num/den'}}")
            c = t["c"]
            if isinstance(c, bool) or not isinstance(c, (int, str)):
                raise ValueError(f"coefficient {c!r} must be an integer or 'num/den' string")
            e = tuple(t["e"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(c)
        return cls(terms, data["degree"])

    # -- arithmetic --

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self._terms == other._terms and (self.degree == other.degree or not self._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: HomogeneousForm) -> HomogeneousForm:
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousForm(terms, self.degree)

    def __neg__(self) -> HomogeneousForm:
        return HomogeneousForm({e: -c for e, c in self._terms.items()}, self.degree)

    def __sub__(self, other: HomogeneousForm) -> HomogeneousForm:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            terms: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    terms[e] = terms.get(e, 0) + c1 * c2
            return HomogeneousForm(terms, self.degree + other.degree)
        if isinstance(other, (int, Fraction)):
            return HomogeneousForm({e: c * other for e, c in self._terms.items()}, self.degree)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"HomogeneousForm({sympy.sstr(self.to_sympy())}, degree={self.degree})"

    def __str__(self):
        return sympy.sstr(self.to_sympy())


def partial(f: HomogeneousForm, var) -> HomogeneousForm:
    k = _VAR_INDEX[var]
    terms = {}
    for e, c in f.terms.items():
        if e[k]:
            d = list(e)
            d[k] -= 1
            terms[tuple(d)] = c * e[k]
    return HomogeneousForm(terms, max(f.degree - 1, 0))


def evaluate(f: HomogeneousForm, point: Sequence) -> Fraction:
    x, y, z = (Fraction(v) for v in point)
    return sum((c * x**i * y**j * z**k for (i, j, k), c in f.terms.items()), Fraction(0))


def gradient(f: HomogeneousForm) -> tuple[HomogeneousForm, HomogeneousForm, HomogeneousForm]:
    return partial(f, 0), partial(f, 1), partial(f, 2)


# --- resultants ---------------------------------------------------------------


def _is_zero(a) -> bool:
    return a.is_zero if isinstance(a, sympy.Poly) else a == 0


def _exact_div(a, b):
    if isinstance(a, sympy.Poly):
        return a.exquo(b)
    return a / b


def _bareiss_det(matrix: list[list]):
    n = len(matrix)
    if n == 0:
        return None
    m = [row[:] for row in matrix]
    sign, prev = 1, None
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(m[i][k])), None)
            if swap is None:
                return m[k][k] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else _exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: Sequence, q: Sequence):
    """Resultant of two univariate polynomials given by coefficient lists.

    Coefficients run from the leading one down to the constant term and may
    be rationals or elements of a polynomial ring (``sympy.Poly``), which is
    how a variable is eliminated from bivariate polynomials.  The Sylvester
    determinant is evaluated by Bareiss' fraction-free elimination, so only
    exact divisions occur.
    """
    p = _strip(p)
    q = _strip(q)
    if not p or not q:
        raise ValueError("resultant of a zero polynomial")
    p = [Fraction(c) if isinstance(c, int) else c for c in p]
    q = [Fraction(c) if isinstance(c, int) else c for c in q]
    m, n = len(p) - 1, len(q) - 1
    if m == 0 and n == 0:
        return p[0] ** 0
    zero = p[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _strip(coeffs: Sequence) -> list:
    coeffs = list(coeffs)
    while coeffs and _is_zero(coeffs[0]):
        coeffs.pop(0)
    return coeffs


def resultant_in(f: sympy.Poly, g: sympy.Poly, var) -> sympy.Poly:
    """Eliminate ``var`` from two sympy polynomials with the Sylvester resultant."""
    others = [s for s in f.gens if s != var]
    if not others:
        rf = [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(f, var).all_coeffs()]
        rg = [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(g, var).all_coeffs()]
        res = resultant(rf, rg)
        return sympy.Poly(sympy.Rational(res.numerator, res.denominator), var, domain="QQ")
    fp = sympy.Poly(f.as_expr(), var, *others, domain="QQ")
    gp = sympy.Poly(g.as_expr(), var, *others, domain="QQ")
    return resultant(_coeff_list(fp, others), _coeff_list(gp, others))


def _coeff_list(poly: sympy.Poly, others) -> list[sympy.Poly]:
    deg = poly.degree(poly.gens[0])
    coeffs = [sympy.Poly(0, *others, domain="QQ") for _ in range(deg + 1)]
    for monom, c in poly.terms():
        coeffs[deg - monom[0]] += sympy.Poly(c * sympy.Mul(*(s**e for s, e in zip(others, monom[1:]))), *others, domain="QQ")
    return coeffs


# --- univariate helpers over Q ------------------------------------------------


def _rational_roots(poly: sympy.Poly) -> tuple[list[Fraction], list[int]]:
    """Rational roots and the degrees of irreducible factors without one."""
    if poly.is_zero:
        raise ValueError("zero polynomial has no finite root set")
    roots, residual = [], []
    for fac, _ in sympy.factor_list(poly)[1]:
        fac = sympy.Poly(fac, *poly.gens)
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append(Fraction(int(r.p), int(r.q)))
        elif fac.degree() > 1:
            residual.append(fac.degree())
    return sorted(roots), sorted(residual)


def _gcd_all(polys: Iterable[sympy.Poly]) -> sympy.Poly | None:
    out = None
    for p in polys:
        if p.is_zero:
            continue
        out = p if out is None else sympy.gcd(out, p)
    return out


# --- singular points ----------------------------------------------------------


def _normalize_point(pt: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    pt = [Fraction(v) for v in pt]
    last = next((v for v in reversed(pt) if v != 0), None)
    if last is None:
        raise ValueError("[0:0:0] is not a projective point")
    return tuple(v / last for v in pt)


def integer_point(pt: Sequence) -> tuple[int, int, int]:
    """Primitive integer representative with last nonzero coordinate positive."""
    pt = _normalize_point(pt)
    den = math.lcm(*(v.denominator for v in pt))
    ints = [int(v * den) for v in pt]
    g = gcd(*ints)
    return tuple(v // g for v in ints)


@dataclass
class SingularPointReport:
    points: list[tuple[Fraction, Fraction, Fraction]]
    elimination_degrees: dict[str, int] = field(default_factory=dict)
    unresolved_degree: int = 0

    def to_json(self) -> dict:
        return {
            "points": [list(integer_point(p)) for p in self.points],
            "elimination_degrees": dict(self.elimination_degrees),
            "unresolved_degree": self.unresolved_degree,
        }


def rational_singular_points(f: HomogeneousForm) -> SingularPointReport:
    """All singular points of V(f) in P^2(Q).

    On the chart z = 1 the variable y is eliminated from f, f_x, f_y with
    Sylvester resultants; rational roots of their gcd are back-substituted
    and only points where all three vanish are kept.  The line z = 0 is
    handled directly.  ``unresolved_degree`` counts eliminant roots that are
    not rational, so irrational singular points are never silently lost.
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("need a nonzero form of positive degree")
    grad = gradient(f)
    pts: list = []
    degrees: dict[str, int] = {}
    unresolved = 0

    # chart z = 1: by Euler's relation f = f_x = f_y = 0 forces f_z = 0
    affine = [sympy.Poly(g.to_sympy().subs(Z, 1), X, Y, domain="QQ") for g in (f, grad[0], grad[1])]
    nonzero = [p for p in affine if not p.is_zero]
    if not any(p.is_ground for p in nonzero):
        common = _gcd_all(nonzero)
        if common.total_degree() > 0:
            raise NonIsolatedSingularitiesError(f"{f} has a non-isolated singular locus")
        eliminant = _chart_eliminant(nonzero)
        eliminant = eliminant.sqf_part()
        degrees["z"] = eliminant.degree()
        xs, _ = _rational_roots(eliminant)
        unresolved += eliminant.degree() - len(xs)
        for x0 in xs:
            xr = sympy.Rational(x0.numerator, x0.denominator)
            in_y = [sympy.Poly(p.as_expr().subs(X, xr), Y, domain="QQ") for p in nonzero]
            g = _gcd_all(in_y)
            if g is None:
                raise NonIsolatedSingularitiesError(f"{f} is singular along x = {x0}")
            if g.degree() < 1:
                continue
            ys, _ = _rational_roots(g)
            for y0 in ys:
                pts.append((x0, y0, Fraction(1)))
    else:
        degrees["z"] = 0

    # line z = 0, chart y = 1
    at_inf = [sympy.Poly(g.to_sympy().subs({Z: 0, Y: 1}), X, domain="QQ") for g in grad]
    g = _gcd_all(at_inf)
    if g is None:
        raise NonIsolatedSingularitiesError(f"{f} is singular along z = 0")
    degrees["inf"] = max(g.degree(), 0)
    if g.degree() >= 1:
        g = g.sqf_part()
        xs, _ = _rational_roots(g)
        unresolved += g.degree() - len(xs)
        pts.extend((x0, Fraction(1), Fraction(0)) for x0 in xs)
    if all(evaluate(d, (1, 0, 0)) == 0 for d in grad):
        pts.append((Fraction(1), Fraction(0), Fraction(0)))

    pts = sorted({_normalize_point(p) for p in pts}, key=lambda p: (p[2], p[1], p[0]), reverse=True)
    assert all(evaluate(d, p) == 0 for p in pts for d in grad)
    return SingularPointReport(pts, degrees, unresolved)


def _chart_eliminant(polys: list[sympy.Poly]) -> sympy.Poly:
    """Nonzero polynomial in x vanishing at the x-coordinate of every common zero."""
    if len(polys) == 1:
        raise NonIsolatedSingularitiesError("a single equation cuts out a curve")
    candidates = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            candidates.append(resultant_in(polys[i], polys[j], Y))
    result = _gcd_all(candidates)
    if result is not None:
        return sympy.Poly(result.as_expr(), X, domain="QQ")
    # pairwise common factors; coprime combinations exist since the gcd is 1
    for c in range(1, 20):
        combo = polys[1] + c * polys[2] if len(polys) > 2 else polys[1]
        res = resultant_in(polys[0], combo, Y)
        if not res.is_zero:
            return sympy.Poly(res.as_expr(), X, domain="QQ")
    raise NonIsolatedSingularitiesError("elimination failed to produce a nonzero eliminant")


class NodeType(str, enum.Enum):
    NODE = "Node"
    NON_NODE_SINGULAR = "NonNodeSingular"
    SMOOTH = "Smooth"


def node_test(f: HomogeneousForm, point: Sequence, chart: int | None = None) -> NodeType:
    """Classify a rational point of V(f) as smooth, node, or worse.

    At a singular point the Hessian of f restricted to an affine chart
    through the point is nondegenerate exactly for an ordinary double point.
    """
    pt = [Fraction(v) for v in point]
    if all(v == 0 for v in pt):
        raise ValueError("[0:0:0] is not a projective point")
    if evaluate(f, pt) != 0:
        raise ValueError(f"{point} does not lie on the curve")
    grad = gradient(f)
    if any(evaluate(d, pt) != 0 for d in grad):
        return NodeType.SMOOTH
    if chart is None:
        chart = max(i for i in range(3) if pt[i] != 0)
    if pt[chart] == 0:
        raise ValueError(f"the point does not lie in chart {chart}")
    pt = [v / pt[chart] for v in pt]
    u, v = (i for i in range(3) if i != chart)
    h = [[evaluate(partial(grad[a], b), pt) for b in (u, v)] for a in (u, v)]
    det = h[0][0] * h[1][1] - h[0][1] * h[1][0]
    return NodeType.NODE if det != 0 else NodeType.NON_NODE_SINGULAR


# --- reducedness --------------------------------------------------------------


def _restrict_to_line(f: HomogeneousForm, a: Sequence[int], b: Sequence[int]):
    s, t = sympy.symbols("s t")
    sub = {sym: ai * s + bi * t for sym, ai, bi in zip(_SYMS, a, b)}
    return sympy.Poly(f.to_sympy().subs(sub, simultaneous=True), s, t, domain="QQ"), s, t


def _binary_squarefree(g: sympy.Poly, s, t, degree: int) -> bool:
    if g.is_zero:
        return False
    h = sympy.Poly(g.as_expr().subs(t, 1), s, domain="QQ")
    if h.degree() < degree - 1:  # t^2 divides g
        return False
    return sympy.gcd(h, h.diff(s)).degree() < 1


def is_reduced_on_random_lines(f: HomogeneousForm, trials: int = 8, seed: int = 0) -> bool:
    """Test f for repeated components by restricting to random lines.

    A repeated component of f forces a repeated factor on every line, so a
    single squarefree restriction proves f reduced and ``True`` is always
    correct.  ``False`` means all ``trials`` lines gave repeated factors;
    for reduced f that happens only if every sampled line was tangent.
    Line coefficients are drawn from [-10, 10] with a seeded generator.
    """
    if f.is_zero():
        return False
    if f.degree <= 1:
        return True
    rng = random.Random(seed)
    for _ in range(trials):
        while True:
            a = [rng.randint(-10, 10) for _ in range(3)]
            b = [rng.randint(-10, 10) for _ in range(3)]
            cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            if any(cross):
                break
        g, s, t = _restrict_to_line(f, a, b)
        if _binary_squarefree(g, s, t, f.degree):
            return True
    return False


# --- pencils ------------------------------------------------------------------


def _normalize_parameter(s: int, t: int) -> tuple[int, int]:
    s, t = int(s), int(t)
    if s == 0 and t == 0:
        raise ValueError("(0:0) is not a point of P^1")
    g = gcd(s, t)
    s, t = s // g, t // g
    if s < 0 or (s == 0 and t < 0):
        s, t = -s, -t
    return s, t


@dataclass(frozen=True)
class PencilMember:
    parameter: tuple[int, int]
    form: HomogeneousForm


def pencil_member(f0: HomogeneousForm, finf: HomogeneousForm, s: int, t: int) -> PencilMember:
    s, t = _normalize_parameter(s, t)
    return PencilMember((s, t), f0 * s + finf * t)


def _parameter_key(p: tuple[int, int]):
    # (1:0) first, then (0:1), then increasing s/t
    s, t = p
    return (t != 0, s != 0, Fraction(s, t) if t else 0)


def _parameter_from_ratio(u: Fraction) -> tuple[int, int]:
    return _normalize_parameter(u.numerator, u.denominator)


_U = sympy.Symbol("u")


def _chart_ideal(expr, chart_var):
    vs = [s for s in _SYMS if s != chart_var]
    F = sympy.expand(expr.subs(chart_var, 1))
    return [F, sympy.diff(F, vs[0]), sympy.diff(F, vs[1])], vs


def _standard_monomial_count(gb, gens) -> float:
    """Length of Q[gens]/I from a Groebner basis; ``math.inf`` if not zero-dimensional."""
    if gb.exprs == [1] or any(sympy.Poly(g, *gens).is_ground and g != 0 for g in gb.exprs):
        return 0
    lms = [sympy.Poly(g, *gens).monoms(order=gb.order)[0] for g in gb.exprs]
    pure = [None, None]
    for m in lms:
        if m[1] == 0 and m[0] > 0:
            pure[0] = m[0] if pure[0] is None else min(pure[0], m[0])
        if m[0] == 0 and m[1] > 0:
            pure[1] = m[1] if pure[1] is None else min(pure[1], m[1])
    if None in pure:
        return math.inf
    return sum(
        1
        for i in range(pure[0])
        for j in range(pure[1])
        if not any(i >= m[0] and j >= m[1] for m in lms)
    )


def _chart_length(expr, chart_var) -> float:
    polys, vs = _chart_ideal(expr, chart_var)
    polys = [p for p in polys if p != 0]
    if not polys:
        return math.inf
    gb = sympy.groebner(polys, *vs, order="grevlex", domain="QQ")
    return _standard_monomial_count(gb, vs)


def _no_singular_point_at_infinity(expr) -> bool:
    grads = [sympy.diff(expr, s) for s in _SYMS]
    at_z0 = [sympy.Poly(g.subs({Z: 0, Y: 1}), X, domain="QQ") for g in grads]
    common = _gcd_all(at_z0)
    if common is None or common.degree() >= 1:
        return False
    return not all(g.subs({X: 1, Y: 0, Z: 0}) == 0 for g in grads)


def singular_length(f: HomogeneousForm, seed: int = 0, attempts: int = 50) -> float:
    """Length of the singular scheme V(f, f_x, f_y, f_z) in P^2, or ``math.inf``.

    A seeded random change of coordinates moves every singular point off the
    line z = 0 (checked exactly), after which the length is the number of
    standard monomials of a Groebner basis on the chart z = 1.
    """
    expr = f.to_sympy()
    if _chart_length(expr, Z) == math.inf or _chart_length(expr, Y) == math.inf:
        return math.inf
    rng = random.Random(seed)
    for attempt in range(attempts):
        if attempt == 0:
            mat = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        else:
            mat = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            if sympy.Matrix(mat).det() == 0:
                continue
        sub = {s: sum(c * t for c, t in zip(row, _SYMS)) for s, row in zip(_SYMS, mat)}
        moved = sympy.expand(expr.subs(sub, simultaneous=True))
        if _no_singular_point_at_infinity(moved):
            return _chart_length(moved, Z)
    raise RuntimeError("could not find a coordinate chart containing all singular points")


@dataclass
class ParameterReport:
    parameters: list[tuple[int, int]]
    residual_degrees: list[int] = field(default_factory=list)
    generic_length: int = 0
    lengths: dict[tuple[int, int], float] = field(default_factory=dict)

    def __iter__(self):
        return iter(self.parameters)

    def __contains__(self, item):
        return _normalize_parameter(*item) in self.parameters

    def __len__(self):
        return len(self.parameters)

    def to_json(self) -> dict:
        return {
            "parameters": [list(p) for p in self.parameters],
            "residual_degrees": list(self.residual_degrees),
            "generic_singular_length": self.generic_length,
            "member_singular_lengths": [
                {"parameter": list(p), "length": ("inf" if v == math.inf else v)} for p, v in self.lengths.items()
            ],
        }


def singular_parameters(f0: HomogeneousForm, finf: HomogeneousForm) -> ParameterReport:
    """Parameters (s:t) whose member s*f0 + t*f_inf is more singular than a general member.

    Candidates come from a lex Groebner basis of (F, F_v, F_w) in Q[v, w, u]
    on each affine chart, with u = s/t the pencil parameter: a specialisation
    u -> a keeps the basis (and so the singular scheme) generic unless some
    leading coefficient in (v, w) vanishes at a.  Rational candidates are then
    confirmed by comparing singular-scheme lengths; irreducible candidate
    factors of degree > 1 are reported in ``residual_degrees`` unresolved.
    """
    if f0.degree != finf.degree:
        raise ValueError("pencil generators must have the same degree")
    if f0.is_zero() or finf.is_zero():
        raise ValueError("pencil generators must be nonzero")
    e0, e1 = f0.to_sympy(), finf.to_sympy()
    if sympy.expand(e0 * sympy.Poly(e1, *_SYMS).LC() - e1 * sympy.Poly(e0, *_SYMS).LC()) == 0:
        raise DegeneratePencilError("pencil generators are proportional")

    member = sympy.expand(_U * e0 + e1)
    candidates: list[sympy.Poly] = []
    for chart_var in (Z, Y, X):
        polys, vs = _chart_ideal(member, chart_var)
        gb = sympy.groebner(polys, *vs, _U, order="lex", method="f5b", domain="QQ")
        for g in gb.exprs:
            lc = sympy.Poly(g, *vs).LC()
            lc_u = sympy.Poly(lc, _U, domain="QQ")
            if lc_u.degree() >= 1:
                candidates.append(lc_u)

    roots: set[Fraction] = set()
    residual: dict = {}
    for c in candidates:
        for fac, _ in sympy.factor_list(c)[1]:
            fac = sympy.Poly(fac, _U, domain="QQ")
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                r = -sympy.Rational(b) / sympy.Rational(a)
                roots.add(Fraction(int(r.p), int(r.q)))
            elif fac.degree() > 1:
                residual[fac.monic().as_expr()] = fac.degree()

    generic_u = next(n for n in range(len(roots) + 1) if Fraction(n) not in roots)
    generic = singular_length(HomogeneousForm.from_sympy(generic_u * e0 + e1, f0.degree))
    if generic == math.inf:
        raise DegeneratePencilError("the general member has a non-isolated singular locus")

    params: list[tuple[int, int]] = []
    lengths: dict[tuple[int, int], float] = {}
    tests = [((1, 0), f0)] + [
        (_parameter_from_ratio(a), f0 * a + finf) for a in sorted(roots)
    ]
    for param, form in tests:
        length = singular_length(form)
        lengths[param] = length
        if length > generic:
            params.append(param)
    params.sort(key=_parameter_key)
    lengths = dict(sorted(lengths.items(), key=lambda kv: _parameter_key(kv[0])))
    return ParameterReport(params, sorted(residual.values()), int(generic), lengths)
