"""Elliptic curves in Weierstrass form over Q and over prime fields.

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Rationals are ``fractions.Fraction`` values; elements of F_p are ints in
``[0, p)``.  The point at infinity is the module constant ``INFINITY`` and
serves as the identity of the group law.  Characteristics 2 and 3 are not
supported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Iterator, Union

from ratsurf.errors import CapabilityError, ConfigurationError

__all__ = [
    "Rationals",
    "PrimeField",
    "QQ",
    "WeierstrassCurve",
    "INFINITY",
    "CurvePoint",
    "on_curve",
    "add",
    "negate",
    "sub",
    "scalar_mul",
    "order_of",
    "is_torsion",
    "group_order",
    "points",
    "parse_field",
    "point_from_json",
    "point_to_json",
    "RATIONAL_TORSION_ORDERS",
    "DEFAULT_PRIME_BOUND",
]

DEFAULT_PRIME_BOUND = 10**5

# Orders that a rational torsion point can have (uniform bound over Q).
RATIONAL_TORSION_ORDERS = frozenset(range(1, 11)) | {12}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    characteristic = 0

    def __call__(self, v) -> Fraction:
        if isinstance(v, str):
            return Fraction(v.strip())
        if isinstance(v, float):
            raise TypeError("floating point values are not exact field elements")
        return Fraction(v)

    def inv(self, v: Fraction) -> Fraction:
        return 1 / v

    def div(self, a, b):
        return Fraction(a) / b

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return "Q"


QQ = Rationals()


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ConfigurationError(f"{self.p} is not prime")
        if self.p < 5:
            raise ConfigurationError("characteristic 2 and 3 are not supported")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, v) -> int:
        if isinstance(v, str):
            v = Fraction(v.strip())
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"{v} has no image in F_{self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        if isinstance(v, float):
            raise TypeError("floating point values are not exact field elements")
        return int(v) % self.p

    def inv(self, v: int) -> int:
        if v % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(v, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def to_json(self):
        return {"p": self.p}


Field = Union[Rationals, PrimeField]


def parse_field(data) -> Field:
    if data == "Q":
        return QQ
    if isinstance(data, dict) and isinstance(data.get("p"), int):
        return PrimeField(data["p"])
    raise ValueError(f"field must be \"Q\" or {{\"p\": prime}}, got {data!r}")


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

# An affine point is a plain (x, y) tuple of field elements.
CurvePoint = Union[_Infinity, tuple]


@dataclass(frozen=True)
class WeierstrassCurve:
    field: Field
    a1: object = 0
    a2: object = 0
    a3: object = 0
    a4: object = 0
    a6: object = 0
    _count_cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, self.field(getattr(self, name)))
        if self.discriminant == 0:
            raise ConfigurationError(f"singular Weierstrass cubic {self}")

    @classmethod
    def short(cls, fld: Field, a: object, b: object) -> WeierstrassCurve:
        return cls(fld, 0, 0, 0, a, b)

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def discriminant(self):
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return self.field(-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6)

    def point(self, x, y) -> tuple:
        P = (self.field(x), self.field(y))
        if not on_curve(self, P):
            raise ConfigurationError(f"{P} is not on {self}")
        return P

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "a": [str(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data: dict) -> WeierstrassCurve:
        if not isinstance(data, dict) or "field" not in data or "a" not in data:
            raise ValueError("curve JSON needs fields 'field' and 'a'")
        fld = parse_field(data["field"])
        coeffs = data["a"]
        if not isinstance(coeffs, list) or len(coeffs) != 5:
            raise ValueError("curve field 'a' must list [a1, a2, a3, a4, a6]")
        return cls(fld, *(fld(_json_number(c)) for c in coeffs))

    def __str__(self):
        return f"y^2 + {self.a1}xy + {self.a3}y = x^3 + {self.a2}x^2 + {self.a4}x + {self.a6} over {self.field!r}"


def _json_number(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError(f"exact number expected (int or 'num/den' string), got {v!r}")
    return v


def point_from_json(curve: WeierstrassCurve, data) -> CurvePoint:
    if data == "inf":
        return INFINITY
    if not isinstance(data, dict) or "x" not in data or "y" not in data:
        raise ValueError(f"point must be \"inf\" or {{\"x\": ..., \"y\": ...}}, got {data!r}")
    fld = curve.field
    return curve.point(fld(_json_number(data["x"])), fld(_json_number(data["y"])))


def point_to_json(P: CurvePoint):
    if P is INFINITY:
        return "inf"
    return {"x": str(P[0]), "y": str(P[1])}


# --- group law ----------------------------------------------------------------


def on_curve(E: WeierstrassCurve, P: CurvePoint) -> bool:
    if P is INFINITY:
        return True
    x, y = P
    a1, a2, a3, a4, a6 = E.coefficients
    lhs = y * y + a1 * x * y + a3 * y
    rhs = x**3 + a2 * x * x + a4 * x + a6
    return E.field(lhs - rhs) == 0


def negate(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P is INFINITY:
        return P
    x, y = P
    return (x, E.field(-y - E.a1 * x - E.a3))


def add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    F = E.field
    a1, a2, a3, a4, a6 = E.coefficients
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if F(y1 + y2 + a1 * x2 + a3) == 0:
            return INFINITY
        den = F(2 * y1 + a1 * x1 + a3)
        lam = F.div(3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1, den)
        nu = F.div(-x1**3 + a4 * x1 + 2 * a6 - a3 * y1, den)
    else:
        den = F(x2 - x1)
        lam = F.div(y2 - y1, den)
        nu = F.div(y1 * x2 - y2 * x1, den)
    x3 = F(lam * lam + a1 * lam - a2 - x1 - x2)
    y3 = F(-(lam + a1) * x3 - nu - a3)
    return (x3, y3)


def sub(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return add(E, P, negate(E, Q))


def scalar_mul(E: WeierstrassCurve, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return negate(E, scalar_mul(E, -n, P))
    result, base = INFINITY, P
    while n:
        if n & 1:
            result = add(E, result, base)
        n >>= 1
        if n:
            base = add(E, base, base)
    return result


# --- finite fields: counting and orders ---------------------------------------


def _check_bound(E: WeierstrassCurve, bound: int) -> int:
    p = E.field.characteristic
    if p > bound:
        raise CapabilityError(
            f"exhaustive point count over F_{p} exceeds the bound p <= {bound}; "
            "use a smaller prime (desk-scale computation)"
        )
    return p


def group_order(E: WeierstrassCurve, bound: int = DEFAULT_PRIME_BOUND) -> int:
    """#E(F_p) by counting, for each x, the roots of the quadratic in y."""
    if not isinstance(E.field, PrimeField):
        raise TypeError("group order is only defined here over prime fields")
    if "n" in E._count_cache:
        return E._count_cache["n"]
    p = _check_bound(E, bound)
    a1, a2, a3, a4, a6 = E.coefficients
    half = (p - 1) // 2
    total = 1
    for x in range(p):
        lin = (a1 * x + a3) % p
        disc = (lin * lin + 4 * (x * x * x + a2 * x * x + a4 * x + a6)) % p
        if disc == 0:
            total += 1
        elif pow(disc, half, p) == 1:
            total += 2
    assert (total - (p + 1)) ** 2 <= 4 * p, "Hasse bound violated"
    E._count_cache["n"] = total
    return total


def points(E: WeierstrassCurve, bound: int = 5000) -> Iterator[CurvePoint]:
    """All points of E(F_p), INFINITY first, then affine points sorted by (x, y)."""
    if not isinstance(E.field, PrimeField):
        raise TypeError("points can only be listed over prime fields")
    p = _check_bound(E, bound)
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    inv2 = pow(2, -1, p)
    a1, a2, a3, a4, a6 = E.coefficients
    yield INFINITY
    for x in range(p):
        lin = (a1 * x + a3) % p
        disc = (lin * lin + 4 * (x * x * x + a2 * x * x + a4 * x + a6)) % p
        for s in roots.get(disc, ()):
            yield (x, (s - lin) * inv2 % p)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _order_finite(E: WeierstrassCurve, P: CurvePoint, bound: int) -> int:
    n = group_order(E, bound)
    assert scalar_mul(E, n, P) is INFINITY
    order = n
    for q, e in _factor(n).items():
        for _ in range(e):
            if scalar_mul(E, order // q, P) is INFINITY:
                order //= q
            else:
                break
    return order


# --- rationals: torsion -------------------------------------------------------


def _reduction_order(E: WeierstrassCurve, P: tuple, p: int, cap: int = 12) -> int | None:
    """Order of P mod p if it is at most ``cap``, else None."""
    F = PrimeField(p)
    Ep = WeierstrassCurve(F, *(F(c) for c in E.coefficients))
    x, y = P
    if x.denominator % p == 0 or y.denominator % p == 0:
        Pp = INFINITY
    else:
        Pp = (F(x), F(y))
    Q = Pp
    for k in range(1, cap + 1):
        if Q is INFINITY:
            return k
        Q = add(Ep, Q, Pp)
    return None


def _good_primes(E: WeierstrassCurve, count: int) -> Iterator[int]:
    bad = 1
    for c in E.coefficients:
        bad *= c.denominator
    disc = E.discriminant
    found, p = 0, 5
    while found < count:
        if _is_prime(p) and bad % p != 0 and disc.numerator % p != 0:
            found += 1
            yield p
        p += 2


def _order_rational(E: WeierstrassCurve, P: CurvePoint) -> int | None:
    if P is INFINITY:
        return 1
    # Torsion injects into E(F_p) at primes p >= 3 of good reduction, so a
    # torsion point has the same order modulo every such prime.  Disagreeing
    # or too-large reductions certify infinite order without ever forming the
    # large multiples of P over Q.
    orders = {_reduction_order(E, P, p) for p in _good_primes(E, 3)}
    if None in orders or len(orders) != 1:
        return None
    (m,) = orders
    if m not in RATIONAL_TORSION_ORDERS:
        return None
    Q = P
    for k in range(1, m + 1):
        if Q is INFINITY:
            return k
        Q = add(E, Q, P)
    return None


def order_of(E: WeierstrassCurve, P: CurvePoint, bound: int = DEFAULT_PRIME_BOUND) -> int | str:
    """Exact order of P, or the string ``"infinite"``.

    Over F_p the group order is counted exhaustively (p <= ``bound``).  Over Q
    the answer is n when n*P = O for some n <= 12, which by the uniform torsion
    bound over Q is the same as P being torsion.
    """
    if P is not INFINITY and not on_curve(E, P):
        raise ConfigurationError(f"{P} is not on {E}")
    if isinstance(E.field, PrimeField):
        return _order_finite(E, P, bound)
    n = _order_rational(E, P)
    return "infinite" if n is None else n


def is_torsion(E: WeierstrassCurve, P: CurvePoint) -> bool:
    if P is INFINITY or isinstance(E.field, PrimeField):
        return True
    return order_of(E, P) != "infinite"
