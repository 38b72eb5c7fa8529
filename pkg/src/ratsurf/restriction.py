"""Surface models and the restriction map Pic(X) -> Pic(E).

X is the blow-up of P^2 at distinct points p_1, ..., p_r of a smooth cubic
in Weierstrass form and E is the strict transform of the cubic.  A line
bundle on E is recorded by its degree together with the point of E that
represents its degree-zero part twisted by the base point O at infinity.

Because O is a flex, a line meets E in three points summing to O and the
restriction of a line is linearly equivalent to 3*O.  E_i restricts to the
point p_i.  Hence

    O_E(a*l - sum b_i E_i)  <->  (3a - sum b_i,  -(b_1 p_1 + ... + b_r p_r)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from ratsurf import ellcurve as ec
from ratsurf.ellcurve import INFINITY, CurvePoint, WeierstrassCurve
from ratsurf.errors import ConfigurationError, DimensionError, UnsupportedModelError
from ratsurf.piclattice import (
    DivisorClass,
    anticanonical_class,
    perp_basis,
)

__all__ = [
    "ConcreteBlowup",
    "AbstractConfiguration",
    "SurfaceModel",
    "RestrictedClass",
    "restrict",
    "add_restricted",
    "gamma_generator_classes",
    "gamma_generators",
    "is_torsion_class",
    "model_from_json",
]


@dataclass(frozen=True)
class ConcreteBlowup:
    curve: WeierstrassCurve
    points: tuple = ()
    antican_effective: bool = True
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        for i, P in enumerate(self.points, 1):
            if not ec.on_curve(self.curve, P):
                raise ConfigurationError(f"point p_{i} = {P} is not on the cubic")
        if len(set(self.points)) != len(self.points):
            raise ConfigurationError("blown-up points must be pairwise distinct")
        if self.antican_effective and self.e != 1:
            raise ConfigurationError("e must be 1 when -K is effective")
        if not self.antican_effective and self.e < 2:
            raise ConfigurationError("e must be at least 2 when -K is not effective")

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def field(self):
        return self.curve.field

    def to_json(self) -> dict:
        return {
            "kind": "blowup",
            "curve": self.curve.to_json(),
            "points": [ec.point_to_json(P) for P in self.points],
            "antican_effective": self.antican_effective,
            "e": self.e,
        }


@dataclass(frozen=True)
class AbstractConfiguration:
    """Curve configuration given only numerically.

    ``gram`` holds the intersection numbers of the components of an
    anticanonical curve and ``k_degrees`` their degrees -K.C_i.  ``iitaka``
    optionally records the anticanonical Iitaka dimension, which the Gram
    matrix alone cannot determine.
    """

    gram: tuple
    k_degrees: tuple
    iitaka: int | None = None

    def __post_init__(self):
        gram = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "k_degrees", tuple(int(v) for v in self.k_degrees))
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ConfigurationError("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise ConfigurationError("Gram matrix must be symmetric")
        if len(self.k_degrees) != n:
            raise ConfigurationError("need one K-degree per curve")
        if self.iitaka not in (None, 0, 1, 2):
            raise ConfigurationError("iitaka must be 0, 1, 2 or absent")

    def to_json(self) -> dict:
        out = {"kind": "abstract", "gram": [list(r) for r in self.gram], "k_degrees": list(self.k_degrees)}
        if self.iitaka is not None:
            out["iitaka"] = self.iitaka
        return out


SurfaceModel = Union[ConcreteBlowup, AbstractConfiguration]


def model_from_json(data: dict) -> SurfaceModel:
    if not isinstance(data, dict):
        raise ValueError("surface model must be a JSON object")
    kind = data.get("kind", "blowup")
    if kind == "abstract":
        for key in ("gram", "k_degrees"):
            if key not in data:
                raise ValueError(f"abstract model needs field '{key}'")
        return AbstractConfiguration(data["gram"], data["k_degrees"], data.get("iitaka"))
    if kind != "blowup":
        raise ValueError(f"unknown model kind {kind!r}")
    if "curve" not in data:
        raise ValueError("blow-up model needs field 'curve'")
    curve = WeierstrassCurve.from_json(data["curve"])
    pts = data.get("points", [])
    if not isinstance(pts, list):
        raise ValueError("model field 'points' must be a list")
    eff = data.get("antican_effective", True)
    if not isinstance(eff, bool):
        raise ValueError("model field 'antican_effective' must be a boolean")
    e = data.get("e", 1 if eff else 2)
    if not isinstance(e, int) or isinstance(e, bool):
        raise ValueError("model field 'e' must be an integer")
    return ConcreteBlowup(curve, tuple(ec.point_from_json(curve, P) for P in pts), eff, e)


@dataclass(frozen=True)
class RestrictedClass:
    degree: int
    point: CurvePoint = field(default=INFINITY)

    def to_json(self) -> dict:
        return {"degree": self.degree, "point": ec.point_to_json(self.point)}


def _require_concrete(S) -> ConcreteBlowup:
    if not isinstance(S, ConcreteBlowup):
        raise UnsupportedModelError("this operation needs a concrete blow-up model")
    return S


def restrict(S: SurfaceModel, D: DivisorClass) -> RestrictedClass:
    S = _require_concrete(S)
    if D.r != S.r:
        raise DimensionError(f"divisor has r={D.r}, model has {S.r} points")
    E = S.curve
    total = INFINITY
    for b, P in zip(D.b, S.points):
        if b:
            total = ec.add(E, total, ec.scalar_mul(E, b, P))
    return RestrictedClass(3 * D.a - sum(D.b), ec.negate(E, total))


def add_restricted(S: SurfaceModel, R1: RestrictedClass, R2: RestrictedClass) -> RestrictedClass:
    S = _require_concrete(S)
    return RestrictedClass(R1.degree + R2.degree, ec.add(S.curve, R1.point, R2.point))


def gamma_generator_classes(S: SurfaceModel) -> list[DivisorClass]:
    """Divisor classes whose restrictions generate the group of degree-zero restrictions of nef classes.

    r <= 8: none (a nef class orthogonal to the big class -K is zero).
    r = 9:  -K alone.
    r >= 10: a saturated basis of the orthogonal complement of -K.
    """
    S = _require_concrete(S)
    if not S.antican_effective:
        raise ConfigurationError("generators are defined only when -K is effective")
    if S.r <= 8:
        return []
    minus_k = anticanonical_class(S.r)
    if S.r == 9:
        return [minus_k]
    return list(perp_basis([minus_k]))


def gamma_generators(S: SurfaceModel) -> list[RestrictedClass]:
    return [restrict(S, D) for D in gamma_generator_classes(S)]


def is_torsion_class(S: SurfaceModel, R: RestrictedClass) -> bool:
    S = _require_concrete(S)
    if R.degree != 0:
        return False
    return ec.is_torsion(S.curve, R.point)


def random_model(curve: WeierstrassCurve, r: int, rng, pool: Sequence[CurvePoint] | None = None) -> ConcreteBlowup:
    """r distinct points drawn from ``pool`` (all F_p-points by default)."""
    pool = list(pool) if pool is not None else list(ec.points(curve))
    if r > len(pool):
        raise ConfigurationError(f"curve has only {len(pool)} points, {r} requested")
    return ConcreteBlowup(curve, tuple(rng.sample(pool, r)))
