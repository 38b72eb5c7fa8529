"""Semiampleness decisions and blocks on negative-definite configurations.

A nef class N with N.(-K) > 0 is always semiample.  When N.(-K) = 0 it is
semiample exactly when its restriction to the anticanonical curve is a
torsion class.  Applied to generators of the orthogonal complement this
decides whether every nef divisor is semiample:

* -K not effective but some multiple is: always yes;
* r <= 8: -K is big, nothing to check;
* r = 9: only -K itself can fail;
* r >= 10: every generator of the complement of -K must restrict to torsion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ratsurf.errors import NotNefError
from ratsurf.piclattice import (
    DivisorClass,
    anticanonical_class,
    inertia,
    intersect,
    is_negative_definite,
)
from ratsurf.restriction import (
    AbstractConfiguration,
    RestrictedClass,
    SurfaceModel,
    _require_concrete,
    gamma_generator_classes,
    is_torsion_class,
    restrict,
)

__all__ = [
    "Answer",
    "Branch",
    "Witness",
    "Verdict",
    "BlockSolution",
    "is_semiample",
    "classify_surface",
    "find_block",
    "is_nef_against",
]


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    CONDITIONAL = "conditional"


class Branch(str, enum.Enum):
    BIG_ANTICANONICAL_PAIRING = "BigAnticanonicalPairing"
    TORSION_CRITERION = "TorsionCriterion"
    NOT_EFFECTIVE_ANTICANONICAL = "NotEffectiveAnticanonical"
    POSITIVE_DEFINITE_E = "PositiveDefiniteE"
    CYCLIC_GAMMA = "CyclicGamma"


@dataclass(frozen=True)
class Witness:
    divisor: DivisorClass
    restricted: RestrictedClass
    torsion: bool

    def to_json(self) -> dict:
        return {"divisor": self.divisor.to_json(), "restricted": self.restricted.to_json(), "torsion": self.torsion}


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    branch: Branch
    witnesses: tuple[Witness, ...] = ()
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "witnesses", tuple(self.witnesses))

    @property
    def failing(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.torsion]

    def to_json(self) -> dict:
        out = {
            "answer": self.answer.value,
            "branch": self.branch.value,
            "witnesses": [w.to_json() for w in self.witnesses],
        }
        if self.note:
            out["note"] = self.note
        return out


def is_nef_against(N: DivisorClass, curves: Sequence[DivisorClass]) -> bool:
    """Necessary nefness test relative to the supplied curve classes only."""
    if intersect(N, N) < 0:
        return False
    return all(intersect(N, C) >= 0 for C in curves)


def is_semiample(
    S: SurfaceModel,
    N: DivisorClass,
    assert_nef: bool = True,
    curves: Sequence[DivisorClass] | None = None,
) -> Verdict:
    """Decide whether the nef class N is semiample.

    With ``assert_nef=False`` the class is first tested against ``curves``;
    a positive answer is then only ``CONDITIONAL`` on N being nef, while a
    negative one stands regardless (a non-nef class is never semiample).
    """
    S = _require_concrete(S)
    if not assert_nef:
        if curves is None:
            raise ValueError("without assert_nef a list of curve classes is required")
        if not is_nef_against(N, curves):
            raise NotNefError(f"{N} fails the nef check against the supplied curves")
    yes = Answer.YES if assert_nef else Answer.CONDITIONAL

    if not S.antican_effective:
        return Verdict(yes, Branch.NOT_EFFECTIVE_ANTICANONICAL)
    degree = intersect(N, anticanonical_class(S.r))
    if degree > 0:
        return Verdict(yes, Branch.BIG_ANTICANONICAL_PAIRING)
    if degree < 0:
        raise NotNefError(f"{N} has negative degree {degree} on the effective anticanonical curve")
    R = restrict(S, N)
    torsion = is_torsion_class(S, R)
    return Verdict(yes if torsion else Answer.NO, Branch.TORSION_CRITERION, (Witness(N, R, torsion),))


def classify_surface(S: SurfaceModel) -> Verdict:
    """Is every nef divisor on the surface semiample?"""
    if isinstance(S, AbstractConfiguration):
        return _classify_abstract(S)
    if not S.antican_effective:
        return Verdict(Answer.YES, Branch.NOT_EFFECTIVE_ANTICANONICAL, note=f"-{S.e}K effective, -K not")
    if S.r <= 8:
        return Verdict(Answer.YES, Branch.POSITIVE_DEFINITE_E)
    witnesses = []
    for D in gamma_generator_classes(S):
        R = restrict(S, D)
        witnesses.append(Witness(D, R, is_torsion_class(S, R)))
    ok = all(w.torsion for w in witnesses)
    answer = Answer.YES if ok else Answer.NO
    if S.r == 9:
        note = "" if ok else "-K is the only nef ray that is not semiample"
        return Verdict(answer, Branch.CYCLIC_GAMMA, witnesses, note)
    return Verdict(answer, Branch.TORSION_CRITERION, witnesses)


def _classify_abstract(S: AbstractConfiguration) -> Verdict:
    pos, neg, zero = inertia(S.gram)
    if pos > 0:
        return Verdict(Answer.YES, Branch.POSITIVE_DEFINITE_E, note="form on <E> takes positive values; -K is big")
    if zero > 0:
        if S.iitaka == 1:
            return Verdict(Answer.YES, Branch.CYCLIC_GAMMA, note="anticanonical Iitaka dimension 1")
        if S.iitaka == 0:
            return Verdict(
                Answer.NO,
                Branch.CYCLIC_GAMMA,
                note="form on <E> semidefinite with Iitaka dimension 0: the kernel class is nef, not semiample",
            )
        return Verdict(
            Answer.CONDITIONAL,
            Branch.CYCLIC_GAMMA,
            note="form on <E> semidefinite; the answer depends on the anticanonical Iitaka dimension",
        )
    return Verdict(
        Answer.CONDITIONAL,
        Branch.TORSION_CRITERION,
        note="form on <E> negative definite; restrictions of <E>-perp to E are needed",
    )


# --- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class BlockSolution:
    multiplicities: tuple[int, ...]
    intersections: tuple[int, ...]  # B.C_i
    slacks: tuple[int, ...]  # B.C_i - min(0, -K.C_i), all negative
    components: tuple[tuple[int, ...], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "multiplicities": list(self.multiplicities),
            "intersections": list(self.intersections),
            "slacks": list(self.slacks),
            "components": [list(c) for c in self.components],
        }


def _connected_components(gram: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(gram)
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and gram[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col] / aug[col][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def find_block(gram: Sequence[Sequence[int]], k_degrees: Sequence[int]) -> BlockSolution:
    """Positive integer multiplicities m with (G m)_i < min(0, k_i) for every i.

    ``k_degrees[i]`` is -K.C_i.  Each connected component of the dual graph is
    solved for the target min(0, k_i) - 1 exactly; the inverse of -G is
    entrywise positive on a connected negative-definite configuration with
    non-negative off-diagonal entries, so the solution is positive.  The
    result is scaled to integers and every inequality re-checked.
    """
    n = len(gram)
    if len(k_degrees) != n:
        raise ValueError("need one K-degree per curve")
    if not is_negative_definite(gram):
        raise ValueError("configuration is not negative definite")
    if any(gram[i][j] < 0 for i in range(n) for j in range(n) if i != j):
        raise ValueError("distinct curves must meet non-negatively")
    bound = [min(0, k) for k in k_degrees]
    m = [Fraction(0)] * n
    comps = _connected_components(gram)
    for comp in comps:
        sub = [[Fraction(gram[i][j]) for j in comp] for i in comp]
        sol = _solve(sub, [Fraction(bound[i] - 1) for i in comp])
        for i, v in zip(comp, sol):
            m[i] = v
    assert all(v > 0 for v in m), "non-positive multiplicity in a connected block"
    scale = lcm(*(v.denominator for v in m)) if m else 1
    mult = [int(v * scale) for v in m]
    inter = [sum(gram[i][j] * mult[j] for j in range(n)) for i in range(n)]
    slacks = [inter[i] - bound[i] for i in range(n)]
    assert all(s < 0 for s in slacks), slacks
    return BlockSolution(tuple(mult), tuple(inter), tuple(slacks), tuple(tuple(c) for c in comps))
