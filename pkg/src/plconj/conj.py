"""The ordinary conjugacy decision procedure with verified witnesses.

Pipeline: carry the fixed set of y onto the fixed set of z (or report
the obstruction), split the interval at the dyadic fixed-set boundary,
solve each cell with the prescribed-slope stair over the finite window
of candidate initial slopes, glue, and verify the result exactly before
returning it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exactnum import Dyadic, Pow2
from .plmap import (
    Classification,
    Interval,
    PLMap,
    classify,
    compose,
    conjugate_by,
    fixed_set,
    glue,
    restrict,
    slope_exp_left,
    slope_exp_right,
    split_at,
)
from .reach import match_fixed_sets
from .stair import StairParams, stair_pl20


class ObstructionKind(enum.Enum):
    FIXED_SET = "fixed-set mismatch"
    SLOPE = "endpoint slope mismatch"
    EXHAUSTED = "all candidate initial slopes exhausted"


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    detail: str = ""

    def __str__(self):
        return f"{self.kind.value}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class ConjWitness:
    conjugator: PLMap


def verify(y: PLMap, z: PLMap, g: PLMap) -> bool:
    """Exact structural check of g⁻¹∘y∘g == z."""
    if y.domain != z.domain or y.domain != g.domain:
        raise ValueError("domain mismatch")
    return conjugate_by(y, g) == z


def conjugate_pl20(y: PLMap, z: PLMap) -> ConjWitness | None:
    """Conjugacy for maps with discrete non-dyadic interior fixed sets."""
    witness, _ = conjugate_pl20_decide(y, z)
    return witness


def conjugate_pl20_decide(y: PLMap, z: PLMap):
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    if y == z:
        return ConjWitness(PLMap.identity(y.domain)), None
    domain = y.domain
    dy, dz = fixed_set(y), fixed_set(z)
    if [(c.lo, c.hi) for c in dy.components] != [(c.lo, c.hi) for c in dz.components]:
        return None, Obstruction(ObstructionKind.FIXED_SET, "interior crossings differ")
    u = slope_exp_right(y, domain.lo)
    if u != slope_exp_right(z, domain.lo):
        return None, Obstruction(ObstructionKind.SLOPE, "initial slopes differ")
    if slope_exp_left(y, domain.hi) != slope_exp_left(z, domain.hi):
        return None, Obstruction(ObstructionKind.SLOPE, "final slopes differ")
    if u > 0:
        y, z = y.inverse(), z.inverse()
        u = -u
    assert u < 0, "a nontrivial map in this class cannot have slope 1 at the end"
    for q_exp in range(u, 0):
        g = stair_pl20(y, z, StairParams.left_end(Pow2(q_exp)))
        if g is not None:
            return ConjWitness(g), None
    return None, Obstruction(ObstructionKind.EXHAUSTED, f"slope exponents {u}..-1")


def conjugate(y: PLMap, z: PLMap) -> ConjWitness | None:
    """Full conjugacy decision; any returned witness verifies exactly."""
    witness, _ = conjugate_decide(y, z)
    return witness


def conjugate_decide(y: PLMap, z: PLMap):
    """Conjugacy decision returning (witness, obstruction); exactly one
    of the two is None."""
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    domain = y.domain
    if y == z:
        return ConjWitness(PLMap.identity(domain)), None
    g1 = match_fixed_sets(y, z)
    if g1 is None:
        return None, Obstruction(ObstructionKind.FIXED_SET)
    yhat = conjugate_by(y, g1.inverse())  # fixed set now equals D(z)
    cuts = fixed_set(z).interior_dyadic_boundary(domain)
    pieces = []
    for yc, zc in zip(split_at(yhat, cuts), split_at(z, cuts)):
        if yc.is_identity() or zc.is_identity():
            if yc != zc:
                return None, Obstruction(ObstructionKind.FIXED_SET, "identity cells differ")
            pieces.append(PLMap.identity(yc.domain))
            continue
        w, obstruction = conjugate_pl20_decide(yc, zc)
        if w is None:
            return None, obstruction
        pieces.append(w.conjugator)
    g = compose(g1.inverse(), glue(pieces))
    assert verify(y, z, g)
    return ConjWitness(g), None
