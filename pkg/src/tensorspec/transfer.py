"""B-Weyl spectrum inclusion and transfer of the generalized Browder's
theorem to tensor products and elementary operators.

Ground truth is always the direct set computation on the product profile.
The equivalences with Drazin invertibility are evaluated as predictions,
each behind an explicit hypothesis gate, so a disagreement shows up as data
instead of being papered over.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .exact import ZERO
from .products import Mode, product_profile
from .profile import OperatorFlags, SpectralProfile, ZeroClass, derive_flags, derive_sets
from .sets import DEFAULT_DEPTH, SymbolicSet


class Scenario(str, Enum):
    BOTH_ALGEBRAIC = "both_algebraic"
    A_ALGEBRAIC_NOT_NILPOTENT = "A_algebraic_not_nilpotent"
    B_ALGEBRAIC_NOT_NILPOTENT = "B_algebraic_not_nilpotent"
    BOTH_NON_ALGEBRAIC = "both_non_algebraic"
    NILPOTENT_FACTOR = "nilpotent_factor"


def scenario(fa: OperatorFlags, fb: OperatorFlags) -> Scenario:
    if fa.nilpotent or fb.nilpotent:
        return Scenario.NILPOTENT_FACTOR
    if fa.algebraic and fb.algebraic:
        return Scenario.BOTH_ALGEBRAIC
    if fa.algebraic:
        return Scenario.A_ALGEBRAIC_NOT_NILPOTENT
    if fb.algebraic:
        return Scenario.B_ALGEBRAIC_NOT_NILPOTENT
    return Scenario.BOTH_NON_ALGEBRAIC


def s_set(pa: SpectralProfile, pb: SpectralProfile, depth: int = DEFAULT_DEPTH) -> SymbolicSet:
    """``sigma(A) sigma_BW(B)  union  sigma_BW(A) sigma(B)``."""
    da, db = derive_sets(pa, depth), derive_sets(pb, depth)
    left = da.sigma.product(db.sigma_bw, depth)
    right = da.sigma_bw.product(db.sigma, depth)
    return left.union(right, depth)


@dataclass(frozen=True)
class Inclusion:
    holds: bool
    witnesses: SymbolicSet


def bweyl_inclusion_holds(
    pa: SpectralProfile,
    pb: SpectralProfile,
    mode: Mode = Mode.TENSOR,
    depth: int = DEFAULT_DEPTH,
) -> Inclusion:
    s = s_set(pa, pb, depth)
    bw = derive_sets(product_profile(pa, pb, mode, depth), depth).sigma_bw
    missing = s.minus(bw, depth)
    return Inclusion(missing.is_empty(), missing)


def reverse_inclusion_check(
    pa: SpectralProfile,
    pb: SpectralProfile,
    mode: Mode = Mode.TENSOR,
    depth: int = DEFAULT_DEPTH,
) -> bool:
    """The reverse inclusion: ``sigma_BW(product)`` lies inside the S set."""
    bw = derive_sets(product_profile(pa, pb, mode, depth), depth).sigma_bw
    return bw.issubset(s_set(pa, pb, depth))


@dataclass(frozen=True)
class Prediction:
    """Outcome of one of the equivalence statements on a pair.

    ``rule`` is ``"algebraic_factor"`` (inclusion iff the non-algebraic
    factor is not Drazin invertible) or ``"non_algebraic"`` (inclusion iff 0
    is not a pole of the product).  ``gated`` is False when the pair lies
    outside the hypothesis set on which the rule is asserted.
    """

    rule: Optional[str]
    applicable: bool
    gated: bool
    predicted: Optional[bool]
    agrees: Optional[bool]


NO_PREDICTION = Prediction(None, False, False, None, None)


@dataclass(frozen=True)
class TransferReport:
    mode: Mode
    scenario: Scenario
    s_set: SymbolicSet
    sigma_bw_product: SymbolicSet
    inclusion_holds: bool
    reverse_inclusion_holds: bool
    prediction: Prediction
    s_minus_bw: str
    zero_not_pole_product: bool
    invertible_or_not_drazin: bool
    weyl_hypotheses: bool
    bw_equals_s: bool
    weyl_identity_holds: bool
    witnesses: SymbolicSet
    product: SpectralProfile


def _weyl_rhs(pa, pb, depth) -> SymbolicSet:
    da, db = derive_sets(pa, depth), derive_sets(pb, depth)
    return da.sigma_w.product(db.sigma, depth).union(da.sigma.product(db.sigma_w, depth), depth)


def transfer_report(
    pa: SpectralProfile,
    pb: SpectralProfile,
    mode: Mode = Mode.TENSOR,
    depth: int = DEFAULT_DEPTH,
) -> TransferReport:
    mode = Mode(mode)
    prod = product_profile(pa, pb, mode, depth)
    fa, fb = derive_flags(pa, depth), derive_flags(pb, depth)
    fp = derive_flags(prod, depth)
    dp = derive_sets(prod, depth)
    scen = scenario(fa, fb)

    s = s_set(pa, pb, depth)
    bw = dp.sigma_bw
    missing = s.minus(bw, depth)
    holds = missing.is_empty()
    reverse = bw.issubset(s)

    if s.same_as(bw):
        delta = "equal"
    elif s.same_as(bw.union(SymbolicSet((ZERO,)), depth)):
        delta = "equal_plus_zero"
    else:
        delta = "other"

    zero_not_pole = ZERO not in dp.pi
    inv_or_not_dr = (not fp.zero_in_spectrum) or (not fp.drazin_invertible)

    if scen in (Scenario.A_ALGEBRAIC_NOT_NILPOTENT, Scenario.B_ALGEBRAIC_NOT_NILPOTENT):
        alg, other = (pa, fb) if scen is Scenario.A_ALGEBRAIC_NOT_NILPOTENT else (pb, fa)
        predicted = not other.drazin_invertible
        gated = derive_flags(alg, depth).zero_class is ZeroClass.POLE
        prediction = Prediction("algebraic_factor", True, gated, predicted, predicted == holds)
        weyl_hyp = not other.drazin_invertible
    elif scen is Scenario.BOTH_NON_ALGEBRAIC:
        prediction = Prediction("non_algebraic", True, True, zero_not_pole, zero_not_pole == holds)
        weyl_hyp = zero_not_pole
    else:
        prediction = NO_PREDICTION
        weyl_hyp = False

    weyl = dp.sigma_w.same_as(_weyl_rhs(pa, pb, depth))
    return TransferReport(
        mode=mode,
        scenario=scen,
        s_set=s,
        sigma_bw_product=bw,
        inclusion_holds=holds,
        reverse_inclusion_holds=reverse,
        prediction=prediction,
        s_minus_bw=delta,
        zero_not_pole_product=zero_not_pole,
        invertible_or_not_drazin=inv_or_not_dr,
        weyl_hypotheses=weyl_hyp,
        bw_equals_s=bw.same_as(s),
        weyl_identity_holds=weyl,
        witnesses=missing,
        product=prod,
    )
